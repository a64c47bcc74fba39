#include "rkga/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

namespace rkga {

//----------------------------------------------------------------------------
// Crossover and parent selection
//----------------------------------------------------------------------------

Chromosome crossover(const Chromosome& a, const Chromosome& b, double rho_a,
                     RngStream& rng) {
    if (a.size() != b.size())
        throw DimensionError("crossover parents differ in length");
    if (!(rho_a > 0.0 && rho_a <= 1.0))
        throw InvalidParameterError("inheritance probability must be in (0, 1]");

    Chromosome c;
    c.keys.resize(a.size());
    c.origin = Origin::offspring;
    for (std::size_t j = 0; j < a.size(); ++j)
        c.keys[j] = rng.uniform() < rho_a ? a.keys[j] : b.keys[j];
    return c;
}

std::pair<std::size_t, std::size_t> select_parents(Variant variant,
                                                   std::size_t elite_count,
                                                   std::size_t pop_size,
                                                   RngStream& rng) {
    if (variant == Variant::brkga) {
        const std::size_t a = rng.uniform_int(elite_count);
        const std::size_t b = elite_count + rng.uniform_int(pop_size - elite_count);
        return {a, b};
    }
    // RKGA: both parents uniform over the whole population, a != b.
    const std::size_t a = rng.uniform_int(pop_size);
    std::size_t b = rng.uniform_int(pop_size - 1);
    if (b >= a) ++b;
    return {a, b};
}

//----------------------------------------------------------------------------
// Batch decoding
//----------------------------------------------------------------------------

unsigned decode_workers() {
    static const unsigned cached = [] {
        if (const char* env = std::getenv("RKGA_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<unsigned>(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1u : hw;
    }();
    return cached;
}

namespace {

constexpr std::size_t kParallelDecodeThreshold = 64;

void decode_one(Chromosome& c, const Decoder& decoder, std::size_t index) {
    double fitness;
    try {
        fitness = decoder.decode(c.keys);
    } catch (const std::exception& e) {
        throw DecodeError("decoding failed for chromosome #" +
                          std::to_string(index) + " (origin " +
                          std::string(to_string(c.origin)) + "): " + e.what());
    }
    if (!std::isfinite(fitness))
        throw DecodeError("decoder produced a non-finite fitness for "
                          "chromosome #" +
                          std::to_string(index));
    c.fitness = fitness;
}

// Decodes every unevaluated member; fans out when the batch is worth it.
// Results are joined before anyone looks at them, so the outcome does not
// depend on scheduling.
void decode_batch(std::vector<Chromosome>& members, const Decoder& decoder) {
    const std::size_t count = members.size();
    const unsigned workers = decode_workers();
    if (workers <= 1 || count < kParallelDecodeThreshold) {
        for (std::size_t i = 0; i < count; ++i)
            if (!members[i].evaluated()) decode_one(members[i], decoder, i);
        return;
    }

    const unsigned used = static_cast<unsigned>(
        std::min<std::size_t>(workers, count));
    std::vector<std::exception_ptr> errors(used);
    std::vector<std::size_t> error_index(used,
                                         std::numeric_limits<std::size_t>::max());
    std::vector<std::thread> threads;
    threads.reserve(used);
    for (unsigned w = 0; w < used; ++w) {
        threads.emplace_back([&, w] {
            const std::size_t lo = count * w / used;
            const std::size_t hi = count * (w + 1) / used;
            for (std::size_t i = lo; i < hi; ++i) {
                if (members[i].evaluated()) continue;
                try {
                    decode_one(members[i], decoder, i);
                } catch (...) {
                    errors[w] = std::current_exception();
                    error_index[w] = i;
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();

    // Report the failure with the lowest index so errors are deterministic.
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::exception_ptr chosen;
    for (unsigned w = 0; w < used; ++w) {
        if (errors[w] && error_index[w] < best) {
            best = error_index[w];
            chosen = errors[w];
        }
    }
    if (chosen) std::rethrow_exception(chosen);
}

} // namespace

//----------------------------------------------------------------------------
// One generation
//----------------------------------------------------------------------------

namespace {

// Selected parent pointers for one multi-parent mating, ranked best-first.
// The population is fitness-sorted with stable ties, so ascending index is
// exactly (fitness, elite-first, index) order.
std::vector<const Chromosome*> pick_mp_parents(const Population& pop,
                                               const MultiParentConfig& cfg,
                                               std::vector<std::size_t>& scratch,
                                               RngStream& rng) {
    const std::size_t elite = pop.elite_count;
    const std::size_t non_elite = pop.size() - elite;
    const std::size_t from_non_elite = cfg.total_parents - cfg.elite_parents;
    if (cfg.elite_parents > elite || from_non_elite > non_elite)
        throw ConfigError("multi-parent pool does not fit the population split");

    std::vector<std::size_t> chosen;
    chosen.reserve(cfg.total_parents);
    auto sample_without_replacement = [&](std::size_t base, std::size_t count,
                                          std::size_t take) {
        scratch.resize(count);
        std::iota(scratch.begin(), scratch.end(), base);
        for (std::size_t s = 0; s < take; ++s) {
            std::swap(scratch[s], scratch[s + rng.uniform_int(count - s)]);
            chosen.push_back(scratch[s]);
        }
    };
    sample_without_replacement(0, elite, cfg.elite_parents);
    sample_without_replacement(elite, non_elite, from_non_elite);
    std::sort(chosen.begin(), chosen.end());

    std::vector<const Chromosome*> parents;
    parents.reserve(cfg.total_parents);
    for (auto idx : chosen) parents.push_back(&pop.members[idx]);
    return parents;
}

} // namespace

Population evolve_generation(const Population& pop, const BrkgaParams& params,
                             const Decoder& decoder, RngStream& rng) {
    if (!pop.fully_evaluated())
        throw NotEvaluatedError("evolve requires a fully evaluated population");
    if (pop.size() != params.pop_size)
        throw InvalidParameterError(
            "population size does not match the parameter set");
    if (decoder.chromosome_length() != params.n)
        throw ConfigError("decoder length does not match the parameter set");
    if (!pop.is_sorted_by_fitness())
        throw InvalidParameterError("population must be sorted by fitness");

    const std::size_t elite = params.elite_count();
    const std::size_t mutants = params.mutant_count();
    const std::size_t offspring = params.offspring_count();
    const std::size_t n = params.n;

    Population next;
    next.generation = pop.generation + 1;
    next.elite_count = elite;
    next.members.reserve(pop.size());

    // Elite survivors are copied bit-identically, cached fitness included.
    for (std::size_t e = 0; e < elite; ++e)
        next.members.push_back(pop.members[e]);
    for (std::size_t m = 0; m < mutants; ++m)
        next.members.push_back(new_random_chromosome(n, rng, Origin::mutant));

    if (params.mode.variant == Variant::brkga_mp) {
        if (!params.multi_parent)
            throw ConfigError("BRKGA-MP requires a multi-parent configuration");
        std::vector<std::size_t> scratch;
        for (std::size_t o = 0; o < offspring; ++o) {
            const auto parents =
                pick_mp_parents(pop, *params.multi_parent, scratch, rng);
            next.members.push_back(multi_parent_crossover(
                std::span<const Chromosome* const>(parents),
                *params.multi_parent, rng));
        }
    } else {
        for (std::size_t o = 0; o < offspring; ++o) {
            const auto [ia, ib] = select_parents(params.mode.variant, elite,
                                                 pop.size(), rng);
            next.members.push_back(crossover(pop.members[ia], pop.members[ib],
                                             params.mode.rho, rng));
        }
    }

    decode_batch(next.members, decoder);
    next.sort_by_fitness();
    return next;
}

//----------------------------------------------------------------------------
// Full run
//----------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

struct RunState {
    const BrkgaParams& base;
    const Decoder& decoder;
    const RunOptions& options;
    std::vector<Population> populations;
    std::vector<RngStream> pop_streams;
    RngStream orchestrator;
    RngStream diversity_stream;
    RngStream control_stream;
    BestRecord best;
    Clock::time_point started = Clock::now();

    RunState(const BrkgaParams& p, const Decoder& d, const RunOptions& o)
        : base(p), decoder(d), options(o),
          orchestrator(o.seed, stream_id::orchestrator),
          diversity_stream(o.seed, stream_id::diversity),
          control_stream(o.seed, stream_id::online_control) {
        for (std::size_t k = 0; k < p.islands.populations; ++k)
            pop_streams.emplace_back(o.seed, k);
        best.fitness = std::numeric_limits<double>::infinity();
    }

    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - started).count();
    }
};

Population fresh_population(std::size_t pop_size, std::size_t n,
                            std::size_t elite_count, std::uint64_t generation,
                            const Decoder& decoder, RngStream& rng) {
    Population pop;
    pop.generation = generation;
    pop.elite_count = elite_count;
    pop.members.reserve(pop_size);
    for (std::size_t j = 0; j < pop_size; ++j)
        pop.members.push_back(new_random_chromosome(n, rng, Origin::random));
    decode_batch(pop.members, decoder);
    pop.sort_by_fitness();
    return pop;
}

// Worst-case elite / non-elite counts reachable under online bounds; used to
// reject configurations that could starve migration or the parent pool.
void check_online_coupling(const BrkgaParams& params,
                           const RandomControlBounds& bounds) {
    std::size_t min_elite = std::numeric_limits<std::size_t>::max();
    std::size_t min_non_elite = std::numeric_limits<std::size_t>::max();
    std::size_t min_offspring = std::numeric_limits<std::size_t>::max();
    for (std::size_t pop = bounds.pop_size.lo; pop <= bounds.pop_size.hi;
         ++pop) {
        BrkgaParams probe = params;
        probe.pop_size = pop;
        probe.elite_pct = bounds.elite_pct.lo;
        probe.mutant_pct = bounds.mutant_pct.lo;
        min_elite = std::min(min_elite, probe.elite_count());
        probe.elite_pct = bounds.elite_pct.hi;
        probe.mutant_pct = bounds.mutant_pct.hi;
        min_non_elite = std::min(min_non_elite, pop - probe.elite_count());
        min_offspring = std::min(min_offspring, probe.offspring_count());
    }
    if (params.islands.populations >= 2 &&
        params.islands.migrants > min_elite)
        throw ConfigError("online bounds can shrink the elite set below the "
                          "migrant count");
    if (params.mode.variant == Variant::brkga_mp && params.multi_parent) {
        if (params.multi_parent->elite_parents > min_elite ||
            params.multi_parent->total_parents -
                    params.multi_parent->elite_parents >
                min_non_elite)
            throw ConfigError("online bounds can shrink the population below "
                              "the multi-parent pool");
    }
    (void)min_offspring; // always >= 1 by the count clamps
}

class Runner {
public:
    Runner(const BrkgaParams& params, const Decoder& decoder,
           const RunOptions& options)
        : params_(params), state_(params, decoder, options) {}

    RunResult execute();

private:
    const BrkgaParams& base_() const { return params_; }

    void build_initial_populations();
    void inject_warm_starts();
    bool update_best(std::uint64_t generation);
    void reset_counters() { since_shake_ = since_ipr_ = since_restart_ = 0; }

    void do_migration(std::vector<TraceEvent>& events);
    void do_ipr(std::uint64_t gen, std::vector<TraceEvent>& events);
    void do_shake(std::uint64_t gen, std::vector<TraceEvent>& events);
    void do_restart(std::uint64_t gen, std::vector<TraceEvent>& events);
    void apply_online_overlay();

    GenerationRecord make_record(std::uint64_t gen,
                                 std::vector<TraceEvent> events);
    bool should_stop() const;

    BrkgaParams params_;   // effective parameters (overlay applied)
    RunState state_;
    RunTrace trace_;
    std::uint64_t restart_after_ = 300;
    std::uint64_t since_shake_ = 0, since_ipr_ = 0, since_restart_ = 0;
};

void Runner::build_initial_populations() {
    auto& st = state_;
    const auto& base = st.base;
    st.populations.clear();
    for (std::size_t k = 0; k < base.islands.populations; ++k) {
        Population pop;
        pop.generation = 0;
        pop.elite_count = params_.elite_count();
        pop.members.reserve(base.pop_size);
        for (std::size_t j = 0; j < base.pop_size; ++j)
            pop.members.push_back(
                new_random_chromosome(base.n, st.pop_streams[k]));
        st.populations.push_back(std::move(pop));
    }
    inject_warm_starts();
    for (auto& pop : st.populations) {
        decode_batch(pop.members, st.decoder);
        pop.sort_by_fitness();
    }
}

void Runner::inject_warm_starts() {
    auto& st = state_;
    const auto& warm = st.options.warm_starts;
    if (warm.empty()) return;
    if (warm.size() > st.base.pop_size)
        throw ConfigError("more warm starts than population slots");
    for (std::size_t w = 0; w < warm.size(); ++w) {
        if (warm[w].size() != st.base.n)
            throw ConfigError("warm start #" + std::to_string(w) +
                              " has the wrong chromosome length");
        for (double key : warm[w].keys)
            if (!(key >= 0.0) || !(key < 1.0))
                throw ConfigError("warm start #" + std::to_string(w) +
                                  " has keys outside [0, 1)");
        Chromosome c = warm[w];
        c.fitness.reset();
        c.origin = Origin::warmstart;
        st.populations[0].members[w] = std::move(c);
    }
}

bool Runner::update_best(std::uint64_t generation) {
    auto& st = state_;
    bool improved = false;
    for (const auto& pop : st.populations) {
        if (pop.best_fitness() < st.best.fitness) {
            st.best.fitness = pop.best_fitness();
            st.best.chromosome = pop.best();
            st.best.found_at_generation = generation;
            improved = true;
        }
    }
    return improved;
}

void Runner::do_migration(std::vector<TraceEvent>& events) {
    migrate(state_.populations, state_.base.islands);
    events.push_back({TraceEvent::Kind::migration, {}});
}

void Runner::do_ipr(std::uint64_t gen, std::vector<TraceEvent>& events) {
    auto& st = state_;
    IprConfig cfg = *st.base.ipr;
    since_ipr_ = 0;

    IprResult result;
    std::size_t target = 0;
    if (st.populations.size() == 1) {
        result = implicit_path_relinking_within(st.populations[0], cfg,
                                                st.decoder, st.orchestrator);
    } else {
        // Pair the population holding the current best with the best other.
        std::size_t first = 0;
        for (std::size_t k = 1; k < st.populations.size(); ++k)
            if (st.populations[k].best_fitness() <
                st.populations[first].best_fitness())
                first = k;
        std::size_t second = first == 0 ? 1 : 0;
        for (std::size_t k = 0; k < st.populations.size(); ++k)
            if (k != first && st.populations[k].best_fitness() <
                                  st.populations[second].best_fitness())
                second = k;
        target = first;
        result = implicit_path_relinking(st.populations[first],
                                         st.populations[second], cfg,
                                         st.decoder, st.orchestrator);
    }

    if (result.outcome == IprOutcome::applied) {
        Population& pop = st.populations[target];
        pop.members.back() = std::move(*result.chromosome);
        pop.sort_by_fitness();
        events.push_back({TraceEvent::Kind::ipr_applied, {}});
        if (update_best(gen)) reset_counters();
    } else {
        events.push_back({TraceEvent::Kind::ipr_skipped,
                          std::string(to_string(result.outcome))});
    }
}

void Runner::do_shake(std::uint64_t gen, std::vector<TraceEvent>& events) {
    auto& st = state_;
    since_shake_ = 0;
    // One intensity per event keeps islands comparable in the trace.
    const double beta =
        st.orchestrator.uniform(st.base.shake->lower, st.base.shake->upper);
    for (std::size_t k = 0; k < st.populations.size(); ++k)
        shake_with_intensity(st.populations[k], beta, st.decoder,
                             st.pop_streams[k]);
    events.push_back({TraceEvent::Kind::shake, {}});
    if (update_best(gen)) reset_counters();
}

void Runner::do_restart(std::uint64_t gen, std::vector<TraceEvent>& events) {
    auto& st = state_;
    for (std::size_t k = 0; k < st.populations.size(); ++k) {
        const std::uint64_t generation = st.populations[k].generation;
        st.populations[k] = fresh_population(
            params_.pop_size, st.base.n, params_.elite_count(), generation,
            st.decoder, st.pop_streams[k]);
    }
    reset_counters();
    events.push_back({TraceEvent::Kind::restart, {}});
    update_best(gen); // a lucky fresh population may still improve
}

void Runner::apply_online_overlay() {
    auto& st = state_;
    const ParamOverlay overlay =
        sample_online_params(*st.options.online_control, st.control_stream);
    params_ = apply_overlay(st.base, overlay);
    const std::size_t elite = params_.elite_count();
    for (std::size_t k = 0; k < st.populations.size(); ++k) {
        Population& pop = st.populations[k];
        if (overlay.pop_size < pop.size()) {
            pop.members.resize(overlay.pop_size); // truncate the worst
        } else {
            while (pop.size() < overlay.pop_size)
                pop.members.push_back(new_random_chromosome(
                    st.base.n, st.pop_streams[k], Origin::mutant));
            decode_batch(pop.members, st.decoder);
            pop.sort_by_fitness();
        }
        pop.elite_count = elite;
    }
}

GenerationRecord Runner::make_record(std::uint64_t gen,
                                     std::vector<TraceEvent> events) {
    auto& st = state_;
    GenerationRecord rec;
    rec.generation = gen;
    rec.f_star = st.best.fitness;
    rec.population_best = st.populations.front().best_fitness();
    std::vector<double> all;
    std::vector<const Chromosome*> ptrs;
    for (const auto& pop : st.populations) {
        rec.population_best = std::min(rec.population_best, pop.best_fitness());
        for (const auto& member : pop.members) {
            all.push_back(*member.fitness);
            ptrs.push_back(&member);
        }
    }
    std::sort(all.begin(), all.end());
    rec.median_fitness = all.size() % 2 == 1
                             ? all[all.size() / 2]
                             : (all[all.size() / 2 - 1] + all[all.size() / 2]) /
                                   2.0;
    rec.diversity = ptrs.size() < 2
                        ? 0.0
                        : diversity(std::span<const Chromosome* const>(ptrs),
                                    st.diversity_stream);
    rec.elapsed_seconds = st.elapsed();
    rec.pop_size = params_.pop_size;
    rec.elite_count = params_.elite_count();
    rec.mutant_count = params_.mutant_count();
    rec.elite_pct = params_.elite_pct;
    rec.mutant_pct = params_.mutant_pct;
    rec.rho = params_.mode.rho;
    rec.events = std::move(events);
    return rec;
}

bool Runner::should_stop() const {
    const auto& stop = state_.options.stop;
    const std::uint64_t gen = trace_.generations.empty()
                                  ? 0
                                  : trace_.generations.back().generation;
    if (stop.target_value && state_.best.fitness <= *stop.target_value)
        return true;
    if (stop.max_generations && gen >= *stop.max_generations) return true;
    if (stop.max_seconds && state_.elapsed() >= *stop.max_seconds) return true;
    return false;
}

RunResult Runner::execute() {
    auto& st = state_;
    const auto& options = st.options;

    const auto violations = validate(st.base);
    if (has_errors(violations))
        throw ConfigError("invalid parameters:\n" + describe(violations));
    if (st.decoder.chromosome_length() != st.base.n)
        throw ConfigError("decoder length does not match the parameter set");
    if (!options.stop.max_generations && !options.stop.max_seconds &&
        !options.stop.target_value)
        throw ConfigError("at least one stop criterion must be set");
    restart_after_ = options.stop.restart_after.value_or(st.base.restart_iters);
    if (restart_after_ == 0)
        throw ConfigError("restart trigger must be at least 1");
    if (st.base.ipr) {
        // Surfaces distance/decoder mismatches before any evolution.
        IprConfig probe = *st.base.ipr;
        if (probe.distance) {
            const DistanceKind implied =
                st.decoder.type() == DecoderType::permutation
                    ? DistanceKind::kendall_tau
                    : DistanceKind::hamming;
            if (*probe.distance != implied)
                throw ConfigError("path-relinking distance does not match the "
                                  "decoder type");
        }
    }
    if (options.online_control) {
        check_bounds(*options.online_control, st.base.mode);
        check_online_coupling(st.base, *options.online_control);
    }

    build_initial_populations();
    update_best(0);

    auto emit = [&](GenerationRecord rec) {
        if (options.hooks.on_record) options.hooks.on_record(rec);
        trace_.generations.push_back(std::move(rec));
    };

    emit(make_record(0, {}));
    // The next generation's overlay is sampled and applied at the boundary,
    // so the final-state snapshot is exactly what the next step evolves.
    if (options.online_control && !should_stop()) apply_online_overlay();
    if (options.hooks.on_final_state)
        options.hooks.on_final_state(st.populations);

    std::uint64_t gen = 0;
    while (!should_stop()) {
        ++gen;

        for (std::size_t k = 0; k < st.populations.size(); ++k)
            st.populations[k] = evolve_generation(st.populations[k], params_,
                                                  st.decoder,
                                                  st.pop_streams[k]);
        if (options.hooks.on_post_evolve)
            options.hooks.on_post_evolve(st.populations);

        if (update_best(gen)) {
            reset_counters();
        } else {
            ++since_shake_;
            ++since_ipr_;
            ++since_restart_;
        }

        std::vector<TraceEvent> events;
        if (st.populations.size() >= 2 && st.base.islands.period > 0 &&
            gen % st.base.islands.period == 0)
            do_migration(events);
        if (st.base.ipr && since_ipr_ >= st.base.ipr->iterations)
            do_ipr(gen, events);
        if (st.base.shake && since_shake_ >= st.base.shake->iterations)
            do_shake(gen, events);
        if (since_restart_ >= restart_after_)
            do_restart(gen, events);

        emit(make_record(gen, std::move(events)));
        if (options.online_control && !should_stop()) apply_online_overlay();
        if (options.hooks.on_final_state)
            options.hooks.on_final_state(st.populations);
    }

    trace_.final.f_star = st.best.fitness;
    trace_.final.solution = st.decoder.describe(st.best.chromosome.keys);
    trace_.final.total_generations = gen;
    trace_.final.found_at_generation = st.best.found_at_generation;
    trace_.final.wall_seconds = st.elapsed();
    trace_.final.seed = options.seed;

    RunResult result;
    result.best = st.best;
    result.trace = std::move(trace_);
    return result;
}

} // namespace

RunResult run(const BrkgaParams& params, const Decoder& decoder,
              const RunOptions& options) {
    Runner runner(params, decoder, options);
    return runner.execute();
}

} // namespace rkga
