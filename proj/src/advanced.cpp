#include "rkga/advanced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rkga/error.hpp"

namespace rkga {

//----------------------------------------------------------------------------
// Island migration
//----------------------------------------------------------------------------

namespace {

bool contains_keys(const Population& pop, const std::vector<double>& keys) {
    return std::any_of(pop.members.begin(), pop.members.end(),
                       [&](const Chromosome& c) { return c.keys == keys; });
}

void decode_into(Chromosome& c, const Decoder& decoder) {
    const double fitness = decoder.decode(c.keys);
    if (!std::isfinite(fitness))
        throw DecodeError("decoder produced a non-finite fitness");
    c.fitness = fitness;
}

} // namespace

void migrate(std::vector<Population>& populations, const IslandConfig& cfg) {
    const std::size_t p = populations.size();
    if (p < 2) return; // single island: nothing to exchange

    for (const auto& pop : populations) {
        if (!pop.fully_evaluated())
            throw NotEvaluatedError("migration requires evaluated populations");
        if (cfg.migrants > pop.elite_count)
            throw ConfigError("migrant count exceeds the elite set size");
    }

    // Snapshot every source first so the ring exchange is simultaneous.
    std::vector<std::vector<Chromosome>> outgoing(p);
    for (std::size_t k = 0; k < p; ++k)
        outgoing[k].assign(populations[k].members.begin(),
                           populations[k].members.begin() +
                               static_cast<std::ptrdiff_t>(cfg.migrants));

    for (std::size_t k = 0; k < p; ++k) {
        Population& target = populations[(k + 1) % p];
        for (std::size_t m = 0; m < cfg.migrants; ++m) {
            const Chromosome& migrant = outgoing[k][m];
            if (contains_keys(target, migrant.keys)) continue;
            // m-th migrant replaces the m-th worst member.
            target.members[target.size() - 1 - m] = migrant;
        }
        target.sort_by_fitness();
    }
}

//----------------------------------------------------------------------------
// Shaking
//----------------------------------------------------------------------------

void shake_with_intensity(Population& pop, double beta, const Decoder& decoder,
                          RngStream& rng) {
    if (!(beta >= 0.0) || !(beta <= 1.0))
        throw InvalidParameterError("shake intensity must lie in [0, 1]");
    if (!pop.fully_evaluated())
        throw NotEvaluatedError("shake requires an evaluated population");

    const std::size_t n = decoder.chromosome_length();
    const auto perturbed = static_cast<std::size_t>(
        std::ceil(beta * static_cast<double>(n)));

    std::vector<std::size_t> positions(n);
    for (std::size_t e = 0; e < pop.elite_count; ++e) {
        Chromosome& member = pop.members[e];
        if (perturbed == 0) continue;
        // Uniform sample of `perturbed` distinct positions (partial shuffle).
        std::iota(positions.begin(), positions.end(), std::size_t{0});
        for (std::size_t s = 0; s < perturbed; ++s)
            std::swap(positions[s], positions[s + rng.uniform_int(n - s)]);
        for (std::size_t s = 0; s < perturbed; ++s) {
            const std::size_t pos = positions[s];
            if (decoder.type() == DecoderType::direct) {
                member.keys[pos] = rng.uniform();
            } else {
                std::size_t other = rng.uniform_int(n - 1);
                if (other >= pos) ++other;
                std::swap(member.keys[pos], member.keys[other]);
            }
        }
        member.fitness.reset();
    }
    for (std::size_t j = pop.elite_count; j < pop.size(); ++j)
        pop.members[j] = new_random_chromosome(n, rng, Origin::random);

    for (auto& member : pop.members)
        if (!member.evaluated()) decode_into(member, decoder);
    pop.sort_by_fitness();
}

void shake(Population& pop, const ShakeConfig& cfg, const Decoder& decoder,
           RngStream& rng) {
    if (!(cfg.lower >= 0.0) || !(cfg.upper <= 1.0) || !(cfg.lower <= cfg.upper))
        throw InvalidParameterError(
            "shake intensities need 0 <= lower <= upper <= 1");
    const double beta = rng.uniform(cfg.lower, cfg.upper);
    shake_with_intensity(pop, beta, decoder, rng);
}

//----------------------------------------------------------------------------
// Multi-parent crossover
//----------------------------------------------------------------------------

std::string_view to_string(BiasFunction bias) {
    switch (bias) {
    case BiasFunction::log_inverse: return "loginverse";
    case BiasFunction::linear: return "linear";
    case BiasFunction::quadratic: return "quadratic";
    case BiasFunction::cubic: return "cubic";
    case BiasFunction::exponential: return "exponential";
    case BiasFunction::constant: return "constant";
    }
    return "?";
}

std::optional<BiasFunction> bias_from_string(std::string_view name) {
    if (name == "loginverse" || name == "log_inverse")
        return BiasFunction::log_inverse;
    if (name == "linear") return BiasFunction::linear;
    if (name == "quadratic") return BiasFunction::quadratic;
    if (name == "cubic") return BiasFunction::cubic;
    if (name == "exponential") return BiasFunction::exponential;
    if (name == "constant") return BiasFunction::constant;
    return std::nullopt;
}

double bias_value(BiasFunction bias, std::size_t rank, std::size_t total) {
    const auto r = static_cast<double>(rank);
    switch (bias) {
    case BiasFunction::log_inverse: return 1.0 / std::log(r + 1.0);
    case BiasFunction::linear: return 1.0 / r;
    case BiasFunction::quadratic: return 1.0 / (r * r);
    case BiasFunction::cubic: return 1.0 / (r * r * r);
    case BiasFunction::exponential: return std::exp(-r);
    case BiasFunction::constant: return 1.0 / static_cast<double>(total);
    }
    return 0.0;
}

std::vector<double> bias_probabilities(const MultiParentConfig& cfg) {
    if (cfg.total_parents < 2)
        throw ConfigError("multi-parent crossover needs at least two parents");
    std::vector<double> weights(cfg.total_parents);
    double sum = 0.0;
    for (std::size_t r = 1; r <= cfg.total_parents; ++r) {
        const double w = bias_value(cfg.bias, r, cfg.total_parents);
        if (!(w > 0.0) || !std::isfinite(w))
            throw ConfigError("bias function produced a non-positive weight");
        weights[r - 1] = w;
        sum += w;
    }
    for (auto& w : weights) w /= sum;
    return weights;
}

Chromosome multi_parent_crossover(std::span<const Chromosome* const> parents,
                                  const MultiParentConfig& cfg,
                                  RngStream& rng) {
    if (parents.size() != cfg.total_parents)
        throw InvalidParameterError(
            "parent list size does not match the configured total");
    const std::size_t n = parents.front()->size();
    for (const auto* parent : parents)
        if (parent->size() != n)
            throw DimensionError("parents must share one chromosome length");

    const auto probs = bias_probabilities(cfg);
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    cdf.back() = 1.0; // close the tail against rounding

    Chromosome child;
    child.keys.resize(n);
    child.origin = Origin::offspring;
    for (std::size_t gene = 0; gene < n; ++gene) {
        const double u = rng.uniform();
        const std::size_t pick = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u,
                             [](double c, double v) { return c <= v; }) -
            cdf.begin());
        child.keys[gene] = parents[pick]->keys[gene];
    }
    return child;
}

//----------------------------------------------------------------------------
// Implicit path-relinking
//----------------------------------------------------------------------------

std::string_view to_string(IprSelection sel) {
    return sel == IprSelection::best_solution ? "best_solution" : "random_elite";
}

std::optional<IprSelection> ipr_selection_from_string(std::string_view name) {
    if (name == "best_solution" || name == "bestsolution")
        return IprSelection::best_solution;
    if (name == "random_elite" || name == "randomelite")
        return IprSelection::random_elite;
    return std::nullopt;
}

std::string_view to_string(IprOutcome outcome) {
    switch (outcome) {
    case IprOutcome::applied: return "applied";
    case IprOutcome::no_pair_above_md: return "no_pair_above_md";
    case IprOutcome::no_improvement: return "no_improvement";
    }
    return "?";
}

namespace {

DistanceKind effective_distance(const IprConfig& cfg, const Decoder& decoder) {
    const DistanceKind implied = decoder.type() == DecoderType::permutation
                                     ? DistanceKind::kendall_tau
                                     : DistanceKind::hamming;
    if (cfg.distance && *cfg.distance != implied)
        throw ConfigError("path-relinking distance does not match the decoder "
                          "type");
    return implied;
}

// (base, guide) from a qualifying pair, honoring the selection method.
std::pair<const Chromosome*, const Chromosome*>
orient_pair(const Chromosome* a, const Chromosome* b, IprSelection sel,
            RngStream& rng) {
    const bool a_first = sel == IprSelection::best_solution
                             ? *a->fitness <= *b->fitness
                             : rng.uniform_int(2) == 0;
    return a_first ? std::make_pair(a, b) : std::make_pair(b, a);
}

} // namespace

IprResult ipr_walk(const Chromosome& base, const Chromosome& guide,
                   const IprConfig& cfg, const Decoder& decoder) {
    if (base.size() != guide.size())
        throw DimensionError("path-relinking endpoints differ in length");
    if (!base.evaluated() || !guide.evaluated())
        throw NotEvaluatedError("path-relinking endpoints must be evaluated");

    const DistanceKind kind = effective_distance(cfg, decoder);
    const std::size_t n = base.size();
    const std::size_t bs = std::min(cfg.block_size, n);
    const std::size_t num_blocks = (n + bs - 1) / bs;
    const auto steps = static_cast<std::size_t>(
        std::ceil(cfg.path_pct * static_cast<double>(num_blocks)));

    Chromosome working = base;
    std::vector<bool> copied(num_blocks, false);

    IprResult result;
    double incumbent_fitness = std::numeric_limits<double>::infinity();
    Chromosome incumbent;

    Chromosome candidate;
    for (std::size_t step = 0; step < steps; ++step) {
        std::size_t best_block = num_blocks;
        double best_fitness = std::numeric_limits<double>::infinity();
        for (std::size_t blk = 0; blk < num_blocks; ++blk) {
            if (copied[blk]) continue;
            candidate = working;
            const std::size_t lo = blk * bs;
            const std::size_t hi = std::min(n, lo + bs);
            std::copy(guide.keys.begin() + static_cast<std::ptrdiff_t>(lo),
                      guide.keys.begin() + static_cast<std::ptrdiff_t>(hi),
                      candidate.keys.begin() + static_cast<std::ptrdiff_t>(lo));
            const double fitness = decoder.decode(candidate.keys);
            if (fitness < best_fitness) {
                best_fitness = fitness;
                best_block = blk;
            }
        }
        if (best_block == num_blocks) break; // every block already committed

        const std::size_t lo = best_block * bs;
        const std::size_t hi = std::min(n, lo + bs);
        std::copy(guide.keys.begin() + static_cast<std::ptrdiff_t>(lo),
                  guide.keys.begin() + static_cast<std::ptrdiff_t>(hi),
                  working.keys.begin() + static_cast<std::ptrdiff_t>(lo));
        working.fitness = best_fitness;
        copied[best_block] = true;

        result.steps.push_back(
            {best_block, chromosome_distance(kind, working, guide),
             best_fitness});
        if (best_fitness < incumbent_fitness) {
            incumbent_fitness = best_fitness;
            incumbent = working;
        }
    }

    const double endpoint_best = std::min(*base.fitness, *guide.fitness);
    if (incumbent_fitness < endpoint_best) {
        incumbent.origin = Origin::ipr;
        incumbent.fitness = incumbent_fitness;
        result.outcome = IprOutcome::applied;
        result.chromosome = std::move(incumbent);
    } else {
        result.outcome = IprOutcome::no_improvement;
    }
    return result;
}

IprResult implicit_path_relinking(const Population& pop_a,
                                  const Population& pop_b,
                                  const IprConfig& cfg, const Decoder& decoder,
                                  RngStream& rng) {
    if (!pop_a.fully_evaluated() || !pop_b.fully_evaluated())
        throw NotEvaluatedError("path-relinking requires evaluated populations");
    const DistanceKind kind = effective_distance(cfg, decoder);

    const std::size_t elite_a = pop_a.elite_count;
    const std::size_t elite_b = pop_b.elite_count;
    const auto budget = static_cast<std::size_t>(std::ceil(
        cfg.candidate_pairs_pct * static_cast<double>(elite_a * elite_b)));

    const Chromosome* first = nullptr;
    const Chromosome* second = nullptr;
    std::size_t tested = 0;
    // Pairs in fitness order: best-of-A against B's elites, then the next of
    // A, and so on.
    for (std::size_t i = 0; i < elite_a && !first; ++i) {
        for (std::size_t j = 0; j < elite_b; ++j) {
            if (tested == budget) break;
            ++tested;
            const Chromosome& ca = pop_a.members[i];
            const Chromosome& cb = pop_b.members[j];
            if (chromosome_distance(kind, ca, cb) >= cfg.min_distance) {
                first = &ca;
                second = &cb;
                break;
            }
        }
        if (tested == budget) break;
    }
    if (!first) return {IprOutcome::no_pair_above_md, std::nullopt, {}};

    const auto [base, guide] = orient_pair(first, second, cfg.selection, rng);
    return ipr_walk(*base, *guide, cfg, decoder);
}

IprResult implicit_path_relinking_within(const Population& pop,
                                         const IprConfig& cfg,
                                         const Decoder& decoder,
                                         RngStream& rng) {
    if (!pop.fully_evaluated())
        throw NotEvaluatedError("path-relinking requires an evaluated "
                                "population");
    const DistanceKind kind = effective_distance(cfg, decoder);
    if (pop.elite_count < 2)
        return {IprOutcome::no_pair_above_md, std::nullopt, {}};

    // Single population: pit the best member against the most distant other
    // elite, scanning at most cp% of the candidates.
    const Chromosome& best = pop.members.front();
    const auto budget = static_cast<std::size_t>(std::ceil(
        cfg.candidate_pairs_pct * static_cast<double>(pop.elite_count - 1)));
    const Chromosome* farthest = nullptr;
    double farthest_distance = -1.0;
    for (std::size_t j = 1; j < pop.elite_count && j <= budget; ++j) {
        const double d = chromosome_distance(kind, best, pop.members[j]);
        if (d > farthest_distance) {
            farthest_distance = d;
            farthest = &pop.members[j];
        }
    }
    if (!farthest || farthest_distance < cfg.min_distance)
        return {IprOutcome::no_pair_above_md, std::nullopt, {}};

    const auto [base, guide] = orient_pair(&best, farthest, cfg.selection, rng);
    return ipr_walk(*base, *guide, cfg, decoder);
}

} // namespace rkga
