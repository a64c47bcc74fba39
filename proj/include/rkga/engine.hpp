#ifndef RKGA_ENGINE_HPP_
#define RKGA_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rkga/params.hpp"
#include "rkga/trace.hpp"

namespace rkga {

/**
 * When to stop and when to rebuild the population from scratch. At least one
 * of the three stop conditions must be set. restart_after is the number of
 * consecutive generations without improving the best-ever fitness that
 * triggers a full repopulation (the best-ever record survives restarts);
 * when unset it falls back to the parameter set's restart_iters.
 */
struct StopCriteria {
    std::optional<std::uint64_t> max_generations;
    std::optional<double> max_seconds; // checked at generation boundaries
    std::optional<double> target_value;
    std::optional<std::uint64_t> restart_after; // I_r override
};

/// Best solution seen anywhere in the run.
struct BestRecord {
    Chromosome chromosome;
    double fitness = 0;
    std::uint64_t found_at_generation = 0;
};

/**
 * Optional observers. on_record streams immutable per-generation trace
 * records. The two snapshot hooks expose the populations right after the
 * evolutionary step (before migration/shake/IPR/restart) and in the final
 * state that seeds the next generation; both views are read-only and valid
 * only during the call.
 */
struct EngineHooks {
    std::function<void(const GenerationRecord&)> on_record;
    std::function<void(std::span<const Population>)> on_post_evolve;
    std::function<void(std::span<const Population>)> on_final_state;
};

struct RunOptions {
    StopCriteria stop;
    std::uint64_t seed = 0;
    std::vector<Chromosome> warm_starts; // injected into population 0
    std::optional<RandomControlBounds> online_control;
    EngineHooks hooks;
};

struct RunResult {
    BestRecord best;
    RunTrace trace;
};

/**
 * Parametrized uniform crossover: each offspring gene comes from `a` with
 * probability rho_a, otherwise from `b`, independently per gene. Parents
 * must have equal length; 0 < rho_a <= 1.
 */
Chromosome crossover(const Chromosome& a, const Chromosome& b, double rho_a,
                     RngStream& rng);

/// Parent indices for one mating, in sorted-population coordinates. BRKGA
/// draws a uniformly from the elite range and b from the non-elite range;
/// RKGA draws both uniformly from the whole population with a != b.
std::pair<std::size_t, std::size_t> select_parents(Variant variant,
                                                   std::size_t elite_count,
                                                   std::size_t pop_size,
                                                   RngStream& rng);

/**
 * One generational step: copies the elite members unchanged, injects fresh
 * mutants, fills the rest with crossover offspring, decodes every new
 * member (fanning out to a worker pool when the batch is large) and returns
 * the sorted next population with its generation counter incremented.
 */
Population evolve_generation(const Population& pop, const BrkgaParams& params,
                             const Decoder& decoder, RngStream& rng);

/**
 * Full run: builds and evaluates the initial population(s), evolves until a
 * stop condition holds, rebuilding on the restart criterion, and drives the
 * optional procedures (migration, shaking, implicit path-relinking, online
 * parameter control) at their configured frequencies. Fully deterministic
 * given (params, decoder, options) apart from wall-clock columns.
 */
RunResult run(const BrkgaParams& params, const Decoder& decoder,
              const RunOptions& options);

/// Worker threads used for batch decoding: RKGA_THREADS when set, otherwise
/// the hardware concurrency.
unsigned decode_workers();

} // namespace rkga

#endif // RKGA_ENGINE_HPP_
