#ifndef RKGA_ADVANCED_HPP_
#define RKGA_ADVANCED_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rkga/decoder.hpp"
#include "rkga/distance.hpp"
#include "rkga/population.hpp"

namespace rkga {

//----------------------------------------------------------------------------
// Island model
//----------------------------------------------------------------------------

/// p parallel populations exchanging i elite migrants every g generations.
struct IslandConfig {
    std::size_t populations = 1; // p; migration disabled when 1
    std::uint64_t period = 100;  // g
    std::size_t migrants = 1;    // i; must not exceed the elite count
};

/**
 * One migration round over a directed ring: population k sends copies of its
 * top `migrants` members to population k+1 (mod p), where they replace the
 * worst members. A replacement is skipped when the target already holds an
 * identical key vector. All sources are snapshotted before any replacement,
 * so the exchange is simultaneous. Sizes never change; each population is
 * re-sorted afterwards. No-op for fewer than two populations.
 */
void migrate(std::vector<Population>& populations, const IslandConfig& cfg);

//----------------------------------------------------------------------------
// Shaking (partial restart)
//----------------------------------------------------------------------------

/// Perturb elites and rebuild non-elites after `iterations` generations
/// without improvement; intensity drawn uniformly from [lower, upper].
struct ShakeConfig {
    std::uint64_t iterations = 50; // I_s
    double lower = 0.1;            // SK_l
    double upper = 0.5;            // SK_u
};

/**
 * Shakes one population with a fixed intensity beta in [0,1]: every elite
 * member has ceil(beta*n) distinct gene positions perturbed — re-drawn
 * uniformly for direct decoders, swapped with another position for
 * permutation decoders (key multiset preserved) — and every non-elite member
 * is replaced by a fresh random chromosome. Everything is re-decoded and the
 * population re-sorted.
 */
void shake_with_intensity(Population& pop, double beta, const Decoder& decoder,
                          RngStream& rng);

/// Draws the intensity from [cfg.lower, cfg.upper] and shakes.
void shake(Population& pop, const ShakeConfig& cfg, const Decoder& decoder,
           RngStream& rng);

//----------------------------------------------------------------------------
// Multi-parent crossover
//----------------------------------------------------------------------------

/// Weight given to the parent of fitness rank r (r = 1 is the best).
/// All kinds are positive and non-increasing in r.
enum class BiasFunction {
    log_inverse, // 1 / log(r + 1)
    linear,      // 1 / r
    quadratic,   // 1 / r^2
    cubic,       // 1 / r^3
    exponential, // e^-r
    constant     // 1 / total parents
};

std::string_view to_string(BiasFunction bias);
std::optional<BiasFunction> bias_from_string(std::string_view name);

double bias_value(BiasFunction bias, std::size_t rank, std::size_t total);

struct MultiParentConfig {
    std::size_t total_parents = 3; // pi_t
    std::size_t elite_parents = 2; // pi_e; 1 <= pi_e < pi_t
    BiasFunction bias = BiasFunction::log_inverse;
};

/// Per-rank selection probabilities Phi(r)/sum Phi; positive, non-increasing,
/// summing to 1. Throws ConfigError if any weight is non-positive (e.g. an
/// underflowed exponential for very large parent counts).
std::vector<double> bias_probabilities(const MultiParentConfig& cfg);

/**
 * Gene-wise multi-parent mating: for every gene, parent j is chosen with
 * probability Phi(r(j))/sum and its key inherited. `parents` must hold
 * exactly total_parents chromosomes already ranked best-first (ascending
 * fitness, ties elite-first then index).
 */
Chromosome multi_parent_crossover(std::span<const Chromosome* const> parents,
                                  const MultiParentConfig& cfg, RngStream& rng);

//----------------------------------------------------------------------------
// Implicit path-relinking
//----------------------------------------------------------------------------

/// How the base end of a qualifying pair is picked.
enum class IprSelection { best_solution, random_elite };

std::string_view to_string(IprSelection sel);
std::optional<IprSelection> ipr_selection_from_string(std::string_view name);

struct IprConfig {
    IprSelection selection = IprSelection::best_solution; // sel
    double candidate_pairs_pct = 1.0; // cp%: fraction of elite pairs tested
    double min_distance = 0.15;       // md
    std::size_t block_size = 1;       // bs, in genes
    double path_pct = 0.3;            // ps%: fraction of blocks walked
    std::uint64_t iterations = 100;   // I_ipr: trigger period
    // Defaults to the distance implied by the decoder type when unset.
    std::optional<DistanceKind> distance;
};

enum class IprOutcome { applied, no_pair_above_md, no_improvement };

std::string_view to_string(IprOutcome outcome);

/// One committed step of the walk, kept for diagnostics and invariants.
struct IprStep {
    std::size_t block = 0;
    double distance_to_guide = 0;
    double fitness = 0;
};

struct IprResult {
    IprOutcome outcome = IprOutcome::no_improvement;
    std::optional<Chromosome> chromosome;
    std::vector<IprStep> steps;
};

/**
 * Block-wise greedy walk from a base solution toward a guide in key space.
 *
 * Genes are grouped into ceil(n/bs) consecutive blocks and the walk runs
 * ceil(ps% * blocks) steps. Each step copies, out of the not-yet-copied
 * blocks, the one whose guide keys give the working solution the best
 * decoded fitness (ties to the lowest block index), and records the
 * intermediate. The best intermediate is returned only when strictly better
 * than both endpoints.
 */
IprResult ipr_walk(const Chromosome& base, const Chromosome& guide,
                   const IprConfig& cfg, const Decoder& decoder);

/**
 * Full procedure between two populations: elite pairs are enumerated in
 * fitness order (lexicographic by the pair's ranks in A then B) up to
 * ceil(cp% * |eliteA| * |eliteB|) candidates; the first pair at distance
 * >= md becomes (base, guide) — base is the better endpoint under
 * best_solution, or a uniform pick of the two under random_elite — and the
 * walk above runs. Failure paths come back as reason codes, never errors.
 */
IprResult implicit_path_relinking(const Population& pop_a,
                                  const Population& pop_b,
                                  const IprConfig& cfg, const Decoder& decoder,
                                  RngStream& rng);

/// Single-population variant: pairs the best member against the elite most
/// distant from it (candidate list capped by cp%), then walks as above.
IprResult implicit_path_relinking_within(const Population& pop,
                                         const IprConfig& cfg,
                                         const Decoder& decoder,
                                         RngStream& rng);

} // namespace rkga

#endif // RKGA_ADVANCED_HPP_
