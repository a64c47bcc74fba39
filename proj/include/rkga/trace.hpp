#ifndef RKGA_TRACE_HPP_
#define RKGA_TRACE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace rkga {

/// Engine events surfaced in the trace; at most one of each per generation.
struct TraceEvent {
    enum class Kind { restart, shake, migration, ipr_applied, ipr_skipped };
    Kind kind = Kind::restart;
    std::string detail; // ipr_skipped carries its reason code here

    /// Stable token used in trace files, e.g. "ipr_skipped:no_pair_above_md".
    std::string token() const;
};

/// One generation of the run. Record 0 describes the freshly evaluated
/// initial population; evolution starts at record 1.
struct GenerationRecord {
    std::uint64_t generation = 0;
    double f_star = 0;          // best fitness ever, non-increasing
    double population_best = 0; // best fitness currently in any population
    double median_fitness = 0;  // over the union of populations
    double diversity = 0;       // sampled key diversity of the union
    double elapsed_seconds = 0; // informative only, excluded from determinism
    // Effective parameters this generation (vary under online control).
    std::size_t pop_size = 0;
    std::size_t elite_count = 0;
    std::size_t mutant_count = 0;
    double elite_pct = 0;
    double mutant_pct = 0;
    double rho = 0;
    std::vector<TraceEvent> events;
};

struct FinalRecord {
    double f_star = 0;
    std::string solution;
    std::uint64_t total_generations = 0;
    std::uint64_t found_at_generation = 0;
    double wall_seconds = 0; // informative only
    std::uint64_t seed = 0;
};

struct RunTrace {
    std::vector<GenerationRecord> generations;
    FinalRecord final;
};

/// CSV schema shared by the engine trace writers and the CLI.
std::string trace_csv_header();
std::string trace_csv_row(const GenerationRecord& rec);

} // namespace rkga

#endif // RKGA_TRACE_HPP_
