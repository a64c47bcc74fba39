#ifndef RKGA_DECODERS_INSTANCE_IO_HPP_
#define RKGA_DECODERS_INSTANCE_IO_HPP_

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "rkga/decoders/knapsack.hpp"
#include "rkga/decoders/tsp.hpp"

namespace rkga {

/**
 * Plain-text instance formats, whitespace-delimited, '#' starts a comment:
 *
 *   TSP        header `n`, then n lines `x y`
 *   knapsack   header `n capacity`, then n lines `weight value`
 *
 * The two are told apart by the number of values on the header line.
 */
struct ParsedInstance {
    std::variant<TspInstance, KnapsackInstance> value;
    std::vector<std::string> warnings;

    bool is_tsp() const { return std::holds_alternative<TspInstance>(value); }
    const TspInstance& tsp() const { return std::get<TspInstance>(value); }
    const KnapsackInstance& knapsack() const {
        return std::get<KnapsackInstance>(value);
    }
};

/// Parses from a file; ParseError (with line number) on malformed input.
ParsedInstance parse_instance_file(const std::filesystem::path& path);

/// Parses from text; `name` is only used in error messages.
ParsedInstance parse_instance_text(std::string_view text,
                                   std::string_view name = "<input>");

std::string serialize(const TspInstance& inst);
std::string serialize(const KnapsackInstance& inst);

/// Seeded generators behind the CLI's random-instance helper.
/// Coordinates uniform in [0,1000)^2.
TspInstance random_tsp(std::size_t n, std::uint64_t seed);
/// Weights and values uniform in [1,100); capacity is 40% of total weight
/// (at least the largest single weight, so every item is usable).
KnapsackInstance random_knapsack(std::size_t n, std::uint64_t seed);

} // namespace rkga

#endif // RKGA_DECODERS_INSTANCE_IO_HPP_
