#ifndef RKGA_DISTANCE_HPP_
#define RKGA_DISTANCE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "rkga/chromosome.hpp"

namespace rkga {

/// Distance used by implicit path-relinking; must match the decoder type
/// (hamming for direct decoders, kendallTau for permutation decoders).
enum class DistanceKind { hamming, kendall_tau };

std::string_view to_string(DistanceKind kind);

/// Number of positions whose 0.5-thresholded indicators differ.
std::size_t hamming_mismatches(std::span<const double> a,
                               std::span<const double> b);

/// Normalized thresholded-Hamming distance in [0,1].
double hamming_distance(const Chromosome& a, const Chromosome& b);

/// Number of index pairs ordered differently by the two induced
/// permutations (counted in O(n log n)).
std::size_t discordant_pairs(std::span<const double> a,
                             std::span<const double> b);

/// Normalized Kendall-tau distance in [0,1]; needs length >= 2.
double kendall_tau_distance(const Chromosome& a, const Chromosome& b);

double chromosome_distance(DistanceKind kind, const Chromosome& a,
                           const Chromosome& b);

} // namespace rkga

#endif // RKGA_DISTANCE_HPP_
