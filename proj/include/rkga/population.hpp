#ifndef RKGA_POPULATION_HPP_
#define RKGA_POPULATION_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rkga/chromosome.hpp"

namespace rkga {

/**
 * A fitness-ordered set of chromosomes with an elite/non-elite split.
 *
 * After evaluation the members are kept sorted by ascending fitness
 * (minimization), ties broken by the pre-sort position so equal-fitness
 * populations stay in insertion order. The first elite_count members form
 * the elite set.
 */
struct Population {
    std::vector<Chromosome> members;
    std::size_t elite_count = 0;
    std::uint64_t generation = 0;

    std::size_t size() const { return members.size(); }
    bool fully_evaluated() const;

    /// Stable sort by ascending fitness. All members must be evaluated.
    void sort_by_fitness();
    bool is_sorted_by_fitness() const;

    /// Best (lowest) fitness; population must be sorted and non-empty.
    double best_fitness() const { return *members.front().fitness; }
    const Chromosome& best() const { return members.front(); }

    std::span<const Chromosome> elite() const {
        return {members.data(), elite_count};
    }
    std::span<const Chromosome> non_elite() const {
        return {members.data() + elite_count, members.size() - elite_count};
    }
};

/**
 * Splits a population into its elite and non-elite views, sorting it first
 * if needed. Requires every member evaluated and
 * 1 <= elite_count < size()/2.
 */
std::pair<std::span<const Chromosome>, std::span<const Chromosome>>
partition(Population& pop, std::size_t elite_count);

/**
 * Mean pairwise key diversity in [0,1]: thresholded-Hamming distance
 * averaged over all member pairs, or over 1000 sampled pairs when the
 * population has more than that. Needs at least two members.
 */
double diversity(const Population& pop, RngStream& rng);

/// Same measure over an arbitrary set of chromosomes (used for the union of
/// parallel populations in trace records).
double diversity(std::span<const Chromosome* const> members, RngStream& rng);

} // namespace rkga

#endif // RKGA_POPULATION_HPP_
