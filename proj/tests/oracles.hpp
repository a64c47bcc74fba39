// Independent reference implementations used to check the library. These are
// deliberately written the dumb, obviously-correct way (selection sort,
// exhaustive enumeration, quadratic pair counting) and never call the code
// paths they verify.

#ifndef RKGA_TESTS_ORACLES_HPP_
#define RKGA_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "rkga/decoders/knapsack.hpp"
#include "rkga/decoders/tsp.hpp"

namespace oracle {

// Selection sort of indices by (key, index).
inline std::vector<std::size_t> permutation(std::span<const double> keys) {
    const std::size_t n = keys.size();
    std::vector<std::size_t> remaining(n), out;
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    while (!remaining.empty()) {
        std::size_t best = 0;
        for (std::size_t pos = 1; pos < remaining.size(); ++pos) {
            const bool smaller =
                keys[remaining[pos]] < keys[remaining[best]] ||
                (keys[remaining[pos]] == keys[remaining[best]] &&
                 remaining[pos] < remaining[best]);
            if (smaller) best = pos;
        }
        out.push_back(remaining[best]);
        remaining.erase(remaining.begin() +
                        static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

// Sum of consecutive distances plus the closing edge, recomputed from the
// reported tour.
inline double tour_length(const rkga::TspInstance& inst,
                          std::span<const std::size_t> tour) {
    double total = 0.0;
    for (std::size_t k = 0; k < tour.size(); ++k)
        total += inst.distance(tour[k], tour[(k + 1) % tour.size()]);
    return total;
}

// Exhaustive optimum over every permutation of the cities.
inline double best_tour_length(const rkga::TspInstance& inst) {
    std::vector<std::size_t> tour(inst.size());
    std::iota(tour.begin(), tour.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        best = std::min(best, oracle::tour_length(inst, tour));
    } while (std::next_permutation(tour.begin(), tour.end()));
    return best;
}

inline double subset_value(const rkga::KnapsackInstance& inst,
                           std::span<const std::size_t> items) {
    double value = 0.0;
    for (auto item : items) value += inst.values[item];
    return value;
}

inline double subset_weight(const rkga::KnapsackInstance& inst,
                            std::span<const std::size_t> items) {
    double weight = 0.0;
    for (auto item : items) weight += inst.weights[item];
    return weight;
}

// Exhaustive optimum value over every feasible subset (2^n enumeration).
inline double best_knapsack_value(const rkga::KnapsackInstance& inst) {
    const std::size_t n = inst.size();
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        double weight = 0.0, value = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1ULL << i)) {
                weight += inst.weights[i];
                value += inst.values[i];
            }
        }
        if (weight <= inst.capacity) best = std::max(best, value);
    }
    return best;
}

// Position-by-position mismatch count of the 0.5-thresholded indicators.
inline std::size_t hamming_mismatches(std::span<const double> a,
                                      std::span<const double> b) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool bit_a = a[i] >= 0.5;
        const bool bit_b = b[i] >= 0.5;
        if (bit_a != bit_b) ++count;
    }
    return count;
}

// All-pairs discordance count between the two induced permutations.
inline std::size_t discordant_pairs(std::span<const double> a,
                                    std::span<const double> b) {
    const std::size_t n = a.size();
    const auto pa = permutation(a);
    const auto pb = permutation(b);
    std::vector<std::size_t> rank_a(n), rank_b(n);
    for (std::size_t r = 0; r < n; ++r) {
        rank_a[pa[r]] = r;
        rank_b[pb[r]] = r;
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool order_a = rank_a[i] < rank_a[j];
            const bool order_b = rank_b[i] < rank_b[j];
            if (order_a != order_b) ++count;
        }
    return count;
}

// Mean normalized thresholded-Hamming distance over every member pair.
inline double diversity(std::span<const rkga::Chromosome> members) {
    const std::size_t m = members.size();
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            sum += static_cast<double>(hamming_mismatches(members[i].keys,
                                                          members[j].keys)) /
                   static_cast<double>(members[i].keys.size());
            ++pairs;
        }
    return sum / static_cast<double>(pairs);
}

// Greedy block walk simulated independently: at each step every remaining
// block is tried exhaustively and the best decoded fitness wins, ties to the
// lowest block index. Returns the committed block sequence with fitnesses.
struct WalkStep {
    std::size_t block;
    double fitness;
};

inline std::vector<WalkStep> greedy_walk(const std::vector<double>& base_keys,
                                         const std::vector<double>& guide_keys,
                                         std::size_t block_size,
                                         std::size_t steps,
                                         const rkga::Decoder& decoder) {
    const std::size_t n = base_keys.size();
    const std::size_t blocks = (n + block_size - 1) / block_size;
    std::vector<double> working = base_keys;
    std::vector<bool> used(blocks, false);
    std::vector<WalkStep> out;
    for (std::size_t s = 0; s < steps && s < blocks; ++s) {
        std::size_t best_block = blocks;
        double best_fitness = std::numeric_limits<double>::infinity();
        for (std::size_t blk = 0; blk < blocks; ++blk) {
            if (used[blk]) continue;
            std::vector<double> candidate = working;
            for (std::size_t g = blk * block_size;
                 g < std::min(n, (blk + 1) * block_size); ++g)
                candidate[g] = guide_keys[g];
            const double fitness = decoder.decode(candidate);
            if (fitness < best_fitness) {
                best_fitness = fitness;
                best_block = blk;
            }
        }
        for (std::size_t g = best_block * block_size;
             g < std::min(n, (best_block + 1) * block_size); ++g)
            working[g] = guide_keys[g];
        used[best_block] = true;
        out.push_back({best_block, best_fitness});
    }
    return out;
}

} // namespace oracle

#endif // RKGA_TESTS_ORACLES_HPP_
