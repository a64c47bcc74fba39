#include "rkga/population.hpp"

#include <algorithm>
#include <numeric>

#include "rkga/distance.hpp"

namespace rkga {

bool Population::fully_evaluated() const {
    return std::all_of(members.begin(), members.end(),
                       [](const Chromosome& c) { return c.evaluated(); });
}

void Population::sort_by_fitness() {
    if (!fully_evaluated())
        throw NotEvaluatedError("cannot sort a population with unevaluated members");
    std::stable_sort(members.begin(), members.end(),
                     [](const Chromosome& a, const Chromosome& b) {
                         return *a.fitness < *b.fitness;
                     });
}

bool Population::is_sorted_by_fitness() const {
    return std::is_sorted(members.begin(), members.end(),
                          [](const Chromosome& a, const Chromosome& b) {
                              return *a.fitness < *b.fitness;
                          });
}

std::pair<std::span<const Chromosome>, std::span<const Chromosome>>
partition(Population& pop, std::size_t elite_count) {
    if (!pop.fully_evaluated())
        throw NotEvaluatedError("partition requires every member evaluated");
    if (elite_count == 0 || 2 * elite_count >= pop.size())
        throw InvalidParameterError(
            "elite count must satisfy 1 <= elite < population/2");
    if (!pop.is_sorted_by_fitness()) pop.sort_by_fitness();
    pop.elite_count = elite_count;
    return {pop.elite(), pop.non_elite()};
}

namespace {

constexpr std::size_t kMaxSampledPairs = 1000;

double pair_distance(const Chromosome& a, const Chromosome& b) {
    return hamming_distance(a, b);
}

} // namespace

double diversity(std::span<const Chromosome* const> members, RngStream& rng) {
    const std::size_t m = members.size();
    if (m < 2)
        throw InvalidParameterError("diversity needs at least two members");

    const std::size_t total_pairs = m * (m - 1) / 2;
    double sum = 0.0;
    if (total_pairs <= kMaxSampledPairs) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                sum += pair_distance(*members[i], *members[j]);
        return sum / static_cast<double>(total_pairs);
    }
    for (std::size_t s = 0; s < kMaxSampledPairs; ++s) {
        const std::size_t i = rng.uniform_int(m);
        std::size_t j = rng.uniform_int(m - 1);
        if (j >= i) ++j;
        sum += pair_distance(*members[i], *members[j]);
    }
    return sum / static_cast<double>(kMaxSampledPairs);
}

double diversity(const Population& pop, RngStream& rng) {
    std::vector<const Chromosome*> ptrs;
    ptrs.reserve(pop.size());
    for (const auto& c : pop.members) ptrs.push_back(&c);
    return diversity(std::span<const Chromosome* const>(ptrs), rng);
}

} // namespace rkga
