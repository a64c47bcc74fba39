#include "rkga/distance.hpp"

#include <algorithm>

#include "rkga/decoder.hpp"

namespace rkga {

std::string_view to_string(DistanceKind kind) {
    return kind == DistanceKind::hamming ? "hamming" : "kendall_tau";
}

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionError("distance requires chromosomes of equal length");
}

// Merge-sort inversion count; `work` is scratch of the same size.
std::size_t count_inversions(std::vector<std::size_t>& seq,
                             std::vector<std::size_t>& work, std::size_t lo,
                             std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::size_t inv = count_inversions(seq, work, lo, mid) +
                      count_inversions(seq, work, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (seq[i] <= seq[j]) {
            work[k++] = seq[i++];
        } else {
            inv += mid - i;
            work[k++] = seq[j++];
        }
    }
    while (i < mid) work[k++] = seq[i++];
    while (j < hi) work[k++] = seq[j++];
    std::copy(work.begin() + static_cast<std::ptrdiff_t>(lo),
              work.begin() + static_cast<std::ptrdiff_t>(hi),
              seq.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

} // namespace

std::size_t hamming_mismatches(std::span<const double> a,
                               std::span<const double> b) {
    require_same_length(a, b);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        mismatches += (a[i] >= 0.5) != (b[i] >= 0.5);
    return mismatches;
}

double hamming_distance(const Chromosome& a, const Chromosome& b) {
    if (a.size() == 0)
        throw DimensionError("hamming distance needs non-empty chromosomes");
    return static_cast<double>(hamming_mismatches(a.keys, b.keys)) /
           static_cast<double>(a.size());
}

std::size_t discordant_pairs(std::span<const double> a,
                             std::span<const double> b) {
    require_same_length(a, b);
    const std::size_t n = a.size();
    const auto perm_a = keys_to_permutation(a);
    const auto perm_b = keys_to_permutation(b);

    // Rank of every index under b's ordering, read off in a's order; the
    // discordant pairs are exactly the inversions of that sequence.
    std::vector<std::size_t> rank_b(n);
    for (std::size_t r = 0; r < n; ++r) rank_b[perm_b[r]] = r;
    std::vector<std::size_t> seq(n);
    for (std::size_t r = 0; r < n; ++r) seq[r] = rank_b[perm_a[r]];

    std::vector<std::size_t> work(n);
    return count_inversions(seq, work, 0, n);
}

double kendall_tau_distance(const Chromosome& a, const Chromosome& b) {
    const std::size_t n = a.size();
    if (n < 2)
        throw DimensionError("kendall-tau distance needs length >= 2");
    const std::size_t total = n * (n - 1) / 2;
    return static_cast<double>(discordant_pairs(a.keys, b.keys)) /
           static_cast<double>(total);
}

double chromosome_distance(DistanceKind kind, const Chromosome& a,
                           const Chromosome& b) {
    return kind == DistanceKind::hamming ? hamming_distance(a, b)
                                         : kendall_tau_distance(a, b);
}

} // namespace rkga
