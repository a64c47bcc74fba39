#ifndef RKGA_DECODERS_KNAPSACK_HPP_
#define RKGA_DECODERS_KNAPSACK_HPP_

#include <span>
#include <vector>

#include "rkga/decoder.hpp"

namespace rkga {

/// 0/1 knapsack instance. Items that cannot fit alone are flagged unusable
/// at load time and never selected.
struct KnapsackInstance {
    std::vector<double> weights;
    std::vector<double> values;
    double capacity = 0;

    std::size_t size() const { return weights.size(); }
    bool usable(std::size_t item) const { return weights[item] <= capacity; }

    /// Throws InvalidParameterError on non-positive weights/values/capacity.
    void check() const;
};

/**
 * Indicator-archetype decoder with repair: items whose key is >= 0.5 are
 * selected; while the load exceeds capacity the selected item with the
 * smallest key is dropped (key magnitude acts as keep-priority). Fitness is
 * the negated total value, so the engine's minimization maximizes value.
 */
class KnapsackDecoder final : public Decoder {
public:
    explicit KnapsackDecoder(KnapsackInstance instance);

    std::size_t chromosome_length() const override { return inst_.size(); }
    DecoderType type() const override { return DecoderType::direct; }
    double decode(std::span<const double> keys) const override;
    std::string describe(std::span<const double> keys) const override;

    /// Selected item indices, ascending, after repair.
    std::vector<std::size_t> selection(std::span<const double> keys) const;

    /// Keys 0.75 for selected items, 0.25 otherwise; the set must be
    /// feasible (usable items, within capacity, no duplicates).
    Chromosome encode_warm_start(std::span<const std::size_t> items) const;

    const KnapsackInstance& instance() const { return inst_; }

private:
    KnapsackInstance inst_;
};

} // namespace rkga

#endif // RKGA_DECODERS_KNAPSACK_HPP_
