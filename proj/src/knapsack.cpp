#include "rkga/decoders/knapsack.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace rkga {

void KnapsackInstance::check() const {
    if (weights.size() != values.size())
        throw InvalidParameterError("knapsack weights/values size mismatch");
    if (weights.empty())
        throw InvalidParameterError("knapsack instance needs at least one item");
    if (!(capacity > 0))
        throw InvalidParameterError("knapsack capacity must be positive");
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (!(weights[i] > 0) || !(values[i] > 0))
            throw InvalidParameterError(
                "knapsack weights and values must be positive");
}

KnapsackDecoder::KnapsackDecoder(KnapsackInstance instance)
    : inst_(std::move(instance)) {
    inst_.check();
}

std::vector<std::size_t> KnapsackDecoder::selection(
    std::span<const double> keys) const {
    if (keys.size() != inst_.size())
        throw DimensionError("chromosome length does not match item count");

    std::vector<std::size_t> chosen;
    double load = 0.0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i] >= 0.5 && inst_.usable(i)) {
            chosen.push_back(i);
            load += inst_.weights[i];
        }
    }
    // Repair: drop the lowest-key selections first; the key acts as a
    // keep-priority, so high-key items survive.
    while (load > inst_.capacity) {
        std::size_t drop = 0;
        double drop_key = std::numeric_limits<double>::infinity();
        for (std::size_t pos = 0; pos < chosen.size(); ++pos) {
            if (keys[chosen[pos]] < drop_key) {
                drop_key = keys[chosen[pos]];
                drop = pos;
            }
        }
        load -= inst_.weights[chosen[drop]];
        chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    return chosen;
}

double KnapsackDecoder::decode(std::span<const double> keys) const {
    double total = 0.0;
    for (auto item : selection(keys)) total += inst_.values[item];
    return total == 0.0 ? 0.0 : -total;
}

std::string KnapsackDecoder::describe(std::span<const double> keys) const {
    const auto items = selection(keys);
    double weight = 0.0, value = 0.0;
    std::ostringstream out;
    out << "items:";
    for (auto item : items) {
        out << ' ' << item;
        weight += inst_.weights[item];
        value += inst_.values[item];
    }
    out << " (value " << value << ", weight " << weight << ")";
    return out.str();
}

Chromosome KnapsackDecoder::encode_warm_start(
    std::span<const std::size_t> items) const {
    const std::size_t n = inst_.size();
    std::vector<bool> selected(n, false);
    double load = 0.0;
    for (auto item : items) {
        if (item >= n) throw EncodeError("warm-start item index out of range");
        if (selected[item]) throw EncodeError("warm-start item listed twice");
        if (!inst_.usable(item))
            throw EncodeError("warm-start selects an unusable item");
        selected[item] = true;
        load += inst_.weights[item];
    }
    if (load > inst_.capacity)
        throw EncodeError("warm-start selection exceeds capacity");

    Chromosome c;
    c.keys.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.keys[i] = selected[i] ? 0.75 : 0.25;
    c.origin = Origin::warmstart;
    return c;
}

} // namespace rkga
