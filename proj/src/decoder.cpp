#include "rkga/decoder.hpp"

#include <algorithm>
#include <numeric>

namespace rkga {

std::string_view to_string(DecoderType type) {
    return type == DecoderType::direct ? "direct" : "permutation";
}

std::vector<std::size_t> keys_to_permutation(std::span<const double> keys) {
    std::vector<std::size_t> perm(keys.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t i, std::size_t j) {
                         return keys[i] < keys[j];
                     });
    return perm;
}

std::vector<std::size_t> keys_to_classes(std::span<const double> keys,
                                         std::size_t num_classes) {
    if (num_classes == 0)
        throw InvalidParameterError("keys_to_classes needs at least one class");
    std::vector<std::size_t> classes(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        // keys < 1 keep the product below num_classes; the clamp only guards
        // against rounding at the very top of the interval.
        auto cls = static_cast<std::size_t>(keys[i] *
                                            static_cast<double>(num_classes));
        classes[i] = std::min(cls, num_classes - 1);
    }
    return classes;
}

} // namespace rkga
