#ifndef RKGA_DECODER_HPP_
#define RKGA_DECODER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rkga/chromosome.hpp"

namespace rkga {

/// Decoding archetype. Permutation decoders read keys through their sort
/// order; direct decoders read key values themselves. Path-relinking picks
/// its distance from this.
enum class DecoderType { direct, permutation };

std::string_view to_string(DecoderType type);

/**
 * The problem-dependent half of the framework.
 *
 * Implementations must be deterministic, thread-safe and total: every point
 * of [0,1)^n maps to a feasible solution (repair happens inside the
 * decoder), and identical keys always produce identical fitness. Fitness is
 * a cost: minimized by the engine; maximization problems negate inside.
 */
class Decoder {
public:
    virtual ~Decoder() = default;

    virtual std::size_t chromosome_length() const = 0;
    virtual DecoderType type() const = 0;

    /// Cost of the solution the keys encode. Hot path.
    virtual double decode(std::span<const double> keys) const = 0;

    /// Human/machine-readable description of the decoded solution.
    virtual std::string describe(std::span<const double> keys) const = 0;
};

/// Indices 0..n-1 ordered by ascending key, ties by ascending index.
std::vector<std::size_t> keys_to_permutation(std::span<const double> keys);

/// Class index floor(key * num_classes) per gene; never emits num_classes.
std::vector<std::size_t> keys_to_classes(std::span<const double> keys,
                                         std::size_t num_classes);

} // namespace rkga

#endif // RKGA_DECODER_HPP_
