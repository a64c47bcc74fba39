#ifndef RKGA_CHROMOSOME_HPP_
#define RKGA_CHROMOSOME_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "rkga/error.hpp"
#include "rkga/rng.hpp"

namespace rkga {

/// How a chromosome entered the population; kept for diagnostics only.
/// Elite survivors are copies and keep the origin of their source.
enum class Origin { random, offspring, mutant, warmstart, ipr };

std::string_view to_string(Origin origin);

/**
 * A solution encoded as a fixed-length vector of keys in [0,1).
 *
 * The fitness cache, when present, must be exactly the value the decoder
 * returns for these keys. Anything that mutates keys has to reset it.
 */
struct Chromosome {
    std::vector<double> keys;
    std::optional<double> fitness;
    Origin origin = Origin::random;

    std::size_t size() const { return keys.size(); }
    bool evaluated() const { return fitness.has_value(); }
};

/// Draws a fresh chromosome of n uniform keys. Fitness is left unset.
Chromosome new_random_chromosome(std::size_t n, RngStream& rng,
                                 Origin origin = Origin::random);

} // namespace rkga

#endif // RKGA_CHROMOSOME_HPP_
