#include "rkga/chromosome.hpp"

namespace rkga {

std::string_view to_string(Origin origin) {
    switch (origin) {
    case Origin::random: return "random";
    case Origin::offspring: return "offspring";
    case Origin::mutant: return "mutant";
    case Origin::warmstart: return "warmstart";
    case Origin::ipr: return "ipr";
    }
    return "?";
}

Chromosome new_random_chromosome(std::size_t n, RngStream& rng, Origin origin) {
    if (n == 0)
        throw DimensionError("chromosome length must be at least 1");
    Chromosome c;
    c.keys.resize(n);
    for (auto& k : c.keys) k = rng.uniform();
    c.origin = origin;
    return c;
}

} // namespace rkga
