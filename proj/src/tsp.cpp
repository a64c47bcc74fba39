#include "rkga/decoders/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rkga {

void TspInstance::check() const {
    if (cities.size() < 3)
        throw InvalidParameterError("TSP instance needs at least 3 cities");
    for (const auto& c : cities)
        if (!std::isfinite(c.x) || !std::isfinite(c.y))
            throw InvalidParameterError("TSP coordinates must be finite");
}

double tour_length(const TspInstance& inst, std::span<const std::size_t> tour) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < tour.size(); ++k)
        total += inst.distance(tour[k], tour[k + 1]);
    total += inst.distance(tour.back(), tour.front());
    return total;
}

TspDecoder::TspDecoder(TspInstance instance) : inst_(std::move(instance)) {
    inst_.check();
}

std::vector<std::size_t> TspDecoder::tour(std::span<const double> keys) const {
    if (keys.size() != inst_.size())
        throw DimensionError("chromosome length does not match city count");
    return keys_to_permutation(keys);
}

double TspDecoder::decode(std::span<const double> keys) const {
    return tour_length(inst_, tour(keys));
}

std::string TspDecoder::describe(std::span<const double> keys) const {
    const auto t = tour(keys);
    std::ostringstream out;
    out << "tour:";
    for (auto city : t) out << ' ' << city;
    return out.str();
}

Chromosome TspDecoder::encode_warm_start(
    std::span<const std::size_t> tour) const {
    const std::size_t n = inst_.size();
    if (tour.size() != n)
        throw EncodeError("warm-start tour has the wrong length");
    std::vector<bool> seen(n, false);
    for (auto city : tour) {
        if (city >= n || seen[city])
            throw EncodeError("warm-start tour is not a permutation");
        seen[city] = true;
    }
    Chromosome c;
    c.keys.resize(n);
    for (std::size_t p = 0; p < n; ++p)
        c.keys[tour[p]] = (static_cast<double>(p) + 0.5) /
                          static_cast<double>(n);
    c.origin = Origin::warmstart;
    return c;
}

} // namespace rkga
