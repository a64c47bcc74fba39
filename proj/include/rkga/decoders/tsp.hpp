#ifndef RKGA_DECODERS_TSP_HPP_
#define RKGA_DECODERS_TSP_HPP_

#include <cmath>
#include <span>
#include <vector>

#include "rkga/decoder.hpp"

namespace rkga {

/// Symmetric Euclidean TSP instance. Immutable after construction.
struct TspInstance {
    struct Point {
        double x = 0;
        double y = 0;
    };

    std::vector<Point> cities;
    // Classic instance conventions round each edge to the nearest integer;
    // default is the exact real metric.
    bool rounded = false;

    std::size_t size() const { return cities.size(); }

    double distance(std::size_t i, std::size_t j) const {
        const double dx = cities[i].x - cities[j].x;
        const double dy = cities[i].y - cities[j].y;
        const double d = std::sqrt(dx * dx + dy * dy);
        return rounded ? std::round(d) : d;
    }

    /// Throws InvalidParameterError unless >= 3 cities with finite coords.
    void check() const;
};

/// Cyclic tour length, including the closing edge.
double tour_length(const TspInstance& inst, std::span<const std::size_t> tour);

/**
 * Permutation-archetype decoder: the tour visits cities in ascending key
 * order and the cost is the cyclic tour length.
 */
class TspDecoder final : public Decoder {
public:
    explicit TspDecoder(TspInstance instance);

    std::size_t chromosome_length() const override { return inst_.size(); }
    DecoderType type() const override { return DecoderType::permutation; }
    double decode(std::span<const double> keys) const override;
    std::string describe(std::span<const double> keys) const override;

    std::vector<std::size_t> tour(std::span<const double> keys) const;

    /// Keys that decode back to exactly this tour: position p of the tour
    /// gets key (p + 0.5)/n, centered so mild perturbations keep the order.
    Chromosome encode_warm_start(std::span<const std::size_t> tour) const;

    const TspInstance& instance() const { return inst_; }

private:
    TspInstance inst_;
};

} // namespace rkga

#endif // RKGA_DECODERS_TSP_HPP_
