#ifndef RKGA_TESTS_TEST_SUPPORT_HPP_
#define RKGA_TESTS_TEST_SUPPORT_HPP_

#include <memory>
#include <numeric>
#include <vector>

#include "rkga/decoder.hpp"
#include "rkga/decoders/knapsack.hpp"
#include "rkga/decoders/tsp.hpp"
#include "rkga/population.hpp"

namespace support {

/// Direct-type toy decoder: cost is the weighted sum of the keys.
class LinearDecoder final : public rkga::Decoder {
public:
    explicit LinearDecoder(std::vector<double> weights)
        : weights_(std::move(weights)) {}

    std::size_t chromosome_length() const override { return weights_.size(); }
    rkga::DecoderType type() const override {
        return rkga::DecoderType::direct;
    }
    double decode(std::span<const double> keys) const override {
        if (keys.size() != weights_.size())
            throw rkga::DimensionError("linear decoder length mismatch");
        double sum = 0.0;
        for (std::size_t i = 0; i < keys.size(); ++i)
            sum += weights_[i] * keys[i];
        return sum;
    }
    std::string describe(std::span<const double> keys) const override {
        return "linear cost " + std::to_string(decode(keys));
    }

private:
    std::vector<double> weights_;
};

/// Direct-type decoder whose cost is just the sum of keys (optimum: all 0).
inline LinearDecoder sum_decoder(std::size_t n) {
    return LinearDecoder(std::vector<double>(n, 1.0));
}

inline rkga::Chromosome chromosome(std::vector<double> keys) {
    rkga::Chromosome c;
    c.keys = std::move(keys);
    return c;
}

inline rkga::Chromosome evaluated(std::vector<double> keys,
                                  const rkga::Decoder& decoder) {
    rkga::Chromosome c = chromosome(std::move(keys));
    c.fitness = decoder.decode(c.keys);
    return c;
}

/// Sorted, evaluated population of random members.
inline rkga::Population random_population(std::size_t count, std::size_t n,
                                          const rkga::Decoder& decoder,
                                          rkga::RngStream& rng,
                                          std::size_t elite_count) {
    rkga::Population pop;
    pop.elite_count = elite_count;
    for (std::size_t i = 0; i < count; ++i) {
        auto c = rkga::new_random_chromosome(n, rng);
        c.fitness = decoder.decode(c.keys);
        pop.members.push_back(std::move(c));
    }
    pop.sort_by_fitness();
    return pop;
}

inline rkga::TspInstance square_instance() {
    // Unit square; the optimal tour is the 4.0 perimeter.
    return rkga::TspInstance{
        {{0, 0}, {0, 1}, {1, 1}, {1, 0}}, false};
}

inline rkga::TspInstance triangle_instance() {
    return rkga::TspInstance{{{0, 0}, {0, 1}, {1, 0}}, false};
}

} // namespace support

#endif // RKGA_TESTS_TEST_SUPPORT_HPP_
