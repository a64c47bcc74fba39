#ifndef RKGA_RNG_HPP_
#define RKGA_RNG_HPP_

#include <cstdint>
#include <random>

namespace rkga {

/**
 * Seeded random stream with a platform-independent draw sequence.
 *
 * Every randomized step of the framework pulls from one of these. Streams are
 * derived from a single master seed plus a stream id, so parallel populations
 * stay reproducible no matter how they are scheduled: same (seed, streamId,
 * draw sequence) yields the same numbers everywhere.
 *
 * mt19937_64 output is fixed by the standard; the [0,1) mapping and the
 * bounded-integer mapping below avoid std::uniform_*_distribution on purpose,
 * since those are implementation-defined.
 */
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id),
          engine_(derive_seed(seed, stream_id)) {}

    /// Uniform double in [0,1); strictly below 1 by construction
    /// (53 mantissa bits scaled by 2^-53).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + uniform() * (hi - lo);
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::size_t uniform_int(std::size_t bound) {
        // Multiply-shift keeps the sequence portable; the bias for the bounds
        // used here (<< 2^64) is far below anything observable.
        const unsigned __int128 wide =
            static_cast<unsigned __int128>(engine_()) * bound;
        return static_cast<std::size_t>(wide >> 64);
    }

    /// Raw 64 random bits.
    std::uint64_t next_bits() { return engine_(); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(splitmix64(seed) ^ splitmix64(stream + 1));
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// Stream ids reserved by the engine. Populations use ids 0..p-1.
namespace stream_id {
inline constexpr std::uint64_t orchestrator = 1u << 20;
inline constexpr std::uint64_t diversity = (1u << 20) + 1;
inline constexpr std::uint64_t online_control = (1u << 20) + 2;
} // namespace stream_id

} // namespace rkga

#endif // RKGA_RNG_HPP_
