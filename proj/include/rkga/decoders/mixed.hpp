#ifndef RKGA_DECODERS_MIXED_HPP_
#define RKGA_DECODERS_MIXED_HPP_

#include <span>
#include <vector>

#include "rkga/decoder.hpp"

namespace rkga {

/// One slice of a partitioned chromosome and how to read it.
struct MixedSegment {
    enum class Kind { permutation, indicator };
    Kind kind = Kind::permutation;
    std::size_t length = 0;
    std::size_t classes = 0; // indicator segments only
};

/// Decoded slice: a local permutation of 0..length-1, or one class index
/// per gene. offset is the segment's first gene in the chromosome.
struct MixedPart {
    std::size_t offset = 0;
    MixedSegment::Kind kind = MixedSegment::Kind::permutation;
    std::vector<std::size_t> values;
};

/// Decodes each segment independently by its archetype. Segment lengths
/// must sum to the chromosome length (LayoutError otherwise).
std::vector<MixedPart> mixed_decode(std::span<const MixedSegment> layout,
                                    std::span<const double> keys);

/**
 * Synthetic decoder over a partitioned chromosome, used to exercise the
 * engine with mixed layouts: cost adds each permutation segment's
 * normalized inversion count and each indicator segment's mean class index.
 * The global optimum is therefore all segments sorted and all classes zero.
 */
class MixedDecoder final : public Decoder {
public:
    explicit MixedDecoder(std::vector<MixedSegment> layout);

    std::size_t chromosome_length() const override { return length_; }
    DecoderType type() const override { return DecoderType::direct; }
    double decode(std::span<const double> keys) const override;
    std::string describe(std::span<const double> keys) const override;

    std::span<const MixedSegment> layout() const { return layout_; }

private:
    std::vector<MixedSegment> layout_;
    std::size_t length_ = 0;
};

} // namespace rkga

#endif // RKGA_DECODERS_MIXED_HPP_
