#include "rkga/decoders/mixed.hpp"

#include <numeric>
#include <sstream>

namespace rkga {

std::vector<MixedPart> mixed_decode(std::span<const MixedSegment> layout,
                                    std::span<const double> keys) {
    std::size_t total = 0;
    for (const auto& seg : layout) {
        if (seg.length == 0)
            throw LayoutError("mixed layout has an empty segment");
        if (seg.kind == MixedSegment::Kind::indicator && seg.classes == 0)
            throw LayoutError("indicator segment needs a class count");
        total += seg.length;
    }
    if (total != keys.size())
        throw LayoutError("mixed layout does not cover the chromosome");

    std::vector<MixedPart> parts;
    parts.reserve(layout.size());
    std::size_t offset = 0;
    for (const auto& seg : layout) {
        const auto slice = keys.subspan(offset, seg.length);
        MixedPart part;
        part.offset = offset;
        part.kind = seg.kind;
        part.values = seg.kind == MixedSegment::Kind::permutation
                          ? keys_to_permutation(slice)
                          : keys_to_classes(slice, seg.classes);
        parts.push_back(std::move(part));
        offset += seg.length;
    }
    return parts;
}

MixedDecoder::MixedDecoder(std::vector<MixedSegment> layout)
    : layout_(std::move(layout)) {
    if (layout_.empty()) throw LayoutError("mixed layout must not be empty");
    for (const auto& seg : layout_) {
        if (seg.length == 0)
            throw LayoutError("mixed layout has an empty segment");
        if (seg.kind == MixedSegment::Kind::indicator && seg.classes == 0)
            throw LayoutError("indicator segment needs a class count");
        length_ += seg.length;
    }
}

double MixedDecoder::decode(std::span<const double> keys) const {
    if (keys.size() != length_)
        throw DimensionError("chromosome length does not match the layout");
    double cost = 0.0;
    for (const auto& part : mixed_decode(layout_, keys)) {
        const std::size_t len = part.values.size();
        if (part.kind == MixedSegment::Kind::permutation) {
            if (len < 2) continue;
            std::size_t inversions = 0;
            for (std::size_t i = 0; i < len; ++i)
                for (std::size_t j = i + 1; j < len; ++j)
                    inversions += part.values[i] > part.values[j];
            cost += static_cast<double>(inversions) /
                    static_cast<double>(len * (len - 1) / 2);
        } else {
            double sum = 0.0;
            for (auto cls : part.values) sum += static_cast<double>(cls);
            cost += sum / static_cast<double>(len);
        }
    }
    return cost;
}

std::string MixedDecoder::describe(std::span<const double> keys) const {
    std::ostringstream out;
    bool first = true;
    for (const auto& part : mixed_decode(layout_, keys)) {
        if (!first) out << " | ";
        first = false;
        out << (part.kind == MixedSegment::Kind::permutation ? "perm@"
                                                             : "classes@")
            << part.offset << ":";
        for (auto v : part.values) out << ' ' << v;
    }
    return out.str();
}

} // namespace rkga
