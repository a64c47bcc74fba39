#ifndef RKGA_DETAIL_FORMAT_HPP_
#define RKGA_DETAIL_FORMAT_HPP_

#include <charconv>
#include <string>
#include <system_error>

namespace rkga::detail {

/// Shortest round-trip decimal form of a double; locale-free and identical
/// across runs, which the byte-determinism contract of trace files relies on.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace rkga::detail

#endif // RKGA_DETAIL_FORMAT_HPP_
