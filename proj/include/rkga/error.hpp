#ifndef RKGA_ERROR_HPP_
#define RKGA_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rkga {

/// Base class for all framework errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Chromosome/segment length does not match what the operation expects.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An operation required decoded fitness that is not present.
class NotEvaluatedError : public Error {
public:
    using Error::Error;
};

/// A single argument is outside its valid range.
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

/// Parameter set rejected before any evolution happens.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Decoder failed (or produced a non-finite fitness) for a chromosome.
class DecodeError : public Error {
public:
    using Error::Error;
};

/// Mixed-chromosome layout does not cover the chromosome exactly.
class LayoutError : public Error {
public:
    using Error::Error;
};

/// Warm-start solution cannot be encoded (infeasible or malformed).
class EncodeError : public Error {
public:
    using Error::Error;
};

/// Instance or config file rejected; carries the offending line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace rkga

#endif // RKGA_ERROR_HPP_
