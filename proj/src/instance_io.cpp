#include "rkga/decoders/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rkga/detail/format.hpp"
#include "rkga/rng.hpp"

namespace rkga {

namespace {

struct Token {
    std::string text;
    std::size_t line;
};

// Whitespace-delimited tokens with their 1-based line; '#' cuts a line short.
std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t line = 1;
    std::string current;
    std::size_t current_line = 0;
    bool in_comment = false;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back({current, current_line});
            current.clear();
        }
    };
    for (char ch : text) {
        if (ch == '\n') {
            flush();
            in_comment = false;
            ++line;
            continue;
        }
        if (in_comment) continue;
        if (ch == '#') {
            flush();
            in_comment = true;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            flush();
            continue;
        }
        if (current.empty()) current_line = line;
        current.push_back(ch);
    }
    flush();
    return tokens;
}

class TokenReader {
public:
    TokenReader(std::vector<Token> tokens, std::string name)
        : tokens_(std::move(tokens)), name_(std::move(name)) {}

    bool done() const { return pos_ >= tokens_.size(); }

    std::size_t last_line() const {
        return tokens_.empty() ? 1 : tokens_.back().line;
    }

    const Token& next(const char* what) {
        if (done())
            fail(last_line(), std::string("expected ") + what +
                                  " but reached end of input");
        consumed_line_ = tokens_[pos_].line;
        return tokens_[pos_++];
    }

    /// Line of the most recently consumed token.
    std::size_t consumed_line() const { return consumed_line_; }

    double next_double(const char* what) {
        const Token& tok = next(what);
        double value = 0;
        const auto res = std::from_chars(
            tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (res.ec != std::errc{} || res.ptr != tok.text.data() + tok.text.size())
            fail(tok.line, std::string("expected ") + what + ", got '" +
                               tok.text + "'");
        return value;
    }

    std::size_t next_count(const char* what) {
        const Token& tok = next(what);
        std::size_t value = 0;
        const auto res = std::from_chars(
            tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (res.ec != std::errc{} || res.ptr != tok.text.data() + tok.text.size())
            fail(tok.line, std::string("expected ") + what + ", got '" +
                               tok.text + "'");
        return value;
    }

    // Number of tokens sharing the first token's line (peek only).
    std::size_t first_line_width() const {
        if (tokens_.empty()) return 0;
        std::size_t width = 0;
        while (width < tokens_.size() &&
               tokens_[width].line == tokens_[0].line)
            ++width;
        return width;
    }

    [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
        throw ParseError(name_ + ":" + std::to_string(line) + ": " + msg, line);
    }

    void expect_done() {
        if (!done())
            fail(tokens_[pos_].line,
                 "unexpected trailing token '" + tokens_[pos_].text + "'");
    }

private:
    std::vector<Token> tokens_;
    std::string name_;
    std::size_t pos_ = 0;
    std::size_t consumed_line_ = 1;
};

ParsedInstance parse_tsp(TokenReader& reader) {
    const std::size_t n = reader.next_count("city count");
    if (n < 3) reader.fail(1, "a TSP instance needs at least 3 cities");
    TspInstance inst;
    inst.cities.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        TspInstance::Point p;
        p.x = reader.next_double("x coordinate");
        p.y = reader.next_double("y coordinate");
        inst.cities.push_back(p);
    }
    reader.expect_done();
    inst.check();
    return {inst, {}};
}

ParsedInstance parse_knapsack(TokenReader& reader) {
    const std::size_t n = reader.next_count("item count");
    const double capacity = reader.next_double("capacity");
    if (n == 0) reader.fail(1, "a knapsack instance needs at least one item");
    if (!(capacity > 0)) reader.fail(1, "capacity must be positive");
    KnapsackInstance inst;
    inst.capacity = capacity;
    inst.weights.reserve(n);
    inst.values.reserve(n);
    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = reader.next_double("item weight");
        const double v = reader.next_double("item value");
        if (!(w > 0) || !(v > 0))
            reader.fail(reader.consumed_line(),
                        "item weights and values must be positive");
        if (w > capacity) {
            std::ostringstream msg;
            msg << "item " << i << " is heavier than the capacity ("
                << w << " > " << capacity << "); flagged unusable";
            warnings.push_back(msg.str());
        }
        inst.weights.push_back(w);
        inst.values.push_back(v);
    }
    reader.expect_done();
    inst.check();
    return {inst, std::move(warnings)};
}

} // namespace

ParsedInstance parse_instance_text(std::string_view text,
                                   std::string_view name) {
    TokenReader reader(tokenize(text), std::string(name));
    const std::size_t header_width = reader.first_line_width();
    if (header_width == 0)
        reader.fail(1, "empty instance file");
    if (header_width == 1) return parse_tsp(reader);
    if (header_width == 2) return parse_knapsack(reader);
    reader.fail(1, "header must be 'n' (TSP) or 'n capacity' (knapsack)");
}

ParsedInstance parse_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string() + ":1: cannot open instance file", 1);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path.string());
}

std::string serialize(const TspInstance& inst) {
    std::ostringstream out;
    out << inst.size() << '\n';
    for (const auto& c : inst.cities)
        out << detail::format_double(c.x) << ' ' << detail::format_double(c.y)
            << '\n';
    return out.str();
}

std::string serialize(const KnapsackInstance& inst) {
    std::ostringstream out;
    out << inst.size() << ' ' << detail::format_double(inst.capacity) << '\n';
    for (std::size_t i = 0; i < inst.size(); ++i)
        out << detail::format_double(inst.weights[i]) << ' '
            << detail::format_double(inst.values[i]) << '\n';
    return out.str();
}

TspInstance random_tsp(std::size_t n, std::uint64_t seed) {
    if (n < 3)
        throw InvalidParameterError("random TSP needs at least 3 cities");
    RngStream rng(seed, 0);
    TspInstance inst;
    inst.cities.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        inst.cities.push_back({rng.uniform(0.0, 1000.0),
                               rng.uniform(0.0, 1000.0)});
    return inst;
}

KnapsackInstance random_knapsack(std::size_t n, std::uint64_t seed) {
    if (n == 0)
        throw InvalidParameterError("random knapsack needs at least one item");
    RngStream rng(seed, 0);
    KnapsackInstance inst;
    inst.weights.reserve(n);
    inst.values.reserve(n);
    double total = 0.0, heaviest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = rng.uniform(1.0, 100.0);
        inst.weights.push_back(w);
        inst.values.push_back(rng.uniform(1.0, 100.0));
        total += w;
        heaviest = std::max(heaviest, w);
    }
    inst.capacity = std::max(heaviest, 0.4 * total);
    return inst;
}

} // namespace rkga
