#include "rkga/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rkga/detail/format.hpp"
#include "rkga/error.hpp"

namespace rkga {

std::string_view to_string(Variant variant) {
    switch (variant) {
    case Variant::rkga: return "rkga";
    case Variant::brkga: return "brkga";
    case Variant::brkga_mp: return "brkga-mp";
    }
    return "?";
}

std::optional<Variant> variant_from_string(std::string_view name) {
    if (name == "rkga") return Variant::rkga;
    if (name == "brkga") return Variant::brkga;
    if (name == "brkga-mp" || name == "brkga_mp") return Variant::brkga_mp;
    return std::nullopt;
}

namespace {

std::size_t round_count(double pct, std::size_t pop_size) {
    return static_cast<std::size_t>(
        std::lround(pct * static_cast<double>(pop_size)));
}

// Largest admissible elite/mutant set: strictly below |P|/2.
std::size_t half_cap(std::size_t pop_size) { return (pop_size - 1) / 2; }

} // namespace

std::size_t BrkgaParams::elite_count() const {
    const std::size_t cap = half_cap(pop_size);
    return std::clamp<std::size_t>(round_count(elite_pct, pop_size), 1,
                                   std::max<std::size_t>(cap, 1));
}

std::size_t BrkgaParams::mutant_count() const {
    const std::size_t cap = half_cap(pop_size);
    std::size_t m = std::clamp<std::size_t>(round_count(mutant_pct, pop_size),
                                            1, std::max<std::size_t>(cap, 1));
    // Keep at least one offspring slot.
    const std::size_t e = elite_count();
    if (e + m > pop_size - 1) m = pop_size - 1 - e;
    return m;
}

namespace {

void error(std::vector<Violation>& out, std::string field, std::string msg) {
    out.push_back({Violation::Severity::error, std::move(field),
                   std::move(msg)});
}

void warning(std::vector<Violation>& out, std::string field, std::string msg) {
    out.push_back({Violation::Severity::warning, std::move(field),
                   std::move(msg)});
}

std::string show(double v) { return detail::format_double(v); }

void warn_outside(std::vector<Violation>& out, const char* field, double value,
                  double lo, double hi) {
    if (value < lo || value > hi)
        warning(out, field,
                show(value) + " is outside the recommended range [" +
                    show(lo) + ", " + show(hi) + "]");
}

} // namespace

std::vector<Violation> validate(const BrkgaParams& p) {
    std::vector<Violation> out;

    if (p.n == 0) error(out, "n", "chromosome length must be at least 1");
    if (p.pop_size < 3) {
        error(out, "pop_size", "population must hold at least 3 members");
        return out; // later checks assume a usable size
    }

    if (!(p.elite_pct > 0.0) || !(p.elite_pct < 0.5))
        error(out, "elite_pct", "elite percentage must lie in (0, 0.5)");
    if (!(p.mutant_pct > 0.0) || !(p.mutant_pct < 0.5))
        error(out, "mutant_pct", "mutant percentage must lie in (0, 0.5)");
    const auto pop = static_cast<double>(p.pop_size);
    if (std::floor(p.elite_pct * pop) + std::floor(p.mutant_pct * pop) >= pop)
        error(out, "elite_pct",
              "elite and mutant partitions leave no room for offspring");

    switch (p.mode.variant) {
    case Variant::brkga:
        if (!(p.mode.rho > 0.5) || !(p.mode.rho <= 1.0))
            error(out, "rho", "BRKGA needs rho in (0.5, 1]");
        break;
    case Variant::rkga:
        if (!(p.mode.rho > 0.0) || !(p.mode.rho < 1.0))
            error(out, "rho", "RKGA needs rho_a in (0, 1)");
        break;
    case Variant::brkga_mp:
        if (!p.multi_parent)
            error(out, "mp_total",
                  "BRKGA-MP requires a multi-parent configuration");
        break;
    }

    if (p.islands.populations == 0)
        error(out, "p", "number of populations must be at least 1");
    if (p.islands.populations >= 2) {
        if (p.islands.period == 0)
            error(out, "g", "migration period must be at least 1");
        if (p.islands.migrants == 0)
            error(out, "i", "migrant count must be at least 1");
        else if (!has_errors(out) && p.islands.migrants > p.elite_count())
            error(out, "i",
                  "cannot migrate more individuals than the elite set holds");
    }

    if (p.restart_iters == 0)
        error(out, "restart_iters", "restart trigger must be at least 1");

    if (p.shake) {
        if (p.shake->iterations == 0)
            error(out, "shake_iters", "shake trigger must be at least 1");
        if (!(p.shake->lower >= 0.0) || !(p.shake->upper <= 1.0) ||
            !(p.shake->lower <= p.shake->upper))
            error(out, "shake_lower",
                  "shake intensities need 0 <= lower <= upper <= 1");
    }

    if (p.multi_parent) {
        const auto& mp = *p.multi_parent;
        if (mp.elite_parents == 0)
            error(out, "mp_elite", "at least one elite parent is required");
        if (mp.elite_parents >= mp.total_parents)
            error(out, "mp_elite",
                  "elite parents must be fewer than total parents");
        if (mp.total_parents > p.pop_size)
            error(out, "mp_total",
                  "total parents cannot exceed the population size");
        if (!has_errors(out)) {
            if (mp.elite_parents > p.elite_count())
                error(out, "mp_elite",
                      "elite parents cannot exceed the elite set size");
            if (mp.total_parents - mp.elite_parents >
                p.pop_size - p.elite_count())
                error(out, "mp_total",
                      "non-elite parents cannot exceed the non-elite set size");
        }
    }

    if (p.ipr) {
        const auto& ipr = *p.ipr;
        if (!(ipr.candidate_pairs_pct > 0.0) || !(ipr.candidate_pairs_pct <= 1.0))
            error(out, "ipr_cp", "candidate-pair fraction must lie in (0, 1]");
        if (!(ipr.min_distance >= 0.0) || !(ipr.min_distance <= 1.0))
            error(out, "ipr_md", "minimum distance must lie in [0, 1]");
        if (ipr.block_size == 0)
            error(out, "ipr_bs", "block size must be at least 1");
        if (!(ipr.path_pct > 0.0) || !(ipr.path_pct <= 1.0))
            error(out, "ipr_ps", "path fraction must lie in (0, 1]");
        if (ipr.iterations == 0)
            error(out, "ipr_iters", "path-relinking trigger must be at least 1");
    }

    if (has_errors(out)) return out;

    // Recommended ranges from the literature: warnings only.
    const double rec_lo = std::min(100.0, 10.0 * static_cast<double>(p.n));
    const double rec_hi = std::min(500.0, 10.0 * static_cast<double>(p.n));
    warn_outside(out, "pop_size", pop, rec_lo, rec_hi);
    warn_outside(out, "elite_pct", p.elite_pct, 0.1, 0.5);
    warn_outside(out, "mutant_pct", p.mutant_pct, 0.1, 0.5);
    if (p.mode.variant == Variant::brkga)
        warn_outside(out, "rho", p.mode.rho, 0.5, 1.0);
    if (p.islands.populations > 3)
        warning(out, "p", std::to_string(p.islands.populations) +
                              " populations exceed the recommended {1,...,3}");
    if (p.islands.populations >= 2) {
        warn_outside(out, "g", static_cast<double>(p.islands.period), 50, 500);
        if (p.islands.migrants > 2)
            warning(out, "i", std::to_string(p.islands.migrants) +
                                  " migrants exceed the recommended {1,2}");
    }
    warn_outside(out, "restart_iters", static_cast<double>(p.restart_iters),
                 200, 500);
    if (p.shake) {
        warn_outside(out, "shake_iters",
                     static_cast<double>(p.shake->iterations), 20, 100);
        warn_outside(out, "shake_lower", p.shake->lower, 0.1, 0.5);
        warn_outside(out, "shake_upper", p.shake->upper, 0.5, 0.9);
    }
    if (p.multi_parent) {
        warn_outside(out, "mp_total",
                     static_cast<double>(p.multi_parent->total_parents), 3, 10);
        warn_outside(out, "mp_elite",
                     static_cast<double>(p.multi_parent->elite_parents), 1, 7);
    }
    if (p.ipr) {
        warn_outside(out, "ipr_md", p.ipr->min_distance, 0.0, 0.30);
        warn_outside(out, "ipr_ps", p.ipr->path_pct, 0.01, 1.0);
        warn_outside(out, "ipr_iters", static_cast<double>(p.ipr->iterations),
                     50, 500);
    }
    return out;
}

std::string describe(const std::vector<Violation>& vs) {
    std::ostringstream out;
    for (const auto& v : vs) {
        out << (v.severity == Violation::Severity::error ? "error" : "warning")
            << " [" << v.field << "]: " << v.message << '\n';
    }
    return out.str();
}

BrkgaParams default_params(std::size_t n) {
    if (n == 0)
        throw InvalidParameterError("chromosome length must be at least 1");
    BrkgaParams p;
    p.n = n;
    p.pop_size = std::max<std::size_t>(std::min<std::size_t>(100, 10 * n), 3);
    p.elite_pct = 0.2;
    p.mutant_pct = 0.15;
    p.mode = {Variant::brkga, 0.7};
    p.islands = {1, 100, 1};
    p.restart_iters = 300;
    return p;
}

void check_bounds(const RandomControlBounds& b, const EngineMode& mode) {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw ConfigError(msg);
    };
    require(b.pop_size.lo >= 3 && b.pop_size.lo <= b.pop_size.hi,
            "pop-size bounds must satisfy 3 <= lo <= hi");
    require(b.elite_pct.lo > 0.0 && b.elite_pct.hi < 0.5 &&
                b.elite_pct.lo <= b.elite_pct.hi,
            "elite-pct bounds must sit inside (0, 0.5)");
    require(b.mutant_pct.lo > 0.0 && b.mutant_pct.hi < 0.5 &&
                b.mutant_pct.lo <= b.mutant_pct.hi,
            "mutant-pct bounds must sit inside (0, 0.5)");
    require(b.rho.lo <= b.rho.hi, "rho bounds must satisfy lo <= hi");
    if (mode.variant == Variant::brkga)
        require(b.rho.lo > 0.5 && b.rho.hi <= 1.0,
                "rho bounds must sit inside (0.5, 1] for BRKGA");
    else if (mode.variant == Variant::rkga)
        require(b.rho.lo > 0.0 && b.rho.hi < 1.0,
                "rho bounds must sit inside (0, 1) for RKGA");
}

ParamOverlay sample_online_params(const RandomControlBounds& b,
                                  RngStream& rng) {
    ParamOverlay o;
    o.pop_size = b.pop_size.lo +
                 rng.uniform_int(b.pop_size.hi - b.pop_size.lo + 1);
    o.elite_pct = rng.uniform(b.elite_pct.lo, b.elite_pct.hi);
    o.mutant_pct = rng.uniform(b.mutant_pct.lo, b.mutant_pct.hi);
    o.rho = rng.uniform(b.rho.lo, b.rho.hi);
    return o;
}

BrkgaParams apply_overlay(const BrkgaParams& params,
                          const ParamOverlay& overlay) {
    BrkgaParams p = params;
    p.pop_size = overlay.pop_size;
    p.elite_pct = overlay.elite_pct;
    p.mutant_pct = overlay.mutant_pct;
    p.mode.rho = overlay.rho;
    return p;
}

//----------------------------------------------------------------------------
// Config file format
//----------------------------------------------------------------------------

namespace {

const std::set<std::string> kKnownKeys = {
    "pop_size",    "elite_pct",   "mutant_pct", "rho",       "p",
    "g",           "i",           "restart_iters", "shake_iters",
    "shake_lower", "shake_upper", "mp_total",   "mp_elite",  "bias",
    "ipr_sel",     "ipr_cp",      "ipr_md",     "ipr_bs",    "ipr_ps",
    "ipr_iters"};

struct KeyValue {
    std::string value;
    std::size_t line;
};

[[noreturn]] void config_fail(std::string_view name, std::size_t line,
                              const std::string& msg) {
    throw ParseError(std::string(name) + ":" + std::to_string(line) + ": " +
                         msg,
                     line);
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_real(std::string_view name, const KeyValue& kv) {
    double value = 0;
    const auto res = std::from_chars(kv.value.data(),
                                     kv.value.data() + kv.value.size(), value);
    if (res.ec != std::errc{} || res.ptr != kv.value.data() + kv.value.size())
        config_fail(name, kv.line, "'" + kv.value + "' is not a number");
    return value;
}

std::uint64_t parse_unsigned(std::string_view name, const KeyValue& kv) {
    std::uint64_t value = 0;
    const auto res = std::from_chars(kv.value.data(),
                                     kv.value.data() + kv.value.size(), value);
    if (res.ec != std::errc{} || res.ptr != kv.value.data() + kv.value.size())
        config_fail(name, kv.line, "'" + kv.value + "' is not a whole number");
    return value;
}

} // namespace

BrkgaParams parse_config_text(std::string_view text, std::string_view name,
                              const BrkgaParams& base) {
    std::map<std::string, KeyValue> pairs;
    std::size_t line_no = 0;
    std::string_view rest = text;
    while (!rest.empty()) {
        ++line_no;
        const std::size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{}
                                            : rest.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            config_fail(name, line_no, "expected 'key = value'");
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value =
            trim(std::string_view(stripped).substr(eq + 1));
        if (!kKnownKeys.count(key))
            config_fail(name, line_no, "unknown key '" + key + "'");
        if (pairs.count(key))
            config_fail(name, line_no, "duplicate key '" + key + "'");
        if (value.empty())
            config_fail(name, line_no, "missing value for '" + key + "'");
        pairs.emplace(key, KeyValue{value, line_no});
    }

    auto take = [&](const char* key) -> std::optional<KeyValue> {
        auto it = pairs.find(key);
        if (it == pairs.end()) return std::nullopt;
        return it->second;
    };

    BrkgaParams p = base;
    p.shake.reset();
    p.multi_parent.reset();
    p.ipr.reset();
    if (auto kv = take("pop_size"))
        p.pop_size = static_cast<std::size_t>(parse_unsigned(name, *kv));
    if (auto kv = take("elite_pct")) p.elite_pct = parse_real(name, *kv);
    if (auto kv = take("mutant_pct")) p.mutant_pct = parse_real(name, *kv);
    if (auto kv = take("rho")) p.mode.rho = parse_real(name, *kv);
    if (auto kv = take("p"))
        p.islands.populations = static_cast<std::size_t>(
            parse_unsigned(name, *kv));
    if (auto kv = take("g")) p.islands.period = parse_unsigned(name, *kv);
    if (auto kv = take("i"))
        p.islands.migrants = static_cast<std::size_t>(parse_unsigned(name, *kv));
    if (auto kv = take("restart_iters"))
        p.restart_iters = parse_unsigned(name, *kv);

    auto group = [&](std::initializer_list<const char*> keys,
                     const char* label) {
        std::size_t present = 0, first_line = 0;
        for (const char* key : keys)
            if (auto it = pairs.find(key); it != pairs.end()) {
                ++present;
                if (first_line == 0) first_line = it->second.line;
            }
        if (present != 0 && present != keys.size())
            config_fail(name, first_line,
                        std::string("the ") + label +
                            " block must be given completely or not at all");
        return present == keys.size();
    };

    if (group({"shake_iters", "shake_lower", "shake_upper"}, "shake")) {
        ShakeConfig shake;
        shake.iterations = parse_unsigned(name, *take("shake_iters"));
        shake.lower = parse_real(name, *take("shake_lower"));
        shake.upper = parse_real(name, *take("shake_upper"));
        p.shake = shake;
    }
    if (group({"mp_total", "mp_elite", "bias"}, "multi-parent")) {
        MultiParentConfig mp;
        mp.total_parents =
            static_cast<std::size_t>(parse_unsigned(name, *take("mp_total")));
        mp.elite_parents =
            static_cast<std::size_t>(parse_unsigned(name, *take("mp_elite")));
        const auto kv = *take("bias");
        const auto bias = bias_from_string(kv.value);
        if (!bias)
            config_fail(name, kv.line, "unknown bias function '" + kv.value +
                                           "'");
        mp.bias = *bias;
        p.multi_parent = mp;
    }
    if (group({"ipr_sel", "ipr_cp", "ipr_md", "ipr_bs", "ipr_ps", "ipr_iters"},
              "path-relinking")) {
        IprConfig ipr;
        const auto kv = *take("ipr_sel");
        const auto sel = ipr_selection_from_string(kv.value);
        if (!sel)
            config_fail(name, kv.line,
                        "unknown selection method '" + kv.value + "'");
        ipr.selection = *sel;
        ipr.candidate_pairs_pct = parse_real(name, *take("ipr_cp"));
        ipr.min_distance = parse_real(name, *take("ipr_md"));
        ipr.block_size =
            static_cast<std::size_t>(parse_unsigned(name, *take("ipr_bs")));
        ipr.path_pct = parse_real(name, *take("ipr_ps"));
        ipr.iterations = parse_unsigned(name, *take("ipr_iters"));
        p.ipr = ipr;
    }
    return p;
}

BrkgaParams parse_config_file(const std::filesystem::path& path,
                              const BrkgaParams& base) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string() + ":1: cannot open config file", 1);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string(), base);
}

std::string serialize_config(const BrkgaParams& p) {
    std::ostringstream out;
    out << "pop_size = " << p.pop_size << '\n'
        << "elite_pct = " << detail::format_double(p.elite_pct) << '\n'
        << "mutant_pct = " << detail::format_double(p.mutant_pct) << '\n'
        << "rho = " << detail::format_double(p.mode.rho) << '\n'
        << "p = " << p.islands.populations << '\n'
        << "g = " << p.islands.period << '\n'
        << "i = " << p.islands.migrants << '\n'
        << "restart_iters = " << p.restart_iters << '\n';
    if (p.shake) {
        out << "shake_iters = " << p.shake->iterations << '\n'
            << "shake_lower = " << detail::format_double(p.shake->lower) << '\n'
            << "shake_upper = " << detail::format_double(p.shake->upper)
            << '\n';
    }
    if (p.multi_parent) {
        out << "mp_total = " << p.multi_parent->total_parents << '\n'
            << "mp_elite = " << p.multi_parent->elite_parents << '\n'
            << "bias = " << to_string(p.multi_parent->bias) << '\n';
    }
    if (p.ipr) {
        out << "ipr_sel = " << to_string(p.ipr->selection) << '\n'
            << "ipr_cp = " << detail::format_double(p.ipr->candidate_pairs_pct)
            << '\n'
            << "ipr_md = " << detail::format_double(p.ipr->min_distance) << '\n'
            << "ipr_bs = " << p.ipr->block_size << '\n'
            << "ipr_ps = " << detail::format_double(p.ipr->path_pct) << '\n'
            << "ipr_iters = " << p.ipr->iterations << '\n';
    }
    return out.str();
}

} // namespace rkga
