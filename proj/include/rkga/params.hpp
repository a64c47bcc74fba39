#ifndef RKGA_PARAMS_HPP_
#define RKGA_PARAMS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rkga/advanced.hpp"

namespace rkga {

/// Algorithm family. RKGA mates uniformly over the whole population with an
/// unconstrained gene-inheritance probability; BRKGA always takes parent a
/// from the elite set with rho > 0.5; BRKGA-MP replaces the pair with a
/// ranked multi-parent pool and ignores rho.
enum class Variant { rkga, brkga, brkga_mp };

std::string_view to_string(Variant variant);
std::optional<Variant> variant_from_string(std::string_view name);

struct EngineMode {
    Variant variant = Variant::brkga;
    double rho = 0.7; // rho for BRKGA, rho_a for RKGA, unused for BRKGA-MP
};

/**
 * Every tunable of the framework in one validated bundle.
 *
 * Hard limits make evolution well defined (checked as errors); the
 * literature's recommended ranges are surfaced as warnings only, so
 * experiments outside them stay possible.
 */
struct BrkgaParams {
    std::size_t n = 0;           // chromosome length, from the problem
    std::size_t pop_size = 100;  // |P|
    double elite_pct = 0.2;      // P_e%
    double mutant_pct = 0.15;    // P_m%
    EngineMode mode;
    IslandConfig islands;              // p, g, i
    std::uint64_t restart_iters = 300; // I_r
    std::optional<ShakeConfig> shake;
    std::optional<MultiParentConfig> multi_parent;
    std::optional<IprConfig> ipr;

    /// Elite/mutant counts: percentage of |P| rounded to nearest, clamped so
    /// each is >= 1, the elite set stays below |P|/2, and at least one
    /// offspring remains.
    std::size_t elite_count() const;
    std::size_t mutant_count() const;
    std::size_t offspring_count() const {
        return pop_size - elite_count() - mutant_count();
    }
};

struct Violation {
    enum class Severity { error, warning };
    Severity severity = Severity::error;
    std::string field;
    std::string message;
};

/// Hard violations come back as errors, values outside the recommended
/// ranges as warnings. An empty result means fully clean.
std::vector<Violation> validate(const BrkgaParams& params);

inline bool has_errors(const std::vector<Violation>& vs) {
    for (const auto& v : vs)
        if (v.severity == Violation::Severity::error) return true;
    return false;
}

std::string describe(const std::vector<Violation>& vs);

/// Mid-range defaults for a length-n problem; guaranteed to validate with
/// zero errors and zero warnings.
BrkgaParams default_params(std::size_t n);

//----------------------------------------------------------------------------
// Random online parameter control
//----------------------------------------------------------------------------

/// Per-generation uniform sampling bounds for the controlled parameters.
/// Bounds must sit inside the hard validity ranges.
struct RandomControlBounds {
    struct SizeRange {
        std::size_t lo = 0, hi = 0;
    };
    struct RealRange {
        double lo = 0, hi = 0;
    };
    SizeRange pop_size;
    RealRange elite_pct;
    RealRange mutant_pct;
    RealRange rho;
};

/// Values in effect for one generation under online control.
struct ParamOverlay {
    std::size_t pop_size = 0;
    double elite_pct = 0, mutant_pct = 0, rho = 0;
};

/// Throws ConfigError if the bounds leave the hard ranges for `mode`.
void check_bounds(const RandomControlBounds& bounds, const EngineMode& mode);

/// One fresh uniform draw per controlled parameter. Draw order is fixed
/// (pop size, elite pct, mutant pct, rho) so runs are reproducible.
ParamOverlay sample_online_params(const RandomControlBounds& bounds,
                                  RngStream& rng);

/// params with the overlay values swapped in.
BrkgaParams apply_overlay(const BrkgaParams& params,
                          const ParamOverlay& overlay);

//----------------------------------------------------------------------------
// Config file format
//----------------------------------------------------------------------------

/**
 * Flat `key = value` text, one pair per line, '#' comments. Core keys
 * (pop_size, elite_pct, mutant_pct, rho, p, g, i, restart_iters) fall back
 * to `base` when omitted. The shake_*, mp_* and ipr_* groups are
 * all-or-nothing: a complete group enables the feature, an absent group
 * disables it, and a partial group is an error. Unknown keys are errors.
 */
BrkgaParams parse_config_text(std::string_view text,
                              std::string_view name = "<config>",
                              const BrkgaParams& base = {});
BrkgaParams parse_config_file(const std::filesystem::path& path,
                              const BrkgaParams& base = {});
std::string serialize_config(const BrkgaParams& params);

} // namespace rkga

#endif // RKGA_PARAMS_HPP_
