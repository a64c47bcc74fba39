// Command-line front end: solve single instances, compare variants over
// paired seeds, or run with random online parameter control.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rkga/decoders/instance_io.hpp"
#include "rkga/decoders/knapsack.hpp"
#include "rkga/decoders/tsp.hpp"
#include "rkga/detail/format.hpp"
#include "rkga/engine.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitInternal = 4;

//----------------------------------------------------------------------------
// Instance resolution (files plus the seeded random-instance helpers)
//----------------------------------------------------------------------------

// `random-tsp:<n>[:<seed>]` and `random-knapsack:<n>[:<seed>]` generate an
// instance in memory instead of reading a file.
rkga::ParsedInstance resolve_instance(const std::string& spec) {
    auto parse_pseudo = [&](std::string_view rest)
        -> std::pair<std::size_t, std::uint64_t> {
        std::size_t n = 0;
        std::uint64_t seed = 1;
        const std::size_t colon = rest.find(':');
        const std::string_view n_text = rest.substr(0, colon);
        auto res = std::from_chars(n_text.data(), n_text.data() + n_text.size(),
                                   n);
        if (res.ec != std::errc{} || res.ptr != n_text.data() + n_text.size())
            throw rkga::ParseError(spec + ": expected random-<kind>:<n>[:<seed>]",
                                   1);
        if (colon != std::string_view::npos) {
            const std::string_view seed_text = rest.substr(colon + 1);
            res = std::from_chars(seed_text.data(),
                                  seed_text.data() + seed_text.size(), seed);
            if (res.ec != std::errc{} ||
                res.ptr != seed_text.data() + seed_text.size())
                throw rkga::ParseError(spec + ": bad seed in instance spec", 1);
        }
        return {n, seed};
    };

    if (spec.rfind("random-tsp:", 0) == 0) {
        const auto [n, seed] = parse_pseudo(std::string_view(spec).substr(11));
        return {rkga::random_tsp(n, seed), {}};
    }
    if (spec.rfind("random-knapsack:", 0) == 0) {
        const auto [n, seed] = parse_pseudo(std::string_view(spec).substr(16));
        return {rkga::random_knapsack(n, seed), {}};
    }
    return rkga::parse_instance_file(spec);
}

std::unique_ptr<rkga::Decoder> make_decoder(const rkga::ParsedInstance& inst) {
    if (inst.is_tsp())
        return std::make_unique<rkga::TspDecoder>(inst.tsp());
    return std::make_unique<rkga::KnapsackDecoder>(inst.knapsack());
}

//----------------------------------------------------------------------------
// Shared run plumbing
//----------------------------------------------------------------------------

struct StopFlags {
    std::optional<std::uint64_t> max_generations;
    std::optional<double> max_seconds;
    std::optional<double> target;
};

rkga::StopCriteria make_stop(const StopFlags& flags) {
    rkga::StopCriteria stop;
    stop.max_generations = flags.max_generations;
    stop.max_seconds = flags.max_seconds;
    stop.target_value = flags.target;
    if (!stop.max_generations && !stop.max_seconds && !stop.target_value)
        stop.max_generations = 1000; // keep a bare `solve` finite
    return stop;
}

rkga::BrkgaParams load_params(const std::string& config_path,
                              const std::string& variant_name, std::size_t n) {
    rkga::BrkgaParams params = rkga::default_params(n);
    if (!config_path.empty())
        params = rkga::parse_config_file(config_path, params);
    params.n = n;

    const auto variant = rkga::variant_from_string(variant_name);
    if (!variant)
        throw rkga::ConfigError("unknown variant '" + variant_name + "'");
    params.mode.variant = *variant;
    if (*variant == rkga::Variant::brkga_mp && !params.multi_parent)
        params.multi_parent = rkga::MultiParentConfig{};
    return params;
}

// Validates; warnings go to stderr, hard errors abort with exit code 3.
void enforce_params(const rkga::BrkgaParams& params) {
    const auto violations = rkga::validate(params);
    if (rkga::has_errors(violations))
        throw rkga::ConfigError("configuration rejected:\n" +
                                rkga::describe(violations));
    if (!violations.empty()) std::cerr << rkga::describe(violations);
}

struct RunOutput {
    rkga::RunResult result;
    std::string trace_csv;
};

RunOutput execute_run(const rkga::BrkgaParams& params,
                      const rkga::Decoder& decoder, rkga::RunOptions options) {
    std::ostringstream trace;
    trace << rkga::trace_csv_header() << '\n';
    auto downstream = options.hooks.on_record;
    options.hooks.on_record = [&](const rkga::GenerationRecord& rec) {
        trace << rkga::trace_csv_row(rec) << '\n';
        if (downstream) downstream(rec);
    };
    RunOutput out{rkga::run(params, decoder, options), {}};
    out.trace_csv = trace.str();
    return out;
}

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw rkga::Error("cannot write " + path.string());
    out << content;
}

json summary_json(const rkga::RunResult& result, const std::string& instance,
                  const std::string& variant, std::uint64_t seed) {
    json j;
    j["instance"] = instance;
    j["variant"] = variant;
    j["seed"] = seed;
    j["f_star"] = result.best.fitness;
    j["solution"] = result.trace.final.solution;
    j["total_generations"] = result.trace.final.total_generations;
    j["found_at_generation"] = result.trace.final.found_at_generation;
    j["wall_seconds"] = result.trace.final.wall_seconds;
    return j;
}

//----------------------------------------------------------------------------
// Statistics for `compare`
//----------------------------------------------------------------------------

// Linear-interpolation quantile on a sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
    const std::size_t m = sorted.size();
    if (m == 1) return sorted[0];
    const double h = q * static_cast<double>(m - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= m) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] -
                                                         sorted[lo]);
}

// Two-sided exact sign test on paired differences; ties dropped, p = 1 when
// every pair ties.
double sign_test_p(std::size_t wins, std::size_t losses) {
    const std::size_t m = wins + losses;
    if (m == 0) return 1.0;
    auto binom_cdf = [m](std::size_t k) {
        double coeff = 1.0;
        double sum = 0.0;
        for (std::size_t j = 0; j <= k; ++j) {
            sum += coeff;
            coeff = coeff * static_cast<double>(m - j) /
                    static_cast<double>(j + 1);
        }
        return sum * std::pow(0.5, static_cast<double>(m));
    };
    const std::size_t k = std::min(wins, losses);
    const double p = 2.0 * binom_cdf(k);
    return std::min(p, 1.0);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const std::size_t dots = part.find("..");
        if (dots != std::string::npos) {
            const std::uint64_t lo = std::stoull(part.substr(0, dots));
            const std::uint64_t hi = std::stoull(part.substr(dots + 2));
            if (hi < lo)
                throw rkga::ParseError("seed range '" + part + "' is empty", 1);
            for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        } else if (!part.empty()) {
            seeds.push_back(std::stoull(part));
        }
    }
    if (seeds.empty())
        throw rkga::ParseError("no seeds given", 1);
    return seeds;
}

//----------------------------------------------------------------------------
// Subcommands
//----------------------------------------------------------------------------

struct CommonArgs {
    std::string instance;
    std::string config;
    std::string variant = "brkga";
    std::string out_dir;
    std::uint64_t seed = 1;
    StopFlags stop;
};

void add_stop_flags(CLI::App* cmd, StopFlags& stop) {
    cmd->add_option("--max-generations", stop.max_generations,
                    "Stop after this many generations");
    cmd->add_option("--max-seconds", stop.max_seconds,
                    "Stop at the first generation boundary past this time");
    cmd->add_option("--target", stop.target,
                    "Stop once the best cost reaches this value");
}

int run_solve(const CommonArgs& args,
              const std::optional<rkga::RandomControlBounds>& control) {
    const auto parsed = resolve_instance(args.instance);
    for (const auto& w : parsed.warnings)
        std::cerr << "warning: " << w << '\n';
    const auto decoder = make_decoder(parsed);

    rkga::BrkgaParams params =
        load_params(args.config, args.variant, decoder->chromosome_length());
    enforce_params(params);

    rkga::RunOptions options;
    options.stop = make_stop(args.stop);
    options.seed = args.seed;
    options.online_control = control;

    const RunOutput out = execute_run(params, *decoder, std::move(options));

    if (!args.out_dir.empty()) {
        fs::create_directories(args.out_dir);
        write_file(fs::path(args.out_dir) / "trace.csv", out.trace_csv);
        write_file(fs::path(args.out_dir) / "summary.json",
                   summary_json(out.result, args.instance, args.variant,
                                args.seed)
                           .dump() +
                       "\n");
    }

    std::cout << "f_star: "
              << rkga::detail::format_double(out.result.best.fitness) << '\n'
              << out.result.trace.final.solution << '\n'
              << "generations: " << out.result.trace.final.total_generations
              << " (best found at "
              << out.result.trace.final.found_at_generation << ")\n";
    return kExitOk;
}

struct CompareRun {
    std::string variant;
    std::uint64_t seed = 0;
    double f_star = 0;
    std::string trace_csv;
};

int run_compare(const CommonArgs& args, const std::string& variants_text,
                const std::string& seeds_text) {
    std::vector<std::string> variants;
    {
        std::stringstream ss(variants_text);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) variants.push_back(part);
    }
    if (variants.size() < 2)
        throw rkga::ParseError("compare needs at least two variants", 1);
    const auto seeds = parse_seed_list(seeds_text);
    if (seeds.size() < 10)
        throw rkga::ParseError(
            "compare needs at least 10 seeds for the summary statistics", 1);

    const auto parsed = resolve_instance(args.instance);
    for (const auto& w : parsed.warnings)
        std::cerr << "warning: " << w << '\n';
    const auto decoder = make_decoder(parsed);

    // All variants share the instance, the stop budget and the seed list.
    std::vector<rkga::BrkgaParams> params_per_variant;
    for (const auto& name : variants) {
        auto params =
            load_params(args.config, name, decoder->chromosome_length());
        enforce_params(params);
        params_per_variant.push_back(std::move(params));
    }

    std::vector<CompareRun> runs(variants.size() * seeds.size());
    auto one_run = [&](std::size_t v, std::size_t s) {
        const auto& params = params_per_variant[v];
        rkga::RunOptions options;
        options.stop = make_stop(args.stop);
        options.seed = seeds[s];
        RunOutput out = execute_run(params, *decoder, std::move(options));
        runs[v * seeds.size() + s] = {variants[v], seeds[s],
                                      out.result.best.fitness,
                                      std::move(out.trace_csv)};
    };

    // Variant-seed pairs are independent; run them in bounded batches.
    const unsigned workers = rkga::decode_workers();
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t v = 0; v < variants.size(); ++v)
        for (std::size_t s = 0; s < seeds.size(); ++s) jobs.emplace_back(v, s);
    for (std::size_t at = 0; at < jobs.size();) {
        std::vector<std::future<void>> batch;
        for (unsigned w = 0; w < workers && at < jobs.size(); ++w, ++at)
            batch.push_back(std::async(std::launch::async, one_run,
                                       jobs[at].first, jobs[at].second));
        for (auto& f : batch) f.get();
    }

    if (!args.out_dir.empty()) {
        fs::create_directories(args.out_dir);
        for (const auto& r : runs)
            write_file(fs::path(args.out_dir) /
                           ("trace_" + r.variant + "_seed" +
                            std::to_string(r.seed) + ".csv"),
                       r.trace_csv);
    }

    // Per-variant summary plus a sign test against the first (baseline)
    // variant on paired per-seed differences.
    std::ostringstream table;
    table << "variant,median_f_star,q1_f_star,q3_f_star,iqr_f_star,"
             "wins_vs_baseline,ties_vs_baseline,losses_vs_baseline,"
             "sign_test_p\n";
    for (std::size_t v = 0; v < variants.size(); ++v) {
        std::vector<double> values;
        for (std::size_t s = 0; s < seeds.size(); ++s)
            values.push_back(runs[v * seeds.size() + s].f_star);
        std::sort(values.begin(), values.end());
        const double q1 = quantile(values, 0.25);
        const double med = quantile(values, 0.5);
        const double q3 = quantile(values, 0.75);

        std::size_t wins = 0, ties = 0, losses = 0;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            const double mine = runs[v * seeds.size() + s].f_star;
            const double base = runs[s].f_star;
            if (mine < base)
                ++wins;
            else if (mine > base)
                ++losses;
            else
                ++ties;
        }
        using rkga::detail::format_double;
        table << variants[v] << ',' << format_double(med) << ','
              << format_double(q1) << ',' << format_double(q3) << ','
              << format_double(q3 - q1) << ',' << wins << ',' << ties << ','
              << losses << ',' << format_double(sign_test_p(wins, losses))
              << '\n';
    }

    std::cout << table.str();
    if (!args.out_dir.empty())
        write_file(fs::path(args.out_dir) / "compare.csv", table.str());
    return kExitOk;
}

rkga::RandomControlBounds::RealRange parse_real_range(const std::string& text,
                                                      const char* what) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw rkga::ParseError(std::string(what) + " bounds must be LO:HI", 1);
    try {
        return {std::stod(text.substr(0, colon)),
                std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw rkga::ParseError(std::string(what) + " bounds must be numeric",
                               1);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-key genetic algorithm solver"};
    app.require_subcommand(1);

    CommonArgs solve_args, compare_args, control_args;
    std::string variants_text = "brkga,rkga";
    std::string seeds_text = "1..10";
    std::string pop_bounds, elite_bounds = "0.1:0.3", mutant_bounds = "0.1:0.3",
                rho_bounds;

    auto add_common = [&](CLI::App* cmd, CommonArgs& args, bool with_seed) {
        cmd->add_option("--instance", args.instance,
                        "Instance file, or random-tsp:<n>[:<seed>] / "
                        "random-knapsack:<n>[:<seed>]")
            ->required();
        cmd->add_option("--config", args.config,
                        "Parameter file (key = value lines)");
        cmd->add_option("--variant", args.variant,
                        "Algorithm variant: brkga, rkga or brkga-mp");
        cmd->add_option("--out-dir", args.out_dir,
                        "Directory for trace/summary files");
        if (with_seed) cmd->add_option("--seed", args.seed, "Master seed");
        add_stop_flags(cmd, args.stop);
    };

    CLI::App* solve = app.add_subcommand("solve", "Run one instance once");
    add_common(solve, solve_args, true);

    CLI::App* compare = app.add_subcommand(
        "compare", "Run several variants over paired seeds and summarize");
    add_common(compare, compare_args, false);
    compare->add_option("--variants", variants_text,
                        "Comma-separated variants (first is the baseline)");
    compare->add_option("--seeds", seeds_text,
                        "Seed list: comma values and lo..hi ranges");

    CLI::App* control = app.add_subcommand(
        "control", "Solve with per-generation random parameter sampling");
    add_common(control, control_args, true);
    control->add_option("--pop-bounds", pop_bounds,
                        "Population-size bounds LO:HI (default pop/2:pop)");
    control->add_option("--elite-bounds", elite_bounds,
                        "Elite-percentage bounds LO:HI");
    control->add_option("--mutant-bounds", mutant_bounds,
                        "Mutant-percentage bounds LO:HI");
    control->add_option("--rho-bounds", rho_bounds,
                        "Inheritance-probability bounds LO:HI");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitParse;
    }

    try {
        if (solve->parsed()) return run_solve(solve_args, std::nullopt);
        if (compare->parsed())
            return run_compare(compare_args, variants_text, seeds_text);
        if (control->parsed()) {
            // Bounds that depend on the base configuration get their defaults
            // after the instance fixes the chromosome length.
            const auto parsed = resolve_instance(control_args.instance);
            const auto decoder = make_decoder(parsed);
            const auto params =
                load_params(control_args.config, control_args.variant,
                            decoder->chromosome_length());
            rkga::RandomControlBounds bounds;
            if (pop_bounds.empty()) {
                bounds.pop_size = {std::max<std::size_t>(3, params.pop_size / 2),
                                   params.pop_size};
            } else {
                const auto r = parse_real_range(pop_bounds, "pop-size");
                bounds.pop_size = {static_cast<std::size_t>(r.lo),
                                   static_cast<std::size_t>(r.hi)};
            }
            bounds.elite_pct = parse_real_range(elite_bounds, "elite-pct");
            bounds.mutant_pct = parse_real_range(mutant_bounds, "mutant-pct");
            if (rho_bounds.empty()) {
                bounds.rho = params.mode.variant == rkga::Variant::rkga
                                 ? rkga::RandomControlBounds::RealRange{0.3, 0.7}
                                 : rkga::RandomControlBounds::RealRange{0.6,
                                                                        0.9};
            } else {
                bounds.rho = parse_real_range(rho_bounds, "rho");
            }
            return run_solve(control_args, bounds);
        }
    } catch (const rkga::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const rkga::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
