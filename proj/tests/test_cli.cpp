#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CommandResult {
    int exit_code;
    std::string output; // stdout + stderr
};

CommandResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "cli_output.txt";
    const std::string cmd = std::string(RKGA_CLI_PATH) + " " + args + " > " +
                            log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream buf;
    buf << in.rdbuf();
    result.output = buf.str();
    return result;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("rkga_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Removes the elapsed_seconds column (index 5) from every row.
std::string without_wall_column(const std::string& csv) {
    std::ostringstream out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t field = 0, start = 0;
        std::string rebuilt;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field != 5) {
                    if (!rebuilt.empty()) rebuilt += ',';
                    rebuilt += line.substr(start, i - start);
                }
                start = i + 1;
                ++field;
            }
        }
        out << rebuilt << '\n';
    }
    return out.str();
}

} // namespace

TEST_SUITE("cli") {
    TEST_CASE("solve on an equilateral toy instance finds the forced length") {
        const auto dir = fresh_dir("solve_triangle");
        std::ofstream(dir / "tri.tsp") << "3\n0 0\n0 1\n1 0\n";
        const auto res = run_cli("solve --instance " +
                                     (dir / "tri.tsp").string() +
                                     " --seed 5 --max-generations 10"
                                     " --out-dir " +
                                     (dir / "out").string(),
                                 dir);
        CHECK(res.exit_code == 0);
        const auto summary =
            nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
        CHECK(std::abs(summary["f_star"].get<double>() -
                       (2.0 + std::sqrt(2.0))) < 1e-9);
        const auto trace = slurp(dir / "out" / "trace.csv");
        CHECK(trace.rfind("generation,f_star,population_best", 0) == 0);
    }

    TEST_CASE("malformed instance exits 2 and names the line") {
        const auto dir = fresh_dir("solve_badline");
        std::ofstream(dir / "bad.tsp") << "3\n0 0\noops 1\n1 0\n";
        const auto res = run_cli(
            "solve --instance " + (dir / "bad.tsp").string() + " --seed 1", dir);
        CHECK(res.exit_code == 2);
        CHECK(res.output.find(":3") != std::string::npos);
    }

    TEST_CASE("hard config violations exit 3 and are listed") {
        const auto dir = fresh_dir("solve_badcfg");
        std::ofstream(dir / "cfg") << "rho = 0.5\n";
        const auto res =
            run_cli("solve --instance random-tsp:10:1 --config " +
                        (dir / "cfg").string() + " --seed 1 --max-generations 2",
                    dir);
        CHECK(res.exit_code == 3);
        CHECK(res.output.find("rho") != std::string::npos);
    }

    TEST_CASE("unknown config keys exit 2 as parse errors") {
        const auto dir = fresh_dir("solve_unknownkey");
        std::ofstream(dir / "cfg") << "population = 10\n";
        const auto res =
            run_cli("solve --instance random-tsp:10:1 --config " +
                        (dir / "cfg").string() + " --max-generations 2",
                    dir);
        CHECK(res.exit_code == 2);
    }

    TEST_CASE("compare emits one row per variant plus a header") {
        const auto dir = fresh_dir("compare_rows");
        const auto res = run_cli(
            "compare --instance random-tsp:12:3 --variants brkga,brkga"
            " --seeds 1..10 --max-generations 5 --out-dir " +
                (dir / "out").string(),
            dir);
        CHECK(res.exit_code == 0);
        const auto table = slurp(dir / "out" / "compare.csv");
        std::size_t rows = 0;
        for (char ch : table) rows += ch == '\n';
        CHECK(rows == 3); // header + 2 variants

        // Identical variants tie on every paired seed.
        std::istringstream lines(table);
        std::string header, base, dup;
        std::getline(lines, header);
        std::getline(lines, base);
        std::getline(lines, dup);
        CHECK(dup.find(",0,10,0,1") != std::string::npos);
    }

    TEST_CASE("compare summary is recomputable from the trace files") {
        const auto dir = fresh_dir("compare_recompute");
        const auto res = run_cli(
            "compare --instance random-knapsack:14:8 --variants brkga,rkga"
            " --seeds 1..11 --max-generations 30 --out-dir " +
                (dir / "out").string(),
            dir);
        REQUIRE(res.exit_code == 0);

        // Final f* of a run is the f_star field of its last trace row.
        auto final_f_star = [&](const std::string& variant, int seed) {
            const auto trace = slurp(dir / "out" /
                                     ("trace_" + variant + "_seed" +
                                      std::to_string(seed) + ".csv"));
            const auto last_break = trace.find_last_of('\n', trace.size() - 2);
            const auto row = trace.substr(last_break + 1);
            const auto first_comma = row.find(',');
            const auto second_comma = row.find(',', first_comma + 1);
            return std::stod(
                row.substr(first_comma + 1, second_comma - first_comma - 1));
        };
        auto median_from_traces = [&](const std::string& variant) {
            std::vector<double> values;
            for (int seed = 1; seed <= 11; ++seed)
                values.push_back(final_f_star(variant, seed));
            std::sort(values.begin(), values.end());
            return values[5]; // odd count: middle element
        };

        std::istringstream table(slurp(dir / "out" / "compare.csv"));
        std::string line;
        std::getline(table, line); // header
        for (const std::string variant : {"brkga", "rkga"}) {
            std::getline(table, line);
            REQUIRE(line.rfind(variant + ",", 0) == 0);
            const auto first_comma = line.find(',');
            const auto second_comma = line.find(',', first_comma + 1);
            const double reported = std::stod(line.substr(
                first_comma + 1, second_comma - first_comma - 1));
            CHECK(reported ==
                  doctest::Approx(median_from_traces(variant)).epsilon(1e-12));
        }
    }

    TEST_CASE("compare refuses a single variant") {
        const auto dir = fresh_dir("compare_single");
        const auto res = run_cli(
            "compare --instance random-tsp:12:3 --variants brkga"
            " --seeds 1..10 --max-generations 3",
            dir);
        CHECK(res.exit_code == 2);
    }

    TEST_CASE("worker-pool size never changes the results") {
        const auto dir = fresh_dir("threads_invariance");
        const std::string tail =
            " solve --instance random-tsp:40:6 --seed 11"
            " --max-generations 60 --out-dir ";
        const std::string one = "RKGA_THREADS=1 " + std::string(RKGA_CLI_PATH) +
                                tail + (dir / "one").string();
        const std::string four = "RKGA_THREADS=4 " + std::string(RKGA_CLI_PATH) +
                                 tail + (dir / "four").string();
        CHECK(std::system((one + " > /dev/null 2>&1").c_str()) == 0);
        CHECK(std::system((four + " > /dev/null 2>&1").c_str()) == 0);
        const auto trace_one = slurp(dir / "one" / "trace.csv");
        const auto trace_four = slurp(dir / "four" / "trace.csv");
        REQUIRE_FALSE(trace_one.empty());
        CHECK(without_wall_column(trace_one) == without_wall_column(trace_four));
    }

    TEST_CASE("control keeps the trace parseable and finishes cleanly") {
        const auto dir = fresh_dir("control_run");
        const auto res = run_cli(
            "control --instance random-knapsack:15:2 --seed 4"
            " --max-generations 40 --out-dir " +
                (dir / "out").string(),
            dir);
        CHECK(res.exit_code == 0);
        const auto trace = slurp(dir / "out" / "trace.csv");
        std::size_t rows = 0;
        for (char ch : trace) rows += ch == '\n';
        CHECK(rows == 42); // header + generations 0..40
    }
}
