#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "rkga/advanced.hpp"
#include "rkga/decoders/instance_io.hpp"
#include "test_support.hpp"

using namespace rkga;

TEST_SUITE("advanced.migrate") {
    TEST_CASE("single population is a no-op") {
        const auto dec = support::sum_decoder(4);
        RngStream rng(1, 0);
        std::vector<Population> pops;
        pops.push_back(support::random_population(10, 4, dec, rng, 3));
        const auto before = pops[0].members;
        migrate(pops, {1, 10, 2});
        CHECK(pops[0].members.size() == before.size());
        for (std::size_t i = 0; i < before.size(); ++i)
            CHECK(pops[0].members[i].keys == before[i].keys);
    }

    TEST_CASE("two islands swap their best for the other's worst") {
        const auto dec = support::sum_decoder(4);
        RngStream rng(2, 0);
        std::vector<Population> pops;
        pops.push_back(support::random_population(8, 4, dec, rng, 2));
        pops.push_back(support::random_population(8, 4, dec, rng, 2));
        const auto best_a = pops[0].members.front().keys;
        const auto best_b = pops[1].members.front().keys;

        migrate(pops, {2, 10, 1});
        CHECK(pops[0].size() == 8);
        CHECK(pops[1].size() == 8);
        auto contains = [](const Population& pop, const std::vector<double>& k) {
            return std::any_of(pop.members.begin(), pop.members.end(),
                               [&](const Chromosome& c) { return c.keys == k; });
        };
        CHECK(contains(pops[1], best_a));
        CHECK(contains(pops[0], best_b));
    }

    TEST_CASE("post-migration best never worsens over seeded exchanges") {
        const auto dec = support::sum_decoder(6);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            RngStream rng(seed, 0);
            std::vector<Population> pops;
            for (int k = 0; k < 3; ++k)
                pops.push_back(support::random_population(12, 6, dec, rng, 4));
            std::vector<double> before;
            for (const auto& pop : pops) before.push_back(pop.best_fitness());
            migrate(pops, {3, 5, 2});
            for (std::size_t k = 0; k < pops.size(); ++k) {
                CHECK(pops[k].size() == 12);
                CHECK(pops[k].best_fitness() <= before[k]);
                CHECK(pops[k].is_sorted_by_fitness());
            }
        }
    }

    TEST_CASE("duplicate key vectors are not copied in") {
        const auto dec = support::sum_decoder(3);
        RngStream rng(3, 0);
        std::vector<Population> pops;
        pops.push_back(support::random_population(6, 3, dec, rng, 2));
        pops.push_back(support::random_population(6, 3, dec, rng, 2));
        // Make B already hold A's best.
        pops[1].members.back() = pops[0].members.front();
        pops[1].sort_by_fitness();
        migrate(pops, {2, 5, 1});
        std::size_t occurrences = 0;
        for (const auto& m : pops[1].members)
            occurrences += m.keys == pops[0].members.front().keys;
        CHECK(occurrences == 1);
    }

    TEST_CASE("too many migrants is a config error") {
        const auto dec = support::sum_decoder(3);
        RngStream rng(4, 0);
        std::vector<Population> pops;
        pops.push_back(support::random_population(6, 3, dec, rng, 2));
        pops.push_back(support::random_population(6, 3, dec, rng, 2));
        CHECK_THROWS_AS(migrate(pops, {2, 5, 3}), ConfigError);
    }
}

TEST_SUITE("advanced.shake") {
    TEST_CASE("zero intensity keeps elites, randomizes the rest") {
        const auto dec = support::sum_decoder(5);
        RngStream rng(5, 0);
        auto pop = support::random_population(10, 5, dec, rng, 3);
        std::vector<std::vector<double>> elite_keys;
        for (std::size_t e = 0; e < 3; ++e)
            elite_keys.push_back(pop.members[e].keys);
        shake_with_intensity(pop, 0.0, dec, rng);
        // The elites survive untouched (possibly reordered with new randoms).
        for (const auto& keys : elite_keys) {
            CHECK(std::any_of(pop.members.begin(), pop.members.end(),
                              [&](const Chromosome& c) {
                                  return c.keys == keys;
                              }));
        }
        CHECK(pop.fully_evaluated());
        CHECK(pop.is_sorted_by_fitness());
    }

    TEST_CASE("full intensity re-draws every elite gene") {
        const auto dec = support::sum_decoder(64);
        RngStream rng(6, 0);
        auto pop = support::random_population(6, 64, dec, rng, 2);
        const auto before = pop.members[0].keys;
        shake_with_intensity(pop, 1.0, dec, rng);
        // With 64 genes re-drawn, the chance any one is unchanged is ~0.
        for (const auto& m : pop.members) {
            std::size_t unchanged = 0;
            for (std::size_t g = 0; g < 64; ++g)
                unchanged += m.keys[g] == before[g];
            CHECK(unchanged <= 1);
        }
    }

    TEST_CASE("permutation shake swaps preserve the key multiset") {
        const TspDecoder dec(random_tsp(10, 11));
        RngStream rng(7, 0);
        auto pop = support::random_population(8, 10, dec, rng, 3);
        std::vector<std::multiset<double>> elite_multisets;
        for (std::size_t e = 0; e < 3; ++e)
            elite_multisets.emplace_back(pop.members[e].keys.begin(),
                                         pop.members[e].keys.end());
        shake_with_intensity(pop, 0.3, dec, rng);
        // Each shaken elite still carries its original multiset of keys.
        std::size_t matched = 0;
        for (const auto& m : pop.members) {
            std::multiset<double> ms(m.keys.begin(), m.keys.end());
            for (const auto& original : elite_multisets)
                if (ms == original) {
                    ++matched;
                    break;
                }
        }
        CHECK(matched >= 3);
    }

    TEST_CASE("intensity draw respects the configured range") {
        const auto dec = support::sum_decoder(4);
        RngStream rng(8, 0);
        auto pop = support::random_population(6, 4, dec, rng, 2);
        CHECK_NOTHROW(shake(pop, {10, 0.2, 0.4}, dec, rng));
        CHECK_THROWS_AS(shake(pop, {10, 0.5, 0.2}, dec, rng),
                        InvalidParameterError);
    }
}

TEST_SUITE("advanced.multiparent") {
    TEST_CASE("constant bias gives uniform thirds") {
        const auto probs =
            bias_probabilities({3, 1, BiasFunction::constant});
        REQUIRE(probs.size() == 3);
        for (double p : probs) CHECK(p == doctest::Approx(1.0 / 3.0));
    }

    TEST_CASE("two-parent quadratic bias is 0.8 / 0.2") {
        const auto probs =
            bias_probabilities({2, 1, BiasFunction::quadratic});
        CHECK(probs[0] == doctest::Approx(0.8));
        CHECK(probs[1] == doctest::Approx(0.2));
    }

    TEST_CASE("probabilities are positive, non-increasing and normalized") {
        for (auto bias :
             {BiasFunction::log_inverse, BiasFunction::linear,
              BiasFunction::quadratic, BiasFunction::cubic,
              BiasFunction::exponential, BiasFunction::constant}) {
            for (std::size_t total = 2; total <= 10; ++total) {
                const auto probs = bias_probabilities({total, 1, bias});
                double sum = 0.0;
                for (std::size_t r = 0; r < probs.size(); ++r) {
                    CHECK(probs[r] > 0.0);
                    if (r) CHECK(probs[r] <= probs[r - 1] + 1e-15);
                    sum += probs[r];
                }
                CHECK(sum == doctest::Approx(1.0));
            }
        }
    }

    TEST_CASE("underflowed bias weight is a config error") {
        CHECK_THROWS_AS(
            bias_probabilities({800, 1, BiasFunction::exponential}),
            ConfigError);
    }

    TEST_CASE("exponential inheritance matches the closed form") {
        const std::size_t n = 100000;
        Chromosome a = support::chromosome(std::vector<double>(n, 0.1));
        Chromosome b = support::chromosome(std::vector<double>(n, 0.5));
        Chromosome c = support::chromosome(std::vector<double>(n, 0.9));
        a.fitness = 1.0;
        b.fitness = 2.0;
        c.fitness = 3.0;
        const Chromosome* parents[] = {&a, &b, &c};
        const MultiParentConfig cfg{3, 2, BiasFunction::exponential};
        RngStream rng(10, 0);
        const auto child = multi_parent_crossover(parents, cfg, rng);

        std::map<double, std::size_t> counts;
        for (double k : child.keys) ++counts[k];
        const double z =
            std::exp(-1.0) + std::exp(-2.0) + std::exp(-3.0);
        CHECK(std::abs(counts[0.1] / double(n) - std::exp(-1.0) / z) <= 0.01);
        CHECK(std::abs(counts[0.5] / double(n) - std::exp(-2.0) / z) <= 0.01);
        CHECK(std::abs(counts[0.9] / double(n) - std::exp(-3.0) / z) <= 0.01);
        CHECK(child.origin == Origin::offspring);
        CHECK_FALSE(child.evaluated());
    }

    TEST_CASE("parent count must match the config") {
        Chromosome a = support::chromosome({0.1});
        a.fitness = 1.0;
        const Chromosome* parents[] = {&a};
        RngStream rng(1, 0);
        CHECK_THROWS_AS(multi_parent_crossover(
                            parents, {3, 1, BiasFunction::constant}, rng),
                        InvalidParameterError);
    }
}

TEST_SUITE("advanced.distances") {
    TEST_CASE("hamming basics") {
        auto a = support::chromosome({0.2, 0.2, 0.2, 0.2, 0.2, 0.2});
        auto b = support::chromosome({0.8, 0.8, 0.8, 0.8, 0.8, 0.8});
        CHECK(hamming_distance(a, a) == 0.0);
        CHECK(hamming_distance(a, b) == 1.0);
        auto c = support::chromosome({0.2, 0.8, 0.2, 0.8, 0.2, 0.8});
        CHECK(hamming_distance(a, c) == doctest::Approx(0.5));
        auto short_one = support::chromosome({0.5});
        CHECK_THROWS_AS(hamming_distance(a, short_one), DimensionError);
    }

    TEST_CASE("kendall basics") {
        auto a = support::chromosome({0.1, 0.2, 0.3, 0.4});
        auto b = support::chromosome({0.9, 0.7, 0.5, 0.3});
        CHECK(kendall_tau_distance(a, a) == 0.0);
        CHECK(kendall_tau_distance(a, b) == 1.0); // exact reverses
        auto tiny = support::chromosome({0.5});
        CHECK_THROWS_AS(kendall_tau_distance(tiny, tiny), DimensionError);
    }

    TEST_CASE("both distances match their brute-force oracles exactly") {
        RngStream rng(12, 0);
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t n = 2 + rng.uniform_int(11);
            const auto a = new_random_chromosome(n, rng);
            const auto b = new_random_chromosome(n, rng);
            CHECK(hamming_mismatches(a.keys, b.keys) ==
                  oracle::hamming_mismatches(a.keys, b.keys));
            CHECK(discordant_pairs(a.keys, b.keys) ==
                  oracle::discordant_pairs(a.keys, b.keys));
        }
    }

    TEST_CASE("metric axioms hold on random triples") {
        RngStream rng(13, 0);
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t n = 2 + rng.uniform_int(9);
            const auto a = new_random_chromosome(n, rng);
            const auto b = new_random_chromosome(n, rng);
            const auto c = new_random_chromosome(n, rng);
            // Triangle inequality on the raw integer counts is exact.
            CHECK(oracle::hamming_mismatches(a.keys, c.keys) <=
                  hamming_mismatches(a.keys, b.keys) +
                      hamming_mismatches(b.keys, c.keys));
            CHECK(oracle::discordant_pairs(a.keys, c.keys) <=
                  discordant_pairs(a.keys, b.keys) +
                      discordant_pairs(b.keys, c.keys));
            // Symmetry.
            CHECK(hamming_distance(a, b) == hamming_distance(b, a));
            CHECK(kendall_tau_distance(a, b) == kendall_tau_distance(b, a));
        }
    }

    TEST_CASE("zero distance iff equal on the quotient space") {
        auto a = support::chromosome({0.1, 0.6, 0.4});
        auto b = support::chromosome({0.1, 0.8, 0.45}); // same indicators+order
        CHECK(hamming_distance(a, b) == 0.0);
        CHECK(kendall_tau_distance(a, b) == 0.0);
        auto c = support::chromosome({0.6, 0.1, 0.4});
        CHECK(hamming_distance(a, c) > 0.0);
        CHECK(kendall_tau_distance(a, c) > 0.0);
    }
}

TEST_SUITE("advanced.ipr") {
    KnapsackDecoder toy_decoder() {
        return KnapsackDecoder(
            KnapsackInstance{{2, 3, 4, 5, 3, 2}, {3, 4, 6, 7, 5, 4}, 11});
    }

    Population elite_population(const Decoder& dec,
                                std::vector<std::vector<double>> keys,
                                std::size_t elite_count) {
        Population pop;
        for (auto& k : keys)
            pop.members.push_back(support::evaluated(std::move(k), dec));
        pop.sort_by_fitness();
        pop.elite_count = elite_count;
        return pop;
    }

    TEST_CASE("identical endpoints never qualify") {
        const auto dec = toy_decoder();
        const std::vector<double> same{0.9, 0.1, 0.9, 0.1, 0.9, 0.1};
        auto pop_a = elite_population(dec, {same, same, same}, 1);
        auto pop_b = elite_population(dec, {same, same, same}, 1);
        IprConfig cfg;
        cfg.min_distance = 0.1;
        cfg.candidate_pairs_pct = 1.0;
        RngStream rng(1, 0);
        const auto result =
            implicit_path_relinking(pop_a, pop_b, cfg, dec, rng);
        CHECK(result.outcome == IprOutcome::no_pair_above_md);
        CHECK_FALSE(result.chromosome);
    }

    TEST_CASE("single whole-chromosome block reaches the guide and stops") {
        const auto dec = toy_decoder();
        auto base = support::evaluated({0.9, 0.9, 0.1, 0.1, 0.9, 0.1}, dec);
        auto guide = support::evaluated({0.1, 0.1, 0.9, 0.9, 0.1, 0.9}, dec);
        IprConfig cfg;
        cfg.block_size = 6;
        cfg.path_pct = 1.0;
        const auto result = ipr_walk(base, guide, cfg, dec);
        CHECK(result.outcome == IprOutcome::no_improvement);
        REQUIRE(result.steps.size() == 1);
        CHECK(result.steps[0].distance_to_guide == 0.0);
        CHECK(result.steps[0].fitness == doctest::Approx(*guide.fitness));
    }

    TEST_CASE("greedy walk matches the exhaustive per-step oracle") {
        const auto dec = toy_decoder();
        RngStream rng(14, 0);
        for (int trial = 0; trial < 40; ++trial) {
            auto base_keys = new_random_chromosome(6, rng).keys;
            auto guide_keys = new_random_chromosome(6, rng).keys;
            const auto base = support::evaluated(base_keys, dec);
            const auto guide = support::evaluated(guide_keys, dec);
            IprConfig cfg;
            cfg.block_size = 1;
            cfg.path_pct = 1.0;
            const auto walk = ipr_walk(base, guide, cfg, dec);
            const auto expected =
                oracle::greedy_walk(base_keys, guide_keys, 1, 6, dec);
            REQUIRE(walk.steps.size() == expected.size());
            for (std::size_t s = 0; s < expected.size(); ++s) {
                CHECK(walk.steps[s].block == expected[s].block);
                CHECK(walk.steps[s].fitness ==
                      doctest::Approx(expected[s].fitness).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("hamming distance to the guide never increases along the walk") {
        const auto dec = toy_decoder();
        RngStream rng(15, 0);
        for (int trial = 0; trial < 50; ++trial) {
            const auto base =
                support::evaluated(new_random_chromosome(6, rng).keys, dec);
            const auto guide =
                support::evaluated(new_random_chromosome(6, rng).keys, dec);
            IprConfig cfg;
            cfg.block_size = 2;
            cfg.path_pct = 1.0;
            const auto walk = ipr_walk(base, guide, cfg, dec);
            double last = hamming_distance(base, guide);
            for (const auto& step : walk.steps) {
                CHECK(step.distance_to_guide <= last + 1e-15);
                last = step.distance_to_guide;
            }
        }
    }

    TEST_CASE("results always beat both endpoints strictly") {
        const auto dec = toy_decoder();
        RngStream rng(16, 0);
        std::size_t applied = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const auto base =
                support::evaluated(new_random_chromosome(6, rng).keys, dec);
            const auto guide =
                support::evaluated(new_random_chromosome(6, rng).keys, dec);
            IprConfig cfg;
            cfg.block_size = 1;
            cfg.path_pct = 1.0;
            const auto walk = ipr_walk(base, guide, cfg, dec);
            if (walk.outcome == IprOutcome::applied) {
                ++applied;
                REQUIRE(walk.chromosome);
                CHECK(*walk.chromosome->fitness <
                      std::min(*base.fitness, *guide.fitness));
                CHECK(walk.chromosome->origin == Origin::ipr);
                CHECK(*walk.chromosome->fitness ==
                      doctest::Approx(dec.decode(walk.chromosome->keys)));
            }
        }
        CHECK(applied > 0); // the toy instance admits improvements
    }

    TEST_CASE("selection strategy picks the base deterministically or randomly") {
        const auto dec = toy_decoder();
        auto good = support::evaluated({0.9, 0.9, 0.9, 0.1, 0.1, 0.1}, dec);
        auto poor = support::evaluated({0.1, 0.1, 0.1, 0.1, 0.1, 0.9}, dec);
        REQUIRE(*good.fitness < *poor.fitness);
        auto pop_a = elite_population(dec, {good.keys, good.keys, good.keys}, 1);
        auto pop_b = elite_population(dec, {poor.keys, poor.keys, poor.keys}, 1);
        IprConfig cfg;
        cfg.min_distance = 0.01;
        cfg.block_size = 1;
        cfg.path_pct = 1.0;
        cfg.selection = IprSelection::best_solution;
        RngStream rng(2, 0);
        const auto result =
            implicit_path_relinking(pop_a, pop_b, cfg, dec, rng);
        // Under best_solution the walk starts from the better endpoint; its
        // first step must already be evaluated against that base.
        CHECK(result.steps.size() == 6);
    }

    TEST_CASE("kendall distance is used for permutation decoders") {
        const TspDecoder dec(random_tsp(6, 21));
        RngStream rng(3, 0);
        const auto base =
            support::evaluated(new_random_chromosome(6, rng).keys, dec);
        const auto guide =
            support::evaluated(new_random_chromosome(6, rng).keys, dec);
        IprConfig cfg;
        cfg.distance = DistanceKind::hamming; // wrong kind for a permutation
        CHECK_THROWS_AS(ipr_walk(base, guide, cfg, dec), ConfigError);
        cfg.distance = DistanceKind::kendall_tau;
        CHECK_NOTHROW(ipr_walk(base, guide, cfg, dec));
    }

    TEST_CASE("within-population variant pairs best against most distant") {
        const auto dec = toy_decoder();
        auto pop = elite_population(
            dec,
            {{0.9, 0.9, 0.9, 0.1, 0.1, 0.1},
             {0.9, 0.9, 0.8, 0.1, 0.2, 0.1}, // close to the best
             {0.1, 0.1, 0.1, 0.9, 0.9, 0.9}, // far from the best
             {0.5, 0.5, 0.5, 0.4, 0.4, 0.4}},
            3);
        IprConfig cfg;
        cfg.min_distance = 0.9;
        cfg.block_size = 1;
        cfg.path_pct = 1.0;
        RngStream rng(4, 0);
        const auto result =
            implicit_path_relinking_within(pop, cfg, dec, rng);
        // The most distant elite is at hamming distance 1.0 >= md = 0.9.
        CHECK(result.outcome != IprOutcome::no_pair_above_md);

        cfg.min_distance = 1.1; // impossible
        const auto skipped =
            implicit_path_relinking_within(pop, cfg, dec, rng);
        CHECK(skipped.outcome == IprOutcome::no_pair_above_md);
    }
}
