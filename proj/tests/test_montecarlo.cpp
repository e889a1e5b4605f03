#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stpete/montecarlo.hpp"

using stpete::GambleTable;
using stpete::Rat;
using stpete::Rng;
using stpete::SimResult;
using stpete::g_family_table;
using stpete::simulate;
using stpete::simulate_run;
using stpete::st_pete_table;

TEST_CASE("generator streams are reproducible") {
    Rng a(1), b(1), c(2);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        std::uint64_t va = a.next();
        all_equal = all_equal && (va == b.next());
        any_diff = any_diff || (va != c.next());
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("simulation is deterministic in the seed") {
    GambleTable m = st_pete_table(5, 5);
    SimResult a = simulate(m, 50, 2000, 42);
    SimResult b = simulate(m, 50, 2000, 42);
    CHECK(a.mean_payoff == b.mean_payoff);
    CHECK(a.win_fraction == b.win_fraction);
    SimResult c = simulate(m, 50, 2000, 43);
    CHECK(a.win_fraction != c.win_fraction);
}

TEST_CASE("a deterministic gamble sums exactly") {
    GambleTable m({{5, Rat(1)}});
    Rng rng(7);
    CHECK(simulate_run(m, 7, rng) == 35);
    SimResult r = simulate(m, 7, 100, 9);
    CHECK(r.mean_payoff == 35.0);
    CHECK(r.win_fraction == 1.0);
    CHECK(r.runs == 100);
    CHECK(r.repeats == 7);
}

TEST_CASE("run totals stay inside the support bounds") {
    GambleTable m = st_pete_table(5, 5);
    Rng rng(12345);
    for (int i = 0; i < 200; ++i) {
        long t = simulate_run(m, 100, rng);
        CHECK(t >= -300);
        CHECK(t <= 2700);
        CHECK((t + 300) % 2 == 0);  // every outcome is odd, 100 draws keep parity
    }
}

TEST_CASE("draw frequencies track the table probabilities") {
    // single draw per run makes win_fraction the empirical hit rate of the
    // one winning outcome; 4 sigma band around 1/10
    SimResult r = simulate(g_family_table(10), 1, 1000000, 2024);
    CHECK(std::abs(r.win_fraction - 0.1) < 0.0012);
    CHECK(std::abs(r.mean_payoff - 0.1) < 0.015);
}

TEST_CASE("win fraction lands near the exact probability") {
    SimResult r = simulate(st_pete_table(5, 5), 100, 10000, 12345);
    // exact value 0.9088286275; binomial se is 0.0029, allow 4 se
    CHECK(std::abs(r.win_fraction - 0.9088286275) < 0.0115);
    CHECK(std::abs(r.mean_payoff - 100.0) < 7.2);
}

TEST_CASE("ties at zero do not count as wins") {
    GambleTable coin({{-1, Rat(1, 2)}, {1, Rat(1, 2)}});
    SimResult r = simulate(coin, 2, 20000, 5);
    // P(total > 0) = 1/4: win needs both draws positive
    CHECK(std::abs(r.win_fraction - 0.25) < 0.013);
}

TEST_CASE("result line formatting") {
    SimResult r{101.512, 0.915, 10000, 100};
    CHECK(stpete::sim_result_line(r) == "101.5120000, 0.9150000000");
    SimResult zero{0.0, 0.0, 1, 1};
    CHECK(stpete::sim_result_line(zero) == "0.0000000, 0.0000000000");
}

TEST_CASE("simulate validates counts") {
    GambleTable m = g_family_table(2);
    CHECK_THROWS_AS(simulate(m, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate(m, 10, 0, 1), std::invalid_argument);
}
