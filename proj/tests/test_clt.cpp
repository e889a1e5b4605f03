#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "stpete/clt.hpp"

using stpete::GambleTable;
using stpete::Rat;
using stpete::clt_params;
using stpete::g_family_table;
using stpete::min_repeats_clt;
using stpete::prob_pos_clt;
using stpete::st_pete_table;

TEST_CASE("clt_params carries exact mean and variance") {
    auto p2 = clt_params(g_family_table(2));
    CHECK(p2.mu == Rat(1, 2));
    CHECK(p2.sigma2 == Rat(9, 4));
    auto p10 = clt_params(g_family_table(10));
    CHECK(p10.mu == Rat(1, 10));
    CHECK(p10.sigma2 == Rat(1089, 100));
    CHECK(clt_params(st_pete_table(7, 7)).sigma2 == Rat(318));
    CHECK(clt_params(st_pete_table(11, 11)).sigma2 == Rat(5998));
}

TEST_CASE("erf reference points") {
    struct Point {
        double x, y;
    };
    // reference values correct to 1 ulp; the implementation promises 1e-12
    const Point pts[] = {
        {0.1, 0.11246291601828489}, {0.5, 0.52049987781304654}, {1.0, 0.84270079294971487},
        {1.5, 0.96610514647531073}, {1.9, 0.99279042923525747}, {2.0, 0.99532226501895273},
        {2.1, 0.99702053334366701}, {2.5, 0.99959304798255504}, {3.0, 0.99997790950300141},
        {4.0, 0.99999998458274210}, {5.0, 0.99999999999846254},
    };
    for (const auto& p : pts) {
        CHECK(std::abs(stpete::erf(p.x) - p.y) < 1e-12);
        CHECK(std::abs(stpete::erf(-p.x) + p.y) < 1e-12);
    }
    CHECK(stpete::erf(0.0) == 0.0);
    CHECK(stpete::erf(7.0) == 1.0);
    CHECK(stpete::erf(-9.0) == -1.0);
    CHECK(std::isnan(stpete::erf(std::nan(""))));
}

TEST_CASE("erf is monotone across the method boundaries") {
    double prev = -1.0;
    for (double x = -7.0; x <= 7.0; x += 0.0625) {
        double v = stpete::erf(x);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("normal approximation reference points") {
    GambleTable g10 = g_family_table(10);
    CHECK(std::abs(prob_pos_clt(g10, 100) - 0.6190666159058761) < 1e-12);
    CHECK(std::abs(prob_pos_clt(g10, 1000) - 0.8310356673983976) < 1e-12);
    CHECK(std::abs(prob_pos_clt(g10, 10000) - 0.9987784575864197) < 1e-12);
    CHECK(std::abs(prob_pos_clt(g_family_table(2), 1) - 0.6305586598182364) < 1e-12);
    CHECK(std::abs(prob_pos_clt(st_pete_table(7, 7), 300) - 0.8342970265275427) < 1e-12);
}

TEST_CASE("normal approximation is increasing in n for positive drift") {
    GambleTable m = st_pete_table(5, 5);
    double prev = 0.0;
    for (long n = 1; n <= 400; n += 7) {
        double v = prob_pos_clt(m, n);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(prev < 1.0);
}

TEST_CASE("normal approximation rejects degenerate input") {
    CHECK_THROWS_AS(prob_pos_clt(g_family_table(2), 0), std::invalid_argument);
    CHECK_THROWS_AS(prob_pos_clt(GambleTable({{5, Rat(1)}}), 10), std::invalid_argument);
}

TEST_CASE("min_repeats_clt reference points") {
    GambleTable g10 = g_family_table(10);
    CHECK(min_repeats_clt(g10, 0.0012215424) == 10001);
    CHECK(min_repeats_clt(g10, 0.05) == 2947);
    CHECK(min_repeats_clt(g10, 0.5) == 1);
}

TEST_CASE("min_repeats_clt answer is minimal") {
    GambleTable g10 = g_family_table(10);
    long n = min_repeats_clt(g10, 0.05);
    CHECK(prob_pos_clt(g10, n) >= 0.95);
    CHECK(prob_pos_clt(g10, n - 1) < 0.95);
}

TEST_CASE("min_repeats_clt validates its arguments") {
    GambleTable fair({{-1, Rat(1, 2)}, {1, Rat(1, 2)}});
    CHECK_THROWS_AS(min_repeats_clt(fair, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(min_repeats_clt(g_family_table(2), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(min_repeats_clt(g_family_table(2), 1.0), std::invalid_argument);
}
