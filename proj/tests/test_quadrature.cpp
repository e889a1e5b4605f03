#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "stpete/exact.hpp"
#include "stpete/quadrature.hpp"

using stpete::ContourSpec;
using stpete::LaurentPoly;
using stpete::Rat;
using stpete::auto_contour_spec;
using stpete::contour_positive_part;
using stpete::laurent_from_terms;
using stpete::positive_part;
using stpete::st_pete_table;
using stpete::to_double;

namespace {

std::uint64_t lcg_state = 0x2545f4914f6cdd1dULL;
std::uint64_t lcg() {
    lcg_state = lcg_state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lcg_state >> 16;
}

LaurentPoly random_poly() {
    std::vector<std::pair<long, Rat>> terms;
    long count = 1 + (long)(lcg() % 7);
    for (long t = 0; t < count; ++t) {
        long exp = (long)(lcg() % 13) - 6;
        long num = (long)(lcg() % 11) - 5;
        long den = 1 + (long)(lcg() % 9);
        Rat q(num, den);
        q.canonicalize();
        if (num) terms.push_back({exp, q});
    }
    if (terms.empty()) terms.push_back({1, Rat(1)});
    return laurent_from_terms(terms);
}

}  // namespace

TEST_CASE("single monomials split cleanly at zero") {
    CHECK(std::abs(contour_positive_part(laurent_from_terms({{1, Rat(1)}})) - 1.0) < 1e-10);
    CHECK(std::abs(contour_positive_part(laurent_from_terms({{-1, Rat(1)}})) - 0.0) < 1e-10);
    CHECK(std::abs(contour_positive_part(laurent_from_terms({{0, Rat(1)}})) - 0.0) < 1e-10);
    CHECK(std::abs(contour_positive_part(laurent_from_terms({{7, Rat(1, 3)}})) - 1.0 / 3.0) < 1e-10);
}

TEST_CASE("contour matches the exact positive part on random polynomials") {
    for (int i = 0; i < 50; ++i) {
        LaurentPoly a = random_poly();
        double exact = to_double(positive_part(a, true));
        CHECK(std::abs(contour_positive_part(a) - exact) < 1e-8);
    }
}

TEST_CASE("contour on the hundredth pgf power hits the exact answer") {
    LaurentPoly a = stpete::power(stpete::pgf(st_pete_table(5, 5)), 100);
    double exact = to_double(positive_part(a, true));
    CHECK(std::abs(exact - 0.9088286275) < 1e-10);
    CHECK(std::abs(contour_positive_part(a) - exact) < 1e-8);
}

TEST_CASE("result is stable across admissible radii") {
    // small exponent range keeps the coefficient mass modest at every radius,
    // so no cancellation and the answers must coincide
    LaurentPoly a = stpete::power(stpete::pgf(stpete::g_family_table(2)), 8);
    double exact = to_double(positive_part(a, true));
    for (double r : {1.25, 1.5, 2.0}) {
        ContourSpec spec = auto_contour_spec(a, r);
        CHECK(spec.radius == r);
        CHECK(std::abs(contour_positive_part(a, spec) - exact) < 1e-10);
    }
}

TEST_CASE("doubling the sample count does not move the answer") {
    LaurentPoly a = stpete::power(stpete::pgf(stpete::g_family_table(3)), 25);
    ContourSpec spec = auto_contour_spec(a);
    ContourSpec doubled = spec;
    doubled.sample_count *= 2;
    CHECK(std::abs(contour_positive_part(a, spec) - contour_positive_part(a, doubled)) < 1e-10);
}

TEST_CASE("auto spec picks a power of two sample count covering the span") {
    LaurentPoly a = stpete::power(stpete::pgf(st_pete_table(5, 5)), 20);
    ContourSpec spec = auto_contour_spec(a);
    CHECK(spec.radius > 1.0);
    CHECK((spec.sample_count & (spec.sample_count - 1)) == 0);
    CHECK(spec.sample_count >= 2 * (a.max_exp() - a.min_exp));
}

TEST_CASE("contour validates its inputs") {
    LaurentPoly a = stpete::pgf(st_pete_table(3, 3));
    CHECK_THROWS_AS(contour_positive_part(a, 1.0), std::domain_error);
    CHECK_THROWS_AS(contour_positive_part(a, 0.5), std::domain_error);
    ContourSpec odd{2.0, 300};  // not a power of two
    CHECK_THROWS_AS(contour_positive_part(a, odd), std::invalid_argument);
    ContourSpec tiny{2.0, 4};  // fewer than twice the span
    CHECK_THROWS_AS(contour_positive_part(a, tiny), std::invalid_argument);
    CHECK_THROWS_AS(contour_positive_part(LaurentPoly{}, 2.0), std::invalid_argument);
}
