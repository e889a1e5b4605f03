#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <cstdint>

#include "stpete/gamble.hpp"
#include "stpete/laurent.hpp"

using stpete::GambleTable;
using stpete::LaurentPoly;
using stpete::Rat;
using stpete::ScaledPoly;
using stpete::laurent_from_terms;
using stpete::g_family_table;
using stpete::st_pete_table;

namespace {

// deterministic 64 bit generator for reproducible random polynomials
std::uint64_t lcg_state = 0x9e3779b97f4a7c15ULL;
std::uint64_t lcg() {
    lcg_state = lcg_state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lcg_state >> 16;
}

LaurentPoly random_poly() {
    std::vector<std::pair<long, Rat>> terms;
    long count = 1 + (long)(lcg() % 6);
    for (long t = 0; t < count; ++t) {
        long exp = (long)(lcg() % 13) - 6;
        long num = (long)(lcg() % 11) - 5;
        long den = 1 + (long)(lcg() % 9);
        Rat q(num, den);
        q.canonicalize();
        if (num) terms.push_back({exp, q});
    }
    return laurent_from_terms(terms);
}

bool same_poly(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.min_exp != b.min_exp || a.coeffs.size() != b.coeffs.size()) return false;
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        if (a.coeffs[i] != b.coeffs[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("pgf collects probabilities by outcome") {
    LaurentPoly a = stpete::pgf(g_family_table(2));
    CHECK(a.min_exp == -1);
    CHECK(a.max_exp() == 2);
    CHECK(a.coeff(-1) == Rat(1, 2));
    CHECK(a.coeff(0) == Rat(0));
    CHECK(a.coeff(1) == Rat(0));
    CHECK(a.coeff(2) == Rat(1, 2));

    // duplicate outcomes accumulate
    LaurentPoly b = stpete::pgf(st_pete_table(2, 2));
    CHECK(b.coeff(0) == Rat(1, 2));
    CHECK(b.coeff(2) == Rat(1, 2));
    CHECK(b.span() == 3);
}

TEST_CASE("laurent_from_terms builds canonical form") {
    LaurentPoly a = laurent_from_terms({{3, Rat(1)}, {-2, Rat(1, 2)}, {3, Rat(-1)}});
    CHECK(a.min_exp == -2);
    CHECK(a.max_exp() == -2);
    CHECK(a.coeff(3) == Rat(0));

    LaurentPoly z = laurent_from_terms({});
    CHECK(z.is_zero());
    CHECK(stpete::positive_part(z, true) == Rat(0));
}

TEST_CASE("multiply matches hand expansion") {
    // (1/2 x^-1 + 1/2 x^2)^2 = 1/4 x^-2 + 1/2 x + 1/4 x^4
    LaurentPoly a = stpete::pgf(g_family_table(2));
    LaurentPoly p2 = stpete::multiply(a, a);
    CHECK(p2.min_exp == -2);
    CHECK(p2.coeff(-2) == Rat(1, 4));
    CHECK(p2.coeff(1) == Rat(1, 2));
    CHECK(p2.coeff(4) == Rat(1, 4));
    CHECK(p2.coeff(0) == Rat(0));
    CHECK(same_poly(p2, stpete::power(a, 2)));

    LaurentPoly z;
    CHECK(stpete::multiply(a, z).is_zero());
}

TEST_CASE("power by squaring agrees with repeated multiplication") {
    LaurentPoly a = stpete::pgf(st_pete_table(3, 3));
    LaurentPoly acc;
    acc.coeffs = {Rat(1)};
    for (int n = 0; n <= 6; ++n) {
        CHECK(same_poly(stpete::power(a, n), acc));
        acc = stpete::multiply(acc, a);
    }
}

TEST_CASE("positive_part strict versus weak differs by the constant term") {
    LaurentPoly a = laurent_from_terms({{-1, Rat(1, 4)}, {0, Rat(1, 4)}, {2, Rat(1, 2)}});
    CHECK(stpete::positive_part(a, true) == Rat(1, 2));
    CHECK(stpete::positive_part(a, false) == Rat(3, 4));
    CHECK(stpete::evaluate_at_one(a) == Rat(1));
}

TEST_CASE("powers of a pgf keep total mass 1") {
    LaurentPoly a = stpete::pgf(st_pete_table(4, 4));
    CHECK(stpete::evaluate_at_one(stpete::power(a, 9)) == Rat(1));
}

TEST_CASE("evaluate agrees with exact evaluation at a real point") {
    LaurentPoly a = laurent_from_terms({{-2, Rat(1, 2)}, {1, Rat(3, 4)}});
    std::complex<double> v = stpete::evaluate(a, {2.0, 0.0});
    CHECK(std::abs(v.real() - (0.5 / 4.0 + 0.75 * 2.0)) < 1e-15);
    CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("to_string prints ascending exponents") {
    LaurentPoly a = stpete::pgf(g_family_table(2));
    CHECK(stpete::to_string(a) == "1/2*x^-1 + 1/2*x^2");
}

TEST_CASE("scaled round trip preserves the polynomial") {
    for (int i = 0; i < 25; ++i) {
        LaurentPoly a = random_poly();
        CHECK(same_poly(stpete::unscaled(stpete::scaled_from(a)), a));
    }
}

TEST_CASE("scaled_multiply agrees with rational multiply") {
    for (int i = 0; i < 25; ++i) {
        LaurentPoly a = random_poly();
        LaurentPoly b = random_poly();
        ScaledPoly p = stpete::scaled_multiply(stpete::scaled_from(a), stpete::scaled_from(b));
        CHECK(same_poly(stpete::unscaled(p), stpete::multiply(a, b)));
    }
}

TEST_CASE("scaled_power matches power on a pgf") {
    LaurentPoly a = stpete::pgf(st_pete_table(5, 5));
    ScaledPoly s = stpete::scaled_power(stpete::scaled_from(a), 12);
    CHECK(same_poly(stpete::unscaled(s), stpete::power(a, 12)));
    CHECK(stpete::scaled_positive_part(s, true) == stpete::positive_part(stpete::power(a, 12), true));
}

TEST_CASE("hundredth power positive part hits the pinned fraction") {
    // large enough to route convolutions through the packed integer path
    LaurentPoly a = stpete::pgf(st_pete_table(5, 5));
    ScaledPoly s = stpete::scaled_power(stpete::scaled_from(a), 100);
    Rat expect(
        "6125492831448122153753381305179491123116907379470526605886323646825/"
        "6739986666787659948666753771754907668409286105635143120275902562304");
    expect.canonicalize();
    CHECK(stpete::scaled_positive_part(s, true) == expect);
}
