#pragma once

#include <complex>
#include <vector>

#include "stpete/gamble.hpp"
#include "stpete/rational.hpp"

namespace stpete {

// Dense Laurent polynomial over exact rationals: coeffs[j] carries x^(min_exp+j).
// Canonical form: first and last stored coefficients nonzero; zero polynomial
// has an empty coefficient list.
struct LaurentPoly {
    long min_exp = 0;
    std::vector<Rat> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    long max_exp() const { return min_exp + (long)coeffs.size() - 1; }
    long span() const { return (long)coeffs.size(); }
    Rat coeff(long exp) const;
    void trim();
};

LaurentPoly laurent_from_terms(const std::vector<std::pair<long, Rat>>& terms);

// pgf: sum of p_i x^{outcome_i}; duplicate outcomes accumulate
LaurentPoly pgf(const GambleTable& m);

LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly power(const LaurentPoly& a, unsigned long n);

// sum of coefficients with exponent > 0 (strict) or >= 0
Rat positive_part(const LaurentPoly& a, bool strict);

Rat evaluate_at_one(const LaurentPoly& a);
std::complex<double> evaluate(const LaurentPoly& a, std::complex<double> x);

// "1/2*x^-3 + 1/4*x^-1 + ..." ascending exponents
std::string to_string(const LaurentPoly& a);

// Scaled-integer twin of LaurentPoly: num[j]/den carries x^(min_exp+j).
// The hot representation for pgf powering: convolutions run over mpz with a
// common denominator, so no per-operation rational canonicalization happens.
struct ScaledPoly {
    long min_exp = 0;
    std::vector<Int> num;
    Int den = 1;

    long span() const { return (long)num.size(); }
};

ScaledPoly scaled_from(const LaurentPoly& a);
LaurentPoly unscaled(const ScaledPoly& a);

// exact convolution; chooses schoolbook or single-mpz packed multiplication
// (Kronecker substitution) by a cost estimate; requires nonnegative numerators
// for the packed path and falls back otherwise
ScaledPoly scaled_multiply(const ScaledPoly& a, const ScaledPoly& b);
ScaledPoly scaled_power(const ScaledPoly& a, unsigned long n);
Rat scaled_positive_part(const ScaledPoly& a, bool strict);

}  // namespace stpete
