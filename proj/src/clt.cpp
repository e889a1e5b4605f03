#include "stpete/clt.hpp"

#include <cmath>

namespace stpete {

CltParams clt_params(const GambleTable& m) {
    return {expected_value(m), variance(m)};
}

namespace {

constexpr double two_over_sqrt_pi = 1.1283791670955126;

// erf via the all-positive confluent series: erf(x) = (2x e^{-x^2}/sqrt(pi)) *
// sum_k (2x^2)^k / (1*3*5*...*(2k+1)); every term positive, no cancellation
double erf_series(double x) {
    double x2 = x * x;
    double term = 1.0, sum = 1.0, denom = 1.0;
    for (int k = 1; k < 200; ++k) {
        denom = 2.0 * k + 1.0;
        term *= 2.0 * x2 / denom;
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return two_over_sqrt_pi * x * std::exp(-x2) * sum;
}

// erfc via the Laplace continued fraction
// erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + 1/2/(x + 1/(x + 3/2/(x + 2/(x + ...)))))
// evaluated by the modified Lentz method; accurate for x >= 2
double erfc_cfrac(double x) {
    const double tiny = 1e-300;
    double f = x, c = x, d = 0.0;
    for (int k = 1; k < 300; ++k) {
        double a = k * 0.5;
        d = x + a * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-x * x) / 1.7724538509055160 / f;
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    double ax = std::fabs(x);
    double r;
    if (ax < 2.0)
        r = erf_series(ax);
    else if (ax < 6.5)
        r = 1.0 - erfc_cfrac(ax);
    else
        r = 1.0;
    return x < 0 ? -r : r;
}

double prob_pos_clt(const GambleTable& m, long n) {
    if (n < 1) throw std::invalid_argument("prob_pos_clt: n must be >= 1");
    Rat s2 = variance(m);
    if (s2 == 0) throw std::invalid_argument("prob_pos_clt: zero variance, the gamble is deterministic");
    double mu = to_double(expected_value(m));
    double sigma = std::sqrt(to_double(s2));
    return (1.0 + erf(mu * std::sqrt(n / 2.0) / sigma)) / 2.0;
}

long min_repeats_clt(const GambleTable& m, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0,1)");
    if (expected_value(m) <= 0)
        throw std::invalid_argument("min_repeats_clt: expected value must be positive");
    double target = 1.0 - epsilon;
    long lo = 1, hi = 1;
    // prob_pos_clt is strictly increasing in n for positive mean
    while (prob_pos_clt(m, hi) < target) {
        if (hi > (1L << 60)) throw std::invalid_argument("epsilon unreachable at representable n");
        hi *= 2;
    }
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (prob_pos_clt(m, mid) >= target)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

}  // namespace stpete
