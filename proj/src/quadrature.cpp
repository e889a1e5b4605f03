#include "stpete/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace stpete {

namespace {

double log2_abs(const Rat& q) {
    if (q == 0) return -1e300;
    long en = 0, ed = 0;
    double dn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return (std::log2(std::fabs(dn)) + (double)en) -
           (std::log2(std::fabs(dd)) + (double)ed);
}

// log2 of sum_j |c_j| r^j, evaluated without forming the sum
double log2_coeff_mass(const LaurentPoly& a, double r) {
    double lr = std::log2(r);
    double peak = -1e300;
    std::vector<double> t(a.coeffs.size(), -1e300);
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
        if (a.coeffs[j] == 0) continue;
        t[j] = log2_abs(a.coeffs[j]) + (double)(a.min_exp + (long)j) * lr;
        peak = std::max(peak, t[j]);
    }
    double acc = 0.0;
    for (double tj : t)
        if (tj > peak - 80) acc += std::exp2(tj - peak);
    return peak + std::log2(acc);
}

long next_pow2(double x) {
    long m = 1;
    while ((double)m < x) m <<= 1;
    return m;
}

}  // namespace

ContourSpec auto_contour_spec(const LaurentPoly& a, double radius) {
    if (a.is_zero()) throw std::invalid_argument("contour: zero polynomial");
    const double log2_mass_cap = std::log2(1e4);
    double r = 0.0;
    if (radius > 0.0) {
        if (radius <= 1.0) throw std::domain_error("contour radius must exceed 1");
        r = radius;
    } else {
        std::vector<double> candidates = {2.0, 1.5};
        for (int k = 2; k <= 24; ++k) candidates.push_back(1.0 + std::ldexp(1.0, -k));
        r = candidates.back();
        for (double c : candidates)
            if (log2_coeff_mass(a, c) <= log2_mass_cap) {
                r = c;
                break;
            }
    }
    double log2_mass = log2_coeff_mass(a, r);
    if (log2_mass > 1000)
        throw NumericalError("contour: coefficient mass overflows double range at this radius");
    long span = a.max_exp() - a.min_exp;
    // aliasing error <= mass * r^-M / (1 - r^-M); demand mass * r^-M <= 1e-11
    double m_tail = (log2_mass + std::log2(1e11)) / std::log2(r);
    long m = next_pow2(std::max({2.0 * (double)span, m_tail, 256.0}));
    if (m > (1L << 22))
        throw NumericalError("contour: required sample count exceeds 2^22");
    return {r, m};
}

double contour_positive_part(const LaurentPoly& a, const ContourSpec& spec) {
    if (a.is_zero()) throw std::invalid_argument("contour: zero polynomial");
    if (spec.radius <= 1.0) throw std::domain_error("contour radius must exceed 1");
    if (spec.sample_count < 2 || (spec.sample_count & (spec.sample_count - 1)) != 0)
        throw std::invalid_argument("contour sample count must be a power of two >= 2");
    long span = a.max_exp() - a.min_exp;
    if (spec.sample_count < 2 * span)
        throw std::invalid_argument("contour sample count must be >= twice the exponent span");

    std::vector<double> c(a.coeffs.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = to_double(a.coeffs[j]);

    const double r = spec.radius;
    const long m = spec.sample_count;
    const double r_min = std::pow(r, (double)a.min_exp);
    const double two_pi = 6.283185307179586476925286766559;
    std::complex<double> acc(0.0, 0.0);
    for (long k = 0; k < m; ++k) {
        double theta = two_pi * (double)k / (double)m;
        std::complex<double> x = std::polar(r, theta);
        std::complex<double> v(0.0, 0.0);
        for (std::size_t j = c.size(); j-- > 0;) v = v * x + c[j];
        v *= std::polar(r_min, (double)a.min_exp * theta);
        acc += v / (x - 1.0);
    }
    acc /= (double)m;
    if (std::fabs(acc.imag()) > 1e-10)
        throw NumericalError("contour: non-negligible imaginary residue");
    return acc.real();
}

double contour_positive_part(const LaurentPoly& a, double radius) {
    return contour_positive_part(a, auto_contour_spec(a, radius));
}

}  // namespace stpete
