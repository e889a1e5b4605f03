#pragma once

#include "stpete/errors.hpp"
#include "stpete/laurent.hpp"

namespace stpete {

// contour |x| = radius sampled at sample_count equally spaced angles
struct ContourSpec {
    double radius = 2.0;
    long sample_count = 256;
};

// picks radius (when radius <= 0) and a power-of-two sample count so that the
// aliasing error of the discretized integral stays below ~1e-11: the radius is
// the largest of {2, 1.5, 1+2^-2, ..., 1+2^-24} keeping sum_j |c_j| r^j <= 1e4,
// and sample_count >= max(2 * exponent span, enough points to damp r^-M tails)
ContourSpec auto_contour_spec(const LaurentPoly& a, double radius = 0.0);

// (1/M) sum_k A(x_k)/(x_k - 1) over x_k = r e^{2 pi i k / M}; equals the sum of
// A's coefficients at strictly positive exponents up to aliasing, because
// 1/(x-1) expands as sum_{t>=1} x^-t for |x| > 1
double contour_positive_part(const LaurentPoly& a, const ContourSpec& spec);
double contour_positive_part(const LaurentPoly& a, double radius = 0.0);

}  // namespace stpete
