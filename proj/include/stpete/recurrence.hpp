#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stpete/exact.hpp"

namespace stpete {

// linear recurrence sum_{j=0}^{order} coeffs[j](n) * a(n+j) = 0 with integer
// polynomial coefficients, overall content 1, leading coefficient polynomial
// nonzero with positive top coefficient
struct Recurrence {
    long order = 0;
    std::vector<std::vector<Int>> coeffs;  // order+1 polys, ascending powers of n
    std::vector<Rat> initial_values;       // a(offset) .. a(offset+order-1)
    long offset = 1;
    long fit_rows = 0;     // equations the fit used
    long verify_rows = 0;  // held out equations re-checked exactly
    std::string status = "empirically verified";

    long degree() const;                // max degree over coefficient polys
    Int coeff_at(std::size_t j, long n) const;
};

// fits the minimal (order, then degree) recurrence annihilating the series:
// modular rank screening over two fixed 62 bit primes locates the first
// feasible (order, degree) cell, a p-adic (Dixon) solve recovers one exact
// kernel vector, and the result must re-verify exactly on every term of the
// series including verify_count held out terms; nullopt when no cell within
// the bounds admits a verified recurrence
std::optional<Recurrence> guess_recurrence(const ProbSeries& series, long max_order,
                                           long max_degree, long verify_count);

// exact re-check of the recurrence identity on every index of the series
bool check_recurrence(const Recurrence& rec, const ProbSeries& series);

// extends the series to n_target by exact iteration; values must stay in [0,1]
// and every quotient must be exact, either failure aborts with a diagnostic
// naming the index since it proves the fitted recurrence wrong
ProbSeries extend(const Recurrence& rec, const ProbSeries& series, long n_target);

std::string recurrence_to_json(const Recurrence& rec);
Recurrence recurrence_from_json(const std::string& text);

}  // namespace stpete
