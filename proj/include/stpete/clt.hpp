#pragma once

#include "stpete/gamble.hpp"

namespace stpete {

struct CltParams {
    Rat mu;
    Rat sigma2;
};

CltParams clt_params(const GambleTable& m);

// self-contained error function, absolute error <= 1e-12 on the real line
double erf(double x);

// normal approximation Phi(mu*sqrt(n)/sigma) = (1 + erf(mu*sqrt(n/2)/sigma)) / 2
// to P(net gain after n repeats > 0)
double prob_pos_clt(const GambleTable& m, long n);

// smallest n with prob_pos_clt(m, n) >= 1 - epsilon
long min_repeats_clt(const GambleTable& m, double epsilon);

}  // namespace stpete
