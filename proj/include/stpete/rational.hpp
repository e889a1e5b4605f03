#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace stpete {

using Rat = mpq_class;
using Int = mpz_class;

// "3/4", "-3", "0.25" -> exact rational (decimals are exact powers of ten).
Rat parse_rat(const std::string& s);

// canonical "num/den" (or "num" when den == 1)
std::string rat_str(const Rat& q);

// fixed-point decimal with `places` digits, rounded half to even;
// the rendering used everywhere a 10-digit probability is printed
std::string decimal_string(const Rat& q, int places = 10);

double to_double(const Rat& q);

}  // namespace stpete
