#pragma once

#include <optional>
#include <string>

#include "stpete/gamble.hpp"
#include "stpete/laurent.hpp"

namespace stpete {

// values[i] = P(net gain after start+i repeats is > 0), or >= 0 when !strict
struct ProbSeries {
    GambleTable gamble;
    bool strict = true;
    long start = 1;
    std::vector<Rat> values;

    Rat at(long n) const;  // n is the repeat count, not an index
    long last_n() const { return start + (long)values.size() - 1; }
};

// positive part of pgf(m)^n; binary exponentiation point query
Rat prob_pos(const GambleTable& m, long n, bool strict = true);

// one iterative pass, one base multiplication per step, n = 1..n_max
ProbSeries prob_pos_sweep(const GambleTable& m, long n_max, bool strict = true);

struct MinRepeats {
    long n;
    std::string certificate;
};

// least n <= horizon with prob_pos(m, t) >= 1-epsilon for every
// t in [n, n+window]; nullopt when no such n exists up to the horizon
std::optional<MinRepeats> min_repeats(const GambleTable& m, const Rat& epsilon, bool strict,
                                      long window, long horizon);

}  // namespace stpete
