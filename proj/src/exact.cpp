#include "stpete/exact.hpp"

namespace stpete {

Rat ProbSeries::at(long n) const {
    long idx = n - start;
    if (idx < 0 || idx >= (long)values.size())
        throw std::out_of_range("series has no value at n=" + std::to_string(n));
    return values[idx];
}

Rat prob_pos(const GambleTable& m, long n, bool strict) {
    if (n < 1) throw std::invalid_argument("prob_pos: n must be >= 1");
    ScaledPoly base = scaled_from(pgf(m));
    ScaledPoly pw = scaled_power(base, (unsigned long)n);
    return scaled_positive_part(pw, strict);
}

ProbSeries prob_pos_sweep(const GambleTable& m, long n_max, bool strict) {
    if (n_max < 1) throw std::invalid_argument("prob_pos_sweep: n_max must be >= 1");
    ProbSeries s{m, strict, 1, {}};
    s.values.reserve(n_max);
    ScaledPoly base = scaled_from(pgf(m));
    ScaledPoly cur = base;
    s.values.push_back(scaled_positive_part(cur, strict));
    for (long n = 2; n <= n_max; ++n) {
        cur = scaled_multiply(cur, base);
        s.values.push_back(scaled_positive_part(cur, strict));
    }
    return s;
}

std::optional<MinRepeats> min_repeats(const GambleTable& m, const Rat& epsilon, bool strict,
                                      long window, long horizon) {
    if (epsilon <= 0 || epsilon >= 1) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (expected_value(m) <= 0) return std::nullopt;  // no n can make a losing game safe

    Rat threshold = Rat(1) - epsilon;
    ProbSeries sweep = prob_pos_sweep(m, horizon + window, strict);
    long run = 0;  // count of consecutive indices meeting the threshold, ending at current n
    for (long n = 1; n <= horizon + window; ++n) {
        run = (sweep.at(n) >= threshold) ? run + 1 : 0;
        long candidate = n - window;
        if (run >= window + 1 && candidate >= 1 && candidate <= horizon) {
            Rat low = sweep.at(candidate);
            for (long t = candidate; t <= candidate + window; ++t)
                if (sweep.at(t) < low) low = sweep.at(t);
            std::string cert = "checked n=" + std::to_string(candidate) + ".." +
                               std::to_string(candidate + window) + " against 1-eps=" +
                               rat_str(threshold) + "; minimum over window " +
                               decimal_string(low) + " at threshold " + decimal_string(threshold);
            return MinRepeats{candidate, cert};
        }
    }
    return std::nullopt;
}

}  // namespace stpete
