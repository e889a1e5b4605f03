#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stpete/rational.hpp"

namespace stpete {

// One-shot gamble: ordered (outcome, probability) pairs.
// Probabilities are positive exact rationals summing to exactly 1;
// outcomes are integers; duplicate outcomes are allowed and preserved.
struct GambleTable {
    std::vector<std::pair<long, Rat>> entries;
    std::string label;

    GambleTable(std::vector<std::pair<long, Rat>> e, std::string lbl = "");

    long min_outcome() const;
    long max_outcome() const;
};

// k rounds, reward 2^i on first heads at round i, 2^k again for surviving
// all k rounds; fee subtracted from everything. k+1 entries, the last two equal.
GambleTable st_pete_table(long k, long fee);

// [[-1, (i-1)/i], [i, 1/i]]
GambleTable g_family_table(long i);

Rat expected_value(const GambleTable& m);
Rat variance(const GambleTable& m);
Rat shot_win_probability(const GambleTable& m, bool strict);

// merge duplicate outcomes (used internally; builders keep duplicates)
GambleTable normalized(const GambleTable& m);

// "[[-3, 1/2], [-1, 1/4], ...]"
std::string bracketed(const GambleTable& m);

std::string table_to_json(const GambleTable& m);
GambleTable table_from_json(const std::string& text);

}  // namespace stpete
