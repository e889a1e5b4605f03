#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stpete/gamble.hpp"

namespace stpete {

// xoshiro256++ generator, seeded from a single u64 through splitmix64
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    // uniform in [0, 2^64), used directly against the fixed point ladder
private:
    std::uint64_t s_[4];
};

struct SimResult {
    double mean_payoff;     // average of per-run total payoffs
    double win_fraction;    // fraction of runs with strictly positive total
    long runs;
    long repeats;
};

// one run: sum of `repeats` independent draws from the table
long simulate_run(const GambleTable& m, long repeats, Rng& rng);

// `runs` independent runs, each of `repeats` draws, deterministic in `seed`
SimResult simulate(const GambleTable& m, long repeats, long runs,
                   std::uint64_t seed);

// "101.5120000, 0.9150000000": mean to 7 decimals, fraction to 10
std::string sim_result_line(const SimResult& r);

}  // namespace stpete
