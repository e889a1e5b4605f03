#include "stpete/montecarlo.hpp"

#include <cstdio>
#include <stdexcept>

namespace stpete {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// cumulative probabilities as 64 bit fixed point thresholds; a uniform u64
// draw u selects the first entry with u < threshold, the last entry is a
// catch all so rounding can never leave a draw unassigned
struct Ladder {
    std::vector<std::uint64_t> thresholds;
    std::vector<long> outcomes;

    explicit Ladder(const GambleTable& m) {
        Rat cum(0);
        Int two64 = Int(1) << 64;
        for (const auto& [outcome, p] : m.entries) {
            cum += p;
            Int thr = (cum.get_num() * two64) / cum.get_den();
            std::uint64_t t = 0;
            if (thr >= two64)
                t = ~0ULL;  // full mass; the top rung saturates
            else
                mpz_export(&t, nullptr, -1, sizeof t, 0, 0, thr.get_mpz_t());
            thresholds.push_back(t);
            outcomes.push_back(outcome);
        }
        thresholds.back() = ~0ULL;
    }

    long draw(std::uint64_t u) const {
        for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
            if (u < thresholds[i]) return outcomes[i];
        return outcomes.back();
    }
};

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t st = seed;
    for (auto& s : s_) s = splitmix64(st);
}

std::uint64_t Rng::next() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

long simulate_run(const GambleTable& m, long repeats, Rng& rng) {
    if (repeats < 1) throw std::invalid_argument("simulate_run: repeats must be >= 1");
    Ladder ladder(m);
    long total = 0;
    for (long i = 0; i < repeats; ++i) total += ladder.draw(rng.next());
    return total;
}

SimResult simulate(const GambleTable& m, long repeats, long runs,
                   std::uint64_t seed) {
    if (repeats < 1) throw std::invalid_argument("simulate: repeats must be >= 1");
    if (runs < 1) throw std::invalid_argument("simulate: runs must be >= 1");
    Rng rng(seed);
    Ladder ladder(m);
    long wins = 0;
    double sum_totals = 0.0;
    for (long r = 0; r < runs; ++r) {
        long total = 0;
        for (long i = 0; i < repeats; ++i) total += ladder.draw(rng.next());
        if (total > 0) ++wins;
        sum_totals += static_cast<double>(total);
    }
    return {sum_totals / static_cast<double>(runs),
            static_cast<double>(wins) / static_cast<double>(runs), runs,
            repeats};
}

std::string sim_result_line(const SimResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.7f, %.10f", r.mean_payoff,
                  r.win_fraction);
    return buf;
}

}  // namespace stpete
