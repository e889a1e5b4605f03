#include "stpete/recurrence.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "json.hpp"
#include "stpete/errors.hpp"

namespace stpete {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Montgomery arithmetic mod an odd prime below 2^63
struct Mont {
    u64 p, ninv, r2, one_m;

    explicit Mont(u64 prime) : p(prime) {
        u64 inv = p;  // Newton iteration for p^-1 mod 2^64
        for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
        ninv = ~inv + 1;
        u128 r = (u128(1) << 64) % p;
        r2 = (u64)((r * r) % p);
        one_m = to_mont(1);
    }
    u64 redc(u128 t) const {
        u64 m = (u64)t * ninv;
        u64 res = (u64)((t + u128(m) * p) >> 64);
        return res >= p ? res - p : res;
    }
    u64 mul(u64 a, u64 b) const { return redc(u128(a) * b); }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 to_mont(u64 x) const { return mul(x % p, r2); }
    u64 from_mont(u64 x) const { return redc(x); }
    u64 pow(u64 base_m, u64 e) const {
        u64 acc = one_m;
        while (e) {
            if (e & 1) acc = mul(acc, base_m);
            base_m = mul(base_m, base_m);
            e >>= 1;
        }
        return acc;
    }
    u64 inv(u64 x_m) const { return pow(x_m, p - 2); }
};

constexpr u64 kPrimes[2] = {4611686018427387847ULL, 4611686018427387817ULL};

u64 mod_u64(const Int& x, u64 p) { return mpz_fdiv_ui(x.get_mpz_t(), p); }

// series in integer form: b[i] = a(start+i) * D^(start+i) with D the lcm of
// the gamble's probability denominators, which every a(n) denominator divides
struct IntSeries {
    Int D;
    long start = 1;
    std::vector<Int> b;
};

Int table_denominator(const GambleTable& m) {
    Int d = 1;
    for (const auto& [outcome, p] : m.entries)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), p.get_den().get_mpz_t());
    return d;
}

IntSeries integerize(const ProbSeries& s) {
    if (s.start < 0) throw std::invalid_argument("series start must be nonnegative");
    IntSeries out;
    out.D = table_denominator(s.gamble);
    out.start = s.start;
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), out.D.get_mpz_t(), (unsigned long)s.start);
    out.b.reserve(s.values.size());
    for (const Rat& v : s.values) {
        if (!mpz_divisible_p(pw.get_mpz_t(), v.get_den().get_mpz_t()))
            throw std::domain_error(
                "series denominators do not divide the gamble denominator power");
        Int q;
        mpz_divexact(q.get_mpz_t(), pw.get_mpz_t(), v.get_den().get_mpz_t());
        out.b.push_back(q * v.get_num());
        pw *= out.D;
    }
    return out;
}

// b residues in Montgomery form for one prime
struct ModSeries {
    Mont mont;
    std::vector<u64> b_m;

    ModSeries(const IntSeries& s, u64 prime) : mont(prime) {
        b_m.reserve(s.b.size());
        for (const Int& x : s.b) b_m.push_back(mont.to_mont(mod_u64(x, prime)));
    }
};

// fit matrix for the cell (r, d): row n holds the equation
// sum_{j,t} c_{j,t} * b(n+j) * D^(r-j) * n^t = 0, columns ordered j major
std::vector<std::vector<u64>> build_matrix_mod(const ModSeries& ms, const IntSeries& is,
                                               long r, long d, long fit_count) {
    const Mont& M = ms.mont;
    long rows = fit_count - r;
    long cols = (r + 1) * (d + 1);
    u64 D_m = M.to_mont(mod_u64(is.D, M.p));
    std::vector<u64> Dpow(r + 1);
    Dpow[r] = M.one_m;
    for (long j = r; j-- > 0;) Dpow[j] = M.mul(Dpow[j + 1], D_m);
    std::vector<std::vector<u64>> A(rows, std::vector<u64>(cols));
    for (long i = 0; i < rows; ++i) {
        long n = is.start + i;
        u64 n_m = M.to_mont((u64)n % M.p);
        for (long j = 0; j <= r; ++j) {
            u64 cur = M.mul(ms.b_m[i + j], Dpow[j]);
            for (long t = 0; t <= d; ++t) {
                A[i][j * (d + 1) + t] = cur;
                cur = M.mul(cur, n_m);
            }
        }
    }
    return A;
}

struct Elim {
    long rank = 0;
    std::vector<long> pivot_rows;  // original row indices, one per pivot
    std::vector<long> pivot_cols;
    std::vector<long> free_cols;
};

Elim eliminate(std::vector<std::vector<u64>>& A, const Mont& M) {
    long rows = (long)A.size();
    long cols = rows ? (long)A[0].size() : 0;
    std::vector<long> orig(rows);
    for (long i = 0; i < rows; ++i) orig[i] = i;
    Elim e;
    long next = 0;
    for (long c = 0; c < cols; ++c) {
        long pr = -1;
        for (long i = next; i < rows; ++i)
            if (A[i][c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) {
            e.free_cols.push_back(c);
            continue;
        }
        std::swap(A[next], A[pr]);
        std::swap(orig[next], orig[pr]);
        u64 inv = M.inv(A[next][c]);
        for (long j = c; j < cols; ++j) A[next][j] = M.mul(A[next][j], inv);
        for (long i = next + 1; i < rows; ++i) {
            u64 f = A[i][c];
            if (!f) continue;
            A[i][c] = 0;
            for (long j = c + 1; j < cols; ++j)
                if (A[next][j]) A[i][j] = M.sub(A[i][j], M.mul(f, A[next][j]));
        }
        e.pivot_rows.push_back(orig[next]);
        e.pivot_cols.push_back(c);
        if (++next == rows) {
            for (long c2 = c + 1; c2 < cols; ++c2) e.free_cols.push_back(c2);
            break;
        }
    }
    e.rank = next;
    return e;
}

std::vector<std::vector<u64>> mod_inverse_matrix(std::vector<std::vector<u64>> A,
                                                 const Mont& M) {
    long n = (long)A.size();
    std::vector<std::vector<u64>> I(n, std::vector<u64>(n, 0));
    for (long i = 0; i < n; ++i) I[i][i] = M.one_m;
    for (long c = 0; c < n; ++c) {
        long pr = -1;
        for (long i = c; i < n; ++i)
            if (A[i][c]) {
                pr = i;
                break;
            }
        if (pr < 0) throw std::logic_error("pivot subsystem singular mod p");
        std::swap(A[c], A[pr]);
        std::swap(I[c], I[pr]);
        u64 inv = M.inv(A[c][c]);
        for (long j = 0; j < n; ++j) {
            A[c][j] = M.mul(A[c][j], inv);
            I[c][j] = M.mul(I[c][j], inv);
        }
        for (long i = 0; i < n; ++i) {
            if (i == c || !A[i][c]) continue;
            u64 f = A[i][c];
            A[i][c] = 0;
            for (long j = 0; j < n; ++j) {
                if (A[c][j]) A[i][j] = M.sub(A[i][j], M.mul(f, A[c][j]));
                if (I[c][j]) I[i][j] = M.sub(I[i][j], M.mul(f, I[c][j]));
            }
        }
    }
    return I;
}

std::optional<Rat> rat_reconstruct(const Int& u, const Int& m) {
    Int B, half = m / 2;
    mpz_sqrt(B.get_mpz_t(), half.get_mpz_t());
    Int r0 = m, r1 = u, t0 = 0, t1 = 1;
    while (r1 > B) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Int t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Int num = r1, den = t1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den > B) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// p-adic (Dixon) solve of the square system A x = rhs: one mod p inverse, then
// linear lifting with rational reconstruction attempted every 16 digits
std::optional<std::vector<Rat>> dixon_solve(const std::vector<std::vector<Int>>& A,
                                            const std::vector<Int>& rhs, u64 prime) {
    Mont M(prime);
    long n = (long)A.size();
    std::vector<std::vector<u64>> Amod(n, std::vector<u64>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) Amod[i][j] = M.to_mont(mod_u64(A[i][j], prime));
    auto InvA = mod_inverse_matrix(std::move(Amod), M);

    std::vector<Int> x(n, Int(0)), res(rhs);
    Int pk = 1;
    Int P;
    mpz_set_ui(P.get_mpz_t(), prime);
    std::vector<u64> rm(n), y(n);
    const long cap = 2048;
    for (long k = 0; k < cap; ++k) {
        for (long i = 0; i < n; ++i) rm[i] = M.to_mont(mod_u64(res[i], prime));
        for (long i = 0; i < n; ++i) {
            u64 acc = 0;
            const auto& row = InvA[i];
            for (long j = 0; j < n; ++j) acc = M.add(acc, M.mul(row[j], rm[j]));
            y[i] = M.from_mont(acc);
        }
        for (long i = 0; i < n; ++i)
            if (y[i]) mpz_addmul_ui(x[i].get_mpz_t(), pk.get_mpz_t(), y[i]);
        for (long i = 0; i < n; ++i) {
            Int& ri = res[i];
            for (long j = 0; j < n; ++j)
                if (y[j]) mpz_submul_ui(ri.get_mpz_t(), A[i][j].get_mpz_t(), y[j]);
            mpz_divexact_ui(ri.get_mpz_t(), ri.get_mpz_t(), prime);
        }
        pk *= P;
        if ((k + 1) % 16 != 0) continue;
        std::vector<Rat> cand(n);
        bool ok = true;
        for (long i = 0; i < n && ok; ++i) {
            auto q = rat_reconstruct(x[i], pk);
            if (!q)
                ok = false;
            else
                cand[i] = *q;
        }
        if (ok) return cand;
    }
    return std::nullopt;
}

std::optional<Recurrence> make_recurrence(const std::vector<Rat>& kernel, long r, long d,
                                          const ProbSeries& series, long fit_rows,
                                          long verify_rows) {
    Int L = 1;
    for (const Rat& q : kernel)
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<std::vector<Int>> polys(r + 1, std::vector<Int>(d + 1));
    Int content = 0;
    for (long j = 0; j <= r; ++j)
        for (long t = 0; t <= d; ++t) {
            const Rat& q = kernel[j * (d + 1) + t];
            Int scale;
            mpz_divexact(scale.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
            polys[j][t] = q.get_num() * scale;
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), polys[j][t].get_mpz_t());
        }
    if (content == 0) return std::nullopt;
    for (auto& poly : polys) {
        for (Int& c : poly) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
        while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
    }
    if (polys[r].size() == 1 && polys[r][0] == 0) return std::nullopt;
    if (polys[r].back() < 0)
        for (auto& poly : polys)
            for (Int& c : poly) c = -c;

    Recurrence rec;
    rec.order = r;
    rec.coeffs = std::move(polys);
    rec.offset = series.start;
    rec.initial_values.assign(series.values.begin(), series.values.begin() + r);
    rec.fit_rows = fit_rows;
    rec.verify_rows = verify_rows;
    return rec;
}

bool check_rows(const Recurrence& rec, const IntSeries& is) {
    long r = rec.order;
    long total = (long)is.b.size();
    if (total <= r) return true;
    std::vector<Int> Dpow(r + 1);
    Dpow[r] = 1;
    for (long j = r; j-- > 0;) Dpow[j] = Dpow[j + 1] * is.D;
    for (long i = 0; i + r < total; ++i) {
        long n = is.start + i;
        Int sum = 0;
        for (long j = 0; j <= r; ++j) {
            Int cj = rec.coeff_at((std::size_t)j, n);
            if (cj == 0) continue;
            cj *= Dpow[j];
            mpz_addmul(sum.get_mpz_t(), cj.get_mpz_t(), is.b[i + j].get_mpz_t());
        }
        if (sum != 0) return false;
    }
    return true;
}

std::optional<Recurrence> attempt_exact(const ProbSeries& series, const IntSeries& is,
                                        const ModSeries& ms0, long r, long d,
                                        long fit_count, long verify_count) {
    auto A = build_matrix_mod(ms0, is, r, d, fit_count);
    Elim e = eliminate(A, ms0.mont);
    long cols = (r + 1) * (d + 1);
    if (e.rank >= cols || e.free_cols.empty()) return std::nullopt;
    long f = e.free_cols.back();

    std::vector<Int> Dpow(r + 1);
    Dpow[r] = 1;
    for (long j = r; j-- > 0;) Dpow[j] = Dpow[j + 1] * is.D;
    auto entry = [&](long row, long col, const std::vector<Int>& npow) {
        long j = col / (d + 1), t = col % (d + 1);
        Int v = is.b[row + j] * Dpow[j];
        if (t) v *= npow[t];
        return v;
    };

    long rank = e.rank;
    std::vector<std::vector<Int>> Asq(rank, std::vector<Int>(rank));
    std::vector<Int> rhs(rank);
    std::vector<Int> npow(d + 1);
    for (long i = 0; i < rank; ++i) {
        long row = e.pivot_rows[i];
        long n = is.start + row;
        npow[0] = 1;
        for (long t = 1; t <= d; ++t) npow[t] = npow[t - 1] * n;
        for (long k = 0; k < rank; ++k) Asq[i][k] = entry(row, e.pivot_cols[k], npow);
        rhs[i] = -entry(row, f, npow);
    }

    auto sol = dixon_solve(Asq, rhs, kPrimes[0]);
    if (!sol) return std::nullopt;
    std::vector<Rat> kernel(cols, Rat(0));
    kernel[f] = 1;
    for (long k = 0; k < rank; ++k) kernel[e.pivot_cols[k]] = (*sol)[k];

    auto rec = make_recurrence(kernel, r, d, series, fit_count - r, verify_count);
    if (!rec) return std::nullopt;
    if (!check_rows(*rec, is)) return std::nullopt;
    return rec;
}

}  // namespace

long Recurrence::degree() const {
    long deg = 0;
    for (const auto& poly : coeffs)
        for (std::size_t t = 0; t < poly.size(); ++t)
            if (poly[t] != 0) deg = std::max(deg, (long)t);
    return deg;
}

Int Recurrence::coeff_at(std::size_t j, long n) const {
    Int acc = 0;
    const auto& poly = coeffs.at(j);
    for (std::size_t t = poly.size(); t-- > 0;) {
        acc *= n;
        acc += poly[t];
    }
    return acc;
}

std::optional<Recurrence> guess_recurrence(const ProbSeries& series, long max_order,
                                           long max_degree, long verify_count) {
    if (max_order < 1) throw std::invalid_argument("max_order must be >= 1");
    if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
    if (verify_count < 1) throw std::invalid_argument("verify_count must be >= 1");
    long T = (long)series.values.size();
    long required = (max_order + 1) * (max_degree + 1) + max_order + verify_count;
    if (T < required)
        throw std::domain_error("guess_recurrence needs at least " +
                                std::to_string(required) + " exact terms, got " +
                                std::to_string(T));

    IntSeries is = integerize(series);
    ModSeries ms0(is, kPrimes[0]), ms1(is, kPrimes[1]);
    long fit_count = T - verify_count;

    // a cell (r, d) is feasible when both primes report a nontrivial kernel;
    // for fixed r feasibility is monotone in d, so the minimal d bisects
    auto feasible = [&](long r, long d) {
        long cols = (r + 1) * (d + 1);
        for (const ModSeries* ms : {&ms0, &ms1}) {
            auto A = build_matrix_mod(*ms, is, r, d, fit_count);
            if (eliminate(A, ms->mont).rank >= cols) return false;
        }
        return true;
    };

    for (long r = 1; r <= max_order; ++r) {
        if (fit_count - r < 1) break;
        if (!feasible(r, max_degree)) continue;
        long lo = 0, hi = max_degree;
        while (lo < hi) {
            long mid = lo + (hi - lo) / 2;
            if (feasible(r, mid))
                hi = mid;
            else
                lo = mid + 1;
        }
        for (long d = lo; d <= max_degree; ++d) {
            auto rec = attempt_exact(series, is, ms0, r, d, fit_count, verify_count);
            if (rec) return rec;
        }
    }
    return std::nullopt;
}

bool check_recurrence(const Recurrence& rec, const ProbSeries& series) {
    return check_rows(rec, integerize(series));
}

ProbSeries extend(const Recurrence& rec, const ProbSeries& series, long n_target) {
    if (n_target < 1) throw std::invalid_argument("n_target must be >= 1");
    long r = rec.order;
    if ((long)series.values.size() < r)
        throw std::invalid_argument("series shorter than the recurrence order");
    ProbSeries out = series;
    if (n_target <= out.last_n()) return out;

    IntSeries is = integerize(series);
    const Int& D = is.D;
    std::vector<Int> Dpow(r + 1);
    Dpow[r] = 1;
    for (long j = r; j-- > 0;) Dpow[j] = Dpow[j + 1] * D;
    std::vector<Int> ring(is.b.end() - r, is.b.end());
    Int Dm;
    mpz_pow_ui(Dm.get_mpz_t(), D.get_mpz_t(), (unsigned long)out.last_n());

    for (long m = out.last_n() + 1; m <= n_target; ++m) {
        long n = m - r;
        Int cr = rec.coeff_at((std::size_t)r, n);
        if (cr == 0)
            throw std::domain_error("recurrence leading coefficient vanishes at n = " +
                                    std::to_string(n));
        Int sum = 0;
        for (long j = 0; j < r; ++j) {
            Int cj = rec.coeff_at((std::size_t)j, n);
            if (cj == 0) continue;
            cj *= Dpow[j];
            mpz_addmul(sum.get_mpz_t(), cj.get_mpz_t(), ring[j].get_mpz_t());
        }
        sum = -sum;
        if (!mpz_divisible_p(sum.get_mpz_t(), cr.get_mpz_t()))
            throw NumericalError("extension step at n = " + std::to_string(m) +
                                 " is not exact; the fitted recurrence disagrees with the sequence");
        Int bm;
        mpz_divexact(bm.get_mpz_t(), sum.get_mpz_t(), cr.get_mpz_t());
        Dm *= D;
        if (bm < 0 || bm > Dm)
            throw NumericalError("extension left [0,1] at n = " + std::to_string(m) +
                                 "; the fitted recurrence disagrees with the sequence");
        Rat val(bm, Dm);
        val.canonicalize();
        out.values.push_back(val);
        ring.erase(ring.begin());
        ring.push_back(std::move(bm));
    }
    return out;
}

std::string recurrence_to_json(const Recurrence& rec) {
    nlohmann::json j;
    j["order"] = rec.order;
    j["degree"] = rec.degree();
    j["offset"] = rec.offset;
    j["status"] = rec.status;
    j["fit_rows"] = rec.fit_rows;
    j["verify_rows"] = rec.verify_rows;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& poly : rec.coeffs) {
        nlohmann::json p = nlohmann::json::array();
        for (const Int& c : poly) p.push_back(c.get_str());
        coeffs.push_back(p);
    }
    j["coeffs"] = coeffs;
    nlohmann::json init = nlohmann::json::array();
    for (const Rat& v : rec.initial_values) init.push_back(rat_str(v));
    j["initial_values"] = init;
    return j.dump(2);
}

Recurrence recurrence_from_json(const std::string& text) {
    Recurrence rec;
    std::vector<std::vector<Rat>> raw;
    try {
        auto j = nlohmann::json::parse(text);
        rec.order = j.at("order").get<long>();
        rec.offset = j.at("offset").get<long>();
        if (j.contains("status")) rec.status = j.at("status").get<std::string>();
        if (j.contains("fit_rows")) rec.fit_rows = j.at("fit_rows").get<long>();
        if (j.contains("verify_rows")) rec.verify_rows = j.at("verify_rows").get<long>();
        for (const auto& poly : j.at("coeffs")) {
            std::vector<Rat> p;
            for (const auto& c : poly) p.push_back(parse_rat(c.get<std::string>()));
            if (p.empty()) p.push_back(Rat(0));
            raw.push_back(p);
        }
        for (const auto& v : j.at("initial_values"))
            rec.initial_values.push_back(parse_rat(v.get<std::string>()));
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("bad recurrence json: ") + ex.what());
    }
    if (rec.order < 1) throw std::invalid_argument("recurrence order must be >= 1");
    if ((long)raw.size() != rec.order + 1)
        throw std::invalid_argument("recurrence needs order+1 coefficient polynomials");
    Int L = 1;
    for (const auto& poly : raw)
        for (const Rat& q : poly)
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
    for (const auto& poly : raw) {
        std::vector<Int> p;
        for (const Rat& q : poly) {
            Int scale;
            mpz_divexact(scale.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
            p.push_back(q.get_num() * scale);
        }
        while (p.size() > 1 && p.back() == 0) p.pop_back();
        rec.coeffs.push_back(std::move(p));
    }
    if (rec.coeffs.back().size() == 1 && rec.coeffs.back()[0] == 0)
        throw std::invalid_argument("leading coefficient polynomial is zero");
    return rec;
}

}  // namespace stpete
