#include "stpete/laurent.hpp"

#include <algorithm>
#include <cstring>

namespace stpete {

Rat LaurentPoly::coeff(long exp) const {
    if (exp < min_exp || exp > max_exp()) return Rat(0);
    return coeffs[exp - min_exp];
}

void LaurentPoly::trim() {
    size_t lo = 0, hi = coeffs.size();
    while (lo < hi && coeffs[lo] == 0) ++lo;
    while (hi > lo && coeffs[hi - 1] == 0) --hi;
    if (lo == hi) {
        coeffs.clear();
        min_exp = 0;
        return;
    }
    if (lo > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + lo);
    coeffs.resize(hi - lo);
    min_exp += (long)lo;
}

LaurentPoly laurent_from_terms(const std::vector<std::pair<long, Rat>>& terms) {
    LaurentPoly p;
    if (terms.empty()) return p;
    long lo = terms[0].first, hi = terms[0].first;
    for (auto& [e, c] : terms) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    p.min_exp = lo;
    p.coeffs.assign(hi - lo + 1, Rat(0));
    for (auto& [e, c] : terms) p.coeffs[e - lo] += c;
    p.trim();
    return p;
}

LaurentPoly pgf(const GambleTable& m) {
    std::vector<std::pair<long, Rat>> terms(m.entries.begin(), m.entries.end());
    return laurent_from_terms(terms);
}

LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.min_exp = a.min_exp + b.min_exp;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rat(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j] == 0) continue;
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        }
    }
    r.trim();
    return r;
}

LaurentPoly power(const LaurentPoly& a, unsigned long n) {
    LaurentPoly result;
    result.coeffs = {Rat(1)};
    result.min_exp = 0;
    if (n == 0) return result;
    LaurentPoly base = a;
    unsigned long e = n;
    while (true) {
        if (e & 1) result = multiply(result, base);
        e >>= 1;
        if (!e) break;
        base = multiply(base, base);
    }
    return result;
}

Rat positive_part(const LaurentPoly& a, bool strict) {
    Rat s = 0;
    for (size_t j = 0; j < a.coeffs.size(); ++j) {
        long e = a.min_exp + (long)j;
        if (e > 0 || (!strict && e == 0)) s += a.coeffs[j];
    }
    return s;
}

Rat evaluate_at_one(const LaurentPoly& a) {
    Rat s = 0;
    for (auto& c : a.coeffs) s += c;
    return s;
}

std::complex<double> evaluate(const LaurentPoly& a, std::complex<double> x) {
    std::complex<double> s = 0;
    for (size_t j = a.coeffs.size(); j-- > 0;) s = s * x + to_double(a.coeffs[j]);
    return s * std::pow(x, (double)a.min_exp);
}

std::string to_string(const LaurentPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (size_t j = 0; j < a.coeffs.size(); ++j) {
        if (a.coeffs[j] == 0) continue;
        if (!out.empty()) out += " + ";
        long e = a.min_exp + (long)j;
        out += rat_str(a.coeffs[j]);
        if (e != 0) out += "*x^" + std::to_string(e);
    }
    return out;
}

ScaledPoly scaled_from(const LaurentPoly& a) {
    ScaledPoly s;
    s.min_exp = a.min_exp;
    s.den = 1;
    for (auto& c : a.coeffs) {
        Int d = c.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), s.den.get_mpz_t(), d.get_mpz_t());
        s.den = s.den / g * d;
    }
    s.num.reserve(a.coeffs.size());
    for (auto& c : a.coeffs) s.num.push_back(c.get_num() * (s.den / c.get_den()));
    return s;
}

LaurentPoly unscaled(const ScaledPoly& a) {
    LaurentPoly p;
    p.min_exp = a.min_exp;
    p.coeffs.reserve(a.num.size());
    for (auto& n : a.num) {
        Rat q(n, a.den);
        q.canonicalize();
        p.coeffs.push_back(q);
    }
    p.trim();
    return p;
}

namespace {

size_t max_coeff_bits(const std::vector<Int>& v) {
    size_t b = 1;
    for (auto& x : v) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
    return b;
}

bool all_nonnegative(const std::vector<Int>& v) {
    for (auto& x : v)
        if (x < 0) return false;
    return true;
}

std::vector<Int> conv_schoolbook(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size() + b.size() - 1, Int(0));
    // iterate the shorter operand outside so the inner addmul streams over the longer one
    const auto& outer = a.size() <= b.size() ? a : b;
    const auto& inner = a.size() <= b.size() ? b : a;
    for (size_t i = 0; i < outer.size(); ++i) {
        if (outer[i] == 0) continue;
        for (size_t j = 0; j < inner.size(); ++j) {
            if (inner[j] == 0) continue;
            mpz_addmul(r[i + j].get_mpz_t(), outer[i].get_mpz_t(), inner[j].get_mpz_t());
        }
    }
    return r;
}

// Kronecker substitution: pack nonnegative coefficients into disjoint
// 64-bit-aligned fields of one big integer, multiply once, slice the product.
std::vector<Int> conv_packed(const std::vector<Int>& a, const std::vector<Int>& b) {
    size_t bits_a = max_coeff_bits(a), bits_b = max_coeff_bits(b);
    size_t min_len = std::min(a.size(), b.size());
    size_t carry_bits = 64 - __builtin_clzll((unsigned long long)min_len);
    size_t field_bits = ((bits_a + bits_b + carry_bits + 1 + 63) / 64) * 64;
    size_t words = field_bits / 64;

    auto pack = [&](const std::vector<Int>& v) {
        std::vector<mp_limb_t> buf(v.size() * words, 0);
        for (size_t i = 0; i < v.size(); ++i) {
            size_t count = 0;
            mpz_export(&buf[i * words], &count, -1, sizeof(mp_limb_t), 0, 0, v[i].get_mpz_t());
        }
        Int packed;
        mpz_import(packed.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
        return packed;
    };

    Int pa = pack(a), pb = pack(b);
    Int prod = pa * pb;

    size_t out_len = a.size() + b.size() - 1;
    std::vector<mp_limb_t> buf(out_len * words + 1, 0);
    size_t count = 0;
    mpz_export(buf.data(), &count, -1, sizeof(mp_limb_t), 0, 0, prod.get_mpz_t());
    std::vector<Int> r(out_len);
    for (size_t i = 0; i < out_len; ++i)
        mpz_import(r[i].get_mpz_t(), words, -1, sizeof(mp_limb_t), 0, 0, &buf[i * words]);
    return r;
}

}  // namespace

ScaledPoly scaled_multiply(const ScaledPoly& a, const ScaledPoly& b) {
    if (a.num.empty() || b.num.empty()) return ScaledPoly{a.min_exp + b.min_exp, {}, a.den * b.den};
    ScaledPoly r;
    r.min_exp = a.min_exp + b.min_exp;
    r.den = a.den * b.den;
    size_t limbs = (max_coeff_bits(a.num) + max_coeff_bits(b.num)) / 64 + 1;
    bool packable = all_nonnegative(a.num) && all_nonnegative(b.num);
    double cost = (double)a.num.size() * (double)b.num.size() * (double)limbs;
    // packing pays off for two long operands (powering squarings); against a
    // short base the pack/unpack traffic dwarfs the zero-skipping schoolbook pass
    bool both_long = std::min(a.num.size(), b.num.size()) >= 256;
    if (packable && both_long && cost > 4e6)
        r.num = conv_packed(a.num, b.num);
    else
        r.num = conv_schoolbook(a.num, b.num);
    return r;
}

ScaledPoly scaled_power(const ScaledPoly& a, unsigned long n) {
    ScaledPoly result{0, {Int(1)}, Int(1)};
    if (n == 0) return result;
    ScaledPoly base = a;
    unsigned long e = n;
    while (true) {
        if (e & 1) result = scaled_multiply(result, base);
        e >>= 1;
        if (!e) break;
        base = scaled_multiply(base, base);
    }
    return result;
}

Rat scaled_positive_part(const ScaledPoly& a, bool strict) {
    Int s = 0;
    for (size_t j = 0; j < a.num.size(); ++j) {
        long e = a.min_exp + (long)j;
        if (e > 0 || (!strict && e == 0)) s += a.num[j];
    }
    Rat q(s, a.den);
    q.canonicalize();
    return q;
}

}  // namespace stpete
