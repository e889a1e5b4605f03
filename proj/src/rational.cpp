#include "stpete/rational.hpp"

namespace stpete {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rat q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("bad decimal literal: " + s);
        Int num;
        if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad decimal literal: " + s);
        Int den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    Int num;
    if (num.set_str(s, 10) != 0) throw std::invalid_argument("bad integer literal: " + s);
    return Rat(num);
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

std::string decimal_string(const Rat& q, int places) {
    bool neg = q < 0;
    Rat a = neg ? Rat(-q) : q;
    Int scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    Int num = a.get_num() * scale;
    Int den = a.get_den();
    Int quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int twice = rem * 2;
    int cmp = mpz_cmp(twice.get_mpz_t(), den.get_mpz_t());
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(quot.get_mpz_t()))) quot += 1;
    std::string digits = quot.get_str();
    if ((int)digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
    if (neg && quot != 0) digits.insert(0, "-");
    return digits;
}

double to_double(const Rat& q) {
    return q.get_d();
}

}  // namespace stpete
