#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cycleforge::ratpoly {

/// Exact rational scalar. GMP keeps values canonical (reduced, positive
/// denominator), which is exactly the invariant the rest of the library
/// relies on.
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& q) { return sgn(q); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational pow_rat(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
    return out;
}

/// 2^-k as an exact rational.
inline Rational dyadic_eps(unsigned long k) {
    Rational r(1);
    mpz_mul_2exp(mpq_denref(r.get_mpq_t()), mpq_denref(r.get_mpq_t()), k);
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Exact square root when the argument is a perfect rational square.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (mpz_perfect_square_p(mpq_numref(q.get_mpq_t())) &&
        mpz_perfect_square_p(mpq_denref(q.get_mpq_t()))) {
        Rational r;
        mpz_sqrt(mpq_numref(r.get_mpq_t()), mpq_numref(q.get_mpq_t()));
        mpz_sqrt(mpq_denref(r.get_mpq_t()), mpq_denref(q.get_mpq_t()));
        return r;
    }
    return std::nullopt;
}

/// Parses "p/q", plain integers, or terminating decimals ("0.54", "-1.65").
inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos)
            throw std::invalid_argument("parse_rational: mixed forms in '" + text + "'");
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        Integer num(digits, 10);
        Integer den(1);
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("parse_rational: bad literal '" + text + "'");
    if (sgn(Rational(r.get_den())) == 0)
        throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace cycleforge::ratpoly
