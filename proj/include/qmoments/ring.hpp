#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace qmoments {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical `num/den` text, denominator always written.
inline std::string to_fraction_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts `num/den` or a bare integer.
inline Rational parse_rational(std::string_view text) {
    Rational r;
    std::string s(text);
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) {
        throw ParseError("not a rational number: '" + s + "'");
    }
    r.canonicalize();
    return r;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Coefficient domains. Each ring is a small value object; series and
// matrices carry one so that residue rings know their modulus.

struct RationalField {
    using value_type = Rational;

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type from_int(long long v) { return Rational(static_cast<long>(v)); }
    static value_type from_integer(const Integer& v) { return Rational(v); }
    static value_type from_rational(const Rational& v) { return v; }
    static bool is_zero(const value_type& v) { return sgn(v) == 0; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type sub(const value_type& a, const value_type& b) { return a - b; }
    static value_type neg(const value_type& a) { return -a; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static void add_mul(value_type& acc, const value_type& a, const value_type& b) { acc += a * b; }
    static value_type inverse(const value_type& a) {
        if (is_zero(a)) throw NonInvertible("division by zero");
        return 1 / a;
    }
    static std::string to_string(const value_type& v) { return to_fraction_string(v); }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Exact integers; only the units +1 and -1 are invertible.
struct IntegerRing {
    using value_type = Integer;

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type from_int(long long v) { return Integer(static_cast<long>(v)); }
    static value_type from_integer(const Integer& v) { return v; }
    static value_type from_rational(const Rational& v) {
        if (v.get_den() != 1) throw NonInvertible("non-integral value " + to_fraction_string(v));
        return v.get_num();
    }
    static bool is_zero(const value_type& v) { return sgn(v) == 0; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type sub(const value_type& a, const value_type& b) { return a - b; }
    static value_type neg(const value_type& a) { return -a; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static void add_mul(value_type& acc, const value_type& a, const value_type& b) {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    static value_type inverse(const value_type& a) {
        if (a == 1 || a == -1) return a;
        throw NonInvertible(a.get_str() + " is not a unit in Z");
    }
    static std::string to_string(const value_type& v) { return v.get_str(); }

    friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

/// Z/mZ with residues stored in [0, m).
class ResidueRing {
public:
    using value_type = std::uint64_t;

    explicit ResidueRing(std::uint64_t modulus) : m_(modulus) {
        if (modulus < 1) throw error("modulus must be positive");
    }

    std::uint64_t modulus() const noexcept { return m_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1 % m_; }
    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(m_);
        return static_cast<value_type>(r < 0 ? r + static_cast<long long>(m_) : r);
    }
    value_type from_integer(const Integer& v) const {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m_);
        return r.get_ui();
    }
    value_type from_rational(const Rational& v) const {
        return mul(from_integer(v.get_num()), inverse(from_integer(v.get_den())));
    }
    bool is_zero(value_type v) const { return v == 0; }
    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= m_ ? s - m_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + m_ - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : m_ - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % m_);
    }
    void add_mul(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }
    value_type inverse(value_type a) const {
        // extended Euclid on signed 128-bit values
        __int128 t = 0, new_t = 1;
        __int128 r = m_, new_r = a % m_;
        while (new_r != 0) {
            __int128 q = r / new_r;
            __int128 tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (r != 1) {
            throw NonInvertible(std::to_string(a) + " is not invertible mod " + std::to_string(m_));
        }
        if (t < 0) t += m_;
        return static_cast<value_type>(t);
    }
    std::string to_string(value_type v) const { return std::to_string(v); }

    friend bool operator==(const ResidueRing& a, const ResidueRing& b) { return a.m_ == b.m_; }

private:
    std::uint64_t m_;
};

} // namespace qmoments
