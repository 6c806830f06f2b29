#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ring.hpp"

namespace qmoments {

/// Truncated power series sum_{n=0}^{prec} c_n q^n over a coefficient ring.
/// The coefficient of q^n is exact for every n <= prec; prec travels with
/// the value and binary operations keep the smaller of the two.
template <class Ring>
class basic_series {
public:
    using ring_type = Ring;
    using value_type = typename Ring::value_type;

    /// Zero series of the given precision.
    explicit basic_series(std::size_t prec, Ring ring = Ring{})
        : ring_(std::move(ring)), coeffs_(prec + 1, ring_.zero()) {}

    /// Takes ownership of coeffs; prec = coeffs.size() - 1.
    basic_series(std::vector<value_type> coeffs, Ring ring = Ring{})
        : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw error("series needs at least one coefficient");
    }

    /// Integer literals padded with zeros up to prec.
    static basic_series from_ints(std::initializer_list<long long> values, std::size_t prec,
                                  Ring ring = Ring{}) {
        std::vector<value_type> c(prec + 1, ring.zero());
        std::size_t n = 0;
        for (long long v : values) {
            if (n > prec) break;
            c[n++] = ring.from_int(v);
        }
        return basic_series(std::move(c), std::move(ring));
    }

    static basic_series one(std::size_t prec, Ring ring = Ring{}) {
        basic_series s(prec, ring);
        s.coeffs_[0] = s.ring_.one();
        return s;
    }

    static basic_series monomial(value_type c, std::size_t power, std::size_t prec, Ring ring = Ring{}) {
        basic_series s(prec, std::move(ring));
        if (power <= prec) s.coeffs_[power] = std::move(c);
        return s;
    }

    std::size_t prec() const noexcept { return coeffs_.size() - 1; }
    const Ring& ring() const noexcept { return ring_; }
    const value_type& operator[](std::size_t n) const { return coeffs_.at(n); }
    std::span<const value_type> coefficients() const noexcept { return coeffs_; }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const value_type& v) { return ring_.is_zero(v); });
    }

    friend bool operator==(const basic_series& a, const basic_series& b) {
        return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
    }

private:
    Ring ring_;
    std::vector<value_type> coeffs_;
};

using QSeries = basic_series<RationalField>;
using ZSeries = basic_series<IntegerRing>;
using ZmSeries = basic_series<ResidueRing>;

namespace detail {

template <class Ring>
void require_same_ring(const basic_series<Ring>& a, const basic_series<Ring>& b) {
    if (!(a.ring() == b.ring())) throw error("series over different coefficient rings");
}

} // namespace detail

template <class Ring>
basic_series<Ring> truncate(const basic_series<Ring>& a, std::size_t prec) {
    if (prec >= a.prec()) return a;
    auto c = a.coefficients();
    return basic_series<Ring>(std::vector<typename Ring::value_type>(c.begin(), c.begin() + prec + 1), a.ring());
}

template <class Ring>
basic_series<Ring> add(const basic_series<Ring>& a, const basic_series<Ring>& b) {
    detail::require_same_ring(a, b);
    const auto& r = a.ring();
    std::size_t p = std::min(a.prec(), b.prec());
    std::vector<typename Ring::value_type> c(p + 1);
    for (std::size_t n = 0; n <= p; ++n) c[n] = r.add(a[n], b[n]);
    return basic_series<Ring>(std::move(c), r);
}

template <class Ring>
basic_series<Ring> sub(const basic_series<Ring>& a, const basic_series<Ring>& b) {
    detail::require_same_ring(a, b);
    const auto& r = a.ring();
    std::size_t p = std::min(a.prec(), b.prec());
    std::vector<typename Ring::value_type> c(p + 1);
    for (std::size_t n = 0; n <= p; ++n) c[n] = r.sub(a[n], b[n]);
    return basic_series<Ring>(std::move(c), r);
}

template <class Ring>
basic_series<Ring> neg(const basic_series<Ring>& a) {
    const auto& r = a.ring();
    std::vector<typename Ring::value_type> c(a.prec() + 1);
    for (std::size_t n = 0; n <= a.prec(); ++n) c[n] = r.neg(a[n]);
    return basic_series<Ring>(std::move(c), r);
}

template <class Ring>
basic_series<Ring> scale(const basic_series<Ring>& a, const typename Ring::value_type& k) {
    const auto& r = a.ring();
    std::vector<typename Ring::value_type> c(a.prec() + 1);
    for (std::size_t n = 0; n <= a.prec(); ++n) c[n] = r.mul(a[n], k);
    return basic_series<Ring>(std::move(c), r);
}

/// Cauchy product truncated to the smaller precision.
template <class Ring>
basic_series<Ring> mul(const basic_series<Ring>& a, const basic_series<Ring>& b) {
    detail::require_same_ring(a, b);
    const auto& r = a.ring();
    const std::size_t p = std::min(a.prec(), b.prec());
    using V = typename Ring::value_type;

    if constexpr (std::is_same_v<Ring, ResidueRing>) {
        // residues below 2^32: products can be summed in 128 bits and reduced once
        const std::uint64_t m = r.modulus();
        if (m < (std::uint64_t{1} << 32)) {
            std::vector<V> c(p + 1, 0);
            for (std::size_t n = 0; n <= p; ++n) {
                unsigned __int128 acc = 0;
                for (std::size_t i = 0; i <= n; ++i) acc += static_cast<unsigned __int128>(a[i]) * b[n - i];
                c[n] = static_cast<V>(acc % m);
            }
            return basic_series<Ring>(std::move(c), r);
        }
    }
    {
        std::vector<V> c(p + 1, r.zero());
        for (std::size_t i = 0; i <= p; ++i) {
            if (r.is_zero(a[i])) continue;
            for (std::size_t j = 0; i + j <= p; ++j) {
                if (r.is_zero(b[j])) continue;
                r.add_mul(c[i + j], a[i], b[j]);
            }
        }
        return basic_series<Ring>(std::move(c), r);
    }
}

/// Multiplicative inverse; requires an invertible constant term.
template <class Ring>
basic_series<Ring> invert(const basic_series<Ring>& a) {
    const auto& r = a.ring();
    if (r.is_zero(a[0])) throw ZeroConstantTerm();
    using V = typename Ring::value_type;
    const V inv0 = r.inverse(a[0]);
    const std::size_t p = a.prec();
    std::vector<V> b(p + 1, r.zero());
    b[0] = inv0;
    for (std::size_t n = 1; n <= p; ++n) {
        V acc = r.zero();
        for (std::size_t i = 1; i <= n; ++i) {
            if (r.is_zero(a[i])) continue;
            r.add_mul(acc, a[i], b[n - i]);
        }
        b[n] = r.neg(r.mul(acc, inv0));
    }
    return basic_series<Ring>(std::move(b), r);
}

template <class Ring>
basic_series<Ring> pow(const basic_series<Ring>& a, long e) {
    if (e < 0) return pow(invert(a), -e);
    auto result = basic_series<Ring>::one(a.prec(), a.ring());
    auto base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

/// q d/dq: the coefficient of q^n is multiplied by n.
template <class Ring>
basic_series<Ring> delq(const basic_series<Ring>& a) {
    const auto& r = a.ring();
    std::vector<typename Ring::value_type> c(a.prec() + 1);
    for (std::size_t n = 0; n <= a.prec(); ++n) c[n] = r.mul(a[n], r.from_int(static_cast<long long>(n)));
    return basic_series<Ring>(std::move(c), r);
}

template <class Ring>
basic_series<Ring> delq(const basic_series<Ring>& a, unsigned times) {
    basic_series<Ring> out = a;
    for (unsigned i = 0; i < times; ++i) out = delq(out);
    return out;
}

/// Replaces q by q^m. Every coefficient up to m*(prec+1)-1 is known exactly,
/// so that is the natural precision of the result; pass max_prec to cap it.
template <class Ring>
basic_series<Ring> subst_qpow(const basic_series<Ring>& a, std::size_t m,
                              std::size_t max_prec = static_cast<std::size_t>(-1)) {
    if (m == 0) throw error("subst_qpow needs m >= 1");
    const auto& r = a.ring();
    std::size_t p = std::min(m * (a.prec() + 1) - 1, max_prec);
    std::vector<typename Ring::value_type> c(p + 1, r.zero());
    for (std::size_t n = 0; n * m <= p; ++n) c[n * m] = a[n];
    return basic_series<Ring>(std::move(c), r);
}

/// Multiplies by q^t, keeping the precision.
template <class Ring>
basic_series<Ring> shift(const basic_series<Ring>& a, std::size_t t) {
    const auto& r = a.ring();
    std::vector<typename Ring::value_type> c(a.prec() + 1, r.zero());
    for (std::size_t n = t; n <= a.prec(); ++n) c[n] = a[n - t];
    return basic_series<Ring>(std::move(c), r);
}

/// In-place multiplication by (1 + s q^j), s = +1 or -1.
template <class Ring>
void multiply_binomial_inplace(std::vector<typename Ring::value_type>& c, const Ring& r, std::size_t j, int s) {
    if (j == 0 || j >= c.size()) return;
    for (std::size_t n = c.size() - 1; n >= j; --n) {
        c[n] = s > 0 ? r.add(c[n], c[n - j]) : r.sub(c[n], c[n - j]);
        if (n == j) break;
    }
}

/// In-place division by (1 + s q^j), s = +1 or -1.
template <class Ring>
void divide_binomial_inplace(std::vector<typename Ring::value_type>& c, const Ring& r, std::size_t j, int s) {
    if (j == 0) throw ZeroConstantTerm();
    for (std::size_t n = j; n < c.size(); ++n) {
        c[n] = s > 0 ? r.sub(c[n], c[n - j]) : r.add(c[n], c[n - j]);
    }
}

/// U_m: a(mn) becomes the coefficient of q^n. Precision floor(prec/m).
template <class Ring>
basic_series<Ring> op_U(const basic_series<Ring>& a, std::size_t m) {
    if (m == 0) throw error("U_m needs m >= 1");
    const std::size_t p = a.prec() / m;
    std::vector<typename Ring::value_type> c(p + 1);
    for (std::size_t n = 0; n <= p; ++n) c[n] = a[m * n];
    return basic_series<Ring>(std::move(c), a.ring());
}

/// S_{m,r}: keeps the terms a(mn+r) q^{mn+r}, zeroes the rest.
template <class Ring>
basic_series<Ring> op_S(const basic_series<Ring>& a, std::size_t m, std::size_t residue) {
    if (m == 0 || residue >= m) throw error("S_{m,r} needs 0 <= r < m");
    const auto& r = a.ring();
    std::vector<typename Ring::value_type> c(a.prec() + 1, r.zero());
    for (std::size_t n = residue; n <= a.prec(); n += m) c[n] = a[n];
    return basic_series<Ring>(std::move(c), r);
}

/// Coefficientwise reduction of a rational series to Z/mZ.
inline ZmSeries reduce_mod(const QSeries& a, std::uint64_t m) {
    if (m < 2) throw error("reduce_mod needs m >= 2");
    ResidueRing ring(m);
    std::vector<std::uint64_t> c(a.prec() + 1);
    for (std::size_t n = 0; n <= a.prec(); ++n) {
        const Integer& den = a[n].get_den();
        Integer g;
        mpz_gcd_ui(g.get_mpz_t(), den.get_mpz_t(), m);
        if (g != 1) throw NonInvertibleDenominator(n, m);
        c[n] = ring.from_rational(a[n]);
    }
    return ZmSeries(std::move(c), ring);
}

inline ZmSeries reduce_mod(const ZSeries& a, std::uint64_t m) {
    ResidueRing ring(m);
    std::vector<std::uint64_t> c(a.prec() + 1);
    for (std::size_t n = 0; n <= a.prec(); ++n) c[n] = ring.from_integer(a[n]);
    return ZmSeries(std::move(c), ring);
}

inline QSeries to_rational(const ZSeries& a) {
    std::vector<Rational> c(a.prec() + 1);
    for (std::size_t n = 0; n <= a.prec(); ++n) c[n] = Rational(a[n]);
    return QSeries(std::move(c));
}

/// Inverse of to_rational; throws NonInvertible on a fractional coefficient.
inline ZSeries to_integer(const QSeries& a) {
    std::vector<Integer> c(a.prec() + 1);
    for (std::size_t n = 0; n <= a.prec(); ++n) c[n] = IntegerRing::from_rational(a[n]);
    return ZSeries(std::move(c));
}

/// Reduction Z/kmZ -> Z/mZ.
inline ZmSeries reduce_mod(const ZmSeries& a, std::uint64_t m) {
    if (a.ring().modulus() % m != 0) throw error("target modulus must divide the source modulus");
    ResidueRing ring(m);
    std::vector<std::uint64_t> c(a.prec() + 1);
    for (std::size_t n = 0; n <= a.prec(); ++n) c[n] = a[n] % m;
    return ZmSeries(std::move(c), ring);
}

template <class Ring>
basic_series<Ring> operator+(const basic_series<Ring>& a, const basic_series<Ring>& b) { return add(a, b); }
template <class Ring>
basic_series<Ring> operator-(const basic_series<Ring>& a, const basic_series<Ring>& b) { return sub(a, b); }
template <class Ring>
basic_series<Ring> operator-(const basic_series<Ring>& a) { return neg(a); }
template <class Ring>
basic_series<Ring> operator*(const basic_series<Ring>& a, const basic_series<Ring>& b) { return mul(a, b); }

inline QSeries operator*(const Rational& k, const QSeries& a) { return scale(a, k); }
inline QSeries operator*(long k, const QSeries& a) { return scale(a, Rational(k)); }

/// First index where the two series differ, up to the common precision.
template <class Ring>
std::optional<std::size_t> first_difference(const basic_series<Ring>& a, const basic_series<Ring>& b) {
    const std::size_t p = std::min(a.prec(), b.prec());
    for (std::size_t n = 0; n <= p; ++n) {
        if (!(a[n] == b[n])) return n;
    }
    return std::nullopt;
}

} // namespace qmoments
