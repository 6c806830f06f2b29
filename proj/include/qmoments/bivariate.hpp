#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "series.hpp"

namespace qmoments {

/// Truncated series in q whose q^n coefficient is a Laurent polynomial in z.
/// Row n may only hold z-exponents with |m| <= n + slack; writing outside
/// that range throws ZRangeOverflow instead of dropping the term.
template <class Ring = RationalField>
class basic_bivariate {
public:
    using ring_type = Ring;
    using value_type = typename Ring::value_type;

    explicit basic_bivariate(std::size_t prec, std::size_t slack = 0, Ring ring = Ring{})
        : ring_(std::move(ring)), slack_(slack) {
        rows_.reserve(prec + 1);
        for (std::size_t n = 0; n <= prec; ++n) rows_.emplace_back(2 * (n + slack) + 1, ring_.zero());
    }

    static basic_bivariate one(std::size_t prec, Ring ring = Ring{}) {
        basic_bivariate b(prec, 0, ring);
        b.set(0, 0, b.ring_.one());
        return b;
    }

    /// A Laurent polynomial in z placed in row 0.
    static basic_bivariate from_zpoly(const std::map<long, value_type>& poly, std::size_t prec, Ring ring = Ring{}) {
        long bound = 0;
        for (const auto& [m, v] : poly) bound = std::max(bound, std::labs(m));
        basic_bivariate b(prec, static_cast<std::size_t>(bound), ring);
        for (const auto& [m, v] : poly) b.set(0, m, v);
        return b;
    }

    std::size_t prec() const noexcept { return rows_.size() - 1; }
    std::size_t slack() const noexcept { return slack_; }
    const Ring& ring() const noexcept { return ring_; }
    long zbound(std::size_t n) const noexcept { return static_cast<long>(n + slack_); }

    value_type at(std::size_t n, long m) const {
        if (n > prec() || std::labs(m) > zbound(n)) return ring_.zero();
        return rows_[n][static_cast<std::size_t>(m + zbound(n))];
    }

    /// Dense row n, entry i holds the coefficient of z^{i - zbound(n)}.
    const std::vector<value_type>& row(std::size_t n) const { return rows_.at(n); }

    void set(std::size_t n, long m, value_type v) { slot(n, m) = std::move(v); }
    void accumulate(std::size_t n, long m, const value_type& v) {
        auto& s = slot(n, m);
        s = ring_.add(s, v);
    }

    bool is_symmetric() const {
        for (std::size_t n = 0; n <= prec(); ++n) {
            for (long m = 1; m <= zbound(n); ++m) {
                if (!(at(n, m) == at(n, -m))) return false;
            }
        }
        return true;
    }

    friend bool operator==(const basic_bivariate& a, const basic_bivariate& b) {
        if (a.prec() != b.prec()) return false;
        for (std::size_t n = 0; n <= a.prec(); ++n) {
            const long bound = std::max(a.zbound(n), b.zbound(n));
            for (long m = -bound; m <= bound; ++m) {
                if (!(a.at(n, m) == b.at(n, m))) return false;
            }
        }
        return true;
    }

private:
    value_type& slot(std::size_t n, long m) {
        if (n > prec()) throw error("row index beyond precision");
        if (std::labs(m) > zbound(n)) throw ZRangeOverflow(n, m);
        return rows_[n][static_cast<std::size_t>(m + zbound(n))];
    }

    Ring ring_;
    std::size_t slack_;
    std::vector<std::vector<value_type>> rows_;
};

using BivariateSeries = basic_bivariate<RationalField>;
using ZBivariate = basic_bivariate<IntegerRing>;

/// First (row, z-exponent) where a and b differ, up to the common precision.
template <class Ring>
std::optional<std::pair<std::size_t, long>> first_difference(const basic_bivariate<Ring>& a,
                                                             const basic_bivariate<Ring>& b) {
    const std::size_t p = std::min(a.prec(), b.prec());
    for (std::size_t n = 0; n <= p; ++n) {
        const long bound = std::max(a.zbound(n), b.zbound(n));
        for (long m = -bound; m <= bound; ++m) {
            if (!(a.at(n, m) == b.at(n, m))) return std::pair{n, m};
        }
    }
    return std::nullopt;
}

template <class Ring>
basic_bivariate<Ring> truncate(const basic_bivariate<Ring>& a, std::size_t prec) {
    const std::size_t p = std::min(prec, a.prec());
    basic_bivariate<Ring> out(p, a.slack(), a.ring());
    for (std::size_t n = 0; n <= p; ++n) {
        for (long m = -a.zbound(n); m <= a.zbound(n); ++m) out.set(n, m, a.at(n, m));
    }
    return out;
}

template <class Ring>
basic_bivariate<Ring> badd(const basic_bivariate<Ring>& a, const basic_bivariate<Ring>& b, bool subtract = false) {
    const std::size_t p = std::min(a.prec(), b.prec());
    const auto& r = a.ring();
    basic_bivariate<Ring> out(p, std::max(a.slack(), b.slack()), r);
    for (std::size_t n = 0; n <= p; ++n) {
        for (long m = -out.zbound(n); m <= out.zbound(n); ++m) {
            out.set(n, m, subtract ? r.sub(a.at(n, m), b.at(n, m)) : r.add(a.at(n, m), b.at(n, m)));
        }
    }
    return out;
}

template <class Ring>
basic_bivariate<Ring> bsub(const basic_bivariate<Ring>& a, const basic_bivariate<Ring>& b) {
    return badd(a, b, true);
}

template <class Ring>
basic_bivariate<Ring> bscale(const basic_bivariate<Ring>& a, const typename Ring::value_type& k) {
    const auto& r = a.ring();
    basic_bivariate<Ring> out(a.prec(), a.slack(), r);
    for (std::size_t n = 0; n <= a.prec(); ++n) {
        for (long m = -a.zbound(n); m <= a.zbound(n); ++m) out.set(n, m, r.mul(a.at(n, m), k));
    }
    return out;
}

/// Product truncated to the smaller q-precision; z-exponents add.
template <class Ring>
basic_bivariate<Ring> bmul(const basic_bivariate<Ring>& a, const basic_bivariate<Ring>& b) {
    const std::size_t p = std::min(a.prec(), b.prec());
    const auto& r = a.ring();
    basic_bivariate<Ring> out(p, a.slack() + b.slack(), r);
    for (std::size_t n1 = 0; n1 <= p; ++n1) {
        const auto& ra = a.row(n1);
        const long ba = a.zbound(n1);
        for (std::size_t n2 = 0; n1 + n2 <= p; ++n2) {
            const auto& rb = b.row(n2);
            const long bb = b.zbound(n2);
            for (std::size_t i = 0; i < ra.size(); ++i) {
                if (r.is_zero(ra[i])) continue;
                for (std::size_t j = 0; j < rb.size(); ++j) {
                    if (r.is_zero(rb[j])) continue;
                    const long m = (static_cast<long>(i) - ba) + (static_cast<long>(j) - bb);
                    out.accumulate(n1 + n2, m, r.mul(ra[i], rb[j]));
                }
            }
        }
    }
    return out;
}

/// Multiplies every row by a univariate series in q.
template <class Ring>
basic_bivariate<Ring> mul_series(const basic_bivariate<Ring>& a, const basic_series<Ring>& f) {
    const std::size_t p = std::min(a.prec(), f.prec());
    const auto& r = a.ring();
    basic_bivariate<Ring> out(p, a.slack(), r);
    for (std::size_t i = 0; i <= p; ++i) {
        if (r.is_zero(f[i])) continue;
        for (std::size_t n = 0; n + i <= p; ++n) {
            const auto& row = a.row(n);
            const long bound = a.zbound(n);
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (r.is_zero(row[j])) continue;
                out.accumulate(n + i, static_cast<long>(j) - bound, r.mul(f[i], row[j]));
            }
        }
    }
    return out;
}

/// Multiplication by z^s.
template <class Ring>
basic_bivariate<Ring> shift_z(const basic_bivariate<Ring>& a, long s) {
    basic_bivariate<Ring> out(a.prec(), a.slack() + static_cast<std::size_t>(std::labs(s)), a.ring());
    for (std::size_t n = 0; n <= a.prec(); ++n) {
        for (long m = -a.zbound(n); m <= a.zbound(n); ++m) {
            if (!a.ring().is_zero(a.at(n, m))) out.set(n, m + s, a.at(n, m));
        }
    }
    return out;
}

/// z d/dz: the entry at z^m is multiplied by m.
template <class Ring>
basic_bivariate<Ring> delz(const basic_bivariate<Ring>& a) {
    const auto& r = a.ring();
    basic_bivariate<Ring> out(a.prec(), a.slack(), r);
    for (std::size_t n = 0; n <= a.prec(); ++n) {
        for (long m = -a.zbound(n); m <= a.zbound(n); ++m) out.set(n, m, r.mul(a.at(n, m), r.from_int(m)));
    }
    return out;
}

/// q d/dq applied row-wise.
template <class Ring>
basic_bivariate<Ring> bdelq(const basic_bivariate<Ring>& a) {
    const auto& r = a.ring();
    basic_bivariate<Ring> out(a.prec(), a.slack(), r);
    for (std::size_t n = 0; n <= a.prec(); ++n) {
        const auto k = r.from_int(static_cast<long long>(n));
        for (long m = -a.zbound(n); m <= a.zbound(n); ++m) out.set(n, m, r.mul(a.at(n, m), k));
    }
    return out;
}

/// (z d/dz)^k at z = 1: the q^n coefficient is sum_m m^k c(m, n).
template <class Ring>
basic_series<Ring> moment_series(const basic_bivariate<Ring>& a, unsigned k) {
    const auto& r = a.ring();
    std::vector<typename Ring::value_type> c(a.prec() + 1, r.zero());
    for (std::size_t n = 0; n <= a.prec(); ++n) {
        const auto& row = a.row(n);
        const long bound = a.zbound(n);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (r.is_zero(row[j])) continue;
            const long m = static_cast<long>(j) - bound;
            if (k == 0) {
                c[n] = r.add(c[n], row[j]);
            } else if (m != 0) {
                r.add_mul(c[n], row[j], r.from_integer(int_pow(Integer(m), k)));
            }
        }
    }
    return basic_series<Ring>(std::move(c), r);
}

/// Row sums, i.e. the z = 1 specialization.
template <class Ring>
basic_series<Ring> eval_z1(const basic_bivariate<Ring>& a) {
    return moment_series(a, 0);
}

/// One factor prod_{k>=0} (1 + sign z^zpow q^{offset + k*step})^exponent.
struct ZProductFactor {
    long offset = 1;
    long step = 1;
    int sign = -1;
    long zpow = 0;
    long exponent = 1;
};

/// Exact expansion of a finite list of z-signed Pochhammer factors.
/// zpow = 0 factors are ordinary univariate products.
template <class Ring = RationalField>
basic_bivariate<Ring> expand_zproduct(const std::vector<ZProductFactor>& factors, std::size_t prec,
                                      Ring ring = Ring{}) {
    double ratio = 0.0;
    for (const auto& f : factors) {
        if (f.offset < 1) throw InvalidOffset(f.offset);
        if (f.step < 1) throw error("product factor step must be >= 1");
        if (f.sign != 1 && f.sign != -1) throw error("product factor sign must be +1 or -1");
        ratio = std::max(ratio, static_cast<double>(std::labs(f.zpow)) / static_cast<double>(f.offset));
    }
    std::size_t slack = 0;
    if (ratio > 1.0) slack = static_cast<std::size_t>(std::ceil((ratio - 1.0) * static_cast<double>(prec)));

    basic_bivariate<Ring> b(prec, slack, ring);
    b.set(0, 0, ring.one());

    // rows are rewritten in place: descending n to multiply, ascending n to divide
    auto apply = [&](std::size_t j, long zp, int sign, bool divide) {
        auto step_row = [&](std::size_t n) {
            for (long m = -b.zbound(n); m <= b.zbound(n); ++m) {
                const auto src = b.at(n - j, m - zp);
                if (ring.is_zero(src)) continue;
                const auto cur = b.at(n, m);
                const bool plus = (sign > 0) != divide;
                b.set(n, m, plus ? ring.add(cur, src) : ring.sub(cur, src));
            }
        };
        if (divide) {
            for (std::size_t n = j; n <= prec; ++n) step_row(n);
        } else {
            for (std::size_t n = prec; n >= j; --n) {
                step_row(n);
                if (n == j) break;
            }
        }
    };

    for (const auto& f : factors) {
        for (std::size_t j = static_cast<std::size_t>(f.offset); j <= prec; j += static_cast<std::size_t>(f.step)) {
            for (long i = 0; i < std::labs(f.exponent); ++i) apply(j, f.zpow, f.sign, f.exponent < 0);
        }
    }
    return b;
}

/// prod_{k>=0} (1 - z^zpow q^{offset + k*step})^{-1}
template <class Ring = RationalField>
basic_bivariate<Ring> binvert_factor(long offset, long step, long zpow, std::size_t prec, Ring ring = Ring{}) {
    if (offset < 1) throw InvalidOffset(offset);
    return expand_zproduct<Ring>({ZProductFactor{offset, step, -1, zpow, -1}}, prec, ring);
}

// Cache format: `bivariate v1 prec=<N>`, then `<n> <m> <num>/<den>` per
// nonzero entry. Omitted entries are zero.

inline void write_bivariate(std::ostream& out, const BivariateSeries& a) {
    out << "bivariate v1 prec=" << a.prec() << '\n';
    for (std::size_t n = 0; n <= a.prec(); ++n) {
        for (long m = -a.zbound(n); m <= a.zbound(n); ++m) {
            const auto& v = a.at(n, m);
            if (sgn(v) != 0) out << n << ' ' << m << ' ' << to_fraction_string(v) << '\n';
        }
    }
}

inline BivariateSeries read_bivariate(std::istream& in) {
    std::string magic, version, prec_tok;
    if (!(in >> magic >> version >> prec_tok) || magic != "bivariate" || version != "v1" ||
        prec_tok.rfind("prec=", 0) != 0) {
        throw ParseError("not a bivariate v1 stream");
    }
    const std::size_t prec = std::stoul(prec_tok.substr(5));
    struct Entry {
        std::size_t n;
        long m;
        Rational v;
    };
    std::vector<Entry> entries;
    std::size_t slack = 0;
    std::size_t n;
    long m;
    std::string value;
    while (in >> n >> m >> value) {
        if (n > prec) throw ParseError("row " + std::to_string(n) + " beyond prec");
        const long over = std::labs(m) - static_cast<long>(n);
        if (over > 0) slack = std::max(slack, static_cast<std::size_t>(over));
        entries.push_back({n, m, parse_rational(value)});
    }
    BivariateSeries b(prec, slack);
    for (auto& e : entries) b.set(e.n, e.m, std::move(e.v));
    return b;
}

} // namespace qmoments
