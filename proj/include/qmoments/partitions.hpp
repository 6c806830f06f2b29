#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bivariate.hpp"
#include "series.hpp"

namespace qmoments {

enum class PartitionClass {
    unrestricted,
    distinct_odd,  // odd parts may not repeat
    s2,            // distinct_odd with an even smallest part
    overpartition,
};

/// Parts in non-increasing order. For overpartitions, overlined[i] marks
/// the first occurrence of parts[i] as overlined.
struct Partition {
    std::vector<long> parts;
    std::vector<bool> overlined;

    long size() const {
        long s = 0;
        for (long p : parts) s += p;
        return s;
    }
    long largest() const { return parts.empty() ? 0 : parts.front(); }
    long count() const { return static_cast<long>(parts.size()); }
    long multiplicity(long value) const { return static_cast<long>(std::count(parts.begin(), parts.end(), value)); }
};

namespace detail {

template <class F>
void partitions_rec(long remaining, long max_part, bool distinct_odd, std::vector<long>& stack, F& f) {
    if (remaining == 0) {
        f(stack);
        return;
    }
    for (long p = std::min(remaining, max_part); p >= 1; --p) {
        if (distinct_odd && p % 2 != 0 && !stack.empty() && stack.back() == p) continue;
        stack.push_back(p);
        partitions_rec(remaining - p, p, distinct_odd, stack, f);
        stack.pop_back();
    }
}

} // namespace detail

/// Calls f(const Partition&) once for every object of the class of size n.
template <class F>
void for_each_partition(long n, PartitionClass cls, F&& f) {
    if (n < 0) return;
    std::vector<long> stack;
    const bool distinct_odd = cls == PartitionClass::distinct_odd || cls == PartitionClass::s2;
    auto visit = [&](const std::vector<long>& parts) {
        Partition p{parts, std::vector<bool>(parts.size(), false)};
        if (cls == PartitionClass::s2) {
            if (parts.empty() || parts.back() % 2 != 0) return;
            f(p);
        } else if (cls == PartitionClass::overpartition) {
            std::vector<std::size_t> firsts;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i == 0 || parts[i] != parts[i - 1]) firsts.push_back(i);
            }
            for (unsigned long mask = 0; mask < (1UL << firsts.size()); ++mask) {
                for (std::size_t b = 0; b < firsts.size(); ++b) p.overlined[firsts[b]] = (mask >> b) & 1UL;
                f(p);
            }
        } else {
            f(p);
        }
    };
    detail::partitions_rec(n, n, distinct_odd, stack, visit);
}

inline std::vector<Partition> enumerate(long n, PartitionClass cls) {
    std::vector<Partition> out;
    for_each_partition(n, cls, [&](const Partition& p) { out.push_back(p); });
    return out;
}

enum class StatKind { rank, crank, m2rank, overline_rank, residual_crank2 };

inline std::string_view kind_name(StatKind k) {
    switch (k) {
    case StatKind::rank: return "rank";
    case StatKind::crank: return "crank";
    case StatKind::m2rank: return "m2rank";
    case StatKind::overline_rank: return "overline-rank";
    case StatKind::residual_crank2: return "residual-crank-2";
    }
    return "?";
}

inline StatKind parse_kind(std::string_view s) {
    for (auto k : {StatKind::rank, StatKind::crank, StatKind::m2rank, StatKind::overline_rank,
                   StatKind::residual_crank2}) {
        if (kind_name(k) == s) return k;
    }
    throw ParseError("unknown statistic kind '" + std::string(s) + "'");
}

/// The class a statistic is defined on.
inline PartitionClass class_of(StatKind k) {
    switch (k) {
    case StatKind::rank:
    case StatKind::crank: return PartitionClass::unrestricted;
    case StatKind::m2rank:
    case StatKind::residual_crank2: return PartitionClass::distinct_odd;
    case StatKind::overline_rank: return PartitionClass::overpartition;
    }
    return PartitionClass::unrestricted;
}

inline long crank_of(const Partition& p) {
    if (p.size() <= 1) throw UndefinedStatistic("crank is not defined for partitions of 0 or 1");
    const long ones = p.multiplicity(1);
    if (ones == 0) return p.largest();
    long larger = 0;
    for (long part : p.parts) larger += part > ones;
    return larger - ones;
}

inline long statistic(const Partition& p, StatKind kind) {
    switch (kind) {
    case StatKind::rank:
    case StatKind::overline_rank: return p.largest() - p.count();
    case StatKind::crank: return crank_of(p);
    case StatKind::m2rank: return (p.largest() + 1) / 2 - p.count();
    case StatKind::residual_crank2: {
        Partition half;
        for (long part : p.parts) {
            if (part % 2 == 0) half.parts.push_back(part / 2);
        }
        if (half.size() <= 1) throw UndefinedStatistic("residual crank needs an even part sum of at least 4");
        return crank_of(half);
    }
    }
    return 0;
}

struct StatTable {
    StatKind kind = StatKind::rank;
    long n = 0;
    std::map<long, Integer> counts;

    Integer total() const {
        Integer s = 0;
        for (const auto& [m, c] : counts) s += c;
        return s;
    }
    Integer at(long m) const {
        auto it = counts.find(m);
        return it == counts.end() ? Integer(0) : it->second;
    }
    /// sum_m m^k count(m)
    Integer moment(unsigned k) const {
        Integer s = 0;
        for (const auto& [m, c] : counts) s += int_pow(Integer(m), k) * c;
        return s;
    }
    bool is_symmetric() const {
        for (const auto& [m, c] : counts) {
            if (at(-m) != c) return false;
        }
        return true;
    }
    friend bool operator==(const StatTable& a, const StatTable& b) {
        return a.kind == b.kind && a.n == b.n && a.counts == b.counts;
    }
};

/// Counts by brute-force enumeration. Crank tables need n >= 2; residual
/// crank tables count only partitions whose halved even parts sum to >= 2.
inline StatTable stat_table_enumerated(long n, StatKind kind) {
    if (kind == StatKind::crank && n <= 1) throw UndefinedStatistic("crank is not defined for n <= 1");
    StatTable t{kind, n, {}};
    for_each_partition(n, class_of(kind), [&](const Partition& p) {
        if (kind == StatKind::residual_crank2) {
            long even = 0;
            for (long part : p.parts) even += part % 2 == 0 ? part : 0;
            if (even / 2 <= 1) return;
        }
        t.counts[statistic(p, kind)] += 1;
    });
    return t;
}

inline bool is_rank_type(StatKind kind) {
    return kind == StatKind::rank || kind == StatKind::m2rank || kind == StatKind::overline_rank;
}

/// Rows 0..=prec of a rank-type table, each a map m -> count. Parts are
/// added in increasing order while tracking (size, number of parts); the
/// statistic depends only on the largest part and the number of parts, and
/// the counts with largest part exactly v are the difference of the tables
/// before and after v is admitted.
inline std::vector<std::map<long, Integer>> rank_type_rows(StatKind kind, std::size_t prec) {
    if (!is_rank_type(kind)) throw error("rank_type_rows needs a rank-type statistic");
    const long P = static_cast<long>(prec);
    std::vector<std::vector<Integer>> T(prec + 1);
    for (long n = 0; n <= P; ++n) T[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 0);
    T[0][0] = 1;

    std::vector<std::map<long, Integer>> rows(prec + 1);
    rows[0][0] = 1;

    auto stat = [&](long largest, long parts) {
        return kind == StatKind::m2rank ? (largest + 1) / 2 - parts : largest - parts;
    };
    auto at_most_once = [&](long v) {
        for (long n = P; n >= v; --n) {
            auto& dst = T[static_cast<std::size_t>(n)];
            const auto& src = T[static_cast<std::size_t>(n - v)];
            for (std::size_t k = 1; k < dst.size() && k - 1 < src.size(); ++k) dst[k] += src[k - 1];
        }
    };
    auto unlimited = [&](long v) {
        for (long n = v; n <= P; ++n) {
            auto& dst = T[static_cast<std::size_t>(n)];
            const auto& src = T[static_cast<std::size_t>(n - v)];
            for (std::size_t k = 1; k < dst.size() && k - 1 < src.size(); ++k) dst[k] += src[k - 1];
        }
    };

    for (long v = 1; v <= P; ++v) {
        const auto before = T;
        if (kind == StatKind::overline_rank) {
            at_most_once(v);
            unlimited(v);
        } else if (kind == StatKind::m2rank && v % 2 != 0) {
            at_most_once(v);
        } else {
            unlimited(v);
        }
        for (long n = v; n <= P; ++n) {
            const auto& now = T[static_cast<std::size_t>(n)];
            const auto& old = before[static_cast<std::size_t>(n)];
            for (std::size_t k = 1; k < now.size(); ++k) {
                if (now[k] != old[k]) rows[static_cast<std::size_t>(n)][stat(v, static_cast<long>(k))] += now[k] - old[k];
            }
        }
    }
    return rows;
}

/// Exact counts; rank-type kinds use the DP, crank kinds enumerate.
inline StatTable stat_table(long n, StatKind kind) {
    if (!is_rank_type(kind)) return stat_table_enumerated(n, kind);
    auto rows = rank_type_rows(kind, static_cast<std::size_t>(n));
    StatTable t{kind, n, std::move(rows[static_cast<std::size_t>(n)])};
    return t;
}

/// sum_m count(n, m) z^m q^n for a rank-type statistic.
template <class Ring = RationalField>
basic_bivariate<Ring> rank_generating_function(StatKind kind, std::size_t prec, Ring ring = Ring{}) {
    const auto rows = rank_type_rows(kind, prec);
    basic_bivariate<Ring> b(prec, 0, ring);
    for (std::size_t n = 0; n <= prec; ++n) {
        for (const auto& [m, c] : rows[n]) b.set(n, m, ring.from_integer(c));
    }
    return b;
}

/// Total number of smallest parts over S2 partitions of n.
inline Integer mspt(long n) {
    Integer s = 0;
    for_each_partition(n, PartitionClass::s2, [&](const Partition& p) { s += p.multiplicity(p.parts.back()); });
    return s;
}

/// Total number of smallest parts over all partitions of n.
inline Integer spt_classic(long n) {
    Integer s = 0;
    if (n < 1) return s;
    for_each_partition(n, PartitionClass::unrestricted,
                       [&](const Partition& p) { s += p.multiplicity(p.parts.back()); });
    return s;
}

/// Weighted S2 count: C(f1+1, 3) + f1 * sum_{m>=2} C(f_m+1, 2), f_j being the
/// multiplicity of the j-th smallest distinct even part.
inline Integer mspt2(long n) {
    Integer s = 0;
    for_each_partition(n, PartitionClass::s2, [&](const Partition& p) {
        std::vector<long> freqs;
        for (auto it = p.parts.rbegin(); it != p.parts.rend(); ++it) {
            if (*it % 2 != 0) continue;
            if (it != p.parts.rbegin() && *it == *std::prev(it)) {
                ++freqs.back();
            } else {
                freqs.push_back(1);
            }
        }
        const long f1 = freqs.front();
        Integer inner = 0;
        for (std::size_t j = 1; j < freqs.size(); ++j) inner += binomial(freqs[j] + 1, 2);
        s += binomial(f1 + 1, 3) + Integer(f1) * inner;
    });
    return s;
}

/// g_k(x) = prod_{j=0}^{k-1} (x^2 - j^2)
inline Integer g_poly(unsigned k, long x) {
    Integer r = 1;
    for (long j = 0; j < static_cast<long>(k); ++j) r *= Integer(x * x - j * j);
    return r;
}

/// (1/(2k)!) sum_m g_k(m) count(m)
inline Integer gk_moment(const StatTable& table, unsigned k) {
    Integer raw = 0;
    for (const auto& [m, c] : table.counts) raw += g_poly(k, m) * c;
    const Integer f = factorial(2 * static_cast<long>(k));
    if (raw % f != 0) {
        throw DivisibilityViolation("g_" + std::to_string(k) + " moment " + raw.get_str() + " of " +
                                    std::string(kind_name(table.kind)) + " at n=" + std::to_string(table.n) +
                                    " is not divisible by " + f.get_str());
    }
    return raw / f;
}

namespace detail {

/// Multiplies c in place by q^s/(1-q^s)^2 = sum_{f>=1} f q^{sf}, returning the product.
inline std::vector<Integer> times_smallest_weight(const std::vector<Integer>& c, std::size_t s) {
    std::vector<Integer> out(c.size(), 0);
    for (std::size_t f = 1; f * s < c.size(); ++f) {
        const Integer w(static_cast<unsigned long>(f));
        for (std::size_t n = 0; n + f * s < c.size(); ++n) {
            if (sgn(c[n]) != 0) mpz_addmul(out[n + f * s].get_mpz_t(), c[n].get_mpz_t(), w.get_mpz_t());
        }
    }
    return out;
}

/// sum_{f>=1} C(f+1, 3) q^{sf} times c.
inline std::vector<Integer> times_cubic_weight(const std::vector<Integer>& c, std::size_t s) {
    std::vector<Integer> out(c.size(), 0);
    for (std::size_t f = 2; f * s < c.size(); ++f) {
        const Integer w = binomial(static_cast<long>(f) + 1, 3);
        for (std::size_t n = 0; n + f * s < c.size(); ++n) {
            if (sgn(c[n]) != 0) mpz_addmul(out[n + f * s].get_mpz_t(), c[n].get_mpz_t(), w.get_mpz_t());
        }
    }
    return out;
}

} // namespace detail

/// sum_n Mspt(n) q^n, grouped by the smallest part s: the weight of s is
/// q^s/(1-q^s)^2 and the larger parts are free (distinct if odd).
inline ZSeries mspt_series(std::size_t prec) {
    std::vector<Integer> tail(prec + 1, 0), acc(prec + 1, 0);
    tail[0] = 1;
    std::size_t top = prec % 2 == 0 ? prec : prec - 1;
    if (top != prec) multiply_binomial_inplace(tail, IntegerRing{}, prec, +1);
    for (std::size_t s = top; s >= 2; s -= 2) {
        // tail holds prod_{odd j>s}(1+q^j) / prod_{even j>s}(1-q^j)
        const auto contrib = detail::times_smallest_weight(tail, s);
        for (std::size_t n = 0; n <= prec; ++n) acc[n] += contrib[n];
        multiply_binomial_inplace(tail, IntegerRing{}, s - 1, +1);
        divide_binomial_inplace(tail, IntegerRing{}, s, -1);
    }
    return ZSeries(std::move(acc));
}

/// sum_n Mspt2(n) q^n. With T_s the tail product above and
/// H_s = sum_{e>s even} q^e/(1-q^e)^2, the series is
/// sum_s [q^{2s}/(1-q^s)^4 T_s + q^s/(1-q^s)^2 T_s H_s].
inline ZSeries mspt2_series(std::size_t prec) {
    const IntegerRing R;
    std::vector<Integer> tail(prec + 1, 0), tailH(prec + 1, 0), acc(prec + 1, 0);
    tail[0] = 1;
    std::size_t top = prec % 2 == 0 ? prec : prec - 1;
    if (top != prec) multiply_binomial_inplace(tail, IntegerRing{}, prec, +1);
    for (std::size_t s = top; s >= 2; s -= 2) {
        const auto a = detail::times_cubic_weight(tail, s);
        const auto b = detail::times_smallest_weight(tailH, s);
        for (std::size_t n = 0; n <= prec; ++n) acc[n] += a[n] + b[n];
        // step from (T_s, T_s H_s) to (T_{s-2}, T_{s-2} H_{s-2}), with e = s entering H
        const auto tail_e = detail::times_smallest_weight(tail, s);
        for (std::size_t n = 0; n <= prec; ++n) tailH[n] += tail_e[n];
        for (auto* v : {&tail, &tailH}) {
            multiply_binomial_inplace(*v, R, s - 1, +1);
            divide_binomial_inplace(*v, R, s, -1);
        }
    }
    return ZSeries(std::move(acc));
}

/// Table dump: `<kind> <n> <m> <count>` per nonzero entry, m ascending.
inline void write_table(std::ostream& out, const StatTable& t) {
    for (const auto& [m, c] : t.counts) {
        if (sgn(c) != 0) out << kind_name(t.kind) << ' ' << t.n << ' ' << m << ' ' << c.get_str() << '\n';
    }
}

} // namespace qmoments
