#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "bivariate.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "quasimod.hpp"
#include "standard_forms.hpp"

namespace qmoments {

enum class Family { C, C1, C2, C4, R2, R, Rbar };

inline std::string_view family_name(Family f) {
    switch (f) {
    case Family::C: return "C";
    case Family::C1: return "C1";
    case Family::C2: return "C2";
    case Family::C4: return "C4";
    case Family::R2: return "R2";
    case Family::R: return "R";
    case Family::Rbar: return "Rbar";
    }
    return "?";
}

inline Family parse_family(std::string_view s) {
    for (auto f : {Family::C, Family::C1, Family::C2, Family::C4, Family::R2, Family::R, Family::Rbar}) {
        if (family_name(f) == s) return f;
    }
    throw ParseError("unknown moment family '" + std::string(s) + "'");
}

inline bool is_crank_family(Family f) {
    return f == Family::C || f == Family::C1 || f == Family::C2 || f == Family::C4;
}

inline StatKind rank_kind(Family f) {
    switch (f) {
    case Family::R2: return StatKind::m2rank;
    case Family::R: return StatKind::rank;
    case Family::Rbar: return StatKind::overline_rank;
    default: throw error("not a rank family: " + std::string(family_name(f)));
    }
}

/// Product factors of the crank-type generating functions.
inline std::vector<ZProductFactor> crank_factors(Family f) {
    switch (f) {
    case Family::C:  // (q;q) / ((zq;q)(q/z;q))
        return {{1, 1, -1, 0, 1}, {1, 1, -1, 1, -1}, {1, 1, -1, -1, -1}};
    case Family::C1:  // (q^2;q^4)(q;q) / ((zq;q)(q/z;q))
        return {{2, 4, -1, 0, 1}, {1, 1, -1, 0, 1}, {1, 1, -1, 1, -1}, {1, 1, -1, -1, -1}};
    case Family::C2:  // (-q;q^2)(q^2;q^2) / ((zq^2;q^2)(q^2/z;q^2))
        return {{1, 2, 1, 0, 1}, {2, 2, -1, 0, 1}, {2, 2, -1, 1, -1}, {2, 2, -1, -1, -1}};
    case Family::C4:  // (q^4;q^4) / ((q;q^2)(zq^4;q^4)(q^4/z;q^4))
        return {{4, 4, -1, 0, 1}, {1, 2, -1, 0, -1}, {4, 4, -1, 1, -1}, {4, 4, -1, -1, -1}};
    default: throw error("not a crank family: " + std::string(family_name(f)));
    }
}

template <class Ring = RationalField>
basic_bivariate<Ring> generating_function(Family f, std::size_t prec, Ring ring = Ring{}) {
    if (is_crank_family(f)) return expand_zproduct(crank_factors(f), prec, ring);
    return rank_generating_function(rank_kind(f), prec, ring);
}

namespace detail {

struct MomentMemo {
    std::mutex mu;
    std::map<std::pair<Family, unsigned>, ZSeries> moments;
};

inline MomentMemo& moment_memo() {
    static MomentMemo memo;
    return memo;
}

} // namespace detail

/// (z d/dz)^k of the family's generating function at z = 1, as an exact
/// integer series. All even k up to 8 are filled in together and memoized.
inline ZSeries moment_z(Family f, unsigned k, std::size_t prec) {
    if (k % 2 != 0) return ZSeries(prec);
    auto& memo = detail::moment_memo();
    {
        std::lock_guard lock(memo.mu);
        auto it = memo.moments.find({f, k});
        if (it != memo.moments.end() && it->second.prec() >= prec) return truncate(it->second, prec);
    }
    const auto gf = generating_function<IntegerRing>(f, prec);
    const unsigned top = std::max(k, 8u);
    std::lock_guard lock(memo.mu);
    for (unsigned j = 0; j <= top; j += 2) {
        auto s = moment_series(gf, j);
        auto it = memo.moments.find({f, j});
        if (it == memo.moments.end()) {
            memo.moments.emplace(std::pair{f, j}, std::move(s));
        } else if (it->second.prec() < prec) {
            it->second = std::move(s);
        }
    }
    return truncate(memo.moments.at({f, k}), prec);
}

inline QSeries moment(Family f, unsigned k, std::size_t prec) {
    return to_rational(moment_z(f, k, prec));
}

/// The z = 1 value of a crank family.
inline ProductSpec crank_z1_spec(Family f) {
    if (f == Family::C) return ProductSpec::pochhammer(1, 1, -1);
    if (is_crank_family(f)) return prefactor_A_spec();
    throw error("not a crank family: " + std::string(family_name(f)));
}

/// Crank moments through the logarithmic derivative: with f_k the k-th
/// moment and L_j = (z d/dz)^j log at z = 1,
/// f_k = sum_{i=0}^{k-1} C(k-1, i) L_{i+1} f_{k-1-i}. Only the z-factors
/// contribute to L_j; for even j it is 2 sum sigma_{j-1}(N) q^{sN} with s the
/// step of the z-factors, and 0 for odd j.
template <class Ring = RationalField>
std::vector<basic_series<Ring>> crank_moments_fast(Family f, unsigned kmax, std::size_t prec, Ring ring = Ring{}) {
    const std::size_t s = f == Family::C2 ? 2 : f == Family::C4 ? 4 : 1;
    std::vector<basic_series<Ring>> L;
    L.emplace_back(prec, ring);
    for (unsigned j = 1; j <= kmax; ++j) {
        std::vector<typename Ring::value_type> c(prec + 1, ring.zero());
        if (j % 2 == 0) {
            const auto sigma = divisor_sigma_table(j - 1, prec / s);
            for (std::size_t N = 1; N * s <= prec; ++N) c[N * s] = ring.from_integer(2 * sigma[N]);
        }
        L.emplace_back(std::move(c), ring);
    }
    std::vector<basic_series<Ring>> out;
    out.push_back(expand_product(crank_z1_spec(f), prec, ring));
    for (unsigned k = 1; k <= kmax; ++k) {
        basic_series<Ring> acc(prec, ring);
        for (unsigned i = 0; i < k; ++i) {
            if ((i + 1) % 2 != 0) continue;
            const auto term = mul(L[i + 1], out[k - 1 - i]);
            acc = acc + scale(term, ring.from_integer(binomial(k - 1, i)));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

/// (a^2-3a+2) R2_a + sum_{k=1}^{a/2-1} C(a,2k)(2^{2k+1}-4) dq R2_{a-2k}
///   + sum_{k=1}^{a/2-1} (2C(a,2k) - 2^{2k+1}C(a,2k+1) + (2^{2k+2}-2)C(a,2k+2)) R2_{a-2k}
inline QSeries rank_crank_combination(unsigned a, std::size_t prec) {
    if (a % 2 != 0 || a < 2) throw error("rank_crank_combination needs an even a >= 2");
    const long A = static_cast<long>(a);
    QSeries out = Rational(A * A - 3 * A + 2) * moment(Family::R2, a, prec);
    for (long k = 1; k <= A / 2 - 1; ++k) {
        const auto r = moment(Family::R2, static_cast<unsigned>(A - 2 * k), prec);
        const Integer c1 = binomial(A, 2 * k) * (int_pow(2, 2 * k + 1) - 4);
        const Integer c2 = 2 * binomial(A, 2 * k) - int_pow(2, 2 * k + 1) * binomial(A, 2 * k + 1) +
                           (int_pow(2, 2 * k + 2) - 2) * binomial(A, 2 * k + 2);
        out = out + Rational(c1) * delq(r) + Rational(c2) * r;
    }
    return out;
}

/// (q^2;q^4) (10R_6 + 90 dq R_4 + 630 dq R_2 + 40R_4 - 50R_2) and
/// (q;q^2)/(-q^2;q^2) (20Rbar_6 + 120 dq Rbar_4 + 1920 dq Rbar_2 + 275Rbar_4 + 215Rbar_2)
inline std::pair<QSeries, QSeries> build_F1F2(std::size_t prec) {
    const auto r2 = moment(Family::R, 2, prec), r4 = moment(Family::R, 4, prec), r6 = moment(Family::R, 6, prec);
    const auto b2 = moment(Family::Rbar, 2, prec), b4 = moment(Family::Rbar, 4, prec),
               b6 = moment(Family::Rbar, 6, prec);
    const auto f1 = expand_product(ProductSpec::pochhammer(2, 4), prec) *
                    (10 * r6 + 90 * delq(r4) + 630 * delq(r2) + 40 * r4 - 50 * r2);
    const auto pre2 = expand_product(ProductSpec::pochhammer(1, 2) * ProductSpec::pochhammer(2, 2, -1, +1), prec);
    const auto f2 = pre2 * (20 * b6 + 120 * delq(b4) + 1920 * delq(b2) + 275 * b4 + 215 * b2);
    return {f1, f2};
}

struct RelationResult {
    std::string id;
    std::vector<std::string> labels;
    std::vector<Rational> coefficients;
    std::vector<Rational> expected;
    std::size_t depth = 0;
    bool pass = false;

    std::string to_string() const {
        std::ostringstream os;
        os << id << " depth=" << depth << " verdict=" << (pass ? "pass" : "fail") << '\n';
        for (std::size_t i = 0; i < labels.size(); ++i) {
            os << "  " << labels[i] << ' ' << to_fraction_string(coefficients[i]) << '\n';
        }
        return os.str();
    }
};

/// dq^m F_{2j} for each (m, j) in order, labelled `dq^m F_2j`.
inline void append_moment_functions(Family f, const std::vector<std::pair<unsigned, unsigned>>& mj,
                                    std::size_t prec, std::vector<QSeries>& basis,
                                    std::vector<std::string>& labels) {
    for (auto [m, j] : mj) {
        basis.push_back(delq(moment(f, 2 * j, prec), m));
        std::string label = std::string(family_name(f)) + "_" + std::to_string(2 * j);
        if (m == 1) label = "dq " + label;
        if (m > 1) label = "dq^" + std::to_string(m) + " " + label;
        labels.push_back(label);
    }
}

/// The functions dq^m C_{2j}, j >= 1, m + j <= N, of the three crank
/// families, ordered per family by j then m.
inline void moment_functions(std::size_t N, std::size_t prec, std::vector<QSeries>& basis,
                               std::vector<std::string>& labels) {
    std::vector<std::pair<unsigned, unsigned>> mj;
    for (unsigned j = 1; j <= N; ++j) {
        for (unsigned m = 0; m + j <= N; ++m) mj.emplace_back(m, j);
    }
    for (auto f : {Family::C1, Family::C2, Family::C4}) append_moment_functions(f, mj, prec, basis, labels);
}

enum class Corollary { four, six, extra };

inline std::string_view corollary_name(Corollary c) {
    switch (c) {
    case Corollary::four: return "relation-R2-4";
    case Corollary::six: return "relation-R2-6";
    case Corollary::extra: return "relation-F1-F2";
    }
    return "?";
}

inline std::vector<Rational> corollary_expected(Corollary c) {
    auto parse = [](std::initializer_list<const char*> xs) {
        std::vector<Rational> v;
        for (auto x : xs) v.push_back(parse_rational(x));
        return v;
    };
    switch (c) {
    case Corollary::four:
        return parse({"516/469", "-1356/469", "120/67", "960/469", "-360/469", "-4896/469", "-2976/469",
                      "-5424/469", "1920/67"});
    case Corollary::six:
        return parse({"21624800/1119503", "-61258080/1119503", "5880120/1119503", "5256200/159929",
                      "-584400/159929", "320/341", "35188800/1119503", "-11366640/1119503",
                      "-1945200/1119503", "-187116960/1119503", "-3942720/1119503", "-7680/341",
                      "-114563200/1119503", "-20044320/101773", "23520480/1119503", "2422400/5159",
                      "-9350400/159929", "20480/341"});
    case Corollary::extra:
        return parse({"948341197409/633638698", "-318249663559/1267277396", "18906057102/316819349",
                      "-221063911175/181039628", "-1124944110/45259907", "-11439407/193006",
                      "-8682641651833/5069109584", "-724498277229/633638698", "14799375252/316819349",
                      "2398983090355/1267277396", "-59855835000/316819349", "12021538/96503",
                      "13424561341/633638698", "-15708001159/28801759", "37605906528/316819349",
                      "1078788930/1459997", "-7136728080/45259907", "4510496/96503"});
    }
    return {};
}

/// The basis a relation is solved against: 9 functions for `four`
/// (C_2, dq C_2, C_4 per family), 18 otherwise
/// (C_2, dq C_2, dq^2 C_2, C_4, dq C_4, C_6 per family).
inline void corollary_basis(Corollary c, std::size_t prec, std::vector<QSeries>& basis,
                            std::vector<std::string>& labels) {
    const std::vector<std::pair<unsigned, unsigned>> nine{{0, 1}, {1, 1}, {0, 2}};
    const std::vector<std::pair<unsigned, unsigned>> eighteen{{0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}, {0, 3}};
    for (auto f : {Family::C1, Family::C2, Family::C4}) {
        append_moment_functions(f, c == Corollary::four ? nine : eighteen, prec, basis, labels);
    }
}

inline QSeries corollary_target(Corollary c, std::size_t prec) {
    switch (c) {
    case Corollary::four: return rank_crank_combination(4, prec);
    case Corollary::six: return rank_crank_combination(6, prec);
    case Corollary::extra: {
        auto [f1, f2] = build_F1F2(prec);
        return f1 - Rational(159, 64) * f2;
    }
    }
    return QSeries(prec);
}

/// Solves for the relation's coefficients and compares them with the
/// expected rationals; CoefficientMismatch on the first difference.
inline RelationResult corollary(Corollary c, std::size_t prec = 80) {
    RelationResult r;
    r.id = std::string(corollary_name(c));
    std::vector<QSeries> basis;
    corollary_basis(c, prec, basis, r.labels);
    const auto target = corollary_target(c, prec);
    r.coefficients = express_in_basis(basis, target);
    r.expected = corollary_expected(c);
    r.depth = prec;
    for (std::size_t i = 0; i < r.labels.size(); ++i) {
        if (r.coefficients[i] != r.expected[i]) {
            throw CoefficientMismatch(r.labels[i], to_fraction_string(r.coefficients[i]),
                                      to_fraction_string(r.expected[i]));
        }
    }
    r.pass = true;
    return r;
}

struct PdeReport {
    bool pass = false;
    std::size_t depth = 0;
    std::optional<std::pair<std::size_t, long>> first_failure;  // (n, m) of the first differing entry
};

namespace detail {

/// (q^2;q^2)^2/(-q;q^2) C(z,q^2)^3 (-qz,-q/z;q^2) without the factor 2z.
inline std::vector<ZProductFactor> pde_lhs_factors() {
    return {{2, 2, -1, 0, 5}, {1, 2, 1, 0, -1}, {2, 2, -1, 1, -3}, {2, 2, -1, -1, -3}, {1, 2, 1, 1, 1},
            {1, 2, 1, -1, 1}};
}

template <class Ring>
basic_bivariate<Ring> zpoly_times(std::initializer_list<std::pair<long, long>> poly, const basic_bivariate<Ring>& b) {
    const auto& r = b.ring();
    std::optional<basic_bivariate<Ring>> acc;
    for (auto [e, c] : poly) {
        auto term = bscale(shift_z(b, e), r.from_int(c));
        acc = acc ? badd(*acc, term) : term;
    }
    return *acc;
}

} // namespace detail

/// 2(1-z)^2 dq R + (1+z)(1-z) dz R + 2z R + (1-z)^2 dz^2 R
template <class Ring>
basic_bivariate<Ring> pde_operator(const basic_bivariate<Ring>& R) {
    using detail::zpoly_times;
    auto out = zpoly_times({{0, 2}, {1, -4}, {2, 2}}, bdelq(R));
    out = badd(out, zpoly_times({{0, 1}, {2, -1}}, delz(R)));
    out = badd(out, zpoly_times({{1, 2}}, R));
    out = badd(out, zpoly_times({{0, 1}, {1, -2}, {2, 1}}, delz(delz(R))));
    return out;
}

template <class Ring>
basic_bivariate<Ring> pde_lhs(std::size_t prec, Ring ring = Ring{}) {
    auto b = expand_zproduct(detail::pde_lhs_factors(), prec, ring);
    return bscale(shift_z(b, 1), ring.from_int(2));
}

/// Compares both sides entrywise; R2 may be supplied to test sensitivity.
inline PdeReport verify_pde(std::size_t prec, const std::optional<ZBivariate>& r2 = std::nullopt) {
    const auto R = r2 ? truncate(*r2, prec) : generating_function<IntegerRing>(Family::R2, prec);
    const auto lhs = pde_lhs<IntegerRing>(prec);
    const auto rhs = pde_operator(R);
    PdeReport rep;
    rep.depth = prec;
    rep.first_failure = first_difference(lhs, rhs);
    rep.pass = !rep.first_failure.has_value();
    return rep;
}

/// Left side of the PDE after applying dz^a at z = 1 and moving the
/// 2 R2_0 terms across:
///   -(2^{a+1}-4) dq R2_0
///   + 2 (q^2;q^2)^2/(-q;q^2) sum_{k<a} sum_{j<=k} C(a,k)C(k,j) dz^j(C(z,q^2)^3) dz^{a-k}P
///   + 2 (q^2;q^2)^2 (-q;q^2) sum_{j=1}^{a} C(a,j) dz^j(C(z,q^2)^3)
/// with P = (-qz,-q/z;q^2), everything at z = 1.
inline QSeries reduced_pde_lhs(unsigned a, std::size_t prec) {
    const auto cube = expand_zproduct<IntegerRing>({{2, 2, -1, 0, 3}, {2, 2, -1, 1, -3}, {2, 2, -1, -1, -3}}, prec);
    const auto P = expand_zproduct<IntegerRing>({{1, 2, 1, 1, 1}, {1, 2, 1, -1, 1}}, prec);
    std::vector<QSeries> dc, dp;
    for (unsigned j = 0; j <= a; ++j) {
        dc.push_back(to_rational(moment_series(cube, j)));
        dp.push_back(to_rational(moment_series(P, j)));
    }
    const auto eta2sq = expand_product(ProductSpec::pochhammer(2, 2, 2), prec);
    const auto minus_q = expand_product(ProductSpec::pochhammer(1, 2, 1, +1), prec);
    const long A = static_cast<long>(a);

    QSeries inner(prec);
    for (long k = 0; k < A; ++k) {
        for (long j = 0; j <= k; ++j) {
            inner = inner + Rational(binomial(A, k) * binomial(k, j)) *
                                (dc[static_cast<std::size_t>(j)] * dp[static_cast<std::size_t>(A - k)]);
        }
    }
    QSeries tail(prec);
    for (long j = 1; j <= A; ++j) tail = tail + Rational(binomial(A, j)) * dc[static_cast<std::size_t>(j)];

    const auto A0 = prefactor_A(prec);
    return Rational(-(int_pow(2, a + 1) - 4)) * delq(A0) + 2 * (eta2sq * invert(minus_q) * inner) +
           2 * (eta2sq * minus_q * tail);
}

/// dz^ell F(z,q) at z = 1 from the double sum
/// F = sum_{n>=0} sum_{m>=1} (-1)^m (z^{-m} - z^m) q^{m(2n+1)}.
inline QSeries delzF_series(unsigned ell, std::size_t prec) {
    std::vector<Rational> c(prec + 1, 0);
    for (std::size_t m = 1; m <= prec; ++m) {
        const Integer mp = int_pow(Integer(static_cast<unsigned long>(m)), ell);
        const Integer term = ((ell % 2 == 0 ? mp : Integer(-mp)) - mp) * (m % 2 == 0 ? 1 : -1);
        for (std::size_t d = 1; m * d <= prec; d += 2) c[m * d] += term;
    }
    return QSeries(std::move(c));
}

/// -B_{l+1}/(l+1) (E_{l+1}(q) - E_{l+1}(q^2) - 2^{l+1}E_{l+1}(q^2) + 2^{l+1}E_{l+1}(q^4))
inline QSeries delzF_closed_form(unsigned ell, std::size_t prec) {
    const unsigned w = ell + 1;
    const Rational pw(int_pow(2, w));
    const auto e1 = eisenstein(w, prec), e2 = eisenstein_at(w, 2, prec), e4 = eisenstein_at(w, 4, prec);
    return (-bernoulli(w) / Rational(w)) * (e1 - e2 - pw * e2 + pw * e4);
}

/// Even ell: the series vanishes. Odd ell: it equals the Eisenstein form.
inline bool delzF_identity(unsigned ell, std::size_t prec) {
    const auto lhs = delzF_series(ell, prec);
    if (ell % 2 == 0) return lhs.is_zero();
    return lhs == delzF_closed_form(ell, prec);
}

} // namespace qmoments
