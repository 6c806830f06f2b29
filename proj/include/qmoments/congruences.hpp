#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "partitions.hpp"
#include "relations.hpp"
#include "standard_forms.hpp"

namespace qmoments {

/// One checked family. modulus 0 marks an exact identity. counterexample is
/// the first failing argument (the index into the underlying sequence).
struct CongruenceReport {
    std::string id;
    std::uint64_t modulus = 0;
    std::size_t step = 1;
    std::size_t residue = 0;
    std::size_t depth = 0;
    bool pass = false;
    std::optional<std::size_t> counterexample;
    bool partial = false;

    std::string to_line() const {
        std::ostringstream os;
        os << id << " mod=" << modulus << " progression=" << step << "n+" << residue << " depth=" << depth
           << " verdict=" << (pass ? "pass" : "fail");
        if (counterexample) os << " counterexample=" << *counterexample;
        if (partial) os << " partial";
        return os.str();
    }
};

inline std::uint64_t residue_of(const Integer& v, std::uint64_t m) {
    return ResidueRing(m).from_integer(v);
}

/// Checks a(step*n + residue) == 0 mod m for every argument in [first, depth].
inline CongruenceReport check_progression(std::string id, const ZSeries& a, std::uint64_t m, std::size_t step,
                                          std::size_t residue, std::size_t depth, std::size_t first = 0) {
    if (a.prec() < depth) throw error("series too short for depth " + std::to_string(depth));
    CongruenceReport r{std::move(id), m, step, residue, depth, true, std::nullopt, false};
    for (std::size_t x = residue; x <= depth; x += step) {
        if (x < first) continue;
        if (residue_of(a[x], m) != 0) {
            r.pass = false;
            r.counterexample = x;
            break;
        }
    }
    return r;
}

// Rank and crank moments under the names used below:
// N2 = M2-rank (R2), M2 = residual crank (C2), M1 = C1, M4 = C4.
inline ZSeries N2(unsigned k, std::size_t prec) { return moment_z(Family::R2, k, prec); }
inline ZSeries M2(unsigned k, std::size_t prec) { return moment_z(Family::C2, k, prec); }
inline ZSeries M1(unsigned k, std::size_t prec) { return moment_z(Family::C1, k, prec); }
inline ZSeries M4(unsigned k, std::size_t prec) { return moment_z(Family::C4, k, prec); }

namespace detail {

inline ZSeries exact_divide(const ZSeries& a, long d, const char* what) {
    std::vector<Integer> c(a.prec() + 1);
    for (std::size_t n = 0; n <= a.prec(); ++n) {
        if (a[n] % d != 0) {
            throw DivisibilityViolation(std::string(what) + " at n=" + std::to_string(n) + " is not divisible by " +
                                        std::to_string(d));
        }
        c[n] = a[n] / d;
    }
    return ZSeries(std::move(c));
}

} // namespace detail

/// (M2_2 - N2_2)/2 coefficientwise.
inline ZSeries mspt_series_from_moments(std::size_t prec) {
    return detail::exact_divide(M2(2, prec) - N2(2, prec), 2, "M2_2 - N2_2");
}

/// (M2_4 - M2_2 - N2_4 + N2_2)/24 coefficientwise.
inline ZSeries mspt2_series_from_moments(std::size_t prec) {
    return detail::exact_divide(M2(4, prec) - M2(2, prec) - N2(4, prec) + N2(2, prec), 24,
                                "M2_4 - M2_2 - N2_4 + N2_2");
}

inline Integer mspt_from_moments(std::size_t n) { return mspt_series_from_moments(n)[n]; }
inline Integer mspt2_from_moments(std::size_t n) { return mspt2_series_from_moments(n)[n]; }

/// The spt-type families; arguments run up to depth. The 5n+3 family is
/// reported under both 3 and 5.
inline std::vector<CongruenceReport> check_spt_congruences(std::size_t depth = 120) {
    const auto s1 = mspt_series_from_moments(depth);
    const auto s2 = mspt2_series_from_moments(depth);
    return {
        check_progression("Mspt", s1, 3, 3, 1, depth),
        check_progression("Mspt", s1, 5, 5, 1, depth),
        check_progression("Mspt", s1, 3, 5, 3, depth),
        check_progression("Mspt", s1, 5, 5, 3, depth),
        check_progression("Mspt2", s2, 5, 5, 0, depth, 1),
        check_progression("Mspt2", s2, 5, 5, 1, depth),
        check_progression("Mspt2", s2, 5, 5, 3, depth),
        check_progression("Mspt2", s2, 3, 9, 0, depth, 1),
    };
}

inline std::vector<CongruenceReport> check_moment_congruences(std::size_t depth = 120) {
    const auto n22 = N2(2, depth), n24 = N2(4, depth), m22 = M2(2, depth), m24 = M2(4, depth);
    const ZSeries n24_4n22 = n24 + scale(n22, Integer(4));
    const ZSeries m24_4m22 = m24 + scale(m22, Integer(4));
    return {
        check_progression("N2_2-M2_2", n22 - m22, 3, 3, 1, depth),
        check_progression("M2_2", m22, 5, 5, 0, depth),
        check_progression("N2_4+4N2_2-M2_4-4M2_2", n24_4n22 - m24_4m22, 5, 5, 0, depth),
        check_progression("N2_2", n22, 5, 5, 1, depth),
        check_progression("M2_2", m22, 5, 5, 1, depth),
        check_progression("N2_4-M2_4", n24 - m24, 5, 5, 1, depth),
        check_progression("N2_2-M2_2", n22 - m22, 5, 5, 3, depth),
        check_progression("N2_4-M2_4", n24 - m24, 5, 5, 3, depth),
    };
}

/// sum_i poly_i(n) S_i(n) with integer polynomial coefficients in n.
struct PolyTerm {
    std::vector<long> poly;  // poly[0] + poly[1] n + ...
    ZSeries series;
};

inline ZSeries polynomial_combination(const std::vector<PolyTerm>& terms, std::size_t prec) {
    std::vector<Integer> c(prec + 1, 0);
    for (std::size_t n = 0; n <= prec; ++n) {
        for (const auto& t : terms) {
            Integer p = 0, pw = 1;
            for (long a : t.poly) {
                p += a * pw;
                pw *= static_cast<unsigned long>(n);
            }
            c[n] += p * t.series[n];
        }
    }
    return ZSeries(std::move(c));
}

/// The relations reduced mod 3, 5 and (on multiples of 9) mod 9, each
/// written as an expression that must vanish.
inline std::vector<CongruenceReport> check_reductions(std::size_t depth = 120) {
    const auto n22 = N2(2, depth), n24 = N2(4, depth);
    const auto m12 = M1(2, depth), m14 = M1(4, depth), m22 = M2(2, depth), m24 = M2(4, depth);
    const auto m42 = M4(2, depth), m44 = M4(4, depth);
    std::vector<CongruenceReport> out;

    // 2n N2_2 = (2+n) M1_2 + 2 M2_2 + (2+n) M4_2  (mod 3)
    out.push_back(check_progression(
        "reduction-R2-4-mod3",
        polynomial_combination({{{0, 2}, n22}, {{-2, -1}, m12}, {{-2}, m22}, {{-2, -1}, m42}}, depth), 3, 1, 0,
        depth));
    // N2_4 + (4+4n) N2_2 = (4+n) M1_2 + M2_4 + (1+4n) M4_2  (mod 5)
    out.push_back(check_progression(
        "reduction-R2-4-mod5",
        polynomial_combination({{{1}, n24}, {{4, 4}, n22}, {{-4, -1}, m12}, {{-1}, m24}, {{-1, -4}, m42}}, depth),
        5, 1, 0, depth));
    // (1+2n) N2_4 + (4+4n) N2_2 = (4+3n+3n^2) M1_2 + (4+4n) M2_2 + (1+2n) M2_4 + (1+2n+2n^2) M4_2  (mod 5)
    out.push_back(check_progression("reduction-R2-6-mod5",
                                    polynomial_combination({{{1, 2}, n24},
                                                            {{4, 4}, n22},
                                                            {{-4, -3, -3}, m12},
                                                            {{-4, -4}, m22},
                                                            {{-1, -2}, m24},
                                                            {{-1, -2, -2}, m42}},
                                                           depth),
                                    5, 1, 0, depth));
    // (1+n+3n^2) M1_2 + (4+2n+3n^2) M2_2 + (4+4n+2n^2) M4_2 = 0  (mod 5)
    out.push_back(check_progression(
        "reduction-F1-F2-mod5",
        polynomial_combination({{{1, 1, 3}, m12}, {{4, 2, 3}, m22}, {{4, 4, 2}, m42}}, depth), 5, 1, 0, depth));
    // 2N2_4 + 7N2_2 = M1_2 + M1_4 + 5M2_2 + 6M2_4 + 7M4_2 + 7M4_4  (mod 9, at 9n)
    out.push_back(check_progression("reduction-R2-4-mod9",
                                    polynomial_combination({{{2}, n24},
                                                            {{7}, n22},
                                                            {{-1}, m12},
                                                            {{-1}, m14},
                                                            {{-5}, m22},
                                                            {{-6}, m24},
                                                            {{-7}, m42},
                                                            {{-7}, m44}},
                                                           depth),
                                    9, 9, 0, depth));
    // M2_4 - M2_2 - N2_4 + N2_2 = M1_2 + 7M1_4 + M2_2 + 7M2_4 - 2M4_2 + 4M4_4  (mod 9, at 9n)
    out.push_back(check_progression("reduction-mspt2-mod9",
                                    polynomial_combination({{{1}, m24},
                                                            {{-1}, m22},
                                                            {{-1}, n24},
                                                            {{1}, n22},
                                                            {{-1}, m12},
                                                            {{-7}, m14},
                                                            {{-1}, m22},
                                                            {{-7}, m24},
                                                            {{2}, m42},
                                                            {{-4}, m44}},
                                                           depth),
                                    9, 9, 0, depth));
    return out;
}

/// ceil(k * [SL2(Z) : Gamma0(N)] / 12)
inline std::size_t sturm_bound(long weight, long level) {
    if (weight < 2 || weight % 2 != 0) throw OddWeight(weight);
    if (level < 1) throw error("level must be >= 1");
    Rational index(level);
    long n = level;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        index *= Rational(p + 1, p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) index *= Rational(n + 1, n);
    Rational v = Rational(weight) * index / 12;
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return c.get_ui();
}

// The mod 9 argument for Mspt2(9n).

/// G = C1_2 + 7C1_4 + C2_2 + 7C2_4 - 2C4_2 + 4C4_4
template <class Ring = RationalField>
basic_series<Ring> mod9_G(std::size_t prec, Ring ring = Ring{}) {
    const auto c1 = crank_moments_fast(Family::C1, 4, prec, ring);
    const auto c2 = crank_moments_fast(Family::C2, 4, prec, ring);
    const auto c4 = crank_moments_fast(Family::C4, 4, prec, ring);
    auto k = [&](long v) { return ring.from_int(v); };
    return c1[2] + scale(c1[4], k(7)) + c2[2] + scale(c2[4], k(7)) + scale(c4[2], k(-2)) + scale(c4[4], k(4));
}

/// 27 - 90E2(q) - 90E2(q^2) + 90E2(q^4) + 35E2(q)^2 + 35E2(q^2)^2 - 25E2(q^4)^2
///   + 14E4(q) + 14E4(q^2) - 10E4(q^4)
template <class Ring = RationalField>
basic_series<Ring> mod9_bracket(std::size_t prec, Ring ring = Ring{}) {
    auto k = [&](long v) { return ring.from_int(v); };
    const auto e2 = eisenstein(2, prec, ring), e4 = eisenstein(4, prec, ring);
    const auto sq = e2 * e2;
    auto at = [&](const basic_series<Ring>& s, std::size_t m) { return subst_qpow(truncate(s, prec / m), m, prec); };
    auto out = basic_series<Ring>::monomial(k(27), 0, prec, ring);
    out = out + scale(e2, k(-90)) + scale(at(e2, 2), k(-90)) + scale(at(e2, 4), k(90));
    out = out + scale(sq, k(35)) + scale(at(sq, 2), k(35)) + scale(at(sq, 4), k(-25));
    out = out + scale(e4, k(14)) + scale(at(e4, 2), k(14)) + scale(at(e4, 4), k(-10));
    return out;
}

/// The bracket after the two substitutions valid mod 27: every E2 in a
/// square becomes E2 - 27E2(q^27) (at the same argument), every 9E2 term
/// becomes 9E4, and the constant 27 becomes 27E4. The result is a weight 4
/// form congruent to the bracket mod 27.
template <class Ring = IntegerRing>
basic_series<Ring> mod9_G1_numerator(std::size_t prec, Ring ring = Ring{}) {
    auto k = [&](long v) { return ring.from_int(v); };
    auto at = [&](const basic_series<Ring>& s, std::size_t m) { return subst_qpow(truncate(s, prec / m), m, prec); };
    const auto e2 = eisenstein(2, prec, ring), e4 = eisenstein(4, prec, ring);
    const auto x = e2 - scale(at(e2, 27), k(27));
    const auto sq = x * x;
    auto out = scale(e4, k(27));
    out = out + scale(e4, k(-90)) + scale(at(e4, 2), k(-90)) + scale(at(e4, 4), k(90));
    out = out + scale(sq, k(35)) + scale(at(sq, 2), k(35)) + scale(at(sq, 4), k(-25));
    out = out + scale(e4, k(14)) + scale(at(e4, 2), k(14)) + scale(at(e4, 4), k(-10));
    return out;
}

namespace detail {

/// x/240 mod 9 from x mod 27, given 3 | x; 240 = 3 * 80.
inline ZmSeries divide_240_mod9(const ZmSeries& x27, const char* what) {
    const ResidueRing r9(9);
    const auto inv80 = r9.inverse(80 % 9);
    std::vector<std::uint64_t> c(x27.prec() + 1);
    for (std::size_t n = 0; n <= x27.prec(); ++n) {
        if (x27[n] % 3 != 0) {
            throw DivisibilityViolation(std::string(what) + " at n=" + std::to_string(n) + " not divisible by 3");
        }
        c[n] = r9.mul(x27[n] / 3, inv80);
    }
    return ZmSeries(std::move(c), r9);
}

} // namespace detail

/// G1 mod 9
inline ZmSeries mod9_G1(std::size_t prec) {
    return detail::divide_240_mod9(mod9_G1_numerator(prec, ResidueRing(27)), "G1 numerator");
}

/// q (q^2;q^2)(q;q)^8(q^9;q^9)^3 / ((q^3;q^3)^3 (q^4;q^4))
inline ProductSpec mod9_eta_quotient_spec() {
    return ProductSpec(1, {{1, 1, -1, 8}, {2, 2, -1, 1}, {3, 3, -1, -3}, {4, 4, -1, -1}, {9, 9, -1, 3}});
}

inline ZmSeries mod9_object(std::size_t prec) {
    const ResidueRing r9(9);
    return expand_product(mod9_eta_quotient_spec(), prec, r9) * mod9_G1(prec);
}

struct Mod9Result {
    CongruenceReport closed_form;   // (a) G equals A * bracket / 240 exactly
    CongruenceReport closed_form_mod9;  // the same identity read mod 9
    CongruenceReport sifted_object; // (b) S_{9,1} of the eta quotient times G1 vanishes mod 9
    CongruenceReport sifted_G;      // (c) G(9n) = 0 mod 9
    CongruenceReport cube;          // ((q;q)^3/(q^3;q^3))^3 = 1 mod 9
    CongruenceReport G_vs_G1;       // G = A * G1 mod 9
    bool partial = false;

    bool pass() const {
        return closed_form.pass && closed_form_mod9.pass && sifted_object.pass && sifted_G.pass && cube.pass &&
               G_vs_G1.pass;
    }
    std::vector<CongruenceReport> reports() const {
        return {closed_form, closed_form_mod9, sifted_object, sifted_G, cube, G_vs_G1};
    }
};

inline constexpr std::size_t mod9_full_depth = 7000;

namespace detail {

inline CongruenceReport zero_report(std::string id, const ZmSeries& a, std::size_t step, std::size_t residue,
                                    std::size_t depth) {
    CongruenceReport r{std::move(id), a.ring().modulus(), step, residue, depth, true, std::nullopt, false};
    for (std::size_t x = residue; x <= depth; x += step) {
        if (a[x] != 0) {
            r.pass = false;
            r.counterexample = x;
            break;
        }
    }
    return r;
}

} // namespace detail

/// object and G_mod9 may come from a cache; both are rebuilt when absent.
inline Mod9Result mod9_pipeline(std::size_t depth, std::optional<ZmSeries> object = std::nullopt,
                                std::optional<ZmSeries> G_mod9 = std::nullopt) {
    Mod9Result res;
    res.partial = depth < mod9_full_depth;
    const ResidueRing r9(9);

    const std::size_t exact_depth = std::min<std::size_t>(depth, 200);
    {
        const auto G = mod9_G(exact_depth);
        const auto rhs = Rational(1, 240) * (prefactor_A(exact_depth) * mod9_bracket(exact_depth));
        const auto diff = first_difference(G, rhs);
        res.closed_form = {"mod9-G-closed-form", 0, 1, 0, exact_depth, !diff, diff, false};
    }

    if (!object || object->prec() < depth) object = mod9_object(depth);
    res.sifted_object = detail::zero_report("mod9-eta-quotient-G1", truncate(*object, depth), 9, 1, depth);

    if (!G_mod9 || G_mod9->prec() < depth) G_mod9 = mod9_G(depth, r9);
    const auto G = truncate(*G_mod9, depth);
    res.sifted_G = detail::zero_report("mod9-G", G, 9, 0, depth);

    const auto cube =
        expand_product(ProductSpec(0, {{1, 1, -1, 9}, {3, 3, -1, -3}}), depth, r9) - ZmSeries::one(depth, r9);
    res.cube = detail::zero_report("mod9-cube", cube, 1, 0, depth);

    const auto A9 = expand_product(prefactor_A_spec(), depth, r9);
    const auto bracket9 = detail::divide_240_mod9(mod9_bracket(depth, ResidueRing(27)), "closed-form bracket");
    res.closed_form_mod9 = detail::zero_report("mod9-G-closed-form", G - A9 * bracket9, 1, 0, depth);

    res.G_vs_G1 = detail::zero_report("mod9-G-vs-G1", G - A9 * mod9_G1(depth), 1, 0, depth);

    for (auto* r : {&res.closed_form, &res.closed_form_mod9, &res.sifted_object, &res.sifted_G, &res.cube, &res.G_vs_G1}) {
        r->partial = res.partial;
    }
    return res;
}

// Sifted generating functions.

/// (q;q)(q^4;q^4)/(q^2;q^2)
inline ProductSpec sift_base_spec() { return ProductSpec(0, {{1, 1, -1, 1}, {2, 2, -1, -1}, {4, 4, -1, 1}}); }

struct SiftResult {
    CongruenceReport identity;      // the sifted series against its closed form
    CongruenceReport intermediate;  // the U_p form identity behind it
    std::size_t sturm = 0;          // the larger of the formula bound and the published bound
};

/// Congruences of sequences indexed from 0 against a series, n <= depth.
inline CongruenceReport series_congruence(std::string id, const ZmSeries& lhs, const ZmSeries& rhs,
                                          std::size_t step, std::size_t residue, std::size_t depth) {
    CongruenceReport r{std::move(id), lhs.ring().modulus(), step, residue, depth, true, std::nullopt, false};
    for (std::size_t n = 0; n <= depth; ++n) {
        if (lhs[n] != rhs[n]) {
            r.pass = false;
            r.counterexample = step * n + residue;
            break;
        }
    }
    return r;
}

/// sum Mspt(3n+2) q^n = ((q;q)(q^4;q^4)/(q^2;q^2))^5 mod 3, n <= depth; and
/// U_3(P8 g) = P8 mod 3 with P8 = q (q;q)^8(q^4;q^4)^8/(q^2;q^2)^8 and
/// g = -(E2(q) + E2(q^2) + E2(q^4) - 3)/12.
inline SiftResult sift_3n2(std::size_t depth = 300) {
    const ResidueRing r3(3);
    SiftResult out;
    out.sturm = std::max<std::size_t>(sturm_bound(6, 36), 48);

    const auto ms = mspt_series(3 * depth + 2);
    std::vector<std::uint64_t> c(depth + 1);
    for (std::size_t n = 0; n <= depth; ++n) c[n] = r3.from_integer(ms[3 * n + 2]);
    const auto rhs = expand_product(sift_base_spec().pow(5), depth, r3);
    out.identity = series_congruence("sift-Mspt(3n+2)", ZmSeries(std::move(c), r3), rhs, 3, 2, depth);

    const std::size_t d2 = std::max(depth, out.sturm);
    const std::size_t big = 3 * d2;
    const auto sum = eisenstein(2, big) + eisenstein_at(2, 2, big) + eisenstein_at(2, 4, big);
    const auto g = reduce_mod(Rational(-1, 12) * (sum - QSeries::monomial(3, 0, big)), 3);
    const auto p8 = ProductSpec(1, {{1, 1, -1, 8}, {2, 2, -1, -8}, {4, 4, -1, 8}});
    const auto lhs = op_U(expand_product(p8, big, r3) * g, 3);
    out.intermediate =
        series_congruence("sift-3n2-U3", lhs, expand_product(p8, d2, r3), 1, 0, d2);
    return out;
}

/// sum Mspt(5n+2) q^n = ((q;q)(q^4;q^4)/(q^2;q^2))^3 (E2(q) + E2(q^2) + 4E2(q^4)) mod 5;
/// and U_5(P24 g) = P8 (E2(q) + E2(q^2) + 4E2(q^4)) mod 5 with
/// P24 = q^3 (q;q)^24(q^4;q^4)^24/(q^2;q^2)^24 and g = -(2E2(q) + 3E2(q^4) - 5)/12.
inline SiftResult sift_5n2(std::size_t depth = 300) {
    const ResidueRing r5(5);
    SiftResult out;
    out.sturm = sturm_bound(14, 20);

    auto e2mix = [](std::size_t p) {
        return eisenstein(2, p) + eisenstein_at(2, 2, p) + 4 * eisenstein_at(2, 4, p);
    };
    const auto ms = mspt_series(5 * depth + 2);
    std::vector<std::uint64_t> c(depth + 1);
    for (std::size_t n = 0; n <= depth; ++n) c[n] = r5.from_integer(ms[5 * n + 2]);
    const auto rhs = expand_product(sift_base_spec().pow(3), depth, r5) * reduce_mod(e2mix(depth), 5);
    out.identity = series_congruence("sift-Mspt(5n+2)", ZmSeries(std::move(c), r5), rhs, 5, 2, depth);

    const std::size_t d2 = std::max(depth, out.sturm);
    const std::size_t big = 5 * d2;
    const auto g = reduce_mod(
        Rational(-1, 12) * (2 * eisenstein(2, big) + 3 * eisenstein_at(2, 4, big) - QSeries::monomial(5, 0, big)), 5);
    const auto p24 = ProductSpec(3, {{1, 1, -1, 24}, {2, 2, -1, -24}, {4, 4, -1, 24}});
    const auto p8 = ProductSpec(1, {{1, 1, -1, 8}, {2, 2, -1, -8}, {4, 4, -1, 8}});
    const auto lhs = op_U(expand_product(p24, big, r5) * g, 5);
    const auto rhs2 = expand_product(p8, d2, r5) * reduce_mod(e2mix(d2), 5);
    out.intermediate = series_congruence("sift-5n2-U5", lhs, rhs2, 1, 0, d2);
    return out;
}

/// Mspt(27n+26) mod 3, Mspt(125n+97) and Mspt(125n+122) mod 5, arguments <= depth.
inline std::vector<CongruenceReport> abl_special_cases(std::size_t depth = 500) {
    const auto ms = mspt_series(depth);
    return {
        check_progression("Mspt", ms, 3, 27, 26, depth),
        check_progression("Mspt", ms, 5, 125, 97, depth),
        check_progression("Mspt", ms, 5, 125, 122, depth),
    };
}

} // namespace qmoments
