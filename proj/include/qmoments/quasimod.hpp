#pragma once

#include <string>
#include <vector>

#include "linalg.hpp"
#include "standard_forms.hpp"

namespace qmoments {

/// dim M_w(Gamma0(4)): 1 at weight 0, w/2 + 1 for even w >= 2.
inline std::size_t dim_modforms_gamma04(long weight) {
    if (weight < 0 || weight % 2 != 0) throw OddWeight(weight);
    return weight == 0 ? 1 : static_cast<std::size_t>(weight / 2 + 1);
}

/// N + sum_{n=0}^{N} sum_{j=1}^{N-n} dim M_{2j}(Gamma0(4))
inline std::size_t dim_W(std::size_t N) {
    std::size_t d = N;
    for (std::size_t n = 0; n <= N; ++n) {
        for (std::size_t j = 1; j + n <= N; ++j) d += dim_modforms_gamma04(2 * static_cast<long>(j));
    }
    return d;
}

struct LabeledSeries {
    std::string label;
    QSeries series;
};

/// Basis of M_w(Gamma0(4)): two E2 differences at weight 2; E_w at q, q^2,
/// q^4 plus q(q^2;q^2)^12 times the weight w-6 basis above that.
inline std::vector<LabeledSeries> labeled_modforms(long weight, std::size_t prec) {
    if (weight < 0 || weight % 2 != 0) throw OddWeight(weight);
    std::vector<LabeledSeries> out;
    if (weight == 0) {
        out.push_back({"1", QSeries::one(prec)});
        return out;
    }
    if (weight == 2) {
        const auto e1 = eisenstein(2, prec), e2 = eisenstein_at(2, 2, prec), e4 = eisenstein_at(2, 4, prec);
        out.push_back({"(E2(q) - 2E2(q^2))", e1 - 2 * e2});
        out.push_back({"(E2(q^2) - 2E2(q^4))", e2 - 2 * e4});
    } else {
        const unsigned w = static_cast<unsigned>(weight);
        const std::string ew = "E" + std::to_string(w);
        out.push_back({ew + "(q)", eisenstein(w, prec)});
        out.push_back({ew + "(q^2)", eisenstein_at(w, 2, prec)});
        out.push_back({ew + "(q^4)", eisenstein_at(w, 4, prec)});
        if (weight >= 6) {
            const auto eta = expand_product(eta2_12_spec(), prec);
            for (auto& f : labeled_modforms(weight - 6, prec)) {
                out.push_back({f.label == "1" ? "eta(2t)^12" : "eta(2t)^12 * " + f.label, eta * f.series});
            }
        }
    }
    std::vector<QSeries> plain;
    for (const auto& f : out) plain.push_back(f.series);
    if (out.size() != dim_modforms_gamma04(weight) || !independence_check(plain).independent) {
        throw BasisDependent(weight);
    }
    return out;
}

inline std::vector<QSeries> basis_modforms(long weight, std::size_t prec) {
    std::vector<QSeries> out;
    for (auto& f : labeled_modforms(weight, prec)) out.push_back(std::move(f.series));
    return out;
}

/// prefactor * (m - m(0)) for every non-constant monomial m = E2^n f with
/// f in M_{2j}(Gamma0(4)) and n + j <= N.
struct QuasimodBasis {
    std::size_t N = 0;
    std::size_t prec = 0;
    QSeries prefactor{0};
    std::vector<QSeries> elements;
    std::vector<std::string> labels;
};

inline QuasimodBasis basis_W(std::size_t N, const QSeries& prefactor, std::size_t prec) {
    const std::size_t expected = dim_W(N);
    if (prec + 1 < 2 * expected) throw WindowTooSmall(prec + 1, 2 * expected);
    const std::size_t p = std::min(prec, prefactor.prec());

    QuasimodBasis b;
    b.N = N;
    b.prec = p;
    b.prefactor = truncate(prefactor, p);
    const auto e2 = eisenstein(2, p);
    auto e2pow = QSeries::one(p);
    for (std::size_t n = 0; n <= N; ++n) {
        for (std::size_t j = 0; j + n <= N; ++j) {
            for (auto& f : labeled_modforms(2 * static_cast<long>(j), p)) {
                if (n == 0 && j == 0) continue;
                auto m = e2pow * f.series;
                const Rational c0 = m[0];
                m = m - QSeries::monomial(c0, 0, p);
                b.elements.push_back(b.prefactor * m);
                std::string label;
                if (n > 0) label = "E2^" + std::to_string(n);
                if (f.label != "1") label += (label.empty() ? "" : " * ") + f.label;
                b.labels.push_back(label);
            }
        }
        e2pow = e2pow * e2;
    }
    if (b.elements.size() != expected) throw DimensionMismatch(b.elements.size(), expected);
    const auto ind = independence_check(b.elements);
    if (!ind.independent) {
        const auto r = rref([&] {
            RationalMatrix m(p + 1, b.elements.size());
            for (std::size_t n = 0; n <= p; ++n) {
                for (std::size_t k = 0; k < b.elements.size(); ++k) m(n, k) = b.elements[k][n];
            }
            return m;
        }());
        throw DimensionMismatch(r.rank, expected);
    }
    return b;
}

/// Exact coordinates of target in the space; NotInSpace otherwise.
inline std::vector<Rational> membership(const QSeries& target, const QuasimodBasis& space) {
    try {
        return express_in_basis(space.elements, truncate(target, space.prec));
    } catch (const Inconsistent& e) {
        throw NotInSpace(e.first_index());
    }
}

inline bool is_member(const QSeries& target, const QuasimodBasis& space) {
    try {
        membership(target, space);
        return true;
    } catch (const NotInSpace&) {
        return false;
    }
}

} // namespace qmoments
