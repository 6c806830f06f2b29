#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "series.hpp"

namespace qmoments {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        RationalMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw error("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

struct RrefResult {
    RationalMatrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

/// Reduced row echelon form over Q. Pivot search prefers the entry with the
/// smallest numerator+denominator size to slow coefficient growth.
inline RrefResult rref(RationalMatrix m, std::size_t ncols = static_cast<std::size_t>(-1)) {
    RrefResult out;
    const std::size_t cols = std::min(ncols, m.cols());
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.rows(); ++col) {
        std::optional<std::size_t> best;
        std::size_t best_size = 0;
        for (std::size_t i = row; i < m.rows(); ++i) {
            if (sgn(m(i, col)) == 0) continue;
            const std::size_t sz = mpz_sizeinbase(m(i, col).get_num_mpz_t(), 2) +
                                   mpz_sizeinbase(m(i, col).get_den_mpz_t(), 2);
            if (!best || sz < best_size) {
                best = i;
                best_size = sz;
            }
        }
        if (!best) continue;
        m.swap_rows(row, *best);
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
            }
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.rank = row;
    out.reduced = std::move(m);
    return out;
}

/// Scales v by a positive rational so it becomes a primitive integer vector.
inline std::vector<Rational> primitive_integer(std::vector<Rational> v) {
    Integer l = 1, g = 0;
    for (const auto& x : v) {
        if (sgn(x) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    for (auto& x : v) {
        x *= l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    if (g != 0) {
        for (auto& x : v) x /= g;
    }
    return v;
}

/// Basis of {x : M x = 0}, one vector per free column.
inline std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
    const auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Half-open range [begin, end) of q-exponents.
struct Window {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end > begin ? end - begin : 0; }
};

namespace detail {

inline std::size_t common_prec(const std::vector<QSeries>& basis, const QSeries& target) {
    std::size_t p = target.prec();
    for (const auto& b : basis) p = std::min(p, b.prec());
    return p;
}

inline RationalMatrix augmented(const std::vector<QSeries>& basis, const QSeries& target, std::size_t begin,
                                std::size_t end) {
    RationalMatrix m(end - begin, basis.size() + 1);
    for (std::size_t n = begin; n < end; ++n) {
        for (std::size_t j = 0; j < basis.size(); ++j) m(n - begin, j) = basis[j][n];
        m(n - begin, basis.size()) = target[n];
    }
    return m;
}

inline bool consistent(const RrefResult& r, std::size_t ncols) {
    return r.pivots.empty() || r.pivots.back() < ncols;
}

} // namespace detail

/// Exact c with target = sum c_i basis_i on the window, then re-checked on
/// the whole common precision.
inline std::vector<Rational> express_in_basis(const std::vector<QSeries>& basis, const QSeries& target,
                                              Window window) {
    const std::size_t k = basis.size();
    if (window.size() < 2 * k) throw WindowTooSmall(window.size(), 2 * k);
    const std::size_t p = detail::common_prec(basis, target);
    if (window.end > p + 1) throw error("solve window extends past the common precision");

    const auto r = rref(detail::augmented(basis, target, window.begin, window.end));
    if (!detail::consistent(r, k)) {
        // shortest inconsistent prefix of the window
        std::size_t lo = window.begin + 1, hi = window.end;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (detail::consistent(rref(detail::augmented(basis, target, window.begin, mid)), k)) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        throw Inconsistent(lo - 1);
    }
    if (r.rank < k) throw RankDeficient(r.rank, k);

    std::vector<Rational> c(k);
    for (std::size_t i = 0; i < k; ++i) c[r.pivots[i]] = r.reduced(i, k);

    for (std::size_t n = 0; n <= p; ++n) {
        Rational s = 0;
        for (std::size_t j = 0; j < k; ++j) s += c[j] * basis[j][n];
        if (s != target[n]) throw Inconsistent(n);
    }
    return c;
}

/// Solves on the whole common precision.
inline std::vector<Rational> express_in_basis(const std::vector<QSeries>& basis, const QSeries& target) {
    return express_in_basis(basis, target, Window{0, detail::common_prec(basis, target) + 1});
}

struct IndependenceResult {
    bool independent = true;
    std::vector<Rational> witness;  // nontrivial relation, primitive, first nonzero entry positive
};

inline IndependenceResult independence_check(const std::vector<QSeries>& list, Window window) {
    if (window.size() < list.size()) throw WindowTooSmall(window.size(), list.size());
    RationalMatrix m(window.size(), list.size());
    for (std::size_t n = window.begin; n < window.end; ++n) {
        for (std::size_t j = 0; j < list.size(); ++j) m(n - window.begin, j) = list[j][n];
    }
    const auto ns = nullspace(m);
    if (ns.empty()) return {};
    auto w = primitive_integer(ns.front());
    for (const auto& x : w) {
        if (sgn(x) == 0) continue;
        if (sgn(x) < 0) {
            for (auto& y : w) y = -y;
        }
        break;
    }
    return {false, std::move(w)};
}

inline IndependenceResult independence_check(const std::vector<QSeries>& list) {
    std::size_t p = static_cast<std::size_t>(-1);
    for (const auto& s : list) p = std::min(p, s.prec());
    return independence_check(list, Window{0, p + 1});
}

} // namespace qmoments
