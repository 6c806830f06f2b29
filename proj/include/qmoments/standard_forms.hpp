#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "series.hpp"

namespace qmoments {

/// B_k from sum_{j=0}^{m} C(m+1, j) B_j = 0, so B_1 = -1/2.
inline Rational bernoulli(unsigned k) {
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard lock(mu);
    while (table.size() <= k) {
        const long m = static_cast<long>(table.size());
        Rational acc = 0;
        for (long j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * table[static_cast<std::size_t>(j)];
        table.push_back(-acc / Rational(m + 1));
    }
    return table[k];
}

/// sigma_{r}(n) = sum_{d | n} d^r for every n in 0..=limit (entry 0 is 0).
inline std::vector<Integer> divisor_sigma_table(unsigned r, std::size_t limit) {
    std::vector<Integer> sigma(limit + 1, 0);
    for (std::size_t d = 1; d <= limit; ++d) {
        const Integer dp = int_pow(Integer(static_cast<unsigned long>(d)), r);
        for (std::size_t n = d; n <= limit; n += d) sigma[n] += dp;
    }
    return sigma;
}

inline Integer divisor_sigma(unsigned r, unsigned long n) {
    Integer s = 0;
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d == 0) s += int_pow(Integer(d), r);
    }
    return s;
}

/// E_k(q) = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for even k >= 2.
template <class Ring = RationalField>
basic_series<Ring> eisenstein(unsigned k, std::size_t prec, Ring ring = Ring{}) {
    if (k < 2 || k % 2 != 0) throw OddWeight(static_cast<long>(k));
    const Rational factor = Rational(-2 * static_cast<long>(k)) / bernoulli(k);
    const auto sigma = divisor_sigma_table(k - 1, prec);
    std::vector<typename Ring::value_type> c(prec + 1);
    c[0] = ring.one();
    for (std::size_t n = 1; n <= prec; ++n) c[n] = ring.from_rational(factor * sigma[n]);
    return basic_series<Ring>(std::move(c), ring);
}

/// E_k(q^m) to the requested precision.
template <class Ring = RationalField>
basic_series<Ring> eisenstein_at(unsigned k, std::size_t m, std::size_t prec, Ring ring = Ring{}) {
    return subst_qpow(eisenstein(k, prec / m, ring), m, prec);
}

/// One factor prod_{k>=0} (1 + sign * q^{offset + k*step})^exponent.
struct ProductFactor {
    long offset = 1;
    long step = 1;
    int sign = -1;
    long exponent = 1;

    friend bool operator==(const ProductFactor&, const ProductFactor&) = default;
};

/// q^t times a finite list of generalized q-Pochhammer factors, kept in
/// canonical order (by step, offset, sign) with equal factors merged.
class ProductSpec {
public:
    ProductSpec() = default;

    ProductSpec(std::size_t leading_power, std::vector<ProductFactor> factors)
        : leading_(leading_power), factors_(std::move(factors)) {
        for (const auto& f : factors_) {
            if (f.offset < 1) throw InvalidOffset(f.offset);
            if (f.step < 1) throw error("product factor step must be >= 1");
            if (f.sign != 1 && f.sign != -1) throw error("product factor sign must be +1 or -1");
        }
        canonicalize();
    }

    /// (q^a; q^d)_inf^e, or (-q^a; q^d)_inf^e with sign = +1.
    static ProductSpec pochhammer(long a, long d, long e = 1, int sign = -1) {
        return ProductSpec(0, {ProductFactor{a, d, sign, e}});
    }

    static ProductSpec monomial(std::size_t t) { return ProductSpec(t, {}); }

    std::size_t leading_power() const noexcept { return leading_; }
    const std::vector<ProductFactor>& factors() const noexcept { return factors_; }

    /// `q^t * PROD(a,d,s,e) * ...`; the empty product is `1`.
    std::string to_string() const {
        std::string out;
        auto append = [&](const std::string& s) {
            if (!out.empty()) out += " * ";
            out += s;
        };
        if (leading_ > 0) append("q^" + std::to_string(leading_));
        for (const auto& f : factors_) {
            append("PROD(" + std::to_string(f.offset) + "," + std::to_string(f.step) + "," +
                   std::to_string(f.sign) + "," + std::to_string(f.exponent) + ")");
        }
        return out.empty() ? "1" : out;
    }

    static ProductSpec parse(std::string_view text) {
        std::string s;
        for (char ch : text) {
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        }
        if (s.empty()) throw ParseError("empty product spec");
        std::size_t leading = 0;
        std::vector<ProductFactor> factors;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t next = s.find('*', pos);
            std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            if (tok == "1") {
            } else if (tok.rfind("q^", 0) == 0) {
                leading += parse_count(tok.substr(2), tok);
            } else if (tok == "q") {
                leading += 1;
            } else if (tok.rfind("PROD(", 0) == 0 && tok.back() == ')') {
                std::vector<long> v;
                std::string inner = tok.substr(5, tok.size() - 6);
                std::size_t p = 0;
                while (p <= inner.size()) {
                    std::size_t c = inner.find(',', p);
                    std::string field = inner.substr(p, c == std::string::npos ? std::string::npos : c - p);
                    try {
                        std::size_t used = 0;
                        v.push_back(std::stol(field, &used));
                        if (used != field.size()) throw ParseError("");
                    } catch (const std::exception&) {
                        throw ParseError("bad PROD field '" + field + "' in '" + tok + "'");
                    }
                    if (c == std::string::npos) break;
                    p = c + 1;
                }
                if (v.size() != 4) throw ParseError("PROD needs 4 fields: '" + tok + "'");
                factors.push_back(ProductFactor{v[0], v[1], static_cast<int>(v[2]), v[3]});
            } else {
                throw ParseError("unrecognized product token '" + tok + "'");
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return ProductSpec(leading, std::move(factors));
    }

    friend ProductSpec operator*(const ProductSpec& a, const ProductSpec& b) {
        std::vector<ProductFactor> f = a.factors_;
        f.insert(f.end(), b.factors_.begin(), b.factors_.end());
        return ProductSpec(a.leading_ + b.leading_, std::move(f));
    }

    /// Raises every factor (and the monomial) to the power e >= 0.
    ProductSpec pow(long e) const {
        if (e < 0) throw error("ProductSpec::pow needs e >= 0 (the monomial cannot be inverted)");
        std::vector<ProductFactor> f = factors_;
        for (auto& x : f) x.exponent *= e;
        return ProductSpec(leading_ * static_cast<std::size_t>(e), std::move(f));
    }

    friend bool operator==(const ProductSpec&, const ProductSpec&) = default;

private:
    static std::size_t parse_count(const std::string& digits, const std::string& tok) {
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            throw ParseError("bad monomial '" + tok + "' (only integral q-powers are allowed)");
        }
        return std::stoul(digits);
    }

    void canonicalize() {
        std::map<std::tuple<long, long, int>, long> merged;
        for (const auto& f : factors_) merged[{f.step, f.offset, f.sign}] += f.exponent;
        factors_.clear();
        for (const auto& [key, e] : merged) {
            if (e == 0) continue;
            factors_.push_back(ProductFactor{std::get<1>(key), std::get<0>(key), std::get<2>(key), e});
        }
    }

    std::size_t leading_ = 0;
    std::vector<ProductFactor> factors_;
};

/// Exact expansion to prec; factors with offset + k*step > prec contribute 1.
template <class Ring = RationalField>
basic_series<Ring> expand_product(const ProductSpec& spec, std::size_t prec, Ring ring = Ring{}) {
    std::vector<typename Ring::value_type> c(prec + 1, ring.zero());
    c[0] = ring.one();
    for (const auto& f : spec.factors()) {
        for (std::size_t j = static_cast<std::size_t>(f.offset); j <= prec; j += static_cast<std::size_t>(f.step)) {
            for (long i = 0; i < std::abs(f.exponent); ++i) {
                if (f.exponent > 0) {
                    multiply_binomial_inplace(c, ring, j, f.sign);
                } else {
                    divide_binomial_inplace(c, ring, j, f.sign);
                }
            }
        }
    }
    return shift(basic_series<Ring>(std::move(c), ring), spec.leading_power());
}

/// (-q;q^2)_inf / (q^2;q^2)_inf: partitions without repeated odd parts.
inline ProductSpec prefactor_A_spec() {
    return ProductSpec::pochhammer(1, 2, 1, +1) * ProductSpec::pochhammer(2, 2, -1);
}

template <class Ring = RationalField>
basic_series<Ring> prefactor_A(std::size_t prec, Ring ring = Ring{}) {
    return expand_product(prefactor_A_spec(), prec, ring);
}

/// q (-q;q^2)_inf (q^2;q^2)_inf^11
inline ProductSpec form_F_spec() {
    return ProductSpec::monomial(1) * ProductSpec::pochhammer(1, 2, 1, +1) * ProductSpec::pochhammer(2, 2, 11);
}

template <class Ring = RationalField>
basic_series<Ring> form_F(std::size_t prec, Ring ring = Ring{}) {
    return expand_product(form_F_spec(), prec, ring);
}

/// eta(2 tau)^12 = q (q^2;q^2)_inf^12, weight 6 on Gamma0(4), vanishing at infinity.
inline ProductSpec eta2_12_spec() { return ProductSpec::monomial(1) * ProductSpec::pochhammer(2, 2, 12); }

} // namespace qmoments
