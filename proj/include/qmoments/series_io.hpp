#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "series.hpp"

namespace qmoments {

// Cache text formats. Writers emit every index 0..=prec.
//
//   qseries v1 prec=<N>          zmseries v1 m=<m> prec=<N>
//   <n> <num>/<den>              <n> <residue>

inline void write_series(std::ostream& out, const QSeries& a) {
    out << "qseries v1 prec=" << a.prec() << '\n';
    for (std::size_t n = 0; n <= a.prec(); ++n) out << n << ' ' << to_fraction_string(a[n]) << '\n';
}

inline void write_series(std::ostream& out, const ZmSeries& a) {
    out << "zmseries v1 m=" << a.ring().modulus() << " prec=" << a.prec() << '\n';
    for (std::size_t n = 0; n <= a.prec(); ++n) out << n << ' ' << a[n] << '\n';
}

template <class Ring>
std::string to_text(const basic_series<Ring>& a) {
    std::ostringstream os;
    write_series(os, a);
    return os.str();
}

namespace detail {

inline std::size_t read_prec_field(const std::string& token) {
    if (token.rfind("prec=", 0) != 0) throw ParseError("expected prec=<N>, got '" + token + "'");
    return std::stoul(token.substr(5));
}

inline void expect_index(std::istream& in, std::size_t n) {
    std::size_t idx;
    if (!(in >> idx) || idx != n) throw ParseError("missing or out-of-order index " + std::to_string(n));
}

} // namespace detail

inline QSeries read_qseries(std::istream& in) {
    std::string magic, version, prec_tok;
    if (!(in >> magic >> version >> prec_tok) || magic != "qseries" || version != "v1") {
        throw ParseError("not a qseries v1 stream");
    }
    const std::size_t prec = detail::read_prec_field(prec_tok);
    std::vector<Rational> c(prec + 1);
    for (std::size_t n = 0; n <= prec; ++n) {
        detail::expect_index(in, n);
        std::string value;
        if (!(in >> value)) throw ParseError("truncated qseries at index " + std::to_string(n));
        c[n] = parse_rational(value);
    }
    return QSeries(std::move(c));
}

inline ZmSeries read_zmseries(std::istream& in) {
    std::string magic, version, m_tok, prec_tok;
    if (!(in >> magic >> version >> m_tok >> prec_tok) || magic != "zmseries" || version != "v1" ||
        m_tok.rfind("m=", 0) != 0) {
        throw ParseError("not a zmseries v1 stream");
    }
    ResidueRing ring(std::stoull(m_tok.substr(2)));
    const std::size_t prec = detail::read_prec_field(prec_tok);
    std::vector<std::uint64_t> c(prec + 1);
    for (std::size_t n = 0; n <= prec; ++n) {
        detail::expect_index(in, n);
        if (!(in >> c[n]) || c[n] >= ring.modulus()) {
            throw ParseError("bad residue at index " + std::to_string(n));
        }
    }
    return ZmSeries(std::move(c), ring);
}

} // namespace qmoments
