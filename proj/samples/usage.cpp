#include <iostream>

#include <qmoments/qmoments.hpp>

using namespace qmoments;

int main() {
    const std::size_t prec = 40;

    // the second moment of the M2-rank, against the enumeration oracle at n = 11
    const auto r2_2 = moment(Family::R2, 2, prec);
    std::cout << "N2_2(11) = " << r2_2[11] << " (oracle " << stat_table(11, StatKind::m2rank).moment(2) << ")\n";

    // membership of the second residual-crank moment in A * W_1
    const auto space = basis_W(1, prefactor_A(prec), prec);
    const auto coeffs = membership(moment(Family::C2, 2, prec), space);
    std::cout << "M2_2 =";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::cout << ' ' << (sgn(coeffs[i]) < 0 ? "- " : "+ ") << to_fraction_string(abs(coeffs[i])) << " A*("
                  << space.labels[i] << " - const)";
    }
    std::cout << '\n';

    for (const auto& r : check_spt_congruences(60)) std::cout << r.to_line() << '\n';
}
