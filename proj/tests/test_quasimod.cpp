#include <gtest/gtest.h>

#include <qmoments/quasimod.hpp>
#include <qmoments/relations.hpp>

using namespace qmoments;

TEST(Dimensions, ModularForms) {
    EXPECT_EQ(dim_modforms_gamma04(0), 1u);
    EXPECT_EQ(dim_modforms_gamma04(2), 2u);
    EXPECT_EQ(dim_modforms_gamma04(6), 4u);
    EXPECT_THROW(dim_modforms_gamma04(3), OddWeight);
}

TEST(Dimensions, QuasimodularSpaces) {
    const std::vector<std::size_t> expect{3, 9, 19, 34, 55};
    for (std::size_t N = 1; N <= 5; ++N) EXPECT_EQ(dim_W(N), expect[N - 1]);
}

TEST(BasisModforms, Shapes) {
    const auto w2 = labeled_modforms(2, 30);
    ASSERT_EQ(w2.size(), 2u);
    EXPECT_EQ(w2[0].series[0], -1);
    const auto w4 = basis_modforms(4, 30);
    EXPECT_EQ(w4.size(), 3u);
    EXPECT_TRUE(independence_check(w4).independent);
    const auto w6 = basis_modforms(6, 30);
    ASSERT_EQ(w6.size(), 4u);
    EXPECT_NE(std::find(w6.begin(), w6.end(), expand_product(eta2_12_spec(), 30)), w6.end());
}

TEST(BasisModforms, WeightTwoFormsAreModular) {
    // the weight-2 space times itself lands in the weight-4 span
    const std::size_t p = 40;
    const auto w2 = basis_modforms(2, p);
    EXPECT_NO_THROW(express_in_basis(basis_modforms(4, p), w2[0] * w2[1]));
}

TEST(BasisW, DimensionsAndConstantTerms) {
    const std::size_t p = 60;
    const auto A = prefactor_A(p);
    for (std::size_t N = 1; N <= 3; ++N) {
        const auto b = basis_W(N, A, p);
        EXPECT_EQ(b.elements.size(), dim_W(N));
        EXPECT_EQ(b.labels.size(), dim_W(N));
        for (const auto& e : b.elements) EXPECT_EQ((e * invert(A))[0], 0);
    }
}

TEST(BasisW, WindowTooSmall) {
    EXPECT_THROW(basis_W(3, prefactor_A(20), 20), WindowTooSmall);
}

TEST(Membership, Examples) {
    const std::size_t p = 60;
    const auto A = prefactor_A(p);
    const auto w1 = basis_W(1, A, p);
    EXPECT_TRUE(is_member(delq(A), w1));
    const auto c = membership(delq(A), w1);
    EXPECT_EQ(c.size(), 3u);
    EXPECT_TRUE(is_member(moment(Family::C2, 2, p), w1));
    const auto eta = shift(expand_product(ProductSpec::pochhammer(1, 1), p), 1);
    EXPECT_THROW(membership(eta, w1), NotInSpace);
}

TEST(Membership, NineFunctionsAtTwo) {
    const std::size_t p = 60;
    const auto w2 = basis_W(2, prefactor_A(p), p);
    std::vector<QSeries> fs;
    std::vector<std::string> labels;
    moment_functions(2, p, fs, labels);
    ASSERT_EQ(fs.size(), 9u);
    for (std::size_t i = 0; i < fs.size(); ++i) EXPECT_TRUE(is_member(fs[i], w2)) << labels[i];
    EXPECT_TRUE(independence_check(fs).independent);
}

TEST(Membership, DelqClosure) {
    const std::size_t p = 80;
    const auto A = prefactor_A(p);
    for (std::size_t N = 1; N <= 2; ++N) {
        const auto w = basis_W(N, A, p), w_next = basis_W(N + 1, A, p);
        for (std::size_t i = 0; i < w.elements.size(); ++i) {
            EXPECT_TRUE(is_member(delq(w.elements[i]), w_next)) << "N=" << N << ' ' << w.labels[i];
        }
    }
}

TEST(Membership, NotInSpaceCarriesIndex) {
    const std::size_t p = 40;
    const auto w1 = basis_W(1, prefactor_A(p), p);
    try {
        membership(QSeries::monomial(1, 0, p), w1);
        FAIL() << "constant is not in a zero-constant space";
    } catch (const NotInSpace& e) {
        EXPECT_EQ(e.first_index(), 0u);
    }
}
