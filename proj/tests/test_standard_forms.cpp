#include <gtest/gtest.h>

#include <qmoments/partitions.hpp>
#include <qmoments/standard_forms.hpp>

#include "test_util.hpp"

using namespace qmoments;
using qmoments::testing::qs;

TEST(Bernoulli, SmallValues) {
    EXPECT_EQ(bernoulli(0), 1);
    EXPECT_EQ(bernoulli(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli(2), Rational(1, 6));
    EXPECT_EQ(bernoulli(4), Rational(-1, 30));
    EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
    EXPECT_EQ(bernoulli(7), 0);
}

TEST(DivisorSigma, Values) {
    EXPECT_EQ(divisor_sigma(1, 12), 28);
    EXPECT_EQ(divisor_sigma(3, 2), 9);
    const auto t = divisor_sigma_table(0, 10);
    EXPECT_EQ(t[6], 4);
}

TEST(Eisenstein, LeadingCoefficients) {
    EXPECT_EQ(eisenstein(2, 3)[1], -24);
    EXPECT_EQ(eisenstein(4, 3)[1], 240);
    EXPECT_EQ(eisenstein(6, 3)[1], -504);
    for (unsigned k = 2; k <= 12; k += 2) EXPECT_EQ(eisenstein(k, 3)[0], 1);
}

TEST(Eisenstein, OddWeightRejected) {
    EXPECT_THROW(eisenstein(3, 5), OddWeight);
}

TEST(Eisenstein, E4SquaredIsE8) {
    const auto e4 = eisenstein(4, 60);
    EXPECT_EQ(e4 * e4, eisenstein(8, 60));
}

TEST(ExpandProduct, EulerPentagonal) {
    EXPECT_EQ(expand_product(ProductSpec::pochhammer(1, 1), 7), qs({1, -1, -1, 0, 0, 1, 0, 1}, 7));
    EXPECT_EQ(expand_product(ProductSpec(), 4), QSeries::one(4));
}

TEST(ExpandProduct, PrefactorCountsPartitionsWithoutRepeatedOddParts) {
    const auto a = prefactor_A(30);
    EXPECT_EQ(a[0], 1);
    EXPECT_EQ(a[1], 1);
    EXPECT_EQ(a[4], 3);
    for (long n = 0; n <= 14; ++n) {
        EXPECT_EQ(a[static_cast<std::size_t>(n)], static_cast<long>(enumerate(n, PartitionClass::distinct_odd).size()));
    }
}

TEST(ExpandProduct, PrefactorDerivative) {
    const std::size_t p = 80;
    const auto a = prefactor_A(p);
    const auto bracket =
        eisenstein(2, p) - 2 * eisenstein_at(2, 2, p) + 4 * eisenstein_at(2, 4, p) - QSeries::monomial(3, 0, p);
    EXPECT_EQ(Rational(-24) * delq(a), a * bracket);
}

TEST(ExpandProduct, FormF) {
    const std::size_t p = 60;
    const auto f = form_F(p);
    EXPECT_EQ(f[0], 0);
    EXPECT_EQ(f[1], 1);
    EXPECT_EQ(f[2], 1);
    EXPECT_EQ(f * invert(prefactor_A(p)), expand_product(eta2_12_spec(), p));
}

TEST(ExpandProduct, ResidueRingAgreesWithReduction) {
    const auto spec = ProductSpec::parse("q^1*PROD(1,1,-1,8)*PROD(2,2,-1,-3)*PROD(3,3,1,2)");
    EXPECT_EQ(expand_product(spec, 200, ResidueRing(9)), reduce_mod(expand_product(spec, 200), 9));
}

TEST(ProductSpecText, CanonicalRoundTrip) {
    const auto f = ProductSpec::parse("q^1*PROD(2,2,-1,11)*PROD(1,2,1,1)");
    EXPECT_EQ(f.to_string(), form_F_spec().to_string());
    EXPECT_EQ(ProductSpec::parse(f.to_string()).to_string(), f.to_string());
    EXPECT_EQ(expand_product(f, 40), form_F(40));
}

TEST(ProductSpecText, ExponentsMerge) {
    const auto s = ProductSpec::parse("PROD(1,1,-1,2)*PROD(1,1,-1,-2)*q^2*q^1");
    EXPECT_EQ(s.to_string(), "q^3");
}

TEST(ProductSpecText, RejectsGarbage) {
    EXPECT_THROW(ProductSpec::parse("PROD(1,2"), ParseError);
    EXPECT_THROW(ProductSpec::parse("foo"), ParseError);
}

TEST(ProductSpecText, RejectsNonPositiveOffset) {
    EXPECT_THROW(ProductSpec::parse("PROD(0,1,-1,1)"), error);
}
