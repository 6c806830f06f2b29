#include <gtest/gtest.h>

#include <qmoments/congruences.hpp>

using namespace qmoments;

TEST(Progression, ReportsFirstCounterexample) {
    const auto a = ZSeries::from_ints({0, 3, 1, 6, 2, 9, 4}, 6);
    const auto ok = check_progression("a", a, 3, 2, 1, 6);
    EXPECT_TRUE(ok.pass);
    EXPECT_EQ(ok.to_line(), "a mod=3 progression=2n+1 depth=6 verdict=pass");
    const auto bad = check_progression("a", a, 2, 2, 0, 6);
    EXPECT_FALSE(bad.pass);
    EXPECT_EQ(bad.counterexample, 2u);
    EXPECT_EQ(bad.to_line(), "a mod=2 progression=2n+0 depth=6 verdict=fail counterexample=2");
}

TEST(Progression, FirstArgumentIsRespected) {
    const auto a = ZSeries::from_ints({1, 0, 0, 0, 0, 0}, 5);
    EXPECT_FALSE(check_progression("a", a, 5, 5, 0, 5).pass);
    EXPECT_TRUE(check_progression("a", a, 5, 5, 0, 5, 1).pass);
}

TEST(SptFromMoments, Values) {
    EXPECT_EQ(mspt_from_moments(11), 15);
    EXPECT_EQ(mspt_from_moments(1), 0);
    const auto a = mspt_series_from_moments(25), b = mspt2_series_from_moments(25);
    for (long n = 0; n <= 25; ++n) {
        EXPECT_EQ(a[static_cast<std::size_t>(n)], mspt(n)) << n;
        EXPECT_EQ(b[static_cast<std::size_t>(n)], mspt2(n)) << n;
    }
}

TEST(SptCongruences, SmallCases) {
    EXPECT_EQ(mspt(4) % 3, 0);
    EXPECT_EQ(mspt2(5) % 5, 0);
    EXPECT_EQ(mspt2(9) % 3, 0);
    EXPECT_EQ(mspt(26) % 3, 0);
}

TEST(SptCongruences, FamiliesToSixty) {
    for (const auto& r : check_spt_congruences(60)) {
        if (r.id == "Mspt" && r.modulus == 3 && r.step == 5 && r.residue == 3) {
            EXPECT_FALSE(r.pass);
            EXPECT_EQ(r.counterexample, 8u);
        } else {
            EXPECT_TRUE(r.pass) << r.to_line();
        }
    }
}

TEST(MomentCongruences, ToSixty) {
    const auto reps = check_moment_congruences(60);
    EXPECT_EQ(reps.size(), 8u);
    for (const auto& r : reps) EXPECT_TRUE(r.pass) << r.to_line();
    EXPECT_EQ(M2(2, 5)[5] % 5, 0);
}

TEST(Reductions, ToSixty) {
    for (const auto& r : check_reductions(60)) EXPECT_TRUE(r.pass) << r.to_line();
}

TEST(Sturm, Bounds) {
    EXPECT_EQ(sturm_bound(8, 5184), 6912u);
    EXPECT_EQ(sturm_bound(14, 20), 42u);
    EXPECT_EQ(sturm_bound(6, 36), 36u);
}

TEST(Sifts, ConstantTerms) {
    EXPECT_EQ(mspt(2), 1);
    const auto s3 = sift_3n2(60);
    EXPECT_TRUE(s3.identity.pass) << s3.identity.to_line();
    EXPECT_TRUE(s3.intermediate.pass) << s3.intermediate.to_line();
    EXPECT_EQ(s3.sturm, 48u);
    const auto s5 = sift_5n2(60);
    EXPECT_TRUE(s5.identity.pass) << s5.identity.to_line();
    EXPECT_TRUE(s5.intermediate.pass) << s5.intermediate.to_line();
    EXPECT_EQ(s5.sturm, 42u);
}

TEST(Mod9, ShortRunIsPartial) {
    const auto r = mod9_pipeline(90);
    EXPECT_TRUE(r.partial);
    for (const auto& rep : r.reports()) EXPECT_TRUE(rep.partial);
    EXPECT_TRUE(r.closed_form_mod9.pass);
    EXPECT_TRUE(r.sifted_object.pass);
    EXPECT_TRUE(r.sifted_G.pass);
    EXPECT_TRUE(r.cube.pass);
    EXPECT_TRUE(r.G_vs_G1.pass);
}

TEST(Mod9, FastAndSlowGAgree) {
    EXPECT_EQ(reduce_mod(mod9_G(60), 9), mod9_G(60, ResidueRing(9)));
}

TEST(Abl, SmallDepth) {
    for (const auto& r : abl_special_cases(130)) EXPECT_TRUE(r.pass) << r.to_line();
    const auto ms = mspt_series(122);
    EXPECT_EQ(ms[97] % 5, 0);
    EXPECT_EQ(ms[122] % 5, 0);
}
