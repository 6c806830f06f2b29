#include <gtest/gtest.h>

#include <qmoments/partitions.hpp>
#include <qmoments/relations.hpp>

using namespace qmoments;

namespace {

Partition part(std::vector<long> p) { return Partition{p, std::vector<bool>(p.size(), false)}; }

} // namespace

TEST(Enumerate, Counts) {
    EXPECT_EQ(enumerate(4, PartitionClass::unrestricted).size(), 5u);
    EXPECT_EQ(enumerate(0, PartitionClass::unrestricted).size(), 1u);
    EXPECT_EQ(enumerate(4, PartitionClass::overpartition).size(), 14u);
    EXPECT_EQ(eval_z1(generating_function(Family::Rbar, 4))[4], 14);
}

TEST(Enumerate, S2PartitionsOfEleven) {
    std::vector<std::vector<long>> got;
    for (const auto& p : enumerate(11, PartitionClass::s2)) got.push_back(p.parts);
    const std::vector<std::vector<long>> expect{{9, 2},       {7, 4},          {7, 2, 2},   {6, 3, 2},
                                                {5, 4, 2},    {5, 2, 2, 2},    {4, 3, 2, 2}, {3, 2, 2, 2, 2}};
    std::sort(got.begin(), got.end());
    auto e = expect;
    std::sort(e.begin(), e.end());
    EXPECT_EQ(got, e);
}

TEST(Statistic, Examples) {
    EXPECT_EQ(statistic(part({9, 2}), StatKind::m2rank), 3);
    EXPECT_EQ(statistic(part({4}), StatKind::rank), 3);
    EXPECT_EQ(statistic(part({1, 1, 1, 1}), StatKind::rank), -3);
    EXPECT_EQ(statistic(part({2, 2}), StatKind::crank), 2);
    EXPECT_EQ(statistic(part({3, 1}), StatKind::crank), 0);
    EXPECT_EQ(statistic(part({6, 4, 3}), StatKind::residual_crank2), 3);
    EXPECT_THROW(statistic(part({1}), StatKind::crank), UndefinedStatistic);
    EXPECT_THROW(statistic(part({2, 1}), StatKind::residual_crank2), UndefinedStatistic);
}

TEST(StatTable, Examples) {
    const auto t0 = stat_table(0, StatKind::m2rank);
    EXPECT_EQ(t0.counts, (std::map<long, Integer>{{0, 1}}));
    EXPECT_EQ(stat_table(4, StatKind::rank).total(), 5);
    EXPECT_EQ(stat_table(11, StatKind::m2rank).moment(2), moment_z(Family::R2, 2, 11)[11]);
    EXPECT_THROW(stat_table(1, StatKind::crank), UndefinedStatistic);
}

TEST(StatTable, RecurrenceMatchesEnumeration) {
    for (auto kind : {StatKind::rank, StatKind::m2rank, StatKind::overline_rank}) {
        const auto rows = rank_type_rows(kind, 18);
        for (long n = 0; n <= 18; ++n) {
            SCOPED_TRACE(std::string(kind_name(kind)) + " n=" + std::to_string(n));
            EXPECT_EQ(rows[static_cast<std::size_t>(n)], stat_table_enumerated(n, kind).counts);
        }
    }
}

TEST(StatTable, TablesAreSymmetric) {
    for (auto kind : {StatKind::rank, StatKind::crank, StatKind::m2rank, StatKind::overline_rank,
                      StatKind::residual_crank2}) {
        for (long n = 2; n <= 16; ++n) EXPECT_TRUE(stat_table(n, kind).is_symmetric()) << kind_name(kind) << ' ' << n;
    }
}

TEST(Spt, Values) {
    EXPECT_EQ(mspt(11), 15);
    EXPECT_EQ(mspt(1), 0);
    EXPECT_EQ(mspt(4), 3);
    EXPECT_EQ(spt_classic(4), 10);
    EXPECT_EQ(spt_classic(1), 1);
    EXPECT_EQ(spt_classic(5), 14);
    EXPECT_EQ(mspt2(5), 0);
    EXPECT_EQ(mspt2(2), 0);
}

TEST(Spt, GeneratingSeriesMatchEnumeration) {
    const auto a = mspt_series(30), b = mspt2_series(30);
    for (long n = 0; n <= 30; ++n) {
        EXPECT_EQ(a[static_cast<std::size_t>(n)], mspt(n)) << n;
        EXPECT_EQ(b[static_cast<std::size_t>(n)], mspt2(n)) << n;
    }
}

TEST(GkMoment, Examples) {
    EXPECT_EQ(g_poly(2, 3), 72);
    EXPECT_EQ(g_poly(1, -5), 25);
    for (long n = 2; n <= 25; ++n) {
        const auto r2 = stat_table(n, StatKind::m2rank);
        EXPECT_EQ(gk_moment(r2, 1) * 2, r2.moment(2));
    }
}

TEST(GkMoment, SmallestPartsFromMoments) {
    const auto m2 = moment_z(Family::C2, 2, 25);
    for (long n = 2; n <= 25; ++n) {
        // the bivariate residual crank moment includes the convention cells, so use it here
        const Integer mu = m2[static_cast<std::size_t>(n)] / 2;
        const Integer eta = gk_moment(stat_table(n, StatKind::m2rank), 1);
        EXPECT_EQ(mu - eta, mspt(n)) << n;
    }
}

TEST(GkMoment, DivisibilityIsChecked) {
    StatTable t{StatKind::rank, 1, {{1, 1}}};
    EXPECT_THROW(gk_moment(t, 1), DivisibilityViolation);
}

TEST(TableText, Format) {
    std::ostringstream out;
    write_table(out, stat_table(3, StatKind::rank));
    EXPECT_EQ(out.str(), "rank 3 -2 1\nrank 3 0 1\nrank 3 2 1\n");
}
