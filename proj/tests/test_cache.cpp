#include <gtest/gtest.h>

#include <filesystem>

#include <qmoments/cache.hpp>
#include <qmoments/standard_forms.hpp>

using namespace qmoments;
namespace fs = std::filesystem;

class CacheTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("qmoments-cache-test-" + std::to_string(::getpid()) + "-" +
               ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    fs::path dir;
};

TEST_F(CacheTest, RoundTripIsBitIdentical) {
    const SeriesCache cache(dir);
    const auto key = SeriesCache::make_key(prefactor_A_spec().to_string(), 200);
    const auto s = prefactor_A(200);
    EXPECT_FALSE(cache.load_q(key).has_value());
    cache.store(key, s);
    const auto back = cache.load_q(key);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, s);
    EXPECT_EQ(*cache.load_text(key), to_text(s));
}

TEST_F(CacheTest, ResidueSeries) {
    const SeriesCache cache(dir);
    const auto s = expand_product(form_F_spec(), 300, ResidueRing(9));
    cache.store("F mod 9 prec=300", s);
    EXPECT_EQ(*cache.load_zm("F mod 9 prec=300"), s);
}

TEST_F(CacheTest, NoTemporaryFilesRemain) {
    const SeriesCache cache(dir);
    cache.store("a prec=5", QSeries::one(5));
    cache.store("a prec=5", QSeries::one(5));
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        ++files;
        EXPECT_EQ(e.path().extension(), ".series");
    }
    EXPECT_EQ(files, 1u);
}

TEST_F(CacheTest, KeyMismatchIsAMiss) {
    const SeriesCache cache(dir);
    cache.store("a prec=5", QSeries::one(5));
    const auto path = cache.path_for("a prec=5");
    const auto other = cache.path_for("b prec=5");
    fs::copy_file(path, other);
    EXPECT_FALSE(cache.load_q("b prec=5").has_value());
}

TEST_F(CacheTest, ListAndClear) {
    const SeriesCache cache(dir);
    cache.store("b prec=3", QSeries::one(3));
    cache.store("a prec=3", QSeries::one(3));
    const auto entries = cache.list();
    ASSERT_EQ(entries.size(), 2u);
    EXPECT_EQ(entries[0].key, "a prec=3");
    EXPECT_EQ(entries[1].key, "b prec=3");
    EXPECT_EQ(cache.clear(), 2u);
    EXPECT_TRUE(cache.list().empty());
}

TEST_F(CacheTest, KeysAreCanonical) {
    EXPECT_EQ(SeriesCache::make_key("x", 7), "x prec=7");
    const SeriesCache cache(dir);
    EXPECT_EQ(cache.path_for("x prec=7"), cache.path_for("x prec=7"));
    EXPECT_NE(cache.path_for("x prec=7"), cache.path_for("x prec=8"));
}
