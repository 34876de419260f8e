#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fkm/core.hpp"

namespace fkm {
namespace {

TEST(TimeSeries, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(TimeSeries(std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW((TimeSeries{1.0, std::numeric_limits<double>::quiet_NaN()}),
                 std::invalid_argument);
    EXPECT_THROW((TimeSeries{std::numeric_limits<double>::infinity()}), std::invalid_argument);
    EXPECT_NO_THROW((TimeSeries{-0.0, 1e300}));
}

TEST(Canonicalize, Examples) {
    EXPECT_EQ(canonicalize({1, 1, 2, 2, 1}), (TimeSeries{1, 2, 1}));
    EXPECT_EQ(canonicalize({5}), (TimeSeries{5}));
    EXPECT_EQ(canonicalize({3, 3, 3, 3}), (TimeSeries{3}));
}

TEST(RankSequence, Examples) {
    EXPECT_EQ(rank_sequence({2.5, 7.0, 2.5}), (RankSequence{{1, 2, 1}, 2}));
    EXPECT_EQ(rank_sequence({9}), (RankSequence{{1}, 1}));
    EXPECT_EQ(rank_sequence({1, 3, 2}), (RankSequence{{1, 3, 2}, 3}));
}

TEST(ApplyValues, Examples) {
    const std::vector<double> v1{10, 20};
    EXPECT_EQ(apply_values({{1, 2, 1}, 2}, v1), (TimeSeries{10, 20, 10}));
    const std::vector<double> v2{-4};
    EXPECT_EQ(apply_values({{1}, 1}, v2), (TimeSeries{-4}));
    const std::vector<double> v3{0, 0.5, 9};
    EXPECT_EQ(apply_values({{1, 3, 2}, 3}, v3), (TimeSeries{0, 9, 0.5}));
}

TEST(ApplyValues, RejectsBadValueLists) {
    const std::vector<double> short_list{1};
    EXPECT_THROW(apply_values({{1, 2}, 2}, short_list), std::invalid_argument);
    const std::vector<double> unsorted{2, 1};
    EXPECT_THROW(apply_values({{1, 2}, 2}, unsorted), std::invalid_argument);
}

TEST(CollapseRuns, RemovesConsecutiveDuplicates) {
    EXPECT_EQ(collapse_runs({{1, 1, 2, 2, 1, 3, 3}, 3}), (RankSequence{{1, 2, 1, 3}, 3}));
}

TEST(Traversal, Validity) {
    EXPECT_TRUE(is_valid_traversal({{{0, 0}, {1, 0}, {1, 1}}}, 2, 2));
    EXPECT_TRUE(is_valid_traversal({{{0, 0}, {1, 1}}}, 2, 2));
    EXPECT_FALSE(is_valid_traversal({{{0, 0}, {1, 1}}}, 3, 2));
    EXPECT_FALSE(is_valid_traversal({{{0, 0}, {0, 0}, {1, 1}}}, 2, 2));
    EXPECT_FALSE(is_valid_traversal({{{0, 1}, {1, 1}}}, 2, 2));
    EXPECT_FALSE(is_valid_traversal({{}}, 1, 1));
}

TEST(CoreProperties, RandomSeries) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(1, 12);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> v(len(rng));
        for (auto& e : v) e = 0.5 * val(rng);
        const TimeSeries x(v);

        const TimeSeries c = canonicalize(x);
        EXPECT_EQ(canonicalize(c), c);
        EXPECT_EQ(c.front(), x.front());
        EXPECT_EQ(c.back(), x.back());
        EXPECT_EQ(distinct_values(c), distinct_values(x));

        const RankSequence rs = rank_sequence(x);
        EXPECT_TRUE(rs.is_surjective());
        EXPECT_EQ(apply_values(rs, distinct_values(x)), x);

        const std::vector<double> shifted = [&] {
            std::vector<double> out;
            for (double d : distinct_values(x)) out.push_back(3 * d + 100);
            return out;
        }();
        EXPECT_EQ(rank_sequence(apply_values(rs, shifted)), rs);
    }
}

}  // namespace
}  // namespace fkm
