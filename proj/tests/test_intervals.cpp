#include <gtest/gtest.h>

#include <random>

#include <flagcone/intervals.hpp>

#include "oracles.hpp"
#include "reference_data.hpp"

using namespace flagcone;

TEST(Intervals, ParseAndPrint) {
    auto s = IntervalSystem::parse(3, "[2,3] + [1,2]");
    EXPECT_EQ(s.to_string(), "[1,2]+[2,3]");
    EXPECT_EQ(IntervalSystem::parse(3, "[2]").intervals().front(), (Interval{2, 2}));
    EXPECT_TRUE(IntervalSystem::parse(4, "empty").empty());
    EXPECT_EQ(IntervalSystem::parse(3, "[1,2]+[1,2]").size(), 1u);
    EXPECT_THROW(IntervalSystem::parse(3, "[1,4]"), Error);
    EXPECT_THROW(IntervalSystem::parse(3, "[2,1]"), Error);
    EXPECT_THROW(IntervalSystem::parse(3, "1,2"), Error);
    try {
        IntervalSystem(2, {{0, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IntervalOutOfRange);
    }
}

TEST(Intervals, BlockerBasics) {
    auto sys = IntervalSystem::parse(3, "[1,2]+[2,3]");
    EXPECT_TRUE(is_blocker(RankSet{2}, sys));
    EXPECT_FALSE(is_blocker(RankSet{1}, sys));
    EXPECT_TRUE(is_blocker(RankSet{}, IntervalSystem(3)));
    EXPECT_EQ(blockers(IntervalSystem(3)).members.size(), 8u);

    // exhaustive subset check
    std::vector<RankSet> expected;
    for (std::uint32_t b = 0; b < 8; ++b)
        if (oracle::blocks(b, {{1, 2}, {2, 3}})) expected.push_back(RankSet(b));
    EXPECT_EQ(blockers(sys).members, expected);
    EXPECT_EQ(expected, (std::vector<RankSet>{{2}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}}));
}

TEST(Intervals, FullSetBlocksEverything) {
    for (int n = 1; n <= 5; ++n)
        for (const auto& sys : enumerate_antichains(n)) EXPECT_TRUE(is_blocker(RankSet::full(n), sys));
}

TEST(Intervals, DualIdeal) {
    EXPECT_EQ(dual_ideal(IntervalSystem::parse(2, "[1]")), (std::vector<RankSet>{{1}, {1, 2}}));
    // the dual ideal of {[1,2],[2,3],[4]} restricted to intervals
    auto sys = IntervalSystem::parse(4, "[1,2]+[2,3]+[4]");
    auto ideal = dual_ideal(sys);
    std::vector<std::pair<int, int>> marked;
    for (auto [lo, hi] : oracle::all_intervals(4))
        if (std::binary_search(ideal.begin(), ideal.end(), RankSet::range(lo, hi))) marked.emplace_back(lo, hi);
    EXPECT_EQ(marked, (oracle::Intervals{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {4, 4}}));
    EXPECT_THROW(dual_ideal(IntervalSystem(21)), Error);
}

TEST(Intervals, DoubleBlockerIsDualIdeal) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        oracle::Intervals pick;
        for (auto iv : oracle::all_intervals(n))
            if (rng() % 3 == 0) pick.push_back(iv);
        auto sys = oracle::to_system(n, pick);
        auto b = blockers(sys);
        // B(B(I)) computed directly on sets
        std::vector<RankSet> bb;
        for_each_subset(n, [&](RankSet t) {
            bool all = std::all_of(b.members.begin(), b.members.end(), [&](RankSet s) { return t.intersects(s); });
            if (all) bb.push_back(t);
        });
        EXPECT_EQ(bb, dual_ideal(sys));
        // B(I) = B(I+)
        for (RankSet s : b.members)
            for (RankSet t : dual_ideal(sys)) EXPECT_TRUE(s.intersects(t));
    }
}

TEST(Intervals, BlockerFamilyIsUpwardClosed) {
    for (int n = 1; n <= 4; ++n)
        for (const auto& sys : enumerate_antichains(n)) {
            auto b = blockers(sys);
            for (RankSet s : b.members)
                for (int j = 1; j <= n; ++j) EXPECT_TRUE(b.contains(s.with(j)));
        }
}

TEST(Intervals, MinimalIntervals) {
    EXPECT_EQ(minimal_intervals(IntervalSystem::parse(3, "[1,3]+[2,3]")), IntervalSystem::parse(3, "[2,3]"));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        oracle::Intervals pick;
        for (auto iv : oracle::all_intervals(n))
            if (rng() % 4 == 0) pick.push_back(iv);
        auto sys = oracle::to_system(n, pick);
        auto m = minimal_intervals(sys);
        EXPECT_EQ(minimal_intervals(m), m);
        EXPECT_EQ(blockers(m), blockers(sys));
        EXPECT_EQ(oracle::to_pairs(m), oracle::minimal(pick));
        EXPECT_TRUE(blocker_equal(sys, m));
    }
}

TEST(Intervals, BlockerEquality) {
    EXPECT_FALSE(blocker_equal(IntervalSystem::parse(3, "[1,3]"), IntervalSystem::parse(3, "[1,3]+[1,2]")));
    EXPECT_TRUE(blocker_equal(IntervalSystem::parse(3, "[2]+[1,3]"), IntervalSystem::parse(3, "[2]")));
    try {
        blocker_equal(IntervalSystem(2), IntervalSystem(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::AmbientMismatch);
    }
}

// B(I1) subset of B(I2) iff every interval of I2 contains one of I1.
TEST(Intervals, ContainmentLemma) {
    for (int n = 1; n <= 3; ++n) {
        auto systems = enumerate_antichains(n);
        for (const auto& a : systems)
            for (const auto& b : systems) {
                auto ba = blockers(a), bb = blockers(b);
                bool subset = std::includes(bb.members.begin(), bb.members.end(), ba.members.begin(), ba.members.end());
                bool covered = std::all_of(b.intervals().begin(), b.intervals().end(), [&](const Interval& j2) {
                    return std::any_of(a.intervals().begin(), a.intervals().end(),
                                       [&](const Interval& j1) { return j2.contains(j1); });
                });
                EXPECT_EQ(subset, covered) << a.to_string() << " vs " << b.to_string();
            }
    }
}

TEST(Intervals, AntichainsMatchBruteForce) {
    for (int n = 0; n <= 4; ++n) {
        auto got = enumerate_antichains(n);
        std::set<oracle::Intervals> seen;
        for (const auto& s : got) seen.insert(oracle::to_pairs(s));
        EXPECT_EQ(seen.size(), got.size());
        EXPECT_EQ(seen, oracle::antichains(n));
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
    }
}

TEST(Intervals, AntichainCountIsCatalan) {
    // binom(2n+2, n+1) / (n+2), computed independently
    auto catalan = [](int n) {
        Integer c;
        mpz_bin_uiui(c.get_mpz_t(), 2 * n + 2, n + 1);
        return Integer(c / (n + 2));
    };
    for (int n = 0; n <= 8; ++n) {
        auto systems = enumerate_antichains(n);
        EXPECT_EQ(Integer(std::to_string(systems.size())), catalan(n));
        EXPECT_EQ(Integer(std::to_string(catalan_facet_count(n))), catalan(n));
        std::set<BlockerFamily, bool (*)(const BlockerFamily&, const BlockerFamily&)> distinct(
            [](const BlockerFamily& a, const BlockerFamily& b) { return a.members < b.members; });
        if (n <= 6)
            for (const auto& s : systems) distinct.insert(blockers(s));
        if (n <= 6) EXPECT_EQ(distinct.size(), systems.size());
    }
    EXPECT_EQ(enumerate_antichains(1).size(), 2u);
    EXPECT_EQ(enumerate_antichains(5).size(), 132u);
    EXPECT_THROW(enumerate_antichains(15), Error);
}

TEST(Intervals, RankFourAntichainsAreTheTableSystems) {
    std::set<IntervalSystem> expected;
    for (const auto& [text, value] : reference::banker_table) expected.insert(IntervalSystem::parse(3, text));
    auto got = enumerate_antichains(3);
    EXPECT_EQ(std::set<IntervalSystem>(got.begin(), got.end()), expected);
    EXPECT_EQ(got.size(), 14u);
}
