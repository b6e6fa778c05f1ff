#pragma once

// Published values used by the unit and acceptance suites.

#include <string>
#include <utility>
#include <vector>

#include <flagcone.hpp>

namespace reference {

/// The 14 interval antichains on [1,3] with the published value of f13 - f1 + f2 - f3 on each.
inline const std::vector<std::pair<std::string, int>> banker_table = {
    {"empty", 0},       {"[1,3]", 0},     {"[1,2]", 1},     {"[2,3]", 1},     {"[1]", 0},
    {"[1,2]+[2,3]", 1}, {"[3]", 0},       {"[1]+[2,3]", 1}, {"[2]", 1},       {"[1,2]+[3]", 1},
    {"[1]+[2]", 0},     {"[1]+[3]", 1},   {"[2]+[3]", 0},   {"[1]+[2]+[3]", 0},
};

/// The one published entry that disagrees with direct summation: both {2} and {1,3}
/// block [1,2]+[2,3], so the sum is a_2 + a_13 = 2, not 1.
inline const std::string banker_table_misprint = "[1,2]+[2,3]";

inline flagcone::Form form(int rank, const std::vector<std::pair<std::vector<int>, int>>& terms) {
    flagcone::Form f(rank);
    for (const auto& [letters, c] : terms) f.add(flagcone::RankSet::from_letters(letters), c);
    return f;
}

inline flagcone::Form banker() { return form(4, {{{1, 3}, 1}, {{1}, -1}, {{2}, 1}, {{3}, -1}}); }

/// Extremes of rank 3.
inline std::vector<flagcone::Form> rank3_extremes() {
    return {
        form(3, {{{}, 1}}),
        form(3, {{{1}, 1}, {{}, -1}}),
        form(3, {{{2}, 1}, {{}, -1}}),
        form(3, {{{1, 2}, 1}, {{1}, -1}}),
        form(3, {{{1, 2}, 1}, {{2}, -1}}),
    };
}

/// The seven rank-5 extremes not reachable from lower ranks.
inline std::vector<flagcone::Form> rank5_new() {
    return {
        form(5, {{{1, 3, 4}, 1}, {{1, 4}, -1}, {{2, 4}, 1}, {{3, 4}, -1}, {{2}, -1}, {{3}, 1}}),
        form(5, {{{1, 2, 4}, 1}, {{1, 2}, -1}, {{1, 3}, 1}, {{1, 4}, -1}, {{2}, 1}, {{3}, -1}}),
        form(5, {{{1, 2, 3, 4}, 1}, {{1, 2, 3}, -1}, {{2, 3, 4}, -1}, {{1, 3}, 1},
                 {{1, 4}, -1}, {{2, 3}, 1}, {{2, 4}, 1}, {{2}, -1}}),
        form(5, {{{1, 2, 3, 4}, 1}, {{1, 2, 3}, -1}, {{2, 3, 4}, -1}, {{1, 3}, 1},
                 {{1, 4}, -1}, {{2, 3}, 1}, {{2, 4}, 1}, {{3}, -1}}),
        form(5, {{{1, 2, 4}, 1}, {{2, 3, 4}, 1}, {{1, 2}, -1}, {{1, 3}, 1}, {{1, 4}, -1},
                 {{2, 3}, -1}, {{2, 4}, -1}, {{2}, 1}}),
        form(5, {{{1, 2, 3}, 1}, {{1, 3, 4}, 1}, {{3, 4}, -1}, {{2, 4}, 1}, {{1, 4}, -1},
                 {{2, 3}, -1}, {{1, 3}, -1}, {{3}, 1}}),
        form(5, {{{1, 3, 4}, 1}, {{1, 2, 4}, 1}, {{1, 3}, -1}, {{1, 4}, -1}, {{2, 3}, 1}, {{2, 4}, -1}}),
    };
}

/// Extreme-ray counts of ranks 1..6 and the rank-6 split into new and derived rays.
inline constexpr int extreme_counts[] = {1, 2, 5, 13, 41, 796};
inline constexpr int rank6_new = 665;
inline constexpr int rank6_derived = 131;

} // namespace reference
