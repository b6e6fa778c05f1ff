#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flagcone/error.hpp"
#include "flagcone/rank_set.hpp"

namespace flagcone {

/// Closed integer interval [lo,hi] of ranks.
struct Interval {
    int lo = 1;
    int hi = 1;

    RankSet as_set() const { return RankSet::range(lo, hi); }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool contains(int s) const { return lo <= s && s <= hi; }

    std::string to_string() const {
        return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
    }

    friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// A deduplicated set of intervals on [1, ambient_n], kept sorted by (lo, hi).
class IntervalSystem {
public:
    IntervalSystem() = default;

    explicit IntervalSystem(int ambient_n, std::vector<Interval> intervals = {})
        : n_(ambient_n), intervals_(std::move(intervals)) {
        if (n_ < 0 || n_ > RankSet::max_letter_supported)
            fail(ErrorKind::AmbientTooLarge, "ambient n=" + std::to_string(n_) + " unsupported");
        for (const Interval& iv : intervals_) {
            if (iv.lo < 1 || iv.hi < iv.lo || iv.hi > n_)
                fail(ErrorKind::IntervalOutOfRange,
                     iv.to_string() + " is not a nonempty interval of [1," + std::to_string(n_) + "]");
        }
        std::sort(intervals_.begin(), intervals_.end());
        intervals_.erase(std::unique(intervals_.begin(), intervals_.end()), intervals_.end());
    }

    int ambient_n() const { return n_; }
    const std::vector<Interval>& intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }
    bool empty() const { return intervals_.empty(); }

    /// Literal syntax: "[1,2]+[2,3]", "[2]" for [2,2], "empty" for no intervals.
    std::string to_string() const {
        if (intervals_.empty()) return "empty";
        std::string out;
        for (std::size_t i = 0; i < intervals_.size(); ++i) {
            if (i != 0) out += '+';
            out += intervals_[i].to_string();
        }
        return out;
    }

    static IntervalSystem parse(int ambient_n, std::string_view text);

    friend bool operator==(const IntervalSystem&, const IntervalSystem&) = default;

    /// Lexicographic on the sorted interval lists (ambient first).
    friend auto operator<=>(const IntervalSystem& a, const IntervalSystem& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.intervals_.begin(), a.intervals_.end(),
                                                      b.intervals_.begin(), b.intervals_.end());
    }

private:
    int n_ = 0;
    std::vector<Interval> intervals_;
};

namespace detail {

inline std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline int parse_small_int(std::string_view tok, std::string_view context) {
    tok = trim_view(tok);
    if (tok.empty() || tok.size() > 9) fail(ErrorKind::ParseError, "bad integer in '" + std::string(context) + "'");
    int v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') fail(ErrorKind::ParseError, "bad integer in '" + std::string(context) + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

} // namespace detail

inline IntervalSystem IntervalSystem::parse(int ambient_n, std::string_view text) {
    std::string_view t = detail::trim_view(text);
    if (t == "empty" || t.empty()) return IntervalSystem(ambient_n);
    std::vector<Interval> out;
    while (true) {
        std::size_t plus = t.find('+');
        std::string_view tok = detail::trim_view(t.substr(0, plus));
        if (tok.size() < 3 || tok.front() != '[' || tok.back() != ']')
            fail(ErrorKind::ParseError, "interval must look like [a,b]: '" + std::string(tok) + "'");
        std::string_view body = tok.substr(1, tok.size() - 2);
        std::size_t comma = body.find(',');
        Interval iv;
        iv.lo = detail::parse_small_int(body.substr(0, comma), tok);
        iv.hi = comma == std::string_view::npos ? iv.lo : detail::parse_small_int(body.substr(comma + 1), tok);
        out.push_back(iv);
        if (plus == std::string_view::npos) break;
        t = t.substr(plus + 1);
    }
    return IntervalSystem(ambient_n, std::move(out));
}

/// Upward-closed family of subsets of [1, ambient_n], listed in ascending bitset order.
struct BlockerFamily {
    int ambient_n = 0;
    std::vector<RankSet> members;

    bool contains(RankSet s) const { return std::binary_search(members.begin(), members.end(), s); }
    friend bool operator==(const BlockerFamily&, const BlockerFamily&) = default;
};

inline constexpr int max_enumerable_ambient = 20;

/// True iff S meets every interval of I (vacuously true for I = empty).
inline bool is_blocker(RankSet s, const IntervalSystem& system) {
    for (const Interval& iv : system.intervals())
        if (!s.intersects(iv.as_set())) return false;
    return true;
}

namespace detail {

inline void require_enumerable(int n) {
    if (n > max_enumerable_ambient)
        fail(ErrorKind::AmbientTooLarge, "n=" + std::to_string(n) + " exceeds the enumeration bound 20");
}

} // namespace detail

inline BlockerFamily blockers(const IntervalSystem& system) {
    detail::require_enumerable(system.ambient_n());
    BlockerFamily out{system.ambient_n(), {}};
    for_each_subset(system.ambient_n(), [&](RankSet s) {
        if (is_blocker(s, system)) out.members.push_back(s);
    });
    return out;
}

/// I+ : every subset of [1,n] containing some interval of I.
inline std::vector<RankSet> dual_ideal(const IntervalSystem& system) {
    detail::require_enumerable(system.ambient_n());
    std::vector<RankSet> out;
    for_each_subset(system.ambient_n(), [&](RankSet t) {
        for (const Interval& iv : system.intervals()) {
            if (iv.as_set().subset_of(t)) {
                out.push_back(t);
                return;
            }
        }
    });
    return out;
}

/// Removes every interval that contains another one.
inline IntervalSystem minimal_intervals(const IntervalSystem& system) {
    std::vector<Interval> keep;
    const auto& ivs = system.intervals();
    for (const Interval& a : ivs) {
        bool minimal = std::none_of(ivs.begin(), ivs.end(),
                                    [&](const Interval& b) { return b != a && a.contains(b); });
        if (minimal) keep.push_back(a);
    }
    return IntervalSystem(system.ambient_n(), std::move(keep));
}

inline bool blocker_equal(const IntervalSystem& a, const IntervalSystem& b) {
    if (a.ambient_n() != b.ambient_n())
        fail(ErrorKind::AmbientMismatch, "ambient " + std::to_string(a.ambient_n()) + " vs " +
                                             std::to_string(b.ambient_n()));
    return minimal_intervals(a) == minimal_intervals(b);
}

/// (1/(n+1)) * binom(2(n+1), n), the number of interval antichains on [1,n].
inline std::uint64_t catalan_facet_count(int n) {
    // binom(2n+2, n) / (n+1), computed incrementally to stay in 64 bits for n <= 30
    std::uint64_t c = 1;
    const int top = 2 * n + 2;
    for (int i = 1; i <= n; ++i) c = c * static_cast<std::uint64_t>(top - n + i) / static_cast<std::uint64_t>(i);
    return c / static_cast<std::uint64_t>(n + 1);
}

inline constexpr int max_antichain_ambient = 14;

/// Every antichain of intervals on [1,n], one per blocker class, sorted lexicographically.
///
/// A dual ideal of intervals is a staircase-bounded Ferrers shape: for each lower end i it
/// holds [i,j] exactly when j >= c_i, with i <= c_1 <= c_2 <= ... <= c_n <= n+1 (c_i = n+1
/// meaning no interval starts at i). Walking these threshold sequences is walking the
/// lattice paths under the staircase; the antichain is the set of minimal intervals.
inline std::vector<IntervalSystem> enumerate_antichains(int n) {
    if (n < 0) fail(ErrorKind::IntervalOutOfRange, "n must be nonnegative");
    if (n > max_antichain_ambient)
        fail(ErrorKind::AmbientTooLarge, "n=" + std::to_string(n) + " exceeds 14");
    std::vector<IntervalSystem> out;
    out.reserve(static_cast<std::size_t>(catalan_facet_count(n)));
    std::vector<int> threshold(static_cast<std::size_t>(n) + 2, 0);
    std::vector<Interval> minimal;

    auto emit = [&]() {
        minimal.clear();
        for (int i = 1; i <= n; ++i) {
            int c = threshold[static_cast<std::size_t>(i)];
            if (c > n) continue;
            // [i,c] is minimal unless [i+1,c] is also in the ideal
            bool shrinkable = c >= i + 1 && threshold[static_cast<std::size_t>(i) + 1] <= c;
            if (!shrinkable) minimal.push_back({i, c});
        }
        out.emplace_back(n, minimal);
    };

    auto recurse = [&](auto&& self, int i, int lower) -> void {
        if (i > n) {
            emit();
            return;
        }
        for (int c = std::max(lower, i); c <= n + 1; ++c) {
            threshold[static_cast<std::size_t>(i)] = c;
            self(self, i + 1, c);
        }
    };
    recurse(recurse, 1, 1);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace flagcone
