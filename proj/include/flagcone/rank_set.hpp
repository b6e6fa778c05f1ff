#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "flagcone/error.hpp"

namespace flagcone {

/// A set of ranks S contained in [1,n], stored as a bitset (bit s-1 holds rank s).
///
/// The raw bit pattern doubles as the coordinate index of every vector in the
/// library, so "ascending bitset order" means ascending `bits()`.
class RankSet {
public:
    static constexpr int max_letter_supported = 31;

    constexpr RankSet() = default;
    constexpr explicit RankSet(std::uint32_t bits) : bits_(bits) {}

    constexpr RankSet(std::initializer_list<int> letters) {
        for (int s : letters) insert_checked(s);
    }

    static RankSet from_letters(const std::vector<int>& letters) {
        RankSet out;
        for (int s : letters) out.insert_checked(s);
        return out;
    }

    /// The interval [lo,hi] as a set; empty when lo > hi.
    static constexpr RankSet range(int lo, int hi) {
        if (lo < 1) lo = 1;
        if (hi < lo) return RankSet{};
        std::uint32_t upto_hi = hi >= 32 ? ~0u : ((1u << hi) - 1u);
        std::uint32_t below_lo = (1u << (lo - 1)) - 1u;
        return RankSet(upto_hi & ~below_lo);
    }

    static constexpr RankSet full(int n) { return range(1, n); }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }

    constexpr bool contains(int s) const {
        return s >= 1 && s <= 32 && ((bits_ >> (s - 1)) & 1u) != 0;
    }

    constexpr RankSet with(int s) const { return RankSet(bits_ | bit(s)); }
    constexpr RankSet without(int s) const { return RankSet(bits_ & ~bit(s)); }

    /// Largest letter, or 0 for the empty set.
    constexpr int max_letter() const { return bits_ == 0 ? 0 : 32 - std::countl_zero(bits_); }
    /// Smallest letter, or 0 for the empty set.
    constexpr int min_letter() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

    constexpr bool subset_of(RankSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(RankSet other) const { return (bits_ & other.bits_) != 0; }
    constexpr bool within(int n) const { return subset_of(full(n)); }

    constexpr RankSet operator|(RankSet o) const { return RankSet(bits_ | o.bits_); }
    constexpr RankSet operator&(RankSet o) const { return RankSet(bits_ & o.bits_); }
    constexpr RankSet minus(RankSet o) const { return RankSet(bits_ & ~o.bits_); }

    /// {s + k : s in S}; k may be negative as long as no letter drops below 1.
    constexpr RankSet translated(int k) const {
        return k >= 0 ? RankSet(bits_ << k) : RankSet(bits_ >> (-k));
    }

    /// {n+1-s : s in S}, the rank reflection used by poset duality.
    constexpr RankSet reflected(int n) const {
        RankSet out;
        for (int s = 1; s <= n; ++s)
            if (contains(s)) out.bits_ |= bit(n + 1 - s);
        return out;
    }

    std::vector<int> letters() const {
        std::vector<int> out;
        for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    /// "{1,3}" style label; "{}" for the empty set.
    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int s : letters()) {
            if (!first) out += ',';
            out += std::to_string(s);
            first = false;
        }
        out += '}';
        return out;
    }

    /// Parses "{1,3}" / "{}" (whitespace tolerated).
    static RankSet parse(std::string_view text) {
        std::string_view t = trim(text);
        if (t.size() < 2 || t.front() != '{' || t.back() != '}')
            fail(ErrorKind::ParseError, "rank set must look like {1,2}: '" + std::string(text) + "'");
        t = trim(t.substr(1, t.size() - 2));
        RankSet out;
        while (!t.empty()) {
            std::size_t comma = t.find(',');
            std::string_view tok = trim(t.substr(0, comma));
            if (tok.empty()) fail(ErrorKind::ParseError, "empty letter in '" + std::string(text) + "'");
            int value = 0;
            for (char c : tok) {
                if (c < '0' || c > '9')
                    fail(ErrorKind::ParseError, "bad letter in '" + std::string(text) + "'");
                value = value * 10 + (c - '0');
                if (value > max_letter_supported)
                    fail(ErrorKind::RankSetOutOfRange, "letter too large in '" + std::string(text) + "'");
            }
            if (value < 1) fail(ErrorKind::RankSetOutOfRange, "letters start at 1");
            out = out.with(value);
            if (comma == std::string_view::npos) break;
            t = t.substr(comma + 1);
        }
        return out;
    }

    friend constexpr auto operator<=>(RankSet, RankSet) = default;

private:
    static constexpr std::uint32_t bit(int s) { return 1u << (s - 1); }

    constexpr void insert_checked(int s) {
        if (s < 1 || s > max_letter_supported)
            fail(ErrorKind::RankSetOutOfRange, "letter " + std::to_string(s) + " outside [1,31]");
        bits_ |= bit(s);
    }

    static constexpr std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    }

    std::uint32_t bits_ = 0;
};

/// Calls fn(S) for every subset S of [1,n] in ascending bitset order.
template <class Fn>
void for_each_subset(int n, Fn&& fn) {
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t b = 0; b < count; ++b) fn(RankSet(static_cast<std::uint32_t>(b)));
}

} // namespace flagcone

template <>
struct std::hash<flagcone::RankSet> {
    std::size_t operator()(flagcone::RankSet s) const noexcept { return std::hash<std::uint32_t>{}(s.bits()); }
};
