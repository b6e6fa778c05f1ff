#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "flagcone/error.hpp"
#include "flagcone/intervals.hpp"
#include "flagcone/numeric.hpp"
#include "flagcone/rank_set.hpp"

namespace flagcone {

using ElementIndex = std::size_t;

/// Unvalidated poset data as read from a file or built by a generator.
struct RawPoset {
    struct Element {
        std::string id;
        int rank = 0;
    };
    std::optional<int> declared_rank;
    std::vector<Element> elements;
    std::vector<std::pair<std::string, std::string>> covers;
};

/// A validated graded poset of rank n+1.
///
/// Elements are indexed in input order. Within each rank the default rank numbering is
/// the input order; `RankNumbering` overrides it per call.
class GradedPoset {
public:
    int rank() const { return rank_; }
    int n() const { return rank_ - 1; }
    std::size_t size() const { return ids_.size(); }

    const std::string& id(ElementIndex x) const { return ids_[x]; }
    int rank_of(ElementIndex x) const { return ranks_[x]; }
    ElementIndex bottom() const { return levels_.front().front(); }
    ElementIndex top() const { return levels_.back().front(); }

    /// Elements of rank r in default numbering order.
    std::span<const ElementIndex> level(int r) const { return levels_[static_cast<std::size_t>(r)]; }
    std::span<const ElementIndex> upper_covers(ElementIndex x) const { return up_[x]; }
    std::span<const ElementIndex> lower_covers(ElementIndex x) const { return down_[x]; }

    std::optional<ElementIndex> find(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// x <= y in the order generated by the covers.
    bool less_equal(ElementIndex x, ElementIndex y) const {
        if (x == y) return true;
        if (ranks_[x] >= ranks_[y]) return false;
        boost::dynamic_bitset<> seen(size());
        std::vector<ElementIndex> stack{x};
        seen.set(x);
        while (!stack.empty()) {
            ElementIndex z = stack.back();
            stack.pop_back();
            for (ElementIndex w : up_[z]) {
                if (w == y) return true;
                if (!seen.test(w) && ranks_[w] < ranks_[y]) {
                    seen.set(w);
                    stack.push_back(w);
                }
            }
        }
        return false;
    }

    bool less(ElementIndex x, ElementIndex y) const { return x != y && less_equal(x, y); }

    RawPoset to_raw() const {
        RawPoset raw;
        raw.declared_rank = rank_;
        for (const auto& lvl : levels_)
            for (ElementIndex x : lvl) raw.elements.push_back({ids_[x], ranks_[x]});
        for (const auto& lvl : levels_)
            for (ElementIndex x : lvl)
                for (ElementIndex y : up_[x]) raw.covers.emplace_back(ids_[x], ids_[y]);
        return raw;
    }

private:
    friend GradedPoset validate(const RawPoset& raw);

    int rank_ = 0;
    std::vector<std::string> ids_;
    std::vector<int> ranks_;
    std::vector<std::vector<ElementIndex>> levels_;
    std::vector<std::vector<ElementIndex>> up_;
    std::vector<std::vector<ElementIndex>> down_;
    std::unordered_map<std::string, ElementIndex> index_;
};

inline GradedPoset validate(const RawPoset& raw) {
    if (raw.elements.empty()) fail(ErrorKind::NoUniqueBottom, "poset has no elements");
    GradedPoset p;
    const std::size_t size = raw.elements.size();
    p.ids_.reserve(size);
    p.ranks_.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        const auto& e = raw.elements[i];
        if (!p.index_.emplace(e.id, i).second) fail(ErrorKind::DuplicateElement, "element '" + e.id + "' repeated");
        p.ids_.push_back(e.id);
        p.ranks_.push_back(e.rank);
    }
    p.up_.assign(size, {});
    p.down_.assign(size, {});
    for (const auto& [lo, hi] : raw.covers) {
        auto a = p.index_.find(lo);
        auto b = p.index_.find(hi);
        if (a == p.index_.end()) fail(ErrorKind::UnknownElement, "cover mentions unknown '" + lo + "'");
        if (b == p.index_.end()) fail(ErrorKind::UnknownElement, "cover mentions unknown '" + hi + "'");
        auto& ups = p.up_[a->second];
        if (std::find(ups.begin(), ups.end(), b->second) != ups.end()) continue;
        ups.push_back(b->second);
        p.down_[b->second].push_back(a->second);
    }

    // Kahn's algorithm; leftovers sit on a directed cycle.
    {
        std::vector<std::size_t> indegree(size);
        for (std::size_t x = 0; x < size; ++x) indegree[x] = p.down_[x].size();
        std::vector<ElementIndex> queue;
        for (std::size_t x = 0; x < size; ++x)
            if (indegree[x] == 0) queue.push_back(x);
        std::size_t processed = 0;
        while (!queue.empty()) {
            ElementIndex x = queue.back();
            queue.pop_back();
            ++processed;
            for (ElementIndex y : p.up_[x])
                if (--indegree[y] == 0) queue.push_back(y);
        }
        if (processed != size) fail(ErrorKind::CyclicCovers, "cover relation contains a cycle");
    }

    int top_rank = 0;
    for (int r : p.ranks_) {
        if (r < 0) fail(ErrorKind::BadCoverRank, "negative rank");
        top_rank = std::max(top_rank, r);
    }
    if (raw.declared_rank) {
        if (top_rank > *raw.declared_rank)
            fail(ErrorKind::NoUniqueTop, "element ranked above the declared rank " + std::to_string(*raw.declared_rank));
        top_rank = *raw.declared_rank;
    }
    if (top_rank < 1) fail(ErrorKind::NoUniqueTop, "rank must be at least 1");
    if (top_rank > RankSet::max_letter_supported + 1)
        fail(ErrorKind::AmbientTooLarge, "rank " + std::to_string(top_rank) + " exceeds 32");
    p.rank_ = top_rank;
    p.levels_.assign(static_cast<std::size_t>(top_rank) + 1, {});
    for (std::size_t x = 0; x < size; ++x) p.levels_[static_cast<std::size_t>(p.ranks_[x])].push_back(x);
    if (p.levels_.front().size() != 1)
        fail(ErrorKind::NoUniqueBottom, std::to_string(p.levels_.front().size()) + " elements of rank 0");
    if (p.levels_.back().size() != 1)
        fail(ErrorKind::NoUniqueTop, std::to_string(p.levels_.back().size()) + " elements of rank " +
                                         std::to_string(top_rank));

    for (std::size_t x = 0; x < size; ++x) {
        for (ElementIndex y : p.up_[x])
            if (p.ranks_[y] != p.ranks_[x] + 1)
                fail(ErrorKind::BadCoverRank, "cover " + p.ids_[x] + " < " + p.ids_[y] + " skips ranks");
    }
    for (std::size_t x = 0; x < size; ++x) {
        if (p.ranks_[x] != top_rank && p.up_[x].empty())
            fail(ErrorKind::DanglingElement, "'" + p.ids_[x] + "' is covered by nothing");
        if (p.ranks_[x] != 0 && p.down_[x].empty())
            fail(ErrorKind::DanglingElement, "'" + p.ids_[x] + "' covers nothing");
    }
    return p;
}

/// Total order on each rank level, used to pick "first atoms".
class RankNumbering {
public:
    /// Default numbering: input order within each rank.
    explicit RankNumbering(const GradedPoset& p) : position_(p.size()) {
        for (int r = 0; r <= p.rank(); ++r) {
            auto lvl = p.level(r);
            for (std::size_t i = 0; i < lvl.size(); ++i) position_[lvl[i]] = i;
        }
    }

    /// Custom numbering; `levels[r]` must be a permutation of the rank-r elements.
    RankNumbering(const GradedPoset& p, const std::vector<std::vector<ElementIndex>>& levels)
        : position_(p.size()) {
        if (levels.size() != static_cast<std::size_t>(p.rank()) + 1)
            fail(ErrorKind::RankSetOutOfRange, "numbering must list every rank level");
        for (int r = 0; r <= p.rank(); ++r) {
            const auto& lvl = levels[static_cast<std::size_t>(r)];
            auto expected = p.level(r);
            std::vector<ElementIndex> a(lvl), b(expected.begin(), expected.end());
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) fail(ErrorKind::RankSetOutOfRange, "numbering of rank " + std::to_string(r) + " is not a permutation");
            for (std::size_t i = 0; i < lvl.size(); ++i) position_[lvl[i]] = i;
        }
    }

    std::size_t position(ElementIndex x) const { return position_[x]; }

private:
    std::vector<std::size_t> position_;
};

/// Flag f-vector indexed by `RankSet::bits()`.
using FlagVector = std::vector<Integer>;

namespace detail {

/// For a base rank r: for each element above r, the set of rank-r elements below it.
class LevelReach {
public:
    LevelReach(const GradedPoset& p, int base) : base_(base), below_(p.size()) {
        auto lvl = p.level(base);
        std::vector<std::size_t> slot(p.size(), 0);
        for (std::size_t i = 0; i < lvl.size(); ++i) slot[lvl[i]] = i;
        for (int t = base + 1; t <= p.rank(); ++t) {
            for (ElementIndex x : p.level(t)) {
                boost::dynamic_bitset<> bits(lvl.size());
                for (ElementIndex y : p.lower_covers(x)) {
                    if (t == base + 1)
                        bits.set(slot[y]);
                    else
                        bits |= below_[y];
                }
                below_[x] = std::move(bits);
            }
        }
    }

    const boost::dynamic_bitset<>& below(ElementIndex x) const { return below_[x]; }
    int base() const { return base_; }

private:
    int base_;
    std::vector<boost::dynamic_bitset<>> below_;
};

/// Pushes chain counts from level `from` up to level `to`.
inline std::vector<Integer> transfer(const GradedPoset& p, const LevelReach& reach, const std::vector<Integer>& counts,
                                     int to) {
    auto target = p.level(to);
    std::vector<Integer> out(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        const auto& bits = reach.below(target[i]);
        for (auto j = bits.find_first(); j != boost::dynamic_bitset<>::npos; j = bits.find_next(j)) out[i] += counts[j];
    }
    return out;
}

} // namespace detail

/// f_S(P): the number of chains of P whose rank set is exactly S.
inline Integer flag_number(const GradedPoset& p, RankSet s) {
    if (!s.within(p.n()))
        fail(ErrorKind::RankSetOutOfRange, s.to_string() + " is not a subset of [1," + std::to_string(p.n()) + "]");
    auto letters = s.letters();
    if (letters.empty()) return 1;
    std::vector<Integer> counts(p.level(letters.front()).size(), Integer(1));
    for (std::size_t t = 1; t < letters.size(); ++t) {
        detail::LevelReach reach(p, letters[t - 1]);
        counts = detail::transfer(p, reach, counts, letters[t]);
    }
    Integer total = 0;
    for (const auto& c : counts) total += c;
    return total;
}

/// All 2^n flag numbers, indexed by `RankSet::bits()`.
inline FlagVector flag_vector(const GradedPoset& p) {
    const int n = p.n();
    if (n > max_enumerable_ambient) fail(ErrorKind::AmbientTooLarge, "rank too large for a full flag vector");
    FlagVector out(std::size_t{1} << n);
    out[0] = 1;
    if (n == 0) return out;
    std::vector<std::optional<detail::LevelReach>> reach(static_cast<std::size_t>(n) + 1);
    for (int r = 1; r < n; ++r) reach[static_cast<std::size_t>(r)].emplace(p, r);

    // Depth-first over sets ordered by their largest letter; `counts` lives on level max(S).
    auto extend = [&](auto&& self, RankSet s, const std::vector<Integer>& counts) -> void {
        Integer total = 0;
        for (const auto& c : counts) total += c;
        out[s.bits()] = total;
        for (int t = s.max_letter() + 1; t <= n; ++t)
            self(self, s.with(t), detail::transfer(p, *reach[static_cast<std::size_t>(s.max_letter())], counts, t));
    };
    for (int first = 1; first <= n; ++first)
        extend(extend, RankSet{first}, std::vector<Integer>(p.level(first).size(), Integer(1)));
    return out;
}

/// Order dual: covers reversed, rank r becomes (n+1) - r.
inline GradedPoset dual(const GradedPoset& p) {
    RawPoset raw;
    raw.declared_rank = p.rank();
    for (int r = p.rank(); r >= 0; --r)
        for (ElementIndex x : p.level(r)) raw.elements.push_back({p.id(x), p.rank() - r});
    for (int r = p.rank(); r >= 0; --r)
        for (ElementIndex x : p.level(r))
            for (ElementIndex y : p.lower_covers(x)) raw.covers.emplace_back(p.id(x), p.id(y));
    return validate(raw);
}

/// A maximal chain p_0 < p_1 < ... < p_{n+1}.
struct MaximalChain {
    std::vector<ElementIndex> elements;
    friend auto operator<=>(const MaximalChain&, const MaximalChain&) = default;
};

inline std::vector<MaximalChain> maximal_chains(const GradedPoset& p) {
    std::vector<MaximalChain> out;
    MaximalChain current;
    auto walk = [&](auto&& self, ElementIndex x) -> void {
        current.elements.push_back(x);
        if (x == p.top()) {
            out.push_back(current);
        } else {
            for (ElementIndex y : p.upper_covers(x)) self(self, y);
        }
        current.elements.pop_back();
    };
    walk(walk, p.bottom());
    return out;
}

/// M_S(i) = min { j in [i, n+1] : j in S or j = n+1 }.
inline int m_operator(RankSet s, int i, int n) {
    for (int j = i; j <= n; ++j)
        if (s.contains(j)) return j;
    return n + 1;
}

/// The atom of [lo, hi] that comes first in the rank numbering.
inline ElementIndex first_atom(const GradedPoset& p, ElementIndex lo, ElementIndex hi, const RankNumbering& numbering) {
    if (!p.less(lo, hi)) fail(ErrorKind::NotComparable, "'" + p.id(lo) + "' is not below '" + p.id(hi) + "'");
    std::optional<ElementIndex> best;
    for (ElementIndex a : p.upper_covers(lo)) {
        if (!p.less_equal(a, hi)) continue;
        if (!best || numbering.position(a) < numbering.position(*best)) best = a;
    }
    return *best;
}

inline ElementIndex first_atom(const GradedPoset& p, ElementIndex lo, ElementIndex hi) {
    return first_atom(p, lo, hi, RankNumbering(p));
}

namespace detail {

/// first[i][j] = phi([p_{i-1}, p_j]) for 1 <= i <= j <= n+1.
inline std::vector<std::vector<ElementIndex>> first_atom_table(const GradedPoset& p, const MaximalChain& c,
                                                               const RankNumbering& numbering) {
    const int top = p.rank();
    std::vector<std::vector<ElementIndex>> first(static_cast<std::size_t>(top) + 1,
                                                 std::vector<ElementIndex>(static_cast<std::size_t>(top) + 1));
    for (int i = 1; i <= top; ++i)
        for (int j = i; j <= top; ++j)
            first[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                first_atom(p, c.elements[static_cast<std::size_t>(i) - 1], c.elements[static_cast<std::size_t>(j)], numbering);
    return first;
}

inline void require_chain(const GradedPoset& p, const MaximalChain& c) {
    const auto& e = c.elements;
    if (e.size() != static_cast<std::size_t>(p.rank()) + 1 || e.front() != p.bottom() || e.back() != p.top())
        fail(ErrorKind::NotComparable, "not a maximal chain of the poset");
    for (std::size_t i = 1; i < e.size(); ++i) {
        auto ups = p.upper_covers(e[i - 1]);
        if (std::find(ups.begin(), ups.end(), e[i]) == ups.end())
            fail(ErrorKind::NotComparable, "consecutive chain entries are not a cover pair");
    }
}

inline bool in_class(const std::vector<std::vector<ElementIndex>>& first, const MaximalChain& c, RankSet s, int n) {
    for (int i = 1; i <= n; ++i) {
        int j = m_operator(s, i, n);
        if (c.elements[static_cast<std::size_t>(i)] != first[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
            return false;
    }
    return true;
}

} // namespace detail

/// I_C = { [i, psi(C,i)] : psi(C,i) != n+1 }, psi(C,i) the largest j with p_i = phi([p_{i-1}, p_j]).
inline IntervalSystem chain_interval_system(const GradedPoset& p, const MaximalChain& c, const RankNumbering& numbering) {
    detail::require_chain(p, c);
    const int n = p.n();
    auto first = detail::first_atom_table(p, c, numbering);
    std::vector<Interval> out;
    for (int i = 1; i <= n; ++i) {
        int psi = i;
        for (int j = n + 1; j >= i; --j) {
            if (first[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == c.elements[static_cast<std::size_t>(i)]) {
                psi = j;
                break;
            }
        }
        if (psi != n + 1) out.push_back({i, psi});
    }
    return IntervalSystem(n, std::move(out));
}

inline IntervalSystem chain_interval_system(const GradedPoset& p, const MaximalChain& c) {
    return chain_interval_system(p, c, RankNumbering(p));
}

/// The classes F_S of maximal chains; `classes[S.bits()]` lists indices into `chains`.
struct ChainPartition {
    std::vector<MaximalChain> chains;
    std::vector<std::vector<std::size_t>> classes;

    std::size_t class_size(RankSet s) const { return classes[s.bits()].size(); }
};

inline ChainPartition partition_classes(const GradedPoset& p, const RankNumbering& numbering) {
    const int n = p.n();
    if (n > max_enumerable_ambient) fail(ErrorKind::AmbientTooLarge, "rank too large to partition");
    ChainPartition out;
    out.chains = maximal_chains(p);
    out.classes.assign(std::size_t{1} << n, {});
    for (std::size_t k = 0; k < out.chains.size(); ++k) {
        auto first = detail::first_atom_table(p, out.chains[k], numbering);
        for_each_subset(n, [&](RankSet s) {
            if (detail::in_class(first, out.chains[k], s, n)) out.classes[s.bits()].push_back(k);
        });
    }
    return out;
}

inline ChainPartition partition_classes(const GradedPoset& p) { return partition_classes(p, RankNumbering(p)); }

/// Parameters of the witness poset P(n, I, N).
struct WitnessSpec {
    int n = 1;
    IntervalSystem intervals;
    int N = 1;
};

inline constexpr std::size_t witness_element_limit = 1'000'000;

/// Number of elements P(n, I, N) would have; saturates at SIZE_MAX.
inline std::size_t witness_size(const WitnessSpec& spec) {
    std::size_t total = 0;
    for (int i = 0; i <= spec.n + 1; ++i) {
        std::size_t level = 1;
        for (const Interval& iv : spec.intervals.intervals()) {
            if (!iv.contains(i)) continue;
            if (level > SIZE_MAX / static_cast<std::size_t>(spec.N)) return SIZE_MAX;
            level *= static_cast<std::size_t>(spec.N);
        }
        if (total > SIZE_MAX - level) return SIZE_MAX;
        total += level;
    }
    return total;
}

namespace detail {

inline void require_witness_spec(const WitnessSpec& spec) {
    if (spec.n < 1) fail(ErrorKind::IntervalOutOfRange, "witness posets need n >= 1");
    if (spec.N < 1) fail(ErrorKind::IntervalOutOfRange, "witness posets need N >= 1");
    for (const Interval& iv : spec.intervals.intervals())
        if (iv.hi > spec.n) fail(ErrorKind::IntervalOutOfRange, iv.to_string() + " leaves [1," + std::to_string(spec.n) + "]");
}

inline std::string witness_token(int rank, const std::vector<int>& coords) {
    std::string id = "(" + std::to_string(rank) + ";";
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (j != 0) id += ',';
        id += coords[j] == 0 ? std::string("*") : std::to_string(coords[j]);
    }
    return id + ")";
}

} // namespace detail

/// Builds P(n, I, N): arrays (i; p_1..p_k) with p_j in [1,N] iff i lies in I_j, else the star.
/// Element ids are the arrays themselves, e.g. "(2;1,*)"; each level lists its arrays in
/// lexicographic order, which is also the default rank numbering.
inline GradedPoset witness_poset(const WitnessSpec& spec) {
    detail::require_witness_spec(spec);
    if (witness_size(spec) > witness_element_limit)
        fail(ErrorKind::PosetTooLarge, "P(n,I,N) would exceed " + std::to_string(witness_element_limit) + " elements");
    const auto& ivs = spec.intervals.intervals();
    const std::size_t k = ivs.size();
    RawPoset raw;
    raw.declared_rank = spec.n + 1;
    std::vector<std::vector<std::vector<int>>> levels(static_cast<std::size_t>(spec.n) + 2);

    // star encoded as 0
    for (int i = 0; i <= spec.n + 1; ++i) {
        std::vector<int> coords(k, 0);
        auto fill = [&](auto&& self, std::size_t j) -> void {
            if (j == k) {
                levels[static_cast<std::size_t>(i)].push_back(coords);
                return;
            }
            if (!ivs[j].contains(i)) {
                coords[j] = 0;
                self(self, j + 1);
                return;
            }
            for (int v = 1; v <= spec.N; ++v) {
                coords[j] = v;
                self(self, j + 1);
            }
        };
        fill(fill, 0);
        for (const auto& c : levels[static_cast<std::size_t>(i)]) raw.elements.push_back({detail::witness_token(i, c), i});
    }

    // (i; p) < (i+1; q) iff every coordinate agrees or one side is the star
    for (int i = 0; i <= spec.n; ++i) {
        for (const auto& lower : levels[static_cast<std::size_t>(i)]) {
            std::vector<int> upper(k, 0);
            auto fill = [&](auto&& self, std::size_t j) -> void {
                if (j == k) {
                    raw.covers.emplace_back(detail::witness_token(i, lower), detail::witness_token(i + 1, upper));
                    return;
                }
                if (!ivs[j].contains(i + 1)) {
                    upper[j] = 0;
                    self(self, j + 1);
                } else if (lower[j] != 0) {
                    upper[j] = lower[j];
                    self(self, j + 1);
                } else {
                    for (int v = 1; v <= spec.N; ++v) {
                        upper[j] = v;
                        self(self, j + 1);
                    }
                }
            };
            fill(fill, 0);
        }
    }
    return validate(raw);
}

/// N^{|{j : S meets I_j}|}, the flag numbers of P(n, I, N) in closed form.
inline FlagVector witness_flag_vector(const WitnessSpec& spec) {
    detail::require_witness_spec(spec);
    detail::require_enumerable(spec.n);
    FlagVector out(std::size_t{1} << spec.n);
    for_each_subset(spec.n, [&](RankSet s) {
        unsigned long hits = 0;
        for (const Interval& iv : spec.intervals.intervals())
            if (s.intersects(iv.as_set())) ++hits;
        Integer v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(spec.N), hits);
        out[s.bits()] = v;
    });
    return out;
}

/// Seeded random graded poset: level widths in [1,4], every element with at least one
/// upper and one lower cover, and each further cover between adjacent levels kept with
/// probability 1/2.
inline GradedPoset random_graded_poset(int rank, std::mt19937_64& rng) {
    if (rank < 1) fail(ErrorKind::RankSetOutOfRange, "rank must be at least 1");
    std::uniform_int_distribution<int> width_dist(1, 4);
    std::bernoulli_distribution coin(0.5);
    std::vector<int> width(static_cast<std::size_t>(rank) + 1, 1);
    for (int r = 1; r < rank; ++r) width[static_cast<std::size_t>(r)] = width_dist(rng);
    auto name = [](int r, int i) { return "x" + std::to_string(r) + "_" + std::to_string(i); };

    RawPoset raw;
    raw.declared_rank = rank;
    for (int r = 0; r <= rank; ++r)
        for (int i = 0; i < width[static_cast<std::size_t>(r)]; ++i) raw.elements.push_back({name(r, i), r});

    for (int r = 0; r < rank; ++r) {
        const int lo_w = width[static_cast<std::size_t>(r)];
        const int hi_w = width[static_cast<std::size_t>(r) + 1];
        std::vector<std::vector<bool>> edge(static_cast<std::size_t>(lo_w), std::vector<bool>(static_cast<std::size_t>(hi_w)));
        for (int i = 0; i < lo_w; ++i)
            edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(std::uniform_int_distribution<int>(0, hi_w - 1)(rng))] = true;
        for (int j = 0; j < hi_w; ++j)
            edge[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, lo_w - 1)(rng))][static_cast<std::size_t>(j)] = true;
        for (int i = 0; i < lo_w; ++i)
            for (int j = 0; j < hi_w; ++j) {
                auto&& e = edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (!e && coin(rng)) e = true;
                if (e) raw.covers.emplace_back(name(r, i), name(r + 1, j));
            }
    }
    return validate(raw);
}

/// Poset text format:
///   poset rank=<n+1>
///   elem <id> <rank>
///   cover <lower id> <upper id>
/// '#' starts a comment.
inline RawPoset parse_poset_text(std::istream& in) {
    RawPoset raw;
    std::string line;
    bool have_header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string keyword;
        if (!(ls >> keyword)) continue;
        auto where = [&] { return " (line " + std::to_string(line_no) + ")"; };
        if (keyword == "poset") {
            std::string field;
            if (have_header || !(ls >> field) || field.rfind("rank=", 0) != 0)
                fail(ErrorKind::ParseError, "bad header" + where());
            raw.declared_rank = detail::parse_small_int(field.substr(5), line);
            have_header = true;
        } else if (keyword == "elem") {
            std::string id, rank;
            if (!(ls >> id >> rank)) fail(ErrorKind::ParseError, "elem needs <id> <rank>" + where());
            raw.elements.push_back({id, detail::parse_small_int(rank, line)});
        } else if (keyword == "cover") {
            std::string a, b;
            if (!(ls >> a >> b)) fail(ErrorKind::ParseError, "cover needs two ids" + where());
            raw.covers.emplace_back(a, b);
        } else {
            fail(ErrorKind::ParseError, "unknown keyword '" + keyword + "'" + where());
        }
        std::string extra;
        if (ls >> extra) fail(ErrorKind::ParseError, "trailing token '" + extra + "'" + where());
    }
    if (!have_header) fail(ErrorKind::ParseError, "missing 'poset rank=<r>' header");
    return raw;
}

inline GradedPoset read_poset(std::istream& in) { return validate(parse_poset_text(in)); }

/// Elements sorted by (rank, numbering); covers grouped by lower element in the same order.
inline void write_poset(std::ostream& out, const GradedPoset& p) {
    out << "poset rank=" << p.rank() << '\n';
    for (int r = 0; r <= p.rank(); ++r)
        for (ElementIndex x : p.level(r)) out << "elem " << p.id(x) << ' ' << r << '\n';
    for (int r = 0; r < p.rank(); ++r)
        for (ElementIndex x : p.level(r))
            for (ElementIndex y : p.upper_covers(x)) out << "cover " << p.id(x) << ' ' << p.id(y) << '\n';
}

} // namespace flagcone
