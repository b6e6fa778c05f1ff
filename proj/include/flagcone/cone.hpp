#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flagcone/algebra.hpp"
#include "flagcone/error.hpp"
#include "flagcone/intervals.hpp"
#include "flagcone/numeric.hpp"
#include "flagcone/polyhedra.hpp"
#include "flagcone/poset.hpp"
#include "flagcone/rank_set.hpp"

namespace flagcone {

struct Facet {
    IntervalSystem system;   // an antichain of intervals
    std::vector<int> normal; // normal[S.bits()] = 1 iff S blocks the system
};

/// The Catalan-many facets <I> >= 0 of K^{n+1}, one per interval antichain on [1,n].
struct FacetSystem {
    int n = 0;
    std::vector<Facet> facets;

    std::size_t dimension() const { return std::size_t{1} << n; }

    RationalMatrix matrix() const {
        RationalMatrix m(facets.size(), dimension());
        for (std::size_t i = 0; i < facets.size(); ++i)
            for (std::size_t j = 0; j < dimension(); ++j) m(i, j) = facets[i].normal[j];
        return m;
    }

    /// Index of the facet for a given antichain, if present.
    std::optional<std::size_t> find(const IntervalSystem& system) const {
        auto canon = minimal_intervals(system);
        for (std::size_t i = 0; i < facets.size(); ++i)
            if (facets[i].system == canon) return i;
        return std::nullopt;
    }
};

inline constexpr int max_facet_ambient = 6;
inline constexpr int max_membership_degree = 7;
inline constexpr int max_extreme_ambient = 5;

inline FacetSystem facet_system(int n) {
    if (n < 0) fail(ErrorKind::IntervalOutOfRange, "n must be nonnegative");
    if (n > max_facet_ambient) fail(ErrorKind::AmbientTooLarge, "facet systems are built for n <= 6 only");
    FacetSystem out{n, {}};
    for (auto& system : enumerate_antichains(n)) {
        Facet f{system, std::vector<int>(std::size_t{1} << n, 0)};
        for_each_subset(n, [&](RankSet s) {
            if (is_blocker(s, f.system)) f.normal[s.bits()] = 1;
        });
        out.facets.push_back(std::move(f));
    }
    return out;
}

namespace detail {

inline void require_membership_degree(const Form& f) {
    if (f.degree() < 1) fail(ErrorKind::DegreeMismatch, "membership needs a form of degree >= 1");
    if (f.degree() > max_membership_degree)
        fail(ErrorKind::DegreeTooLarge, "membership is decided for degree <= 7 only");
}

/// Facet systems are small but rebuilt often; keep one per n.
inline const FacetSystem& cached_facets(int n) {
    static const std::vector<FacetSystem> table = [] {
        std::vector<FacetSystem> t;
        for (int k = 0; k <= max_facet_ambient; ++k) t.push_back(facet_system(k));
        return t;
    }();
    return table[static_cast<std::size_t>(n)];
}

inline Rational facet_value(const Facet& facet, const Form& f) {
    Rational total = 0;
    for (const auto& [s, c] : f.terms())
        if (facet.normal[s.bits()] != 0) total += c;
    return total;
}

} // namespace detail

inline constexpr int witness_size_cap_log2 = 20;

struct Certificate {
    IntervalSystem violated; ///< antichain with <I>(F) < 0
    Rational facet_value;
    /// P(n, I, N) with <P>(F) < 0; absent when the required N exceeds 2^20 or n = 0.
    std::optional<WitnessSpec> witness;
    Rational witness_value;
};

struct Membership {
    bool in_cone = true;
    std::optional<Certificate> certificate;
};

/// <P(n,I,N)>(F) = sum_k c_k N^k where c_k sums a_S over the S hitting exactly k intervals.
/// The top coefficient is <I>(F), so for <I>(F) < 0 every N above the Cauchy bound
/// 1 + max |c_k / c_top| makes the evaluation negative.
inline std::optional<WitnessSpec> witness_for(const IntervalSystem& system, const Form& f) {
    if (system.ambient_n() < 1) return std::nullopt; // rank 1: the only poset is the 2-chain
    const std::size_t k = system.size();
    std::vector<Rational> coeff(k + 1);
    for (const auto& [s, c] : f.terms()) {
        std::size_t hit = 0;
        for (const Interval& iv : system.intervals())
            if (s.intersects(iv.as_set())) ++hit;
        coeff[hit] += c;
    }
    const Rational top = coeff[k];
    if (top >= 0) return std::nullopt;
    Rational bound = 1;
    for (std::size_t i = 0; i < k; ++i) bound = std::max(bound, Rational(1 + abs(coeff[i] / top)));
    int N = 1;
    for (int e = 0; e <= witness_size_cap_log2; ++e, N *= 2)
        if (k == 0 || Rational(N) > bound) return WitnessSpec{system.ambient_n(), system, N};
    return std::nullopt;
}

/// F in K^{n+1} iff <I>(F) >= 0 for every facet. The first violated facet (facet order) is certified.
inline Membership contains(const Form& f) {
    detail::require_membership_degree(f);
    const FacetSystem& fs = detail::cached_facets(f.degree() - 1);
    for (const Facet& facet : fs.facets) {
        Rational v = detail::facet_value(facet, f);
        if (v >= 0) continue;
        Certificate cert{facet.system, v, witness_for(facet.system, f), 0};
        if (cert.witness) {
            FlagVector fv = witness_flag_vector(*cert.witness);
            for (const auto& [s, c] : f.terms()) cert.witness_value += c * Rational(fv[s.bits()]);
        }
        return {false, std::move(cert)};
    }
    return {true, std::nullopt};
}

/// Membership through the projections pi_m, m in [0,n], down to degree 1.
inline bool contains_by_projection(const Form& f) {
    detail::require_membership_degree(f);
    if (f.degree() == 1) return f.coefficient(RankSet{}) >= 0;
    const int n = f.degree() - 1;
    for (int m = 0; m <= n; ++m)
        if (!contains_by_projection(project_pi(f, m))) return false;
    return true;
}

/// Facet indices with <I>(F) = 0.
inline std::vector<std::size_t> active_facets(const Form& f) {
    detail::require_membership_degree(f);
    const FacetSystem& fs = detail::cached_facets(f.degree() - 1);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fs.facets.size(); ++i)
        if (detail::facet_value(fs.facets[i], f) == 0) out.push_back(i);
    return out;
}

/// F spans an extreme ray iff the facets active at F have rank 2^n - 1.
inline bool is_extreme(const Form& f) {
    if (!contains(f).in_cone) fail(ErrorKind::NotInCone, "form is not in the cone");
    if (f.is_zero()) return false;
    const FacetSystem& fs = detail::cached_facets(f.degree() - 1);
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i : active_facets(f))
        rows.emplace_back(fs.facets[i].normal.begin(), fs.facets[i].normal.end());
    return detail::bareiss_rank(std::move(rows)) + 1 == fs.dimension();
}

// ---------------------------------------------------------------------------
// Extreme rays

/// Positive-scaling class of a nonzero form.
inline Ray ray_of(const Form& f) { return canonicalize(f.dense()); }

inline Form form_of(const Ray& r, int degree) { return Form::from_dense(degree, r.as_rational()); }

enum class Tag { lift, convolution, fresh };

inline std::string to_string(Tag t) {
    switch (t) {
    case Tag::lift: return "lift";
    case Tag::convolution: return "convolution";
    case Tag::fresh: return "new";
    }
    return "?";
}

struct ExtremeRay {
    Form form;
    Tag tag = Tag::fresh;
    std::vector<std::size_t> active; ///< indices into facet_system(n)
};

struct ExtremeReport {
    int n = 0; ///< rank is n+1
    std::vector<ExtremeRay> rays;

    std::size_t count(Tag t) const {
        return static_cast<std::size_t>(std::count_if(rays.begin(), rays.end(), [&](const ExtremeRay& r) { return r.tag == t; }));
    }
    std::set<Ray> ray_set() const {
        std::set<Ray> out;
        for (const auto& r : rays) out.insert(ray_of(r.form));
        return out;
    }
};

/// Provenance of an extreme F of rank n+1, given the reports of ranks 1..n (index = rank-1).
///
/// lift: some letter of [1,n] is unused. convolution: some split F = F1 * F2 has both
/// factors extreme at their ranks. Otherwise new.
inline Tag classify(const Form& f, const std::vector<ExtremeReport>& lower) {
    detail::require_nonzero(f);
    if (letter_union(f) != RankSet::full(f.letters())) return Tag::lift;
    auto known = [&](const Form& g) {
        const auto idx = static_cast<std::size_t>(g.degree() - 1);
        if (idx >= lower.size()) return false;
        auto rays = lower[idx].ray_set();
        return rays.contains(ray_of(g));
    };
    for (int m = 1; m <= f.degree() - 1; ++m) {
        auto split = factor_at(f, m);
        if (!split) continue;
        auto& [a, b] = *split;
        if ((known(a) && known(b)) || (known(-a) && known(-b))) return Tag::convolution;
    }
    return Tag::fresh;
}

struct ExtremeOptions {
    bool allow_slow = false; ///< rank 6 must be asked for
    DDOptions dd;
};

/// Reports for ranks 1..n+1, each computed by double description on the facet system.
inline std::vector<ExtremeReport> extreme_catalog(int n, const ExtremeOptions& options = {}) {
    if (n < 0) fail(ErrorKind::IntervalOutOfRange, "n must be nonnegative");
    if (n > max_extreme_ambient) fail(ErrorKind::AmbientTooLarge, "extreme rays are computed up to rank 6");
    if (n == max_extreme_ambient && !options.allow_slow)
        fail(ErrorKind::AmbientTooLarge, "rank 6 is slow and must be requested explicitly");
    std::vector<ExtremeReport> out;
    for (int k = 0; k <= n; ++k) {
        const FacetSystem& fs = detail::cached_facets(k);
        ExtremeReport report{k, {}};
        for (const Ray& r : dd_rays(fs.matrix(), k == n ? options.dd : DDOptions{})) {
            Form f = form_of(r, k + 1);
            Tag tag = classify(f, out);
            report.rays.push_back({f, tag, active_facets(f)});
        }
        out.push_back(std::move(report));
    }
    return out;
}

inline ExtremeReport extreme_rays(int n, const ExtremeOptions& options = {}) {
    return std::move(extreme_catalog(n, options).back());
}

/// Extremes of rank `rank` obtainable from lower ranks.
///
/// Rank 1 is f^1_empty. Rank r collects every form of rank r-1 with one unused letter
/// inserted (any position), every F * G of ranks a + b = r except when F ends and G starts
/// with an empty factor, and the forms in `injected[r]`. Only forms passing is_extreme are
/// kept; output is sorted by canonical ray.
inline std::vector<Form> generate_extremes(int rank, const std::map<int, std::vector<Form>>& injected = {}) {
    if (rank < 1) fail(ErrorKind::DegreeMismatch, "rank must be positive");
    std::vector<std::vector<Form>> levels(static_cast<std::size_t>(rank) + 1);
    for (int r = 1; r <= rank; ++r) {
        std::map<Ray, Form> found;
        auto offer = [&](const Form& g) {
            if (g.is_zero() || !contains(g).in_cone || !is_extreme(g)) return;
            found.emplace(ray_of(g), g);
        };
        if (r == 1) offer(Form::monomial(1, RankSet{}));
        for (const Form& g : levels[static_cast<std::size_t>(r) - 1]) {
            for (int gap = 1; gap <= r - 1; ++gap) {
                std::vector<int> letters;
                for (int j = 1; j <= r - 1; ++j)
                    if (j != gap) letters.push_back(j);
                offer(embed(g, letters, r));
            }
        }
        for (int a = 1; a < r; ++a) {
            for (const Form& g : levels[static_cast<std::size_t>(a)]) {
                const bool trailing = trailing_empty_factor(g).has_value();
                for (const Form& h : levels[static_cast<std::size_t>(r - a)]) {
                    if (trailing && leading_empty_factor(h).has_value()) continue;
                    offer(convolve(g, h));
                }
            }
        }
        if (auto it = injected.find(r); it != injected.end())
            for (const Form& g : it->second) offer(g);
        for (auto& [ray, g] : found) levels[static_cast<std::size_t>(r)].push_back(std::move(g));
    }
    return levels[static_cast<std::size_t>(rank)];
}

/// New-tagged rays of each rank in a catalog, keyed by rank.
inline std::map<int, std::vector<Form>> new_rays_by_rank(const std::vector<ExtremeReport>& catalog) {
    std::map<int, std::vector<Form>> out;
    for (const auto& report : catalog)
        for (const auto& r : report.rays)
            if (r.tag == Tag::fresh) out[report.n + 1].push_back(r.form);
    return out;
}

// ---------------------------------------------------------------------------
// The polar: the closed cone spanned by normalized flag vectors

/// H- and V-description of a pointed cone in coordinates indexed by RankSet bits.
struct ConeDescription {
    int n = 0;
    std::vector<IntervalSystem> generator_systems; ///< generators[i] is g_I for this system
    std::vector<Ray> generators;
    RationalMatrix facets; ///< rows y with y . x >= 0 on the cone
};

/// Generators g_I (the 0/1 blocker indicators, limits of normalized witness flag vectors)
/// and facets from dd_facets.
inline ConeDescription flag_cone(int n, const DDOptions& options = {}) {
    if (n < 0) fail(ErrorKind::IntervalOutOfRange, "n must be nonnegative");
    if (n > max_extreme_ambient) fail(ErrorKind::AmbientTooLarge, "flag cone is computed for n <= 5");
    ConeDescription out;
    out.n = n;
    for (const Facet& f : detail::cached_facets(n).facets) {
        out.generator_systems.push_back(f.system);
        out.generators.push_back(Ray{{f.normal.begin(), f.normal.end()}});
    }
    out.facets = dd_facets(out.generators, options);
    return out;
}

/// Whether generator i of a cone description spans an extreme ray: the facets through it have rank dim-1.
inline bool generator_is_extreme(const ConeDescription& cone, std::size_t i) {
    const Ray& g = cone.generators[i];
    std::vector<std::vector<Integer>> rows;
    for (std::size_t r = 0; r < cone.facets.rows(); ++r) {
        Rational v = 0;
        for (std::size_t j = 0; j < g.coords.size(); ++j) v += cone.facets(r, j) * g.coords[j];
        if (v == 0) rows.push_back(detail::clear_denominators(cone.facets.row(r)));
    }
    return detail::bareiss_rank(std::move(rows)) + 1 == g.coords.size();
}

} // namespace flagcone
