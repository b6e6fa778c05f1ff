#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include <flagcone/cone.hpp>
#include <flagcone/polyhedra.hpp>

#include "oracles.hpp"

using namespace flagcone;

namespace {

RationalMatrix shuffled(const RationalMatrix& a, std::mt19937_64& rng) {
    std::vector<std::size_t> order(a.rows());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    RationalMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(order[i], j);
    return out;
}

std::vector<std::vector<Rational>> rows_of(const RationalMatrix& m) {
    std::vector<std::vector<Rational>> out;
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
    return out;
}

// Each ray is feasible and lies on cols-1 independent active constraints.
void expect_extreme_rays(const RationalMatrix& a, const std::vector<Ray>& rays) {
    for (const auto& r : rays) {
        std::vector<std::vector<Rational>> active;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Rational v = 0;
            for (std::size_t j = 0; j < a.cols(); ++j) v += a(i, j) * r.coords[j];
            EXPECT_GE(v, 0);
            if (v == 0) active.push_back(a.row(i));
        }
        EXPECT_EQ(oracle::rank(active) + 1, a.cols());
    }
}

} // namespace

TEST(Rank, Basics) {
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(rank(RationalMatrix::identity(n)), n);
    auto m = RationalMatrix::from_rows({{1, 2, 3}, {1, 2, 3}, {Rational(1, 2), 0, 1}});
    EXPECT_EQ(rank(m), 2u);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        RationalMatrix r(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r(i, j) = Rational(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3));
        EXPECT_EQ(rank(r), oracle::rank(rows_of(r)));
    }
}

TEST(Rank, ModularAgreesOnFacetMatrices) {
    for (int n = 1; n <= 4; ++n) {
        auto fs = facet_system(n);
        std::vector<std::vector<std::uint64_t>> mod;
        std::vector<std::vector<Integer>> exact;
        for (const auto& f : fs.facets) {
            mod.emplace_back(f.normal.begin(), f.normal.end());
            exact.emplace_back(f.normal.begin(), f.normal.end());
        }
        EXPECT_EQ(detail::ModularRank::rank(mod), detail::bareiss_rank(exact));
        EXPECT_EQ(detail::bareiss_rank(exact), fs.dimension());
    }
    EXPECT_EQ(detail::ModularRank::reduce(Integer(-1)), detail::ModularRank::prime - 1);
}

TEST(Canonicalize, Examples) {
    EXPECT_EQ(canonicalize({Rational(1, 2), Rational(1, 3), 0}).coords, (std::vector<Integer>{3, 2, 0}));
    EXPECT_EQ(canonicalize({3, -5, 7}).coords, (std::vector<Integer>{3, -5, 7}));
    EXPECT_EQ(canonicalize({Rational(-4, 6), 0}).coords, (std::vector<Integer>{-1, 0}));
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> v;
        for (int i = 0; i < 5; ++i) v.emplace_back(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 5));
        if (std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; })) continue;
        Rational c(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 7));
        auto scaled = v;
        for (auto& x : scaled) x *= c;
        EXPECT_EQ(canonicalize(scaled), canonicalize(v));
    }
    try {
        canonicalize({0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroVector);
    }
}

TEST(DoubleDescription, Orthant) {
    auto rays = dd_rays(RationalMatrix::identity(4));
    ASSERT_EQ(rays.size(), 4u);
    std::vector<Ray> unit;
    for (std::size_t i = 0; i < 4; ++i) {
        Ray r{std::vector<Integer>(4, 0)};
        r.coords[i] = 1;
        unit.push_back(r);
    }
    std::sort(unit.begin(), unit.end());
    EXPECT_EQ(rays, unit);
    auto facets = dd_facets(rays);
    EXPECT_EQ(facets.rows(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(canonicalize(facets.row(i)), unit[i]);
}

TEST(DoubleDescription, FacetMatricesOfSmallRanks) {
    EXPECT_EQ(dd_rays(facet_system(2).matrix()).size(), 5u);
    EXPECT_EQ(dd_rays(facet_system(3).matrix()).size(), 13u);
    auto a = facet_system(4).matrix();
    auto rays = dd_rays(a);
    EXPECT_EQ(rays.size(), 41u);
    expect_extreme_rays(a, rays);
    EXPECT_TRUE(std::is_sorted(rays.begin(), rays.end()));
}

TEST(DoubleDescription, IndependentOfRowOrder) {
    std::mt19937_64 rng(3);
    auto a = facet_system(4).matrix();
    auto base = dd_rays(a);
    for (int trial = 0; trial < 4; ++trial) EXPECT_EQ(dd_rays(shuffled(a, rng)), base);
}

TEST(DoubleDescription, ThreadedRunIsIdentical) {
    auto a = facet_system(4).matrix();
    DDOptions opts;
    opts.threads = 4;
    EXPECT_EQ(dd_rays(a, opts), dd_rays(a));
}

TEST(DoubleDescription, RedundantRowsAndScaling) {
    auto a = RationalMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {2, 0, 0}, {0, 0, 0}});
    EXPECT_EQ(dd_rays(a).size(), 3u);
}

TEST(DoubleDescription, RandomConesAgainstActiveSetCheck) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 3 + rng() % 3;
        RationalMatrix a = RationalMatrix::identity(d);
        for (int extra = 0; extra < 6; ++extra) {
            std::vector<Rational> row;
            for (std::size_t j = 0; j < d; ++j) row.emplace_back(static_cast<long>(rng() % 5) - 1);
            a.append_row(row);
        }
        std::vector<Ray> rays;
        try {
            rays = dd_rays(a);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::NotPointed);
            continue;
        }
        expect_extreme_rays(a, rays);
        // every point of the cone that lies on d-1 independent constraints is one of the rays
        std::vector<std::vector<Rational>> rows = rows_of(a);
        std::set<Ray> found(rays.begin(), rays.end());
        std::vector<std::size_t> pick(d - 1);
        std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t from) {
            if (depth == d - 1) {
                std::vector<std::vector<Rational>> sub;
                for (auto i : pick) sub.push_back(rows[i]);
                if (oracle::rank(sub) != d - 1) return;
                // kernel vector by cofactors of the (d-1) x d system
                std::vector<Rational> x(d);
                for (std::size_t c = 0; c < d; ++c) {
                    std::vector<std::vector<Rational>> minor;
                    for (auto& r : sub) {
                        std::vector<Rational> mr;
                        for (std::size_t k = 0; k < d; ++k)
                            if (k != c) mr.push_back(r[k]);
                        minor.push_back(mr);
                    }
                    // determinant by elimination
                    Rational det = 1;
                    for (std::size_t i = 0; i < minor.size(); ++i) {
                        std::size_t p = i;
                        while (p < minor.size() && minor[p][i] == 0) ++p;
                        if (p == minor.size()) {
                            det = 0;
                            break;
                        }
                        if (p != i) {
                            std::swap(minor[p], minor[i]);
                            det = -det;
                        }
                        det *= minor[i][i];
                        for (std::size_t r2 = i + 1; r2 < minor.size(); ++r2) {
                            Rational f = minor[r2][i] / minor[i][i];
                            for (std::size_t k = i; k < minor.size(); ++k) minor[r2][k] -= f * minor[i][k];
                        }
                    }
                    x[c] = (c % 2 == 0) ? det : -det;
                }
                for (int sign : {1, -1}) {
                    std::vector<Rational> y = x;
                    for (auto& v : y) v *= sign;
                    bool feasible = true;
                    for (auto& r : rows) {
                        Rational v = 0;
                        for (std::size_t k = 0; k < d; ++k) v += r[k] * y[k];
                        if (v < 0) feasible = false;
                    }
                    if (feasible) EXPECT_TRUE(found.contains(canonicalize(y)));
                }
                return;
            }
            for (std::size_t i = from; i < rows.size(); ++i) {
                pick[depth] = i;
                choose(depth + 1, i + 1);
            }
        };
        choose(0, 0);
    }
}

TEST(DoubleDescription, Errors) {
    try {
        dd_rays(RationalMatrix::from_rows({{1, 0}, {2, 0}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotPointed);
    }
    try {
        dd_rays(RationalMatrix::identity(65));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionOverflow);
    }
    try {
        dd_facets({});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptyInput);
    }
}

TEST(DoubleDescription, FacetsOfRayHullRoundTrip) {
    // dd_facets(dd_rays(A)) recovers the irredundant rows of A
    for (int n = 1; n <= 4; ++n) {
        auto a = facet_system(n).matrix();
        auto facets = dd_facets(dd_rays(a));
        std::set<Ray> got, expected;
        for (std::size_t r = 0; r < facets.rows(); ++r) got.insert(canonicalize(facets.row(r)));
        for (std::size_t r = 0; r < a.rows(); ++r) expected.insert(canonicalize(a.row(r)));
        EXPECT_EQ(got, expected);
    }
}

TEST(DoubleDescription, LowerDimensionalHull) {
    // three rays in the plane z = 0 inside R^3
    std::vector<Ray> rays = {Ray{{1, 0, 0}}, Ray{{0, 1, 0}}, Ray{{1, 1, 0}}};
    auto facets = dd_facets(rays);
    EXPECT_EQ(facets.rows(), 2u);
    for (std::size_t r = 0; r < facets.rows(); ++r) EXPECT_EQ(facets(r, 2), 0);
}

TEST(Csv, RoundTrip) {
    auto rays = dd_rays(facet_system(3).matrix());
    std::vector<std::string> labels;
    for_each_subset(3, [&](RankSet s) { labels.push_back(s.to_string()); });
    std::ostringstream out;
    write_rays_csv(out, labels, rays);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "{},{1},{2},\"{1,2}\",{3},\"{1,3}\",\"{2,3}\",\"{1,2,3}\"");
    std::istringstream in(out.str());
    auto table = read_csv(in);
    EXPECT_EQ(table.labels, labels);
    ASSERT_EQ(table.rows.size(), rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) EXPECT_EQ(table.rows[i], rays[i].coords);
    std::istringstream bad("a,b\n1,x\n");
    EXPECT_THROW(read_csv(bad), Error);
}
