#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "flagcone/error.hpp"
#include "flagcone/numeric.hpp"

namespace flagcone {

/// Dense row-major matrix of rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        if (rows.empty()) return {};
        RationalMatrix m(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) fail(ErrorKind::DimensionOverflow, "ragged matrix rows");
            std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
        }
        return m;
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Rational> row(std::size_t r) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    void append_row(const std::vector<Rational>& values) {
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        if (values.size() != cols_) fail(ErrorKind::DimensionOverflow, "row length mismatch");
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Primitive integer direction (gcd of entries 1, not all zero).
struct Ray {
    std::vector<Integer> coords;

    std::vector<Rational> as_rational() const { return {coords.begin(), coords.end()}; }

    friend bool operator==(const Ray& a, const Ray& b) { return a.coords == b.coords; }
    friend bool operator<(const Ray& a, const Ray& b) {
        return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end(),
                                            [](const Integer& x, const Integer& y) { return cmp(x, y) < 0; });
    }
};

namespace detail {

/// Divides out the gcd of a nonzero integer vector.
inline void make_primitive(std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 0) fail(ErrorKind::ZeroVector, "zero vector has no direction");
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

/// Positive multiple of a rational vector with integer entries.
inline std::vector<Integer> clear_denominators(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(q.get_num() * (l / q.get_den()));
    return out;
}

/// Exact rank of an integer matrix (rows copied) via fraction-free Bareiss elimination.
inline std::size_t bareiss_rank(std::vector<std::vector<Integer>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m.front().size();
    Integer prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                m[r][k] = m[rank][c] * m[r][k] - m[r][c] * m[rank][k];
                mpz_divexact(m[r][k].get_mpz_t(), m[r][k].get_mpz_t(), prev.get_mpz_t());
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

/// Rank over GF(2^61 - 1); never exceeds the rational rank.
class ModularRank {
public:
    static constexpr std::uint64_t prime = (std::uint64_t{1} << 61) - 1;

    static std::uint64_t reduce(const Integer& z) {
        static const Integer p = (Integer(1) << 61) - 1;
        Integer m;
        mpz_fdiv_r(m.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
        return m.get_ui();
    }

    static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
        unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
        std::uint64_t lo = static_cast<std::uint64_t>(t & prime);
        std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
        std::uint64_t s = lo + hi;
        return s >= prime ? s - prime : s;
    }
    static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + prime - b; }
    static std::uint64_t inverse(std::uint64_t a) {
        std::uint64_t result = 1, e = prime - 2;
        while (e != 0) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

    static std::size_t rank(std::vector<std::vector<std::uint64_t>> m) {
        if (m.empty()) return 0;
        const std::size_t rows = m.size(), cols = m.front().size();
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < rows; ++c) {
            std::size_t pivot = rank;
            while (pivot < rows && m[pivot][c] == 0) ++pivot;
            if (pivot == rows) continue;
            std::swap(m[pivot], m[rank]);
            const std::uint64_t inv = inverse(m[rank][c]);
            for (std::size_t r = rank + 1; r < rows; ++r) {
                if (m[r][c] == 0) continue;
                const std::uint64_t factor = mul(m[r][c], inv);
                for (std::size_t k = c; k < cols; ++k) m[r][k] = sub(m[r][k], mul(factor, m[rank][k]));
            }
            ++rank;
        }
        return rank;
    }
};

inline std::vector<std::vector<Integer>> integer_rows(const RationalMatrix& a) {
    std::vector<std::vector<Integer>> out;
    out.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) out.push_back(clear_denominators(a.row(r)));
    return out;
}

} // namespace detail

/// Exact rank via fraction-free elimination.
inline std::size_t rank(const RationalMatrix& a) { return detail::bareiss_rank(detail::integer_rows(a)); }

/// Clears denominators and divides by the gcd; direction is preserved.
inline Ray canonicalize(const std::vector<Rational>& v) {
    if (std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; }))
        fail(ErrorKind::ZeroVector, "cannot canonicalize the zero vector");
    Ray r{detail::clear_denominators(v)};
    detail::make_primitive(r.coords);
    return r;
}

struct DDOptions {
    unsigned threads = 1;
    /// Called after each inserted constraint with (rows done, rows total, current ray count).
    std::function<void(std::size_t, std::size_t, std::size_t)> progress;
};

namespace detail {

inline constexpr std::size_t max_dd_columns = 64;

struct DDRay {
    std::vector<Integer> coords;
    boost::dynamic_bitset<> zeros; // constraints (in insertion order) tight at this ray
};

inline Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

/// Rational inverse of a square integer matrix; columns of the result are returned as rows.
inline std::vector<std::vector<Rational>> inverse_columns(const std::vector<std::vector<Integer>>& b) {
    const std::size_t d = b.size();
    std::vector<std::vector<Rational>> aug(d, std::vector<Rational>(2 * d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) aug[i][j] = b[i][j];
        aug[i][d + i] = 1;
    }
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t pivot = c;
        while (aug[pivot][c] == 0) ++pivot;
        std::swap(aug[pivot], aug[c]);
        const Rational inv = 1 / aug[c][c];
        for (auto& x : aug[c]) x *= inv;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == c || aug[r][c] == 0) continue;
            const Rational factor = aug[r][c];
            for (std::size_t k = c; k < 2 * d; ++k) aug[r][k] -= factor * aug[c][k];
        }
    }
    std::vector<std::vector<Rational>> cols(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) cols[j][i] = aug[i][d + j];
    return cols;
}

} // namespace detail

/// Extreme rays of the pointed cone {x : A x >= 0} by incremental double description.
///
/// Constraints are inserted sparsest first. Two rays are adjacent when the constraints
/// tight at both have rank cols-2; candidates are first screened combinatorially (no
/// third ray is tight on the whole common set), then confirmed by that rank test.
/// Output rays are primitive and sorted lexicographically.
inline std::vector<Ray> dd_rays(const RationalMatrix& a, const DDOptions& options = {}) {
    const std::size_t d = a.cols();
    if (d == 0 || a.rows() == 0) fail(ErrorKind::EmptyInput, "constraint matrix is empty");
    if (d > detail::max_dd_columns) fail(ErrorKind::DimensionOverflow, std::to_string(d) + " columns exceed 64");

    std::vector<std::vector<Integer>> rows;
    for (auto& r : detail::integer_rows(a)) {
        if (std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; })) continue;
        detail::make_primitive(r);
        rows.push_back(std::move(r));
    }
    if (detail::bareiss_rank(rows) < d) fail(ErrorKind::NotPointed, "constraint matrix lacks full column rank");

    auto nonzeros = [](const std::vector<Integer>& r) {
        return std::count_if(r.begin(), r.end(), [](const Integer& x) { return x != 0; });
    };
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        auto nx = nonzeros(rows[x]), ny = nonzeros(rows[y]);
        if (nx != ny) return nx < ny;
        return Ray{rows[x]} < Ray{rows[y]};
    });
    std::vector<std::vector<Integer>> sorted;
    for (std::size_t i : order) sorted.push_back(rows[i]);
    rows = std::move(sorted);
    const std::size_t m = rows.size();

    // Start from d independent constraints: a simplicial cone.
    std::vector<std::size_t> basis;
    std::vector<std::vector<Integer>> basis_rows;
    for (std::size_t i = 0; i < m && basis.size() < d; ++i) {
        basis_rows.push_back(rows[i]);
        if (detail::bareiss_rank(basis_rows) == basis_rows.size())
            basis.push_back(i);
        else
            basis_rows.pop_back();
    }
    // Renumber so the basis rows come first; zero sets index constraints in insertion order.
    std::vector<std::size_t> insertion = basis;
    for (std::size_t i = 0; i < m; ++i)
        if (std::find(basis.begin(), basis.end(), i) == basis.end()) insertion.push_back(i);

    std::vector<std::vector<std::uint64_t>> residues(m);
    for (std::size_t k = 0; k < m; ++k)
        for (const auto& x : rows[insertion[k]]) residues[k].push_back(detail::ModularRank::reduce(x));

    std::vector<detail::DDRay> rays;
    {
        auto cols = detail::inverse_columns(basis_rows);
        for (std::size_t j = 0; j < d; ++j) {
            detail::DDRay r;
            r.coords = detail::clear_denominators(cols[j]);
            detail::make_primitive(r.coords);
            r.zeros.resize(m);
            for (std::size_t i = 0; i < d; ++i)
                if (i != j) r.zeros.set(i);
            rays.push_back(std::move(r));
        }
    }

    auto adjacent = [&](const boost::dynamic_bitset<>& common, std::size_t p, std::size_t q,
                        const std::vector<detail::DDRay>& current) {
        if (common.count() + 2 < d) return false;
        for (std::size_t r = 0; r < current.size(); ++r) {
            if (r == p || r == q) continue;
            if (common.is_subset_of(current[r].zeros)) return false;
        }
        std::vector<std::vector<std::uint64_t>> mod_rows;
        for (auto i = common.find_first(); i != boost::dynamic_bitset<>::npos; i = common.find_next(i))
            mod_rows.push_back(residues[i]);
        if (detail::ModularRank::rank(mod_rows) == d - 2) return true;
        std::vector<std::vector<Integer>> exact_rows;
        for (auto i = common.find_first(); i != boost::dynamic_bitset<>::npos; i = common.find_next(i))
            exact_rows.push_back(rows[insertion[i]]);
        return detail::bareiss_rank(exact_rows) == d - 2;
    };

    const unsigned threads = std::max(1u, options.threads);
    for (std::size_t k = d; k < m; ++k) {
        const auto& row = rows[insertion[k]];
        std::vector<std::size_t> pos, neg, zero;
        std::vector<Integer> value(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            value[r] = detail::dot(row, rays[r].coords);
            int s = sgn(value[r]);
            (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r : zero) rays[r].zeros.set(k);
            if (options.progress) options.progress(k + 1, m, rays.size());
            continue;
        }

        // new rays per positive ray, merged in order so threading cannot change the result
        std::vector<std::vector<detail::DDRay>> created(pos.size());
        auto work = [&](std::size_t pi) {
            const std::size_t p = pos[pi];
            for (std::size_t q : neg) {
                boost::dynamic_bitset<> common = rays[p].zeros & rays[q].zeros;
                if (!adjacent(common, p, q, rays)) continue;
                detail::DDRay fresh;
                fresh.coords.resize(d);
                for (std::size_t i = 0; i < d; ++i)
                    fresh.coords[i] = value[p] * rays[q].coords[i] - value[q] * rays[p].coords[i];
                detail::make_primitive(fresh.coords);
                fresh.zeros = std::move(common);
                fresh.zeros.set(k);
                created[pi].push_back(std::move(fresh));
            }
        };
        if (threads == 1 || pos.size() < 2) {
            for (std::size_t pi = 0; pi < pos.size(); ++pi) work(pi);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&] {
                    for (std::size_t pi = next++; pi < pos.size(); pi = next++) work(pi);
                });
            for (auto& th : pool) th.join();
        }

        std::vector<detail::DDRay> next_rays;
        next_rays.reserve(pos.size() + zero.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            int s = sgn(value[r]);
            if (s < 0) continue;
            if (s == 0) rays[r].zeros.set(k);
            next_rays.push_back(std::move(rays[r]));
        }
        for (auto& batch : created)
            for (auto& r : batch) next_rays.push_back(std::move(r));
        rays = std::move(next_rays);
        if (options.progress) options.progress(k + 1, m, rays.size());
    }

    std::vector<Ray> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(Ray{std::move(r.coords)});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Irredundant facet normals y (y . r >= 0 for every input ray) of the cone spanned by `rays`.
///
/// When the rays span a proper subspace, facets are computed in the coordinates of a
/// maximal independent column set and padded with zeros elsewhere.
inline RationalMatrix dd_facets(const std::vector<Ray>& rays, const DDOptions& options = {}) {
    if (rays.empty()) fail(ErrorKind::EmptyInput, "no rays given");
    const std::size_t d = rays.front().coords.size();
    for (const auto& r : rays)
        if (r.coords.size() != d) fail(ErrorKind::DimensionOverflow, "rays of different lengths");

    // independent columns, chosen greedily left to right
    std::vector<std::size_t> keep;
    {
        std::vector<std::vector<Integer>> columns;
        for (std::size_t c = 0; c < d; ++c) {
            std::vector<Integer> col;
            for (const auto& r : rays) col.push_back(r.coords[c]);
            columns.push_back(std::move(col));
            if (detail::bareiss_rank(columns) == columns.size())
                keep.push_back(c);
            else
                columns.pop_back();
        }
    }
    RationalMatrix generators(rays.size(), keep.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) generators(i, j) = rays[i].coords[keep[j]];
    auto normals = dd_rays(generators, options);
    RationalMatrix out(normals.size(), d);
    for (std::size_t i = 0; i < normals.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) out(i, keep[j]) = normals[i].coords[j];
    return out;
}

// ---------------------------------------------------------------------------
// CSV: a header row of labels, then one row of exact integers per line.

namespace detail {

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    if (quoted) fail(ErrorKind::ParseError, "unterminated quote in CSV line");
    cells.push_back(std::move(cell));
    return cells;
}

} // namespace detail

struct IntegerTable {
    std::vector<std::string> labels;
    std::vector<std::vector<Integer>> rows;
};

inline void write_csv(std::ostream& out, const std::vector<std::string>& labels,
                      const std::vector<std::vector<Integer>>& rows) {
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << detail::csv_quote(labels[i]);
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].get_str();
        out << '\n';
    }
}

inline void write_rays_csv(std::ostream& out, const std::vector<std::string>& labels, const std::vector<Ray>& rays) {
    std::vector<std::vector<Integer>> rows;
    for (const auto& r : rays) rows.push_back(r.coords);
    write_csv(out, labels, rows);
}

/// Rows are scaled to primitive integer vectors before writing.
inline void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels, const RationalMatrix& m) {
    std::vector<std::vector<Integer>> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(canonicalize(m.row(r)).coords);
    write_csv(out, labels, rows);
}

inline IntegerTable read_csv(std::istream& in) {
    IntegerTable table;
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::ParseError, "CSV has no header");
    table.labels = detail::csv_split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = detail::csv_split(line);
        if (cells.size() != table.labels.size()) fail(ErrorKind::ParseError, "CSV row width differs from header");
        std::vector<Integer> row;
        for (const auto& c : cells) {
            Integer z;
            if (c.empty() || z.set_str(c, 10) != 0) fail(ErrorKind::ParseError, "not an integer: '" + c + "'");
            row.push_back(z);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace flagcone
