#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "flagcone/error.hpp"
#include "flagcone/intervals.hpp"
#include "flagcone/numeric.hpp"
#include "flagcone/poset.hpp"
#include "flagcone/rank_set.hpp"

namespace flagcone {

/// Homogeneous element of the chain-operator algebra: sum of a_S * f^{degree}_S.
///
/// Keys are subsets of [1, degree-1]; zero coefficients are never stored. Degree 0 is the
/// scalar component, whose only key is the empty set.
class Form {
public:
    using Terms = std::map<RankSet, Rational>;

    explicit Form(int degree = 1) : degree_(degree) {
        if (degree < 0) fail(ErrorKind::DegreeMismatch, "negative degree");
        if (degree > RankSet::max_letter_supported + 1) fail(ErrorKind::DegreeTooLarge, "degree above 32");
    }

    static Form monomial(int degree, RankSet s, const Rational& c = 1) {
        Form f(degree);
        f.add(s, c);
        return f;
    }

    static Form scalar(const Rational& c) { return monomial(0, RankSet{}, c); }

    /// h_S = sum over T subset of S of (-1)^{|S \ T|} f_T.
    static Form h(int degree, RankSet s) {
        Form f(degree);
        f.check_key(s);
        for (std::uint32_t t = s.bits();; t = (t - 1) & s.bits()) {
            RankSet sub(t);
            f.add(sub, ((s.size() - sub.size()) % 2 == 0) ? 1 : -1);
            if (t == 0) break;
        }
        return f;
    }

    /// Builds a form from coefficients indexed by `RankSet::bits()`.
    static Form from_dense(int degree, const std::vector<Rational>& coeffs) {
        Form f(degree);
        if (coeffs.size() != f.dimension()) fail(ErrorKind::DegreeMismatch, "coefficient count does not match degree");
        for (std::size_t b = 0; b < coeffs.size(); ++b) f.add(RankSet(static_cast<std::uint32_t>(b)), coeffs[b]);
        return f;
    }

    int degree() const { return degree_; }
    /// Largest admissible letter, degree - 1 (and 0 for scalars).
    int letters() const { return degree_ == 0 ? 0 : degree_ - 1; }
    std::size_t dimension() const { return std::size_t{1} << letters(); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(RankSet s) const {
        auto it = terms_.find(s);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(RankSet s, const Rational& c) {
        check_key(s);
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(s, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::vector<Rational> dense() const {
        std::vector<Rational> out(dimension());
        for (const auto& [s, c] : terms_) out[s.bits()] = c;
        return out;
    }

    Form& operator+=(const Form& o) {
        require_same_degree(o);
        for (const auto& [s, c] : o.terms_) add(s, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        require_same_degree(o);
        for (const auto& [s, c] : o.terms_) add(s, -c);
        return *this;
    }
    Form& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [s, v] : terms_) v *= c;
        return *this;
    }

    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, const Rational& c) { return a *= c; }
    friend Form operator*(const Rational& c, Form a) { return a *= c; }
    friend Form operator-(Form a) { return a *= Rational(-1); }

    friend bool operator==(const Form& a, const Form& b) { return a.degree_ == b.degree_ && a.terms_ == b.terms_; }

private:
    void check_key(RankSet s) const {
        if (!s.within(letters()))
            fail(ErrorKind::RankSetOutOfRange,
                 s.to_string() + " is not a subset of [1," + std::to_string(letters()) + "] (degree " +
                     std::to_string(degree_) + ")");
    }
    void require_same_degree(const Form& o) const {
        if (o.degree_ != degree_)
            fail(ErrorKind::DegreeMismatch, "degrees " + std::to_string(degree_) + " and " + std::to_string(o.degree_));
    }

    int degree_;
    Terms terms_;
};

enum class Basis { f, h };

/// h-coordinates of a form: b_T = sum over S containing T of a_S.
inline std::vector<Rational> h_coordinates(const Form& f) {
    std::vector<Rational> b(f.dimension());
    for (const auto& [s, c] : f.terms())
        for (std::uint32_t t = s.bits();; t = (t - 1) & s.bits()) {
            b[t] += c;
            if (t == 0) break;
        }
    return b;
}

/// Human-readable expression such as "f{1,3} - f{1} + f{2} - f{3}".
inline std::string to_expression(const Form& f, Basis basis = Basis::f) {
    std::vector<std::pair<RankSet, Rational>> terms;
    if (basis == Basis::f) {
        terms.assign(f.terms().begin(), f.terms().end());
    } else {
        auto b = h_coordinates(f);
        for (std::size_t t = 0; t < b.size(); ++t)
            if (b[t] != 0) terms.emplace_back(RankSet(static_cast<std::uint32_t>(t)), b[t]);
    }
    if (terms.empty()) return "0";
    if (f.degree() == 0) return terms.front().second.get_str();
    const char symbol = basis == Basis::f ? 'f' : 'h';
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Rational c = terms[i].second;
        bool negative = c < 0;
        if (negative) c = -c;
        if (i == 0)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (c != 1) out += c.get_str() + "*";
        out += symbol;
        out += terms[i].first.to_string();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Operators of the algebra

/// Convolution: f^m_S * f^n_T = f^{m+n}_{S + {m} + (T+m)}, extended bilinearly.
/// Degree-0 operands act as scalars.
inline Form convolve(const Form& a, const Form& b) {
    if (a.degree() == 0) return b * a.coefficient(RankSet{});
    if (b.degree() == 0) return a * b.coefficient(RankSet{});
    const int m = a.degree();
    Form out(m + b.degree());
    for (const auto& [s, x] : a.terms())
        for (const auto& [t, y] : b.terms()) out.add(s.with(m) | t.translated(m), x * y);
    return out;
}

/// Lifts degree n+1 to n+2 through sigma_k (i stays for i <= k, else i+1); letter k+1 never occurs.
inline Form shift(const Form& f, int k) {
    const int n = f.degree() - 1;
    if (n < 1 || k < 1 || k > n)
        fail(ErrorKind::BadShiftIndex, "shift index " + std::to_string(k) + " outside [1," + std::to_string(n) + "]");
    Form out(f.degree() + 1);
    const RankSet low = RankSet::full(k);
    for (const auto& [s, c] : f.terms()) out.add((s & low) | s.minus(low).translated(1), c);
    return out;
}

/// pi^{n+1}_m : A^{n+1} -> A^n. Negative m behaves as m = 0, m > n as m = n.
inline Form project_pi(const Form& f, int m) {
    if (f.degree() == 0) fail(ErrorKind::DegreeMismatch, "cannot project a scalar");
    const int n = f.degree() - 1;
    if (n == 0) return Form::scalar(f.coefficient(RankSet{}));
    if (m < 0) m = 0;
    Form out(n);
    const RankSet window = RankSet::range(m, n - 1);
    for (const auto& [s, c] : f.terms()) {
        if (s.contains(n))
            out.add(s.without(n), c);
        else if (m == 0 || s.intersects(window))
            out.add(s, c);
    }
    return out;
}

/// rho^{n+1}_k(f_S) = [S subset of [1,k]] f^n_S. Zero for k < 0 and for degree 1; k >= n behaves as n-1.
inline Form project_rho(const Form& f, int k) {
    if (f.degree() == 0) fail(ErrorKind::DegreeMismatch, "cannot project a scalar");
    const int n = f.degree() - 1;
    if (n == 0) return Form::scalar(0);
    Form out(n);
    if (k < 0) return out;
    const RankSet allowed = RankSet::full(std::min(k, n - 1));
    for (const auto& [s, c] : f.terms())
        if (s.subset_of(allowed)) out.add(s, c);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation functionals

/// <I>, <P> or <S>, tied to a degree.
struct EvalFunctional {
    struct SingletonBasis {
        RankSet set;
    };
    int degree = 1;
    std::variant<IntervalSystem, GradedPoset, SingletonBasis> kind;

    static EvalFunctional of(const IntervalSystem& system) { return {system.ambient_n() + 1, system}; }
    static EvalFunctional of(const GradedPoset& p) { return {p.rank(), p}; }
    static EvalFunctional basis(int degree, RankSet s) { return {degree, SingletonBasis{s}}; }
};

namespace detail {

inline void require_degree(int expected, const Form& f) {
    if (f.degree() != expected)
        fail(ErrorKind::DegreeMismatch,
             "functional of degree " + std::to_string(expected) + " applied to a form of degree " + std::to_string(f.degree()));
}

} // namespace detail

/// <I>(F) = sum of a_S over the blockers S of I.
inline Rational evaluate(const IntervalSystem& system, const Form& f) {
    detail::require_degree(system.ambient_n() + 1, f);
    Rational total = 0;
    for (const auto& [s, c] : f.terms())
        if (is_blocker(s, system)) total += c;
    return total;
}

/// <P>(F) = sum of a_S f_S(P).
inline Rational evaluate(const GradedPoset& p, const Form& f) {
    detail::require_degree(p.rank(), f);
    Rational total = 0;
    for (const auto& [s, c] : f.terms()) total += c * Rational(flag_number(p, s));
    return total;
}

/// <S0>(F) = sum of a_S over S containing S0.
inline Rational evaluate_basis(RankSet s0, const Form& f) {
    if (!s0.within(f.letters())) fail(ErrorKind::DegreeMismatch, s0.to_string() + " exceeds the form's letters");
    Rational total = 0;
    for (const auto& [s, c] : f.terms())
        if (s0.subset_of(s)) total += c;
    return total;
}

inline Rational evaluate(const EvalFunctional& e, const Form& f) {
    detail::require_degree(e.degree, f);
    return std::visit(
        [&](const auto& k) -> Rational {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, EvalFunctional::SingletonBasis>)
                return evaluate_basis(k.set, f);
            else
                return evaluate(k, f);
        },
        e.kind);
}

/// <P(n,I,N)>(F) / f_{[1,n]}(P(n,I,N)) for each N, evaluated on the constructed posets.
/// The values approach <I>(F) with deviation O(1/N).
inline std::vector<Rational> limit_check(const IntervalSystem& system, const Form& f, const std::vector<int>& sizes) {
    detail::require_degree(system.ambient_n() + 1, f);
    const int n = system.ambient_n();
    std::vector<Rational> out;
    for (int N : sizes) {
        GradedPoset p = witness_poset({n, system, N});
        Rational denom(flag_number(p, RankSet::full(n)));
        out.push_back(evaluate(p, f) / denom);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Support analysis

inline std::vector<RankSet> support(const Form& f) {
    std::vector<RankSet> out;
    for (const auto& [s, c] : f.terms()) out.push_back(s);
    return out;
}

/// Union of all support sets.
inline RankSet letter_union(const Form& f) {
    RankSet u;
    for (const auto& [s, c] : f.terms()) u = u | s;
    return u;
}

namespace detail {

inline void require_nonzero(const Form& f) {
    if (f.is_zero()) fail(ErrorKind::ZeroForm, "operation undefined on the zero form");
}

inline RankSet common_letters(const Form& f) {
    RankSet common = RankSet::full(f.letters());
    for (const auto& [s, c] : f.terms()) common = common & s;
    return common;
}

} // namespace detail

/// Maximum letter over the support; 0 when every support set is empty.
inline int largest_letter(const Form& f) {
    detail::require_nonzero(f);
    return letter_union(f).max_letter();
}

struct TrailingFactor {
    Form prefix; ///< F' with F = F' * f^k_empty
    int k = 0;
};

struct LeadingFactor {
    int l = 0;
    Form suffix; ///< G' with G = f^l_empty * G'
};

/// Maximal decomposition F = F' * f^k_empty, if any.
inline std::optional<TrailingFactor> trailing_empty_factor(const Form& f) {
    detail::require_nonzero(f);
    const int m = f.degree();
    if (m == 0) return std::nullopt;
    const int l = largest_letter(f);
    if (l == 0) return TrailingFactor{Form::scalar(f.coefficient(RankSet{})), m};
    if (!detail::common_letters(f).contains(l)) return std::nullopt;
    Form prefix(l);
    for (const auto& [s, c] : f.terms()) prefix.add(s.without(l), c);
    return TrailingFactor{std::move(prefix), m - l};
}

/// Maximal decomposition G = f^l_empty * G', if any.
inline std::optional<LeadingFactor> leading_empty_factor(const Form& f) {
    detail::require_nonzero(f);
    const int n = f.degree();
    if (n == 0) return std::nullopt;
    const RankSet u = letter_union(f);
    if (u.empty()) return LeadingFactor{n, Form::scalar(f.coefficient(RankSet{}))};
    const int l = u.min_letter();
    if (!detail::common_letters(f).contains(l)) return std::nullopt;
    Form suffix(n - l);
    for (const auto& [s, c] : f.terms()) suffix.add(s.without(l).translated(-l), c);
    return LeadingFactor{l, std::move(suffix)};
}

/// Relabels the letters used by F to 1..k, giving a form of degree k+1.
inline Form compress(const Form& f) {
    detail::require_nonzero(f);
    const auto used = letter_union(f).letters();
    Form out(static_cast<int>(used.size()) + 1);
    for (const auto& [s, c] : f.terms()) {
        RankSet t;
        for (std::size_t j = 0; j < used.size(); ++j)
            if (s.contains(used[j])) t = t.with(static_cast<int>(j) + 1);
        out.add(t, c);
    }
    return out;
}

/// Inverse of compress: sends letter j of F to letters[j-1] inside a form of the given degree.
inline Form embed(const Form& f, const std::vector<int>& letters, int degree) {
    if (static_cast<int>(letters.size()) != f.letters())
        fail(ErrorKind::DegreeMismatch, "embedding needs one target letter per letter of the form");
    if (!std::is_sorted(letters.begin(), letters.end()) ||
        std::adjacent_find(letters.begin(), letters.end()) != letters.end())
        fail(ErrorKind::BadShiftIndex, "embedding letters must increase strictly");
    Form out(degree);
    for (const auto& [s, c] : f.terms()) {
        RankSet t;
        for (int j : s.letters()) t = t.with(letters[static_cast<std::size_t>(j) - 1]);
        out.add(t, c);
    }
    return out;
}

/// Split F = F1 * F2 with deg F1 = m, if the coefficients allow it.
///
/// m must lie in every support set and the coefficients must factor as
/// a_S = b_{S cap [1,m-1]} * c_{(S cap [m+1,n-1]) - m}. F1's first nonzero coefficient
/// (ascending bitset order) is normalized to 1.
inline std::optional<std::pair<Form, Form>> factor_at(const Form& f, int m) {
    detail::require_nonzero(f);
    const int n = f.degree();
    if (m < 1 || m > n - 1 || !detail::common_letters(f).contains(m)) return std::nullopt;
    const RankSet left_mask = RankSet::full(m - 1);
    const std::size_t rows = std::size_t{1} << (m - 1);
    const std::size_t cols = std::size_t{1} << (n - m - 1);
    std::vector<Rational> grid(rows * cols);
    // pivot: first nonzero in ascending bitset order of S, i.e. the smallest row with a nonzero
    std::size_t px = rows, py = cols;
    for (const auto& [s, c] : f.terms()) {
        std::size_t x = (s & left_mask).bits();
        std::size_t y = s.minus(left_mask).without(m).translated(-m).bits();
        grid[x * cols + y] = c;
        if (x < px || (x == px && y < py)) {
            px = x;
            py = y;
        }
    }
    const Rational pivot = grid[px * cols + py];
    for (std::size_t x = 0; x < rows; ++x)
        for (std::size_t y = 0; y < cols; ++y)
            if (grid[x * cols + y] * pivot != grid[x * cols + py] * grid[px * cols + y]) return std::nullopt;
    Form left(m), right(n - m);
    for (std::size_t x = 0; x < rows; ++x) left.add(RankSet(static_cast<std::uint32_t>(x)), grid[x * cols + py] / pivot);
    for (std::size_t y = 0; y < cols; ++y) right.add(RankSet(static_cast<std::uint32_t>(y)), grid[px * cols + y]);
    return std::make_pair(std::move(left), std::move(right));
}

/// factor_at for the smallest admissible m.
inline std::optional<std::pair<Form, Form>> factor_once(const Form& f) {
    detail::require_nonzero(f);
    for (int m = 1; m <= f.degree() - 1; ++m)
        if (auto split = factor_at(f, m)) return split;
    return std::nullopt;
}

/// Repeated factor_once on the right factor; irreducible factors from left to right.
inline std::vector<Form> factorize(const Form& f) {
    std::vector<Form> out;
    Form rest = f;
    while (true) {
        auto split = factor_once(rest);
        if (!split) break;
        out.push_back(std::move(split->first));
        rest = std::move(split->second);
    }
    out.push_back(std::move(rest));
    return out;
}

// ---------------------------------------------------------------------------
// Form text format:
//   form rank=<n+1>
//   "{1,3}" 1/1
//   "{}" -2
// '#' starts a comment.

inline Form parse_form_text(std::istream& in) {
    std::string line;
    std::optional<Form> form;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        const std::string where = " (line " + std::to_string(line_no) + ")";
        if (first == "form") {
            std::string field;
            if (form || !(ls >> field) || field.rfind("rank=", 0) != 0) fail(ErrorKind::ParseError, "bad header" + where);
            form.emplace(detail::parse_small_int(field.substr(5), line));
            continue;
        }
        if (!form) fail(ErrorKind::ParseError, "missing 'form rank=<r>' header" + where);
        if (first.size() < 4 || first.front() != '"' || first.back() != '"')
            fail(ErrorKind::ParseError, "term key must be quoted like \"{1,2}\"" + where);
        RankSet key = RankSet::parse(std::string_view(first).substr(1, first.size() - 2));
        std::string value;
        if (!(ls >> value)) fail(ErrorKind::ParseError, "term needs a coefficient" + where);
        std::string extra;
        if (ls >> extra) fail(ErrorKind::ParseError, "trailing token '" + extra + "'" + where);
        if (form->terms().count(key) != 0) fail(ErrorKind::ParseError, "repeated key " + key.to_string() + where);
        if (!key.within(form->letters()))
            fail(ErrorKind::RankSetOutOfRange, key.to_string() + " exceeds the declared rank" + where);
        form->add(key, parse_rational(value));
    }
    if (!form) fail(ErrorKind::ParseError, "missing 'form rank=<r>' header");
    return *form;
}

inline Form parse_form_text(const std::string& text) {
    std::istringstream in(text);
    return parse_form_text(in);
}

/// Keys in ascending bitset order, coefficients as num/den in lowest terms.
inline void write_form(std::ostream& out, const Form& f) {
    out << "form rank=" << f.degree() << '\n';
    for (const auto& [s, c] : f.terms()) out << '"' << s.to_string() << "\" " << to_fraction_string(c) << '\n';
}

} // namespace flagcone
