#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "flagcone/error.hpp"

namespace flagcone {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// "num/den" with a positive denominator, always in lowest terms.
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "p", "-p", "p/q" (q != 0); result is canonicalized.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto is_int = [](std::string_view t) {
        if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::size_t slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
        fail(ErrorKind::ParseError, "not a rational: '" + s + "'");
    if (num.front() == '+') num.erase(0, 1);
    const Integer d{den};
    if (d == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    Rational q{Integer{num}, d};
    q.canonicalize();
    return q;
}

} // namespace flagcone
