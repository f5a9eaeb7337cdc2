#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcs {

using Rational = mpq_class;
using Integer = mpz_class;

/// Coordinates of a vector in a fixed basis.
using Vector = std::vector<Rational>;

/// Parses "p" or "p/q" (optional leading sign, no whitespace). Returns
/// nullopt on anything else, including a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::string s(text);
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return std::nullopt;
    bool seen_slash = false;
    bool digit_after_slash = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (c == '/') {
            if (seen_slash || i == start) return std::nullopt;
            seen_slash = true;
        } else if (c < '0' || c > '9') {
            return std::nullopt;
        } else if (seen_slash) {
            digit_after_slash = true;
        }
    }
    if (seen_slash && !digit_after_slash) return std::nullopt;
    if (s[0] == '+') s.erase(0, 1);
    Rational r;
    if (r.set_str(s, 10) != 0) return std::nullopt;
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline Vector unit_vector(std::size_t dim, std::size_t index) {
    Vector v(dim, Rational(0));
    v[index] = 1;
    return v;
}

inline std::string to_string(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].get_str();
    }
    return out + ")";
}

} // namespace lcs
