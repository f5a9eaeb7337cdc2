#pragma once

// Compact structure-equation notation.
//
// A tuple "(0,-12,13,0)" lists d e^k for k = 1..n: entry k is the literal
// expansion of d e^k in the basis e^{ij}. Brackets carry the opposite sign,
// d alpha(X, Y) = -alpha([X, Y]), so "-12" in slot 2 means [e_1, e_2] = e_2.
//
// Each term is an optional coefficient followed by an index group:
//   12   -12   1/2 24   α24   -(1+α)34   δ/2 14   [10][12]
// The coefficient is a rational expression in numbers and parameters
// (+ - * / parentheses and juxtaposition). A numeric coefficient must be
// separated from a plain-digit index by whitespace. Algebras of dimension
// 10 or more must write every index in brackets. The same term grammar is
// used for k-forms, with k indices per term ("12+34", "-1/3 1").

#include "lcs/error.hpp"
#include "lcs/exterior.hpp"
#include "lcs/lie_algebra.hpp"
#include "lcs/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lcs {

using Parameters = std::map<std::string, Rational>;

struct StructureEquationSource {
    std::string text;
    Parameters parameters;
};

namespace detail {

enum class TokenKind { Number, Ident, Bracket, Plus, Minus, Star, Slash, LParen, RParen };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t column;           // 1-based, in code points
    bool space_before = false;
};

inline bool is_ident_byte(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }

/// Text fragment with a base position for error reporting.
class Cursor {
public:
    Cursor(std::string_view text, std::size_t line, std::size_t column) : text_(text), line_(line), column_(column) {}

    std::vector<Token> tokenize() const {
        std::vector<Token> out;
        std::size_t col = column_;
        bool space = false;
        for (std::size_t i = 0; i < text_.size();) {
            const auto c = static_cast<unsigned char>(text_[i]);
            if (std::isspace(c)) {
                space = true;
                ++i;
                ++col;
                continue;
            }
            Token t{TokenKind::Number, "", col, space};
            space = false;
            if (std::isdigit(c)) {
                while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) t.text += text_[i++];
                col += t.text.size();
            } else if (is_ident_byte(c)) {
                t.kind = TokenKind::Ident;
                while (i < text_.size() && is_ident_byte(static_cast<unsigned char>(text_[i]))) {
                    if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++col;
                    t.text += text_[i++];
                }
            } else if (c == '[') {
                t.kind = TokenKind::Bracket;
                ++i;
                ++col;
                while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) {
                    t.text += text_[i++];
                    ++col;
                }
                if (i >= text_.size() || text_[i] != ']' || t.text.empty())
                    throw ParseError("malformed bracketed index", line_, t.column);
                ++i;
                ++col;
            } else {
                switch (c) {
                    case '+': t.kind = TokenKind::Plus; break;
                    case '-': t.kind = TokenKind::Minus; break;
                    case '*': t.kind = TokenKind::Star; break;
                    case '/': t.kind = TokenKind::Slash; break;
                    case '(': t.kind = TokenKind::LParen; break;
                    case ')': t.kind = TokenKind::RParen; break;
                    default: throw ParseError(std::string("unexpected character '") + text_[i] + "'", line_, col);
                }
                t.text = std::string(1, text_[i]);
                ++i;
                ++col;
            }
            out.push_back(std::move(t));
        }
        return out;
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t column_;
};

/// Recursive-descent evaluator for coefficient expressions.
class CoefficientParser {
public:
    CoefficientParser(const std::vector<Token>& tokens, std::size_t begin, std::size_t end, const Parameters& params,
                      std::size_t line)
        : t_(tokens), pos_(begin), end_(end), params_(params), line_(line) {}

    Rational parse() {
        Rational v = sum();
        if (pos_ != end_) fail("unexpected token '" + t_[pos_].text + "' in coefficient");
        return v;
    }

private:
    Rational sum() {
        Rational v = product();
        while (pos_ < end_ && (t_[pos_].kind == TokenKind::Plus || t_[pos_].kind == TokenKind::Minus)) {
            const bool minus = t_[pos_++].kind == TokenKind::Minus;
            const Rational r = product();
            v = minus ? Rational(v - r) : Rational(v + r);
        }
        return v;
    }

    Rational product() {
        Rational v = unary();
        while (pos_ < end_) {
            const auto k = t_[pos_].kind;
            if (k == TokenKind::Star) {
                ++pos_;
                v *= unary();
            } else if (k == TokenKind::Slash) {
                const std::size_t at = pos_++;
                const Rational d = unary();
                if (d == 0) fail_at("division by zero", at);
                v /= d;
            } else if (k == TokenKind::Number || k == TokenKind::Ident || k == TokenKind::LParen) {
                v *= unary();
            } else {
                break;
            }
        }
        return v;
    }

    Rational unary() {
        if (pos_ < end_ && t_[pos_].kind == TokenKind::Minus) {
            ++pos_;
            return -unary();
        }
        if (pos_ < end_ && t_[pos_].kind == TokenKind::Plus) {
            ++pos_;
            return unary();
        }
        return factor();
    }

    Rational factor() {
        if (pos_ >= end_) fail("coefficient expression ends unexpectedly");
        const Token& tok = t_[pos_];
        switch (tok.kind) {
            case TokenKind::Number: {
                ++pos_;
                return Rational(Integer(tok.text));
            }
            case TokenKind::Ident: {
                ++pos_;
                auto it = params_.find(tok.text);
                if (it == params_.end()) fail_at("unbound parameter '" + tok.text + "'", pos_ - 1);
                return it->second;
            }
            case TokenKind::LParen: {
                ++pos_;
                Rational v = sum();
                if (pos_ >= end_ || t_[pos_].kind != TokenKind::RParen) fail("missing ')'");
                ++pos_;
                return v;
            }
            default: fail("unexpected token '" + tok.text + "' in coefficient");
        }
        return 0;
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
        const std::size_t col = at < t_.size() ? t_[at].column : (t_.empty() ? 1 : t_.back().column);
        throw ParseError(msg, line_, col);
    }

    const std::vector<Token>& t_;
    std::size_t pos_;
    std::size_t end_;
    const Parameters& params_;
    std::size_t line_;
};

/// Parses a sum of terms, each with exactly `degree` indices in 1..dim, into
/// a k-form. "0" (or empty) is the zero form.
inline KForm parse_terms(const Cursor& cur, std::size_t dim, std::size_t degree, const Parameters& params) {
    const auto tokens = cur.tokenize();
    KForm out(dim, degree);
    if (tokens.empty()) return out;
    if (tokens.size() == 1 && tokens[0].kind == TokenKind::Number && tokens[0].text == "0") return out;

    // Split at top-level +/- that follow a completed index group.
    std::vector<std::pair<std::size_t, std::size_t>> terms;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto k = tokens[i].kind;
        if (k == TokenKind::LParen) ++depth;
        if (k == TokenKind::RParen) {
            if (--depth < 0) throw ParseError("unbalanced ')'", cur.line(), tokens[i].column);
        }
        if (depth == 0 && i > start && (k == TokenKind::Plus || k == TokenKind::Minus)) {
            const auto prev = tokens[i - 1].kind;
            if (prev == TokenKind::Number || prev == TokenKind::Bracket) {
                terms.emplace_back(start, i);
                start = i;
            }
        }
    }
    if (depth != 0) throw ParseError("unbalanced '('", cur.line(), tokens.back().column);
    terms.emplace_back(start, tokens.size());

    const bool bracketed_required = dim > 9;
    for (auto [b, e] : terms) {
        if (b == e) throw ParseError("empty term", cur.line(), cur.column());
        // The index group is a trailing digit run or a trailing run of brackets.
        std::vector<std::size_t> indices;
        std::size_t coeff_end = e;
        const Token& last = tokens[e - 1];
        if (last.kind == TokenKind::Bracket) {
            while (coeff_end > b && tokens[coeff_end - 1].kind == TokenKind::Bracket) --coeff_end;
            for (std::size_t i = coeff_end; i < e; ++i) indices.push_back(std::stoul(tokens[i].text));
        } else if (last.kind == TokenKind::Number) {
            if (bracketed_required)
                throw ParseError("dimension " + std::to_string(dim) + " requires bracketed indices like [1][12]",
                                 cur.line(), last.column);
            coeff_end = e - 1;
            for (char c : last.text) indices.push_back(static_cast<std::size_t>(c - '0'));
        } else {
            throw ParseError("term must end with an index group", cur.line(), last.column);
        }
        if (indices.size() != degree)
            throw ParseError("expected " + std::to_string(degree) + " indices, found " + std::to_string(indices.size()),
                             cur.line(), last.column);
        for (auto i : indices)
            if (i < 1 || i > dim)
                throw ParseError("index " + std::to_string(i) + " out of range 1.." + std::to_string(dim), cur.line(),
                                 last.column);
        for (std::size_t a = 0; a < indices.size(); ++a)
            for (std::size_t c = a + 1; c < indices.size(); ++c)
                if (indices[a] == indices[c])
                    throw ParseError("repeated index " + std::to_string(indices[a]), cur.line(), last.column);

        Rational coeff = 1;
        std::size_t cb = b;
        bool negate = false;
        while (cb < coeff_end && (tokens[cb].kind == TokenKind::Plus || tokens[cb].kind == TokenKind::Minus)) {
            if (tokens[cb].kind == TokenKind::Minus) negate = !negate;
            ++cb;
        }
        if (cb < coeff_end) coeff = CoefficientParser(tokens, cb, coeff_end, params, cur.line()).parse();
        if (negate) coeff = -coeff;

        std::vector<std::size_t> zero_based;
        for (auto i : indices) zero_based.push_back(i - 1);
        out += KForm::monomial(dim, zero_based, coeff);
    }
    return out;
}

/// Splits "(a,b,c)" into its entries with their starting columns.
inline std::vector<std::pair<std::string_view, std::size_t>> split_tuple(std::string_view text, std::size_t line,
                                                                          std::size_t column) {
    std::size_t b = 0;
    while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    std::size_t e = text.size();
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (b >= e || text[b] != '(') throw ParseError("structure equations must start with '('", line, column + b);
    if (text[e - 1] != ')') throw ParseError("structure equations must end with ')'", line, column + e - 1);
    std::vector<std::pair<std::string_view, std::size_t>> entries;
    int depth = 0;
    std::size_t start = b + 1;
    for (std::size_t i = b + 1; i < e - 1; ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (text[i] == ',' && depth == 0) {
            entries.emplace_back(text.substr(start, i - start), column + start);
            start = i + 1;
        }
    }
    entries.emplace_back(text.substr(start, e - 1 - start), column + start);
    return entries;
}

} // namespace detail

/// Parses a k-form written in the term grammar, e.g. "12+34" for
/// e^{12}+e^{34} or "-1/3 1" for -(1/3) e^1.
inline KForm parse_form(std::string_view text, std::size_t dim, std::size_t degree, const Parameters& params = {},
                        std::size_t line = 1, std::size_t column = 1) {
    return detail::parse_terms(detail::Cursor(text, line, column), dim, degree, params);
}

/// Parses the tuple notation into a LieAlgebra. Parameters are substituted
/// at parse time. Throws ParseError on malformed input or unbound
/// parameters, and JacobiError (with a witness triple) if the result is not
/// a Lie algebra.
inline LieAlgebra parse_structure_equations(const StructureEquationSource& src, std::size_t line = 1,
                                            std::size_t column = 1) {
    const auto entries = detail::split_tuple(src.text, line, column);
    const std::size_t n = entries.size();
    if (n > kMaxDimension)
        throw ParseError("dimension " + std::to_string(n) + " exceeds the supported maximum", line, column);
    StructureConstants c(n);
    if (n == 1) {
        // d e^1 is a 2-form on a 1-dimensional space: must be "0".
        const auto tokens = detail::Cursor(entries[0].first, line, entries[0].second).tokenize();
        if (!(tokens.empty() || (tokens.size() == 1 && tokens[0].text == "0")))
            throw ParseError("a 1-dimensional algebra has zero structure equations", line, entries[0].second);
        return LieAlgebra(std::move(c));
    }
    for (std::size_t k = 0; k < n; ++k) {
        const auto [text, col] = entries[k];
        const KForm dk = detail::parse_terms(detail::Cursor(text, line, col), n, 2, src.parameters);
        for (const auto& [m, coeff] : dk.terms()) {
            const auto idx = mask_indices(m);
            c.set(idx[0], idx[1], k, -coeff);
        }
    }
    return LieAlgebra(std::move(c));
}

namespace detail {

inline std::string format_index_group(Mask m, std::size_t dim) {
    std::string out;
    for (auto i : mask_indices(m)) out += dim > 9 ? "[" + std::to_string(i + 1) + "]" : std::to_string(i + 1);
    return out;
}

inline std::string format_terms(const KForm& f) {
    if (f.is_zero()) return "0";
    std::vector<Mask> masks;
    for (const auto& [m, c] : f.terms()) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](Mask a, Mask b) { return mask_indices(a) < mask_indices(b); });
    std::string out;
    for (Mask m : masks) {
        const Rational c = f.coefficient(m);
        const bool neg = c < 0;
        const Rational a = neg ? Rational(-c) : c;
        if (neg)
            out += "-";
        else if (!out.empty())
            out += "+";
        if (f.degree() == 0) {
            out += a.get_str();
            continue;
        }
        if (a != 1) out += a.get_str() + " ";
        out += format_index_group(m, f.dim());
    }
    return out;
}

} // namespace detail

/// Normalized term notation for a k-form: lexicographic term order, unit
/// coefficients omitted, other coefficients followed by a space.
inline std::string format_form(const KForm& f) { return detail::format_terms(f); }

/// Normalized tuple notation; parse_structure_equations inverts it.
inline std::string format_structure_equations(const LieAlgebra& g) {
    if (g.dim() == 1) return "(0)";
    const auto d = structure_forms(g);
    std::string out = "(";
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (k) out += ",";
        out += detail::format_terms(d[k]);
    }
    return out + ")";
}

} // namespace lcs
