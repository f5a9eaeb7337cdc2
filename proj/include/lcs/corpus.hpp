#pragma once

// Corpus files: one algebra per line as `;`-separated key=value fields.
//
//   name=rr_{3,-1}; eq=(0,-12,13,0); omega=12+34; theta=1;
//   expect.kind=second; expect.unimodular=yes; note=...
//
// Keys: name (required), eq (required), params (`α=-3/4,δ=1`), omega,
// theta, expect.kind (first|second|symplectic), expect.unimodular,
// expect.exact, expect.decomposable (yes|no), expect.n (rational), note.
// Blank lines and lines starting with '#' are ignored.
//
// Representation files (for extensions) hold one key=value per line:
//
//   vdim = 4
//   omega0 = 12+34
//   pi.1 = 0 0 0 0; 0 -1 0 0; 0 0 -1 0; 0 0 0 0
//   pi.2 = diag(1, -1, 0, 0)
//
// Matrix rows are separated by ';'. Unlisted pi.i are zero.

#include "lcs/construct.hpp"
#include "lcs/error.hpp"
#include "lcs/exterior.hpp"
#include "lcs/lcs_structure.hpp"
#include "lcs/lie_algebra.hpp"
#include "lcs/notation.hpp"
#include "lcs/rational.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lcs {

/// Text with the position of its first character in the source file.
struct Located {
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

struct Expectations {
    std::optional<Kind> kind;
    std::optional<bool> unimodular;
    std::optional<bool> exact;
    std::optional<bool> decomposable;
    std::optional<Rational> extension_dim;
};

struct CorpusEntry {
    std::string name;
    Located equations;
    Parameters parameters;
    std::optional<Located> omega;
    std::optional<Located> theta;
    Expectations expect;
    std::string note;
    std::size_t line = 0;

    StructureEquationSource source() const { return {equations.text, parameters}; }
    LieAlgebra algebra() const { return parse_structure_equations(source(), equations.line, equations.column); }

    bool has_structure() const { return omega.has_value(); }

    KForm omega_form(std::size_t dim) const {
        if (!omega) throw InvalidArgument("corpus entry " + name + " has no omega");
        return parse_form(omega->text, dim, 2, parameters, omega->line, omega->column);
    }

    /// Missing theta means theta = 0.
    KForm theta_form(std::size_t dim) const {
        if (!theta) return KForm(dim, 1);
        return parse_form(theta->text, dim, 1, parameters, theta->line, theta->column);
    }
};

namespace detail {

inline std::size_t codepoints(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Splits at `sep`, returning trimmed pieces with their byte offsets.
inline std::vector<std::pair<std::string_view, std::size_t>> split_trimmed(std::string_view s, char sep) {
    std::vector<std::pair<std::string_view, std::size_t>> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] != sep) continue;
        std::string_view piece = s.substr(start, i - start);
        std::size_t off = start;
        while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front()))) {
            piece.remove_prefix(1);
            ++off;
        }
        piece = trim(piece);
        out.emplace_back(piece, off);
        start = i + 1;
    }
    return out;
}

inline bool parse_flag(std::string_view v, std::size_t line, std::size_t col) {
    if (v == "yes" || v == "true") return true;
    if (v == "no" || v == "false") return false;
    throw ParseError("expected yes or no, got '" + std::string(v) + "'", line, col);
}

inline Kind parse_kind(std::string_view v, std::size_t line, std::size_t col) {
    if (v == "first") return Kind::First;
    if (v == "second") return Kind::Second;
    if (v == "symplectic") return Kind::Symplectic;
    throw ParseError("expected first, second or symplectic, got '" + std::string(v) + "'", line, col);
}

inline Parameters parse_parameters(std::string_view v, std::size_t line, std::size_t col) {
    Parameters out;
    for (auto [piece, off] : split_trimmed(v, ',')) {
        const std::size_t c = col + codepoints(v.substr(0, off));
        if (piece.empty()) continue;
        const auto eq = piece.find('=');
        if (eq == std::string_view::npos) throw ParseError("parameter needs name=value", line, c);
        const std::string name(trim(piece.substr(0, eq)));
        const auto value = parse_rational(trim(piece.substr(eq + 1)));
        if (name.empty() || !value) throw ParseError("bad parameter assignment '" + std::string(piece) + "'", line, c);
        if (!out.emplace(name, *value).second) throw ParseError("parameter " + name + " given twice", line, c);
    }
    return out;
}

} // namespace detail

/// Parses one record line.
inline CorpusEntry parse_corpus_line(std::string_view text, std::size_t line) {
    CorpusEntry e;
    e.line = line;
    bool have_eq = false;
    for (auto [field, off] : detail::split_trimmed(text, ';')) {
        if (field.empty()) continue;
        const std::size_t col = 1 + detail::codepoints(text.substr(0, off));
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) throw ParseError("field needs key=value", line, col);
        const std::string key(detail::trim(field.substr(0, eq)));
        std::string_view raw = field.substr(eq + 1);
        std::size_t voff = eq + 1;
        while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) {
            raw.remove_prefix(1);
            ++voff;
        }
        const std::size_t vcol = col + detail::codepoints(field.substr(0, voff));
        const std::string value(raw);
        if (key == "name")
            e.name = value;
        else if (key == "eq") {
            e.equations = {value, line, vcol};
            have_eq = true;
        } else if (key == "params")
            e.parameters = detail::parse_parameters(raw, line, vcol);
        else if (key == "omega")
            e.omega = Located{value, line, vcol};
        else if (key == "theta")
            e.theta = Located{value, line, vcol};
        else if (key == "expect.kind")
            e.expect.kind = detail::parse_kind(raw, line, vcol);
        else if (key == "expect.unimodular")
            e.expect.unimodular = detail::parse_flag(raw, line, vcol);
        else if (key == "expect.exact")
            e.expect.exact = detail::parse_flag(raw, line, vcol);
        else if (key == "expect.decomposable")
            e.expect.decomposable = detail::parse_flag(raw, line, vcol);
        else if (key == "expect.n") {
            const auto r = parse_rational(raw);
            if (!r) throw ParseError("expect.n must be a rational number", line, vcol);
            e.expect.extension_dim = *r;
        } else if (key == "note")
            e.note = value;
        else
            throw ParseError("unknown field '" + key + "'", line, col);
    }
    if (e.name.empty()) throw ParseError("record has no name", line, 1);
    if (!have_eq) throw ParseError("record " + e.name + " has no eq field", line, 1);
    return e;
}

inline std::vector<CorpusEntry> parse_corpus(std::istream& in) {
    std::vector<CorpusEntry> out;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        const auto t = detail::trim(text);
        if (t.empty() || t.front() == '#') continue;
        out.push_back(parse_corpus_line(text, line));
    }
    return out;
}

inline std::vector<CorpusEntry> read_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file " + path);
    return parse_corpus(in);
}

inline std::string format_corpus_entry(const CorpusEntry& e) {
    std::string out = "name=" + e.name + "; eq=" + e.equations.text;
    if (!e.parameters.empty()) {
        out += "; params=";
        bool first = true;
        for (const auto& [k, v] : e.parameters) {
            if (!first) out += ",";
            out += k + "=" + v.get_str();
            first = false;
        }
    }
    if (e.omega) out += "; omega=" + e.omega->text;
    if (e.theta) out += "; theta=" + e.theta->text;
    auto flag = [](bool b) { return b ? "yes" : "no"; };
    if (e.expect.kind) out += std::string("; expect.kind=") + to_string(*e.expect.kind);
    if (e.expect.unimodular) out += std::string("; expect.unimodular=") + flag(*e.expect.unimodular);
    if (e.expect.exact) out += std::string("; expect.exact=") + flag(*e.expect.exact);
    if (e.expect.decomposable) out += std::string("; expect.decomposable=") + flag(*e.expect.decomposable);
    if (e.expect.extension_dim) out += "; expect.n=" + e.expect.extension_dim->get_str();
    if (!e.note.empty()) out += "; note=" + e.note;
    return out;
}

namespace detail {

inline QMatrix parse_matrix_text(std::string_view v, std::size_t dim, std::size_t line, std::size_t col) {
    const auto t = trim(v);
    QMatrix m(dim, dim);
    if (t.substr(0, 5) == "diag(") {
        if (t.back() != ')') throw ParseError("diag( is missing its ')'", line, col);
        const auto entries = split_trimmed(t.substr(5, t.size() - 6), ',');
        if (entries.size() != dim)
            throw ParseError("diag needs " + std::to_string(dim) + " entries", line, col);
        for (std::size_t i = 0; i < dim; ++i) {
            const auto r = parse_rational(entries[i].first);
            if (!r) throw ParseError("bad matrix entry '" + std::string(entries[i].first) + "'", line, col);
            m(i, i) = *r;
        }
        return m;
    }
    const auto rows = split_trimmed(t, ';');
    if (rows.size() != dim) throw ParseError("matrix needs " + std::to_string(dim) + " rows", line, col);
    for (std::size_t i = 0; i < dim; ++i) {
        std::istringstream in{std::string(rows[i].first)};
        std::string tok;
        std::size_t j = 0;
        while (in >> tok) {
            if (!tok.empty() && tok.back() == ',') tok.pop_back();
            if (tok.empty()) continue;
            const auto r = parse_rational(tok);
            if (!r) throw ParseError("bad matrix entry '" + tok + "'", line, col);
            if (j >= dim) throw ParseError("matrix row " + std::to_string(i + 1) + " is too long", line, col);
            m(i, j++) = *r;
        }
        if (j != dim) throw ParseError("matrix row " + std::to_string(i + 1) + " is too short", line, col);
    }
    return m;
}

} // namespace detail

/// Reads a representation of `acting` on a symplectic space.
inline Representation parse_representation(std::istream& in, const LieAlgebra& acting) {
    std::optional<std::size_t> vdim;
    std::optional<Located> omega0;
    std::map<std::size_t, Located> pis;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        const auto t = detail::trim(text);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line, 1);
        const std::string key(detail::trim(std::string_view(text).substr(0, eq)));
        std::size_t voff = eq + 1;
        while (voff < text.size() && std::isspace(static_cast<unsigned char>(text[voff]))) ++voff;
        const std::string value(detail::trim(std::string_view(text).substr(eq + 1)));
        const std::size_t vcol = 1 + detail::codepoints(std::string_view(text).substr(0, voff));
        if (key == "vdim") {
            const auto r = parse_rational(value);
            if (!r || r->get_den() != 1 || *r <= 0) throw ParseError("vdim must be a positive integer", line, vcol);
            vdim = r->get_num().get_ui();
        } else if (key == "omega0")
            omega0 = Located{value, line, vcol};
        else if (key.rfind("pi.", 0) == 0) {
            const auto idx = parse_rational(key.substr(3));
            if (!idx || idx->get_den() != 1 || *idx < 1 || *idx > static_cast<long>(acting.dim()))
                throw ParseError("pi index must be between 1 and " + std::to_string(acting.dim()), line, 1);
            if (!pis.emplace(idx->get_num().get_ui() - 1, Located{value, line, vcol}).second)
                throw ParseError(key + " given twice", line, 1);
        } else
            throw ParseError("unknown key '" + key + "'", line, 1);
    }
    if (!vdim) throw ParseError("representation file has no vdim", 1, 1);
    const SymplecticSpace space = omega0
        ? SymplecticSpace::from_form(parse_form(omega0->text, *vdim, 2, {}, omega0->line, omega0->column))
        : SymplecticSpace::standard(*vdim / 2);
    std::vector<QMatrix> mats(acting.dim(), QMatrix(*vdim, *vdim));
    for (const auto& [i, loc] : pis) mats[i] = detail::parse_matrix_text(loc.text, *vdim, loc.line, loc.column);
    return Representation(acting, space, std::move(mats));
}

inline Representation read_representation(const std::string& path, const LieAlgebra& acting) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open representation file " + path);
    return parse_representation(in, acting);
}

} // namespace lcs
