#pragma once

// Exterior algebra on the dual of a Lie algebra: k-forms, wedge product,
// Chevalley-Eilenberg differential, adjoint maps and unimodularity.
//
// A monomial e^{i_1...i_k} (i_1 < ... < i_k) is stored as the bit mask with
// bits i_1..i_k set (zero-based). Enumerating masks of fixed popcount in
// increasing numeric order is the colexicographic order of k-subsets, which
// is also the row/column order of every operator matrix built here.

#include "lcs/error.hpp"
#include "lcs/lie_algebra.hpp"
#include "lcs/matrix.hpp"
#include "lcs/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace lcs {

using Mask = std::uint32_t;

inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

/// Zero-based indices of the set bits, increasing.
inline std::vector<std::size_t> mask_indices(Mask m) {
    std::vector<std::size_t> out;
    while (m) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

inline Mask mask_of(std::initializer_list<std::size_t> zero_based) {
    Mask m = 0;
    for (auto i : zero_based) m |= Mask{1} << i;
    return m;
}

/// Sign of e^a ^ e^b relative to e^{a|b} for disjoint masks: (-1) to the
/// number of pairs (i in a, j in b) with i > j.
inline int wedge_sign(Mask a, Mask b) {
    std::size_t inversions = 0;
    while (b) {
        const auto j = std::countr_zero(b);
        b &= b - 1;
        inversions += popcount(a >> (j + 1));
    }
    return (inversions & 1U) ? -1 : 1;
}

/// Colex-ordered basis of the k-th exterior power of an n-dimensional space.
class FormBasis {
public:
    FormBasis(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {
        if (degree <= dim)
            for (Mask m = 0; m < (Mask{1} << dim); ++m)
                if (popcount(m) == degree) masks_.push_back(m);
    }

    std::size_t size() const noexcept { return masks_.size(); }
    Mask operator[](std::size_t r) const { return masks_[r]; }
    const std::vector<Mask>& masks() const noexcept { return masks_; }

    std::size_t rank_of(Mask m) const {
        auto it = std::lower_bound(masks_.begin(), masks_.end(), m);
        if (it == masks_.end() || *it != m) throw InvalidArgument("FormBasis: mask not in basis");
        return static_cast<std::size_t>(it - masks_.begin());
    }

private:
    std::size_t dim_;
    std::size_t degree_;
    std::vector<Mask> masks_;
};

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Alternating k-form on an n-dimensional space with exact coefficients.
/// Only nonzero coefficients are stored.
class KForm {
public:
    KForm(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {
        if (dim == 0 || dim > kMaxDimension) throw InvalidArgument("KForm: ambient dimension out of range");
        if (degree > dim)
            throw InvalidArgument("KForm: degree " + std::to_string(degree) + " exceeds dimension " +
                                  std::to_string(dim));
    }

    static KForm zero(std::size_t dim, std::size_t degree) { return KForm(dim, degree); }

    /// The zero form of a degree above the dimension. Only produced as the
    /// result of wedge products and differentials; never holds a term.
    static KForm vanishing(std::size_t dim, std::size_t degree) {
        KForm f(dim, 0);
        f.degree_ = degree;
        return f;
    }

    static KForm scalar(std::size_t dim, const Rational& value) {
        KForm f(dim, 0);
        f.add(0, value);
        return f;
    }

    /// coeff * e^{i_1 ... i_k} with zero-based indices in any order; the
    /// sign of the sorting permutation is applied.
    static KForm monomial(std::size_t dim, std::vector<std::size_t> indices, const Rational& coeff = 1) {
        KForm f(dim, indices.size());
        int sign = 1;
        for (std::size_t a = 0; a < indices.size(); ++a)
            for (std::size_t b = a + 1; b < indices.size(); ++b) {
                if (indices[a] == indices[b]) return f;
                if (indices[a] > indices[b]) sign = -sign;
            }
        Mask m = 0;
        for (auto i : indices) {
            if (i >= dim) throw InvalidArgument("KForm::monomial: index out of range");
            m |= Mask{1} << i;
        }
        f.add(m, sign > 0 ? coeff : Rational(-coeff));
        return f;
    }

    /// 1-form with the given coordinates.
    static KForm one_form(const Vector& coords) {
        KForm f(coords.size(), 1);
        for (std::size_t i = 0; i < coords.size(); ++i) f.add(Mask{1} << i, coords[i]);
        return f;
    }

    /// 2-form with omega(e_i, e_j) = gram(i, j) (gram must be skew).
    static KForm from_gram(const QMatrix& gram) {
        if (!gram.is_square()) throw InvalidArgument("KForm::from_gram: matrix is not square");
        for (std::size_t i = 0; i < gram.rows(); ++i)
            for (std::size_t j = 0; j < gram.cols(); ++j)
                if (gram(i, j) != -gram(j, i)) throw InvalidArgument("KForm::from_gram: matrix is not skew");
        KForm f(gram.rows(), 2);
        for (std::size_t i = 0; i < gram.rows(); ++i)
            for (std::size_t j = i + 1; j < gram.rows(); ++j) f.add((Mask{1} << i) | (Mask{1} << j), gram(i, j));
        return f;
    }

    /// Coefficients in the colex basis of FormBasis(dim, degree).
    static KForm from_coordinates(std::size_t dim, std::size_t degree, const Vector& coords) {
        FormBasis basis(dim, degree);
        if (coords.size() != basis.size()) throw InvalidArgument("KForm::from_coordinates: length mismatch");
        KForm f(dim, degree);
        for (std::size_t r = 0; r < basis.size(); ++r) f.add(basis[r], coords[r]);
        return f;
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t degree() const noexcept { return degree_; }
    const std::map<Mask, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coefficient(Mask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(Mask m, const Rational& value) {
        if (popcount(m) != degree_ || (dim_ < 32 && (m >> dim_) != 0))
            throw InvalidArgument("KForm::add: monomial does not match degree/dimension");
        if (value == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, value);
        if (!inserted) {
            it->second += value;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Vector coordinates() const {
        FormBasis basis(dim_, degree_);
        Vector v(basis.size(), Rational(0));
        for (const auto& [m, c] : terms_) v[basis.rank_of(m)] = c;
        return v;
    }

    /// Value on k vectors: sum over monomials of coeff * det of the minor.
    Rational evaluate(const std::vector<Vector>& args) const {
        if (args.size() != degree_) throw InvalidArgument("KForm::evaluate: wrong number of arguments");
        for (const auto& a : args)
            if (a.size() != dim_) throw InvalidArgument("KForm::evaluate: argument length mismatch");
        if (degree_ == 0) return coefficient(0);
        Rational total = 0;
        for (const auto& [m, c] : terms_) {
            const auto idx = mask_indices(m);
            QMatrix minor(degree_, degree_);
            for (std::size_t r = 0; r < degree_; ++r)
                for (std::size_t s = 0; s < degree_; ++s) minor(r, s) = args[s][idx[r]];
            total += c * determinant(std::move(minor));
        }
        return total;
    }

    /// Coordinates of a 1-form.
    Vector as_vector() const {
        if (degree_ != 1) throw InvalidArgument("KForm::as_vector: form is not of degree 1");
        Vector v(dim_, Rational(0));
        for (const auto& [m, c] : terms_) v[static_cast<std::size_t>(std::countr_zero(m))] = c;
        return v;
    }

    /// Skew matrix omega(e_i, e_j) of a 2-form.
    QMatrix gram() const {
        if (degree_ != 2) throw InvalidArgument("KForm::gram: form is not of degree 2");
        QMatrix g(dim_, dim_);
        for (const auto& [m, c] : terms_) {
            const auto idx = mask_indices(m);
            g(idx[0], idx[1]) = c;
            g(idx[1], idx[0]) = -c;
        }
        return g;
    }

    KForm& operator+=(const KForm& o) {
        require_compatible(o);
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    KForm& operator-=(const KForm& o) {
        require_compatible(o);
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    KForm& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend KForm operator+(KForm a, const KForm& b) { return a += b; }
    friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
    friend KForm operator-(KForm a) { return a *= Rational(-1); }
    friend KForm operator*(const Rational& s, KForm a) { return a *= s; }
    friend KForm operator*(KForm a, const Rational& s) { return a *= s; }

    friend bool operator==(const KForm& a, const KForm& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    /// Human-readable form like "e^{12} - 1/2 e^{34}" (one-based indices).
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            const bool neg = c < 0;
            const Rational a = neg ? Rational(-c) : c;
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (degree_ == 0) {
                out += a.get_str();
                continue;
            }
            if (a != 1) out += a.get_str() + " ";
            out += "e^{";
            const auto idx = mask_indices(m);
            for (std::size_t r = 0; r < idx.size(); ++r) {
                if (dim_ > 9 && r) out += ",";
                out += std::to_string(idx[r] + 1);
            }
            out += "}";
        }
        return out;
    }

private:
    void require_compatible(const KForm& o) const {
        if (dim_ != o.dim_) throw InvalidArgument("KForm: ambient dimension mismatch");
        if (degree_ != o.degree_) throw InvalidArgument("KForm: degree mismatch");
    }

    std::size_t dim_;
    std::size_t degree_;
    std::map<Mask, Rational> terms_;
};

/// Exterior product. Degrees add; past the dimension the result is zero.
inline KForm wedge(const KForm& a, const KForm& b) {
    if (a.dim() != b.dim()) throw InvalidArgument("wedge: ambient dimension mismatch");
    if (a.degree() + b.degree() > a.dim()) return KForm::vanishing(a.dim(), a.degree() + b.degree());
    KForm out(a.dim(), a.degree() + b.degree());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            const Rational v = ca * cb;
            out.add(ma | mb, wedge_sign(ma, mb) > 0 ? v : Rational(-v));
        }
    return out;
}

/// The structure 2-forms d e^k = -sum_{i<j} c^k_{ij} e^{ij}, one per k.
inline std::vector<KForm> structure_forms(const LieAlgebra& g) {
    const std::size_t n = g.dim();
    std::vector<KForm> d(n, KForm(n, n >= 2 ? 2 : 0));
    if (n < 2) return d;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Rational& c = g.constant(i, j, k);
                if (c != 0) d[k].add((Mask{1} << i) | (Mask{1} << j), -c);
            }
    return d;
}

/// Chevalley-Eilenberg differential. On 1-forms d alpha(X, Y) =
/// -alpha([X, Y]); extended to higher degrees as an antiderivation:
/// d e^I = sum_r (-1)^r d e^{i_r} ^ e^{I minus i_r}.
inline KForm ce_differential(const LieAlgebra& g, const KForm& a) {
    if (a.dim() != g.dim()) throw InvalidArgument("ce_differential: dimension mismatch");
    const std::size_t n = g.dim();
    if (a.degree() >= n) return KForm::vanishing(n, a.degree() + 1);
    KForm out(n, a.degree() + 1);
    if (a.degree() == 0) return out;
    const auto d = structure_forms(g);
    for (const auto& [m, coeff] : a.terms()) {
        const auto idx = mask_indices(m);
        for (std::size_t r = 0; r < idx.size(); ++r) {
            const Mask rest = m & ~(Mask{1} << idx[r]);
            const bool odd = r & 1U;
            for (const auto& [m2, c2] : d[idx[r]].terms()) {
                if (m2 & rest) continue;
                Rational v = coeff * c2;
                if (odd != (wedge_sign(m2, rest) < 0)) v = -v;
                out.add(m2 | rest, v);
            }
        }
    }
    return out;
}

/// Matrix of a linear map Lambda^k -> Lambda^{k'} in the colex bases.
inline QMatrix operator_matrix(std::size_t dim, std::size_t from_degree, std::size_t to_degree,
                               const std::function<KForm(const KForm&)>& map) {
    const FormBasis src(dim, from_degree);
    const FormBasis dst(dim, to_degree);
    QMatrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        KForm e(dim, from_degree);
        e.add(src[j], 1);
        const KForm image = map(e);
        for (const auto& [mask, c] : image.terms()) m(dst.rank_of(mask), j) = c;
    }
    return m;
}

/// Matrix of d: Lambda^k -> Lambda^{k+1} (C(n,k+1) x C(n,k)).
inline QMatrix differential_matrix(const LieAlgebra& g, std::size_t degree) {
    if (degree >= g.dim()) return QMatrix(0, binomial(g.dim(), degree));
    return operator_matrix(g.dim(), degree, degree + 1, [&](const KForm& f) { return ce_differential(g, f); });
}

/// Matrix of ad_x: y -> [x, y].
inline QMatrix adjoint(const LieAlgebra& g, const Vector& x) {
    if (x.size() != g.dim()) throw InvalidArgument("adjoint: vector length mismatch");
    const std::size_t n = g.dim();
    QMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vector col = g.bracket(x, unit_vector(n, j));
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

inline bool is_unimodular(const LieAlgebra& g) {
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (adjoint(g, unit_vector(g.dim(), i)).trace() != 0) return false;
    return true;
}

/// Basis of the center: common kernel of all ad_{e_i}.
inline std::vector<Vector> center(const LieAlgebra& g) {
    const std::size_t n = g.dim();
    QMatrix stacked(n * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const QMatrix ad = adjoint(g, unit_vector(n, i));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) stacked(i * n + r, c) = ad(r, c);
    }
    return nullspace(stacked);
}

/// Derived algebra [g, g] as a spanning set reduced to a basis.
inline std::vector<Vector> derived_algebra(const LieAlgebra& g) {
    const std::size_t n = g.dim();
    std::vector<Vector> spanning;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) spanning.push_back(g.bracket_basis(i, j));
    if (spanning.empty()) return {};
    const RowEchelon e = rref(QMatrix::from_columns(spanning, n).transpose());
    std::vector<Vector> basis;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis.push_back(e.reduced.row(r));
    return basis;
}

} // namespace lcs
