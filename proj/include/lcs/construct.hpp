#pragma once

// Semidirect extensions h x|_pi V of an LCS algebra by a representation on
// a symplectic vector space, and the converse decomposition along a
// nondegenerate abelian ideal.

#include "lcs/error.hpp"
#include "lcs/exterior.hpp"
#include "lcs/lcs_structure.hpp"
#include "lcs/lie_algebra.hpp"
#include "lcs/matrix.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcs {

class SymplecticSpace {
public:
    explicit SymplecticSpace(QMatrix gram) : gram_(std::move(gram)) {
        if (!gram_.is_square()) throw InvalidArgument("SymplecticSpace: Gram matrix must be square");
        if (gram_.rows() == 0 || gram_.rows() % 2 != 0)
            throw InvalidArgument("SymplecticSpace: dimension must be positive and even");
        if (!(gram_.transpose() == -gram_)) throw InvalidArgument("SymplecticSpace: Gram matrix is not skew");
        const auto inv = inverse(gram_);
        if (!inv) throw InvalidArgument("SymplecticSpace: form is degenerate");
        inverse_ = *inv;
    }

    static SymplecticSpace from_form(const KForm& omega0) {
        if (omega0.degree() != 2) throw InvalidArgument("SymplecticSpace: expected a 2-form");
        return SymplecticSpace(omega0.gram());
    }

    /// e^{12} + e^{34} + ... on a space of dimension 2m.
    static SymplecticSpace standard(std::size_t m) {
        QMatrix g(2 * m, 2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            g(2 * i, 2 * i + 1) = 1;
            g(2 * i + 1, 2 * i) = -1;
        }
        return SymplecticSpace(std::move(g));
    }

    std::size_t dim() const noexcept { return gram_.rows(); }
    const QMatrix& gram() const noexcept { return gram_; }
    KForm form() const { return KForm::from_gram(gram_); }

    /// A* with omega0(Ax, y) = omega0(x, A* y).
    QMatrix adjoint_of(const QMatrix& a) const {
        if (a.rows() != dim() || a.cols() != dim())
            throw InvalidArgument("SymplecticSpace: matrix size differs from space dimension");
        return inverse_ * a.transpose() * gram_;
    }

    bool in_sp(const QMatrix& a) const { return (a.transpose() * gram_ + gram_ * a).is_zero(); }

    friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b) { return a.gram_ == b.gram_; }

private:
    QMatrix gram_;
    QMatrix inverse_;
};

inline QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

/// pi: h -> End(V), one matrix per basis vector of h. Construction checks
/// the homomorphism property on basis pairs.
class Representation {
public:
    Representation(LieAlgebra acting, SymplecticSpace space, std::vector<QMatrix> mats)
        : acting_(std::move(acting)), space_(std::move(space)), mats_(std::move(mats)) {
        if (mats_.size() != acting_.dim())
            throw InvalidArgument("Representation: expected " + std::to_string(acting_.dim()) + " matrices, got " +
                                  std::to_string(mats_.size()));
        for (std::size_t i = 0; i < mats_.size(); ++i)
            if (mats_[i].rows() != space_.dim() || mats_[i].cols() != space_.dim())
                throw InvalidArgument("Representation: matrix " + std::to_string(i + 1) + " has the wrong size");
        for (std::size_t i = 0; i < mats_.size(); ++i)
            for (std::size_t j = i + 1; j < mats_.size(); ++j)
                if (!(of(acting_.bracket_basis(i, j)) == commutator(mats_[i], mats_[j])))
                    throw InvalidArgument("Representation: pi([e" + std::to_string(i + 1) + ", e" +
                                          std::to_string(j + 1) + "]) != [pi(e" + std::to_string(i + 1) + "), pi(e" +
                                          std::to_string(j + 1) + ")]");
    }

    /// Zero action on V.
    static Representation trivial(LieAlgebra acting, SymplecticSpace space) {
        std::vector<QMatrix> mats(acting.dim(), QMatrix(space.dim(), space.dim()));
        return Representation(std::move(acting), std::move(space), std::move(mats));
    }

    const LieAlgebra& acting() const noexcept { return acting_; }
    const SymplecticSpace& space() const noexcept { return space_; }
    const std::vector<QMatrix>& mats() const noexcept { return mats_; }
    const QMatrix& operator[](std::size_t i) const { return mats_.at(i); }

    /// pi(x) for x given in coordinates of the h basis.
    QMatrix of(const Vector& x) const {
        QMatrix out(space_.dim(), space_.dim());
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0) out += x[i] * mats_[i];
        return out;
    }

    friend bool operator==(const Representation& a, const Representation& b) {
        return a.acting_ == b.acting_ && a.space_ == b.space_ && a.mats_ == b.mats_;
    }

private:
    LieAlgebra acting_;
    SymplecticSpace space_;
    std::vector<QMatrix> mats_;
};

/// A = S + R with S omega0-symmetric and R in sp(V, omega0).
inline std::pair<QMatrix, QMatrix> symmetric_skew_split(const SymplecticSpace& v, const QMatrix& a) {
    const QMatrix star = v.adjoint_of(a);
    const Rational half(1, 2);
    return {half * (a + star), half * (a - star)};
}

struct RepresentationCheck {
    bool ok = true;
    std::string diagnosis;
    std::optional<std::size_t> failing_index;  // zero-based
    QMatrix symmetric_part;

    explicit operator bool() const noexcept { return ok; }
};

/// True iff the omega0-symmetric part of every pi(e_i) is -theta(e_i)/2 Id.
inline RepresentationCheck is_lcs_representation(const Representation& rep, const KForm& theta) {
    const auto& h = rep.acting();
    if (theta.degree() != 1 || theta.dim() != h.dim())
        throw InvalidArgument("is_lcs_representation: theta must be a 1-form on the acting algebra");
    const std::size_t d = rep.space().dim();
    const Vector t = theta.as_vector();
    std::vector<QMatrix> skew;
    for (std::size_t i = 0; i < h.dim(); ++i) {
        auto [s, r] = symmetric_skew_split(rep.space(), rep[i]);
        const QMatrix expected = (-t[i] / 2) * QMatrix::identity(d);
        if (!(s == expected)) {
            RepresentationCheck c;
            c.ok = false;
            c.failing_index = i;
            c.diagnosis = "symmetric part of pi(e" + std::to_string(i + 1) + ") is " + s.str() + ", expected " +
                          to_string(Rational(-t[i] / 2)) + " Id";
            c.symmetric_part = std::move(s);
            return c;
        }
        skew.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < h.dim(); ++i) {
        if (!rep.space().in_sp(skew[i])) throw InternalError("is_lcs_representation: skew part left sp(V)");
        for (std::size_t j = i + 1; j < h.dim(); ++j) {
            QMatrix lhs(d, d);
            const Vector b = h.bracket_basis(i, j);
            for (std::size_t k = 0; k < b.size(); ++k)
                if (b[k] != 0) lhs += b[k] * skew[k];
            if (!(lhs == commutator(skew[i], skew[j])))
                throw InternalError("is_lcs_representation: skew part is not a representation");
        }
    }
    return {};
}

struct ExtensionResult {
    LieAlgebra algebra;
    LcsStructure structure;
    KindVerdict verdict;
    bool exact = false;
    bool unimodular = false;
    std::size_t acting_dim = 0;
};

/// Zero-pads a 1-form on the first block to the full algebra.
inline KForm pad_one_form(const KForm& theta, std::size_t dim) {
    Vector v = theta.as_vector();
    v.resize(dim, Rational(0));
    return KForm::one_form(v);
}

/// Builds g = h x|_pi V (basis: h first, then V) with omega~ = omega + omega0
/// and theta~ = theta + 0, and verifies the result: LCS, omega-orthogonal
/// blocks, second kind and non-exact (symplectic when theta = 0).
inline ExtensionResult extend(const LieAlgebra& h, const KForm& omega, const KForm& theta, const Representation& rep) {
    require_lcs(h, omega, theta, "extend");
    if (!(rep.acting() == h)) throw InvalidArgument("extend: representation acts on a different algebra");
    if (auto c = is_lcs_representation(rep, theta); !c)
        throw InvalidArgument("extend: not an LCS representation: " + c.diagnosis);

    const std::size_t p = h.dim();
    const std::size_t m2 = rep.space().dim();
    const std::size_t n = p + m2;
    if (n > kMaxDimension) throw InvalidArgument("extend: result dimension " + std::to_string(n) + " is too large");

    StructureConstants c(n);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            for (std::size_t k = 0; k < p; ++k) c.set(i, j, k, h.constant(i, j, k));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t a = 0; a < m2; ++a)
            for (std::size_t b = 0; b < m2; ++b) c.set(i, p + a, p + b, rep[i](b, a));

    LieAlgebra g(std::move(c));
    KForm omega_t = KForm::from_gram(block_diagonal(omega.gram(), rep.space().gram()));
    KForm theta_t = pad_one_form(theta, n);

    if (auto chk = check_lcs(g, omega_t, theta_t); !chk)
        throw InternalError("extend: result fails the LCS check: " + chk.diagnosis);
    KindVerdict verdict = classify_kind(g, omega_t, theta_t);
    const bool symplectic = theta.is_zero();
    if (verdict.kind != (symplectic ? Kind::Symplectic : Kind::Second))
        throw InternalError(std::string("extend: result has kind ") + to_string(verdict.kind));
    const bool exact = is_exact(g, omega_t, theta_t).has_value();
    if (!symplectic && exact) throw InternalError("extend: result is exact");

    const bool unimodular = is_unimodular(g);
    return {std::move(g), {std::move(omega_t), std::move(theta_t)}, std::move(verdict), exact, unimodular, p};
}

/// The rational n with tr(ad_{e_i}) = n theta(e_i) for all i, if any. An
/// extension by an LCS representation on a 2n-dimensional space is
/// unimodular exactly for this n.
inline std::optional<Rational> unimodular_extension_dim(const LieAlgebra& h, const KForm& theta) {
    if (theta.degree() != 1 || theta.dim() != h.dim())
        throw InvalidArgument("unimodular_extension_dim: theta must be a 1-form on the algebra");
    if (theta.is_zero()) throw InvalidArgument("unimodular_extension_dim: theta must be nonzero");
    const Vector t = theta.as_vector();
    Vector traces;
    for (std::size_t i = 0; i < h.dim(); ++i) traces.push_back(adjoint(h, unit_vector(h.dim(), i)).trace());
    std::optional<Rational> n;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] != 0) {
            n = traces[i] / t[i];
            break;
        }
    for (std::size_t i = 0; i < t.size(); ++i)
        if (traces[i] != *n * t[i]) return std::nullopt;
    return n;
}

enum class IdealFailure { None, Dependent, NotIdeal, NotAbelian, Degenerate, ThetaNonvanishing };

inline const char* to_string(IdealFailure f) {
    switch (f) {
        case IdealFailure::None: return "ok";
        case IdealFailure::Dependent: return "linearly dependent spanning set";
        case IdealFailure::NotIdeal: return "not an ideal";
        case IdealFailure::NotAbelian: return "not abelian";
        case IdealFailure::Degenerate: return "omega degenerate on the subspace";
        case IdealFailure::ThetaNonvanishing: return "not contained in ker theta";
    }
    return "?";
}

struct IdealCheck {
    IdealFailure failure = IdealFailure::None;
    std::string diagnosis;
    /// NotIdeal: [e_i, u] outside the span; NotAbelian: nonzero [u_a, u_b];
    /// Degenerate: kernel vector of the restriction; ThetaNonvanishing: u_a.
    Vector witness;

    explicit operator bool() const noexcept { return failure == IdealFailure::None; }
};

class DecompositionError : public InvalidArgument {
public:
    explicit DecompositionError(IdealCheck c)
        : InvalidArgument(std::string("decompose: ") + to_string(c.failure) + ": " + c.diagnosis),
          check_(std::move(c)) {}

    IdealFailure reason() const noexcept { return check_.failure; }
    const Vector& witness() const noexcept { return check_.witness; }

private:
    IdealCheck check_;
};

/// Tests the hypotheses on span(u) needed to split g along it.
inline IdealCheck check_decomposable_ideal(const LieAlgebra& g, const KForm& omega, const KForm& theta,
                                           const std::vector<Vector>& u) {
    const std::size_t n = g.dim();
    for (const auto& v : u)
        if (v.size() != n) throw InvalidArgument("decompose: ideal vector has the wrong length");
    const QMatrix span = QMatrix::from_columns(u, n);
    if (u.empty() || rank(span) != u.size()) return {IdealFailure::Dependent, "spanning set has rank " +
                                                         std::to_string(rank(span)) + " < " +
                                                         std::to_string(u.size()), {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < u.size(); ++a) {
            Vector b = g.bracket(unit_vector(n, i), u[a]);
            if (!coordinates_in(span, b))
                return {IdealFailure::NotIdeal,
                        "[e" + std::to_string(i + 1) + ", " + to_string(u[a]) + "] = " + to_string(b), std::move(b)};
        }
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = a + 1; b < u.size(); ++b) {
            Vector br = g.bracket(u[a], u[b]);
            if (!is_zero(br))
                return {IdealFailure::NotAbelian, "[" + to_string(u[a]) + ", " + to_string(u[b]) + "] = " + to_string(br),
                        std::move(br)};
        }
    const QMatrix restricted = span.transpose() * omega.gram() * span;
    if (determinant(restricted) == 0) {
        Vector w = span * nullspace(restricted).front();
        return {IdealFailure::Degenerate, "omega(" + to_string(w) + ", u) = 0", std::move(w)};
    }
    for (const auto& v : u)
        if (theta.evaluate({v}) != 0)
            return {IdealFailure::ThetaNonvanishing, "theta(" + to_string(v) + ") = " + to_string(theta.evaluate({v})), v};
    return {};
}

struct Decomposition {
    LieAlgebra acting;
    KForm omega;
    KForm theta;
    Representation rep;
    /// Columns: basis of u-perp followed by the u basis. In this basis g
    /// equals extend(acting, omega, theta, rep).
    QMatrix basis;
};

/// Splits g along a nondegenerate abelian ideal u inside ker theta:
/// g = u-perp x| u with u-perp acting on u by the adjoint action. The
/// result is checked to extend back to (g, omega, theta) in `basis`.
inline Decomposition decompose(const LieAlgebra& g, const KForm& omega, const KForm& theta, const std::vector<Vector>& u) {
    require_lcs(g, omega, theta, "decompose");
    if (auto c = check_decomposable_ideal(g, omega, theta, u); !c) throw DecompositionError(std::move(c));

    const std::size_t n = g.dim();
    const std::size_t k = u.size();
    const std::size_t p = n - k;
    if (p == 0) throw InvalidArgument("decompose: the ideal is all of g");
    const QMatrix G = omega.gram();

    QMatrix conditions(k, n);
    for (std::size_t a = 0; a < k; ++a) {
        const Vector gu = G * u[a];
        for (std::size_t l = 0; l < n; ++l) conditions(a, l) = gu[l];
    }
    std::vector<Vector> cols = nullspace(conditions);
    if (cols.size() != p) throw InternalError("decompose: orthogonal complement has the wrong dimension");
    const QMatrix perp = QMatrix::from_columns(cols, n);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (!coordinates_in(perp, g.bracket(cols[i], cols[j])))
                throw InternalError("decompose: orthogonal complement is not a subalgebra");
    cols.insert(cols.end(), u.begin(), u.end());
    const QMatrix basis = QMatrix::from_columns(cols, n);
    const LieAlgebra gb = g.in_basis(basis);

    StructureConstants hc(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            for (std::size_t l = 0; l < p; ++l) hc.set(i, j, l, gb.constant(i, j, l));
    LieAlgebra h(std::move(hc));

    const QMatrix gram_b = basis.transpose() * G * basis;
    QMatrix gram_h(p, p), gram_u(k, k);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) gram_h(i, j) = gram_b(i, j);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) gram_u(a, b) = gram_b(p + a, p + b);
    const Vector theta_b = basis.transpose() * theta.as_vector();
    Vector theta_h(theta_b.begin(), theta_b.begin() + static_cast<std::ptrdiff_t>(p));

    std::vector<QMatrix> mats;
    for (std::size_t i = 0; i < p; ++i) {
        QMatrix m(k, k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) m(b, a) = gb.constant(i, p + a, p + b);
        mats.push_back(std::move(m));
    }
    Representation rep(h, SymplecticSpace(gram_u), std::move(mats));
    KForm omega_h = KForm::from_gram(gram_h);
    KForm theta_h_form = KForm::one_form(theta_h);

    const ExtensionResult back = extend(h, omega_h, theta_h_form, rep);
    if (!(back.algebra == gb) || !(back.structure.omega == KForm::from_gram(gram_b)) ||
        !(back.structure.theta == KForm::one_form(theta_b)))
        throw InternalError("decompose: extension does not reproduce the input");
    if (classify_kind(g, omega, theta).kind == Kind::First) throw InternalError("decompose: structure is of the first kind");

    return {std::move(h), std::move(omega_h), std::move(theta_h_form), std::move(rep), basis};
}

/// Looks for a span(u) accepted by `decompose`: first the given candidates,
/// then coordinate subspaces span{e_i : i in I} of even dimension 2..n-2 in
/// increasing dimension. Only that family is searched, so an empty result
/// does not mean no such ideal exists.
inline std::optional<std::vector<Vector>> find_nondegenerate_abelian_ideal(
    const LieAlgebra& g, const KForm& omega, const KForm& theta, const std::vector<std::vector<Vector>>& candidates = {}) {
    require_lcs(g, omega, theta, "find_nondegenerate_abelian_ideal");
    if (theta.is_zero()) throw InvalidArgument("find_nondegenerate_abelian_ideal: theta must be nonzero");
    for (const auto& c : candidates)
        if (check_decomposable_ideal(g, omega, theta, c)) return c;
    const std::size_t n = g.dim();
    for (std::size_t d = 2; d + 2 <= n; d += 2)
        for (Mask m = 0; m < (Mask{1} << n); ++m) {
            if (popcount(m) != d) continue;
            std::vector<Vector> u;
            for (std::size_t i : mask_indices(m)) u.push_back(unit_vector(n, i));
            if (check_decomposable_ideal(g, omega, theta, u)) return u;
        }
    return std::nullopt;
}

} // namespace lcs
