#pragma once

// Locally conformal symplectic structures on a Lie algebra: a nondegenerate
// 2-form omega and a closed 1-form theta (the Lee form) with
// d omega = theta ^ omega.

#include "lcs/error.hpp"
#include "lcs/exterior.hpp"
#include "lcs/lie_algebra.hpp"
#include "lcs/matrix.hpp"
#include "lcs/novikov.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcs {

enum class LcsFailure { None, Degenerate, EquationViolated, LeeFormNotClosed };

struct LcsCheck {
    bool ok = true;
    LcsFailure failure = LcsFailure::None;
    std::string diagnosis;
    /// Kernel vector of the Gram matrix for Degenerate; coordinates of
    /// d omega - theta ^ omega for EquationViolated; d theta for
    /// LeeFormNotClosed.
    Vector witness;

    explicit operator bool() const noexcept { return ok; }
};

struct LcsStructure {
    KForm omega;
    KForm theta;
};

inline bool is_nondegenerate(const KForm& omega) {
    return omega.degree() == 2 && determinant(omega.gram()) != 0;
}

/// Checks nondegeneracy, d omega = theta ^ omega, then d theta = 0, and
/// reports the first failure.
inline LcsCheck check_lcs(const LieAlgebra& g, const KForm& omega, const KForm& theta) {
    const std::size_t n = g.dim();
    if (omega.degree() != 2) throw InvalidArgument("check_lcs: omega must be a 2-form");
    if (theta.degree() != 1) throw InvalidArgument("check_lcs: theta must be a 1-form");
    if (omega.dim() != n || theta.dim() != n) throw InvalidArgument("check_lcs: ambient dimension mismatch");
    if (n % 2 != 0) throw InvalidArgument("check_lcs: odd dimension " + std::to_string(n));

    const QMatrix gram = omega.gram();
    if (determinant(gram) == 0) {
        const auto kernel = nullspace(gram);
        return {false, LcsFailure::Degenerate, "omega is degenerate: kernel contains " + to_string(kernel.front()),
                kernel.front()};
    }
    const KForm defect = ce_differential(g, omega) - wedge(theta, omega);
    if (!defect.is_zero())
        return {false, LcsFailure::EquationViolated, "d omega != theta ^ omega (difference " + defect.str() + ")",
                defect.coordinates()};
    const KForm dtheta = ce_differential(g, theta);
    if (!dtheta.is_zero())
        return {false, LcsFailure::LeeFormNotClosed, "d theta != 0 (d theta = " + dtheta.str() + ")",
                dtheta.coordinates()};
    return {};
}

inline void require_lcs(const LieAlgebra& g, const KForm& omega, const KForm& theta, const char* who) {
    if (auto c = check_lcs(g, omega, theta); !c) throw InvalidArgument(std::string(who) + ": " + c.diagnosis);
}

/// omega(e_j, e_k) matrix entries of L_{e_l} omega, one row per pair j < k,
/// one column per l: X lies in g_omega iff this matrix kills X.
inline QMatrix automorphism_system(const LieAlgebra& g, const KForm& omega) {
    const std::size_t n = g.dim();
    const QMatrix G = omega.gram();
    QMatrix sys(binomial(n, 2), n);
    std::size_t row = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k, ++row)
            for (std::size_t l = 0; l < n; ++l) {
                Rational v = 0;
                for (std::size_t m = 0; m < n; ++m) {
                    v += g.constant(l, j, m) * G(m, k);
                    v += G(j, m) * g.constant(l, k, m);
                }
                sys(row, l) = v;
            }
    return sys;
}

/// Basis of g_omega = {X : omega([X,Y],Z) + omega(Y,[X,Z]) = 0 for all Y, Z}.
/// The result is checked to be closed under the bracket.
inline std::vector<Vector> automorphism_algebra(const LieAlgebra& g, const KForm& omega) {
    if (omega.degree() != 2 || omega.dim() != g.dim())
        throw InvalidArgument("automorphism_algebra: omega must be a 2-form on the algebra");
    auto basis = nullspace(automorphism_system(g, omega));
    if (!basis.empty()) {
        const QMatrix span = QMatrix::from_columns(basis, g.dim());
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = a + 1; b < basis.size(); ++b)
                if (!coordinates_in(span, g.bracket(basis[a], basis[b])))
                    throw InternalError("automorphism_algebra: solution space is not a subalgebra");
    }
    return basis;
}

enum class Kind { Symplectic, First, Second };

inline const char* to_string(Kind k) {
    switch (k) {
        case Kind::Symplectic: return "symplectic";
        case Kind::First: return "first";
        case Kind::Second: return "second";
    }
    return "?";
}

struct KindVerdict {
    Kind kind = Kind::Symplectic;
    std::vector<Vector> automorphism_basis;
    /// theta evaluated on each automorphism basis vector.
    Vector lee_values;
};

/// Symplectic if theta = 0; first kind if theta is nonzero somewhere on
/// g_omega (for real-valued theta that is surjectivity of the Lee
/// morphism); second kind otherwise.
inline KindVerdict classify_kind(const LieAlgebra& g, const KForm& omega, const KForm& theta) {
    require_lcs(g, omega, theta, "classify_kind");
    KindVerdict v;
    v.automorphism_basis = automorphism_algebra(g, omega);
    for (const auto& x : v.automorphism_basis) v.lee_values.push_back(theta.evaluate({x}));
    if (theta.is_zero())
        v.kind = Kind::Symplectic;
    else if (!is_zero(v.lee_values))
        v.kind = Kind::First;
    else
        v.kind = Kind::Second;
    return v;
}

/// A 1-form eta with d_theta eta = omega, if one exists. On unimodular
/// algebras the answer is cross-checked against the kind: there an LCS
/// structure is of the first kind exactly when it is exact.
inline std::optional<KForm> is_exact(const LieAlgebra& g, const KForm& omega, const KForm& theta) {
    require_lcs(g, omega, theta, "is_exact");
    const QMatrix d1 = twisted_differential_matrix(g, theta, 1);
    std::optional<KForm> eta;
    if (auto sol = solve(d1, omega.coordinates())) eta = KForm::one_form(*sol);
    if (!theta.is_zero() && is_unimodular(g)) {
        const bool first = classify_kind(g, omega, theta).kind == Kind::First;
        if (first != eta.has_value())
            throw InternalError("is_exact: exactness disagrees with kind on a unimodular algebra");
    }
    return eta;
}

/// Solves d omega = theta ^ omega for theta. Returns nullopt when there is
/// no solution or the solution is not closed. Throws when the solution is
/// not unique (degenerate omega, or dimension 2 where theta ^ omega = 0).
inline std::optional<KForm> recover_lee_form(const LieAlgebra& g, const KForm& omega) {
    const std::size_t n = g.dim();
    if (omega.degree() != 2 || omega.dim() != n) throw InvalidArgument("recover_lee_form: omega must be a 2-form");
    if (!is_nondegenerate(omega)) throw InvalidArgument("recover_lee_form: omega is degenerate");
    if (n < 4) throw InvalidArgument("recover_lee_form: Lee form is not unique in dimension " + std::to_string(n));
    const QMatrix wedge_omega =
        operator_matrix(n, 1, 3, [&](const KForm& e) { return wedge(e, omega); });
    if (!nullspace(wedge_omega).empty())
        throw InvalidArgument("recover_lee_form: theta ^ omega = d omega has no unique solution");
    const auto sol = solve(wedge_omega, ce_differential(g, omega).coordinates());
    if (!sol) return std::nullopt;
    KForm theta = KForm::one_form(*sol);
    if (!ce_differential(g, theta).is_zero()) return std::nullopt;
    return theta;
}

} // namespace lcs
