#pragma once

// Morse-Novikov (twisted) cohomology of a Lie algebra: d_theta a = da - theta ^ a.

#include "lcs/error.hpp"
#include "lcs/exterior.hpp"
#include "lcs/lie_algebra.hpp"
#include "lcs/matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lcs {

inline void require_closed_one_form(const LieAlgebra& g, const KForm& theta, const char* who) {
    if (theta.dim() != g.dim() || theta.degree() != 1)
        throw InvalidArgument(std::string(who) + ": twist must be a 1-form on the algebra");
    if (!ce_differential(g, theta).is_zero())
        throw InvalidArgument(std::string(who) + ": twist " + theta.str() + " is not closed");
}

inline KForm twisted_differential(const LieAlgebra& g, const KForm& theta, const KForm& a) {
    require_closed_one_form(g, theta, "twisted_differential");
    if (a.dim() != g.dim()) throw InvalidArgument("twisted_differential: dimension mismatch");
    return ce_differential(g, a) - wedge(theta, a);
}

/// Matrix of d_theta: Lambda^k -> Lambda^{k+1} in colex bases.
inline QMatrix twisted_differential_matrix(const LieAlgebra& g, const KForm& theta, std::size_t degree) {
    require_closed_one_form(g, theta, "twisted_differential_matrix");
    const std::size_t n = g.dim();
    if (degree >= n) return QMatrix(0, binomial(n, degree));
    return operator_matrix(n, degree, degree + 1,
                           [&](const KForm& f) { return ce_differential(g, f) - wedge(theta, f); });
}

struct CohomologyReport {
    std::vector<std::size_t> betti;                // dim H^k
    std::vector<std::size_t> twisted_betti;        // dim H^k_theta
    std::vector<std::size_t> closed_dims;          // dim Z^k
    std::vector<std::size_t> twisted_closed_dims;  // dim Z^k_theta
    KForm theta;
    /// The count dim Z^k + dim Z^{k-1} - C(n, k-1) matched the direct
    /// kernel/image computation in every degree k >= 2, for both complexes.
    bool formula_check = false;
};

namespace detail {

struct ComplexDims {
    std::vector<std::size_t> betti;
    std::vector<std::size_t> closed;
    bool formula_ok = true;
};

// Kernel dimensions come from row reduction, image dimensions from
// fraction-free rank; each degree cross-checks the two via rank-nullity.
inline ComplexDims complex_dims(const LieAlgebra& g, const KForm& theta) {
    const std::size_t n = g.dim();
    std::vector<std::size_t> ranks(n + 1, 0), closed(n + 1, 0);
    for (std::size_t k = 0; k <= n; ++k) {
        const QMatrix d = twisted_differential_matrix(g, theta, k);
        ranks[k] = rank(d);
        closed[k] = nullspace(d).size();
        if (closed[k] + ranks[k] != binomial(n, k))
            throw InternalError("cohomology: rank-nullity fails in degree " + std::to_string(k));
    }
    ComplexDims out;
    out.closed = closed;
    for (std::size_t k = 0; k <= n; ++k) {
        const std::size_t exact = k == 0 ? 0 : ranks[k - 1];
        out.betti.push_back(closed[k] - exact);
        if (k >= 2) {
            const long formula = static_cast<long>(closed[k] + closed[k - 1]) - static_cast<long>(binomial(n, k - 1));
            if (formula != static_cast<long>(out.betti[k])) out.formula_ok = false;
        }
    }
    return out;
}

} // namespace detail

/// Untwisted and twisted Betti numbers. theta = 0 gives ordinary
/// Chevalley-Eilenberg cohomology in both slots.
inline CohomologyReport cohomology(const LieAlgebra& g, const KForm& theta) {
    require_closed_one_form(g, theta, "cohomology");
    const auto plain = detail::complex_dims(g, KForm(g.dim(), 1));
    const auto twisted = theta.is_zero() ? plain : detail::complex_dims(g, theta);
    CohomologyReport r{plain.betti, twisted.betti, plain.closed, twisted.closed, theta,
                       plain.formula_ok && twisted.formula_ok};
    if (!r.formula_check) throw InternalError("cohomology: closed-form count disagrees with direct computation");
    return r;
}

/// alpha is d_theta-exact iff appending it to the image of d_theta on
/// (k-1)-forms does not raise the rank.
inline bool is_twisted_exact(const LieAlgebra& g, const KForm& theta, const KForm& alpha) {
    require_closed_one_form(g, theta, "is_twisted_exact");
    if (alpha.dim() != g.dim()) throw InvalidArgument("is_twisted_exact: dimension mismatch");
    if (alpha.degree() == 0) return alpha.is_zero();
    const QMatrix d = twisted_differential_matrix(g, theta, alpha.degree() - 1);
    QMatrix aug(d.rows(), d.cols() + 1);
    const Vector a = alpha.coordinates();
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) aug(i, j) = d(i, j);
        aug(i, d.cols()) = a[i];
    }
    return rank(aug) == rank(d);
}

} // namespace lcs
