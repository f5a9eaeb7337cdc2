#pragma once

// Lattice certificates for the almost abelian groups R x|_phi R^6 with
// phi(t) = exp(t ad_{e1}) and the extension by the rotation psi(t), plus a
// numeric integer-conjugacy test for single matrices.
//
// Bases follow the reordered frames {e3,e6,e5,e4,e7,e8} for phi and
// {e1,e3,e6,e5,e4,e7,e8} for psi.

#include "lcs/error.hpp"
#include "lcs/rational.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace lcs {

using RealMatrix = Eigen::MatrixXd;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Monic integer polynomial, coefficients from the leading 1 down to the
/// constant term.
using IntPolynomial = std::vector<long long>;

inline constexpr double kDefaultTolerance = 1e-9;

inline double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

class OneParameterAction {
public:
    explicit OneParameterAction(RealMatrix generator) : generator_(std::move(generator)) {
        if (generator_.rows() != generator_.cols()) throw InvalidArgument("OneParameterAction: generator must be square");
    }

    const RealMatrix& generator() const noexcept { return generator_; }

    RealMatrix evaluate(double t) const { return RealMatrix(t * generator_).exp(); }

private:
    RealMatrix generator_;
};

/// ad_{e1} on R^6 in the basis {e3,e6,e5,e4,e7,e8}.
inline OneParameterAction phi_action() {
    Eigen::VectorXd d(6);
    d << 1, -1, 0, 1, -1, 0;
    return OneParameterAction(d.asDiagonal().toDenseMatrix());
}

/// ad_{e2} on R^7 in the basis {e1,e3,e6,e5,e4,e7,e8}: rotation of the
/// (e3, e4) plane.
inline OneParameterAction psi_action() {
    RealMatrix j = RealMatrix::Zero(7, 7);
    j(1, 4) = -1;
    j(4, 1) = 1;
    return OneParameterAction(std::move(j));
}

/// phi(t) = diag(e^t, e^-t, 1, e^t, e^-t, 1).
inline RealMatrix phi_matrix(double t) {
    Eigen::VectorXd d(6);
    d << std::exp(t), std::exp(-t), 1, std::exp(t), std::exp(-t), 1;
    return d.asDiagonal().toDenseMatrix();
}

/// psi(t) as the explicit 7x7 rotation-block matrix.
inline RealMatrix psi_matrix(double t) {
    RealMatrix m = RealMatrix::Identity(7, 7);
    m(1, 1) = std::cos(t);
    m(1, 4) = -std::sin(t);
    m(4, 1) = std::sin(t);
    m(4, 4) = std::cos(t);
    return m;
}

/// Companion matrix of x^n + a_{n-1} x^{n-1} + ... + a_0 from the
/// non-leading coefficients (a_{n-1}, ..., a_0): ones on the subdiagonal,
/// last column (-a_0, ..., -a_{n-1}).
inline IntMatrix companion_matrix(const std::vector<long long>& non_leading) {
    if (non_leading.empty()) throw InvalidArgument("companion_matrix: empty coefficient list");
    const auto n = static_cast<Eigen::Index>(non_leading.size());
    IntMatrix c = IntMatrix::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1;
    for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -non_leading[static_cast<std::size_t>(n - 1 - i)];
    return c;
}

/// Exact characteristic polynomial det(xI - A) by Faddeev-LeVerrier; the
/// divisions are exact over the integers.
inline IntPolynomial integer_char_poly(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("integer_char_poly: matrix must be square");
    const auto n = static_cast<std::size_t>(a.rows());
    using Big = std::vector<std::vector<Integer>>;
    Big A(n, std::vector<Integer>(n)), M(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = static_cast<long>(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    std::vector<Integer> c(n + 1, 0);
    c[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        // M <- A M + c_{k-1} I, then c_k = -tr(A M) / k
        Big next(n, std::vector<Integer>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Integer s = 0;
                for (std::size_t l = 0; l < n; ++l) s += A[i][l] * M[l][j];
                next[i][j] = s + (i == j ? c[k - 1] : Integer(0));
            }
        M = std::move(next);
        Integer tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
        if (tr % static_cast<long>(k) != 0) throw InternalError("integer_char_poly: inexact division");
        c[k] = -tr / static_cast<long>(k);
    }
    IntPolynomial out;
    for (const auto& v : c) {
        if (!v.fits_slong_p()) throw InvalidArgument("integer_char_poly: coefficient overflow");
        out.push_back(v.get_si());
    }
    return out;
}

inline void require_family_index(long long m, const char* who) {
    if (m <= 2) throw InvalidArgument(std::string(who) + ": m must exceed 2 (got " + std::to_string(m) + ")");
}

/// x^3 - (m+1) x^2 + (m+1) x - 1, the characteristic polynomial of the
/// 3x3 block of phi(t_m).
inline IntPolynomial family_char_poly(long long m) {
    require_family_index(m, "family_char_poly");
    return {1, -(m + 1), m + 1, -1};
}

inline double family_time(long long m) {
    require_family_index(m, "family_time");
    return std::acosh(static_cast<double>(m) / 2.0);
}

/// Vandermonde block with rows (1, l, l^2) for l = e^t, e^-t, 1.
inline RealMatrix vandermonde_block(double t) {
    RealMatrix q(3, 3);
    const double lambdas[3] = {std::exp(t), std::exp(-t), 1.0};
    for (int i = 0; i < 3; ++i) q.row(i) << 1.0, lambdas[i], lambdas[i] * lambdas[i];
    return q;
}

template <class M>
M block_diag2(const M& a) {
    M out = M::Zero(2 * a.rows(), 2 * a.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(a.rows(), a.cols()) = a;
    return out;
}

struct LatticeCertificate {
    long long m = 0;
    double t_m = 0;
    IntMatrix D;
    RealMatrix P;
    RealMatrix phi;
    double residual = 0;
};

/// phi(t_m) = P_m D_m P_m^{-1} with D_m = diag(C_m, C_m) integral and
/// P_m = diag(Q_m, Q_m). Throws if the residual reaches `tol`.
inline LatticeCertificate build_certificate(long long m, double tol = kDefaultTolerance) {
    require_family_index(m, "build_certificate");
    LatticeCertificate c;
    c.m = m;
    c.t_m = family_time(m);
    const IntPolynomial p = family_char_poly(m);
    const IntMatrix cm = companion_matrix({p.begin() + 1, p.end()});
    c.D = block_diag2(cm);
    c.P = block_diag2(vandermonde_block(c.t_m));
    Eigen::FullPivLU<RealMatrix> lu(c.P);
    if (!lu.isInvertible()) throw InternalError("build_certificate: P_m is singular");
    c.phi = phi_action().evaluate(c.t_m);
    c.residual = max_abs(c.phi - c.P * c.D.cast<double>() * lu.inverse());
    if (!(c.residual < tol))
        throw InternalError("build_certificate: residual " + std::to_string(c.residual) + " for m = " +
                            std::to_string(m) + " exceeds tolerance");
    return c;
}

inline std::string format_double(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

/// Plain-text report: m, t_m to 15 significant digits, rows of D_m,
/// residual.
inline std::string certificate_report(const LatticeCertificate& c) {
    std::ostringstream out;
    out << "m = " << c.m << "\n";
    out << "t_m = " << format_double(c.t_m, "%.15g") << "\n";
    out << "D_m =\n";
    for (Eigen::Index i = 0; i < c.D.rows(); ++i) {
        out << " ";
        for (Eigen::Index j = 0; j < c.D.cols(); ++j) out << " " << c.D(i, j);
        out << "\n";
    }
    out << "residual = " << format_double(c.residual, "%.3e") << "\n";
    return out.str();
}

struct ConjugacyVerdict {
    bool candidate = false;
    /// Numeric characteristic polynomial, leading coefficient first.
    std::vector<double> char_poly;
    /// Rounded polynomial; meaningful only for candidates.
    IntPolynomial rounded;
    /// A = conjugator * companion * conjugator^{-1}, when constructed.
    std::optional<RealMatrix> conjugator;
    std::optional<IntMatrix> integer_form;
    std::optional<double> residual;
};

/// Necessary condition for A to be conjugate to an integer matrix: its
/// characteristic polynomial has integer coefficients (up to tol). For
/// distinct real eigenvalues an explicit conjugator to the companion matrix
/// is built as (eigenvectors) x (Vandermonde). A "candidate" verdict is not
/// a proof of integer conjugacy in general.
inline ConjugacyVerdict check_integer_conjugacy(const RealMatrix& a, double tol = kDefaultTolerance) {
    if (a.rows() != a.cols()) throw InvalidArgument("check_integer_conjugacy: matrix must be square");
    if (!a.allFinite()) throw InvalidArgument("check_integer_conjugacy: matrix has non-finite entries");
    const Eigen::Index n = a.rows();
    ConjugacyVerdict v;

    Eigen::EigenSolver<RealMatrix> es(a);
    if (es.info() != Eigen::Success) throw InternalError("check_integer_conjugacy: eigenvalue computation failed");
    const Eigen::VectorXcd lambda = es.eigenvalues();
    std::vector<std::complex<double>> poly{1.0};
    for (Eigen::Index i = 0; i < n; ++i) {
        std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k];
            next[k + 1] -= lambda(i) * poly[k];
        }
        poly = std::move(next);
    }
    v.candidate = true;
    for (const auto& c : poly) {
        v.char_poly.push_back(c.real());
        v.rounded.push_back(std::llround(c.real()));
        if (std::abs(c.real() - std::round(c.real())) > tol || std::abs(c.imag()) > tol) v.candidate = false;
    }
    if (!v.candidate) return v;

    const RealMatrix rounded_a = a.array().round().matrix();
    if (max_abs(a - rounded_a) <= tol) {
        v.integer_form = rounded_a.cast<long long>();
        v.conjugator = RealMatrix::Identity(n, n);
        v.residual = max_abs(a - rounded_a);
        return v;
    }

    const IntMatrix comp = companion_matrix({v.rounded.begin() + 1, v.rounded.end()});
    bool real_distinct = lambda.imag().cwiseAbs().maxCoeff() <= tol;
    for (Eigen::Index i = 0; i < n && real_distinct; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(lambda(i) - lambda(j)) <= tol) real_distinct = false;
    if (!real_distinct) return v;

    const RealMatrix w = es.eigenvectors().real();
    RealMatrix vander(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1;
        for (Eigen::Index j = 0; j < n; ++j, p *= lambda(i).real()) vander(i, j) = p;
    }
    const RealMatrix conj = w * vander;
    v.integer_form = comp;
    v.residual = max_abs(a - conj * comp.cast<double>() * conj.inverse());
    v.conjugator = conj;
    return v;
}

/// R_m = diag(1, D_m), the integer matrix conjugate to exp(t_m ad) on R^7.
inline IntMatrix family_integer_matrix(long long m) {
    const IntPolynomial p = family_char_poly(m);
    const IntMatrix d = block_diag2(IntMatrix(companion_matrix({p.begin() + 1, p.end()})));
    IntMatrix r = IntMatrix::Zero(7, 7);
    r(0, 0) = 1;
    r.bottomRightCorner(6, 6) = d;
    return r;
}

/// Eigenvalues of a matrix with real spectrum, sorted ascending.
inline std::vector<double> real_spectrum(const RealMatrix& a, double tol = kDefaultTolerance) {
    Eigen::EigenSolver<RealMatrix> es(a, false);
    if (es.info() != Eigen::Success) throw InternalError("real_spectrum: eigenvalue computation failed");
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const auto z = es.eigenvalues()(i);
        if (std::abs(z.imag()) > tol) throw InvalidArgument("real_spectrum: complex eigenvalue");
        out.push_back(z.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool spectra_differ(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return true;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol * std::max(1.0, std::abs(a[i]))) return true;
    return false;
}

/// True iff the spectrum of R_m differs from the spectra of both R_n and
/// R_n^{-1}; then R_m is conjugate to neither and the solvmanifolds for m
/// and n are not homeomorphic.
inline bool distinguish_solvmanifolds(long long m, long long n, double tol = kDefaultTolerance) {
    require_family_index(m, "distinguish_solvmanifolds");
    require_family_index(n, "distinguish_solvmanifolds");
    const auto sm = real_spectrum(family_integer_matrix(m).cast<double>(), tol);
    const auto sn = real_spectrum(family_integer_matrix(n).cast<double>(), tol);
    std::vector<double> sn_inv;
    for (double x : sn) sn_inv.push_back(1.0 / x);
    std::sort(sn_inv.begin(), sn_inv.end());
    return spectra_differ(sm, sn, tol) && spectra_differ(sm, sn_inv, tol);
}

} // namespace lcs
