#pragma once

#include "lcs/error.hpp"
#include "lcs/matrix.hpp"
#include "lcs/rational.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcs {

/// Largest supported algebra dimension. Exterior powers stay below
/// C(14,7) = 3432 basis monomials.
inline constexpr std::size_t kMaxDimension = 14;

/// Raw structure constants c^k_{ij} with [e_i, e_j] = sum_k c^k_{ij} e_k.
/// Indices are zero-based. Antisymmetry in (i, j) is maintained by `set`.
/// No Jacobi guarantee: that is what `LieAlgebra` adds.
class StructureConstants {
public:
    explicit StructureConstants(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {
        if (dim == 0) throw InvalidArgument("Lie algebra dimension must be positive");
        if (dim > kMaxDimension)
            throw InvalidArgument("Lie algebra dimension " + std::to_string(dim) + " exceeds the supported maximum of " +
                                  std::to_string(kMaxDimension));
    }

    std::size_t dim() const noexcept { return dim_; }

    const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[index(i, j, k)]; }

    /// Sets c^k_{ij} = value and c^k_{ji} = -value. Requires i != j.
    void set(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
        if (i >= dim_ || j >= dim_ || k >= dim_) throw InvalidArgument("structure constant index out of range");
        if (i == j) {
            if (value != 0) throw InvalidArgument("[e_i, e_i] must vanish");
            return;
        }
        c_[index(i, j, k)] = value;
        c_[index(j, i, k)] = -value;
    }

    void add(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
        set(i, j, k, (*this)(i, j, k) + value);
    }

    Vector bracket_basis(std::size_t i, std::size_t j) const {
        Vector v(dim_);
        for (std::size_t k = 0; k < dim_; ++k) v[k] = (*this)(i, j, k);
        return v;
    }

    Vector bracket(const Vector& x, const Vector& y) const {
        if (x.size() != dim_ || y.size() != dim_) throw InvalidArgument("bracket: vector length mismatch");
        Vector out(dim_, Rational(0));
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j] == 0 || i == j) continue;
                const Rational s = x[i] * y[j];
                for (std::size_t k = 0; k < dim_; ++k) {
                    const Rational& c = (*this)(i, j, k);
                    if (c != 0) out[k] += s * c;
                }
            }
        }
        return out;
    }

    friend bool operator==(const StructureConstants& a, const StructureConstants& b) {
        return a.dim_ == b.dim_ && a.c_ == b.c_;
    }

private:
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * dim_ + j) * dim_ + k; }

    std::size_t dim_;
    std::vector<Rational> c_;
};

/// Outcome of a Jacobi identity check. On failure `witness` holds a
/// zero-based triple i < j < k whose cyclic sum is `defect`.
struct JacobiResult {
    bool holds = true;
    std::array<std::size_t, 3> witness{};
    Vector defect;
};

/// Checks [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0 for all
/// i < j < k, stopping at the first violating triple.
inline JacobiResult check_jacobi(const StructureConstants& c) {
    const std::size_t n = c.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vector sum = c.bracket(c.bracket_basis(i, j), unit_vector(n, k));
                const Vector b = c.bracket(c.bracket_basis(j, k), unit_vector(n, i));
                const Vector d = c.bracket(c.bracket_basis(k, i), unit_vector(n, j));
                for (std::size_t l = 0; l < n; ++l) sum[l] += b[l] + d[l];
                if (!is_zero(sum)) return {false, {i, j, k}, std::move(sum)};
            }
    return {};
}

class JacobiError : public InvalidArgument {
public:
    explicit JacobiError(const JacobiResult& r)
        : InvalidArgument("Jacobi identity fails on (e" + std::to_string(r.witness[0] + 1) + ", e" +
                          std::to_string(r.witness[1] + 1) + ", e" + std::to_string(r.witness[2] + 1) +
                          "): cyclic sum = " + to_string(r.defect)),
          result_(r) {}

    const JacobiResult& result() const noexcept { return result_; }

private:
    JacobiResult result_;
};

/// A finite-dimensional real Lie algebra given by exact structure constants
/// in a fixed basis e_1..e_n. Construction verifies the Jacobi identity.
class LieAlgebra {
public:
    explicit LieAlgebra(StructureConstants constants, std::vector<std::string> labels = {})
        : c_(std::move(constants)), labels_(std::move(labels)) {
        if (labels_.empty())
            for (std::size_t i = 0; i < c_.dim(); ++i) labels_.push_back("e" + std::to_string(i + 1));
        if (labels_.size() != c_.dim()) throw InvalidArgument("LieAlgebra: label count differs from dimension");
        if (auto r = check_jacobi(c_); !r.holds) throw JacobiError(r);
    }

    static LieAlgebra abelian(std::size_t dim) { return LieAlgebra(StructureConstants(dim)); }

    std::size_t dim() const noexcept { return c_.dim(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const StructureConstants& constants() const noexcept { return c_; }

    /// c^k_{ij}, zero-based.
    const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_(i, j, k); }

    Vector bracket(const Vector& x, const Vector& y) const { return c_.bracket(x, y); }
    Vector bracket_basis(std::size_t i, std::size_t j) const { return c_.bracket_basis(i, j); }

    bool is_abelian() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = i + 1; j < dim(); ++j)
                if (!is_zero(bracket_basis(i, j))) return false;
        return true;
    }

    /// Same algebra with structure constants relative to the basis given by
    /// the columns of `basis` (which must be invertible).
    LieAlgebra in_basis(const QMatrix& basis) const {
        if (basis.rows() != dim() || !basis.is_square()) throw InvalidArgument("in_basis: basis must be n x n");
        const auto inv = inverse(basis);
        if (!inv) throw InvalidArgument("in_basis: basis matrix is singular");
        StructureConstants out(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = i + 1; j < dim(); ++j) {
                const Vector b = *inv * bracket(basis.col(i), basis.col(j));
                for (std::size_t k = 0; k < dim(); ++k) out.set(i, j, k, b[k]);
            }
        return LieAlgebra(std::move(out));
    }

    /// Equality of structure constants; labels are ignored.
    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.c_ == b.c_; }

private:
    StructureConstants c_;
    std::vector<std::string> labels_;
};

} // namespace lcs
