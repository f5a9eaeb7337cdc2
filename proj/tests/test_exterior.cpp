#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lcs;
using testing_support::algebra;
using testing_support::form;

namespace {

KForm e(std::size_t n, std::size_t i) { return KForm::one_form(unit_vector(n, i)); }

std::vector<LieAlgebra> corpus_algebras() {
    std::vector<LieAlgebra> out;
    for (const auto& entry : testing_support::corpus()) out.push_back(entry.algebra());
    return out;
}

int parity_sign(std::size_t k) { return k % 2 ? -1 : 1; }

} // namespace

TEST(Wedge, BasisCases) {
    EXPECT_EQ(wedge(e(4, 0), e(4, 1)), form("12", 4, 2));
    EXPECT_TRUE(wedge(e(4, 0), e(4, 0)).is_zero());
    EXPECT_EQ(wedge(e(4, 1), e(4, 0)), -form("12", 4, 2));
}

TEST(Wedge, MixedExpansion) {
    const KForm a = e(4, 0) + e(4, 1);
    const KForm b = form("12+34", 4, 2);
    EXPECT_EQ(wedge(a, b), form("134+234", 4, 3));
    EXPECT_EQ(oracle::wedge(a, b), form("134+234", 4, 3));
}

TEST(Wedge, PastTopDegreeIsZero) {
    const KForm top = wedge(form("12", 3, 2), form("13+23", 3, 2));
    EXPECT_TRUE(top.is_zero());
    EXPECT_EQ(top.degree(), 4u);
    EXPECT_THROW(KForm(3, 4), InvalidArgument);
    EXPECT_THROW(wedge(e(3, 0), e(4, 0)), InvalidArgument);
}

TEST(Wedge, MatchesAlternationOracle) {
    oracle::Generator gen(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + gen.index(5);
        const std::size_t p = gen.index(n) + 1, q = gen.index(n - p + 1);
        const KForm a = gen.form(n, p), b = gen.form(n, q);
        EXPECT_EQ(wedge(a, b), oracle::wedge(a, b)) << a.str() << " ^ " << b.str();
    }
}

TEST(Wedge, GradedCommutativeAndAssociative) {
    oracle::Generator gen(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + gen.index(5);
        const std::size_t p = gen.index(3), q = gen.index(3), r = gen.index(3);
        const KForm a = gen.form(n, p), b = gen.form(n, q), c = gen.form(n, r);
        EXPECT_EQ(wedge(a, b), parity_sign(p * q) * wedge(b, a));
        EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
    }
}

TEST(Differential, StructureEquations) {
    const auto g = algebra("(0,-12,13,0)");
    EXPECT_EQ(ce_differential(g, e(4, 1)), -form("12", 4, 2));
    const KForm omega = form("12+34", 4, 2);
    EXPECT_EQ(ce_differential(g, omega), wedge(e(4, 0), omega));
}

TEST(Differential, AbelianIsZero) {
    oracle::Generator gen(3);
    const auto g = LieAlgebra::abelian(5);
    for (std::size_t k = 0; k <= 5; ++k) EXPECT_TRUE(ce_differential(g, gen.form(5, k, 1.0)).is_zero());
}

TEST(Differential, MatchesKoszulOracle) {
    oracle::Generator gen(5);
    for (const auto& g : corpus_algebras())
        for (std::size_t k = 0; k + 1 <= g.dim() && k <= 3; ++k) {
            const KForm a = gen.form(g.dim(), k);
            EXPECT_EQ(ce_differential(g, a), oracle::differential(g, a)) << format_structure_equations(g);
        }
}

TEST(Differential, SquaresToZeroOnRandomForms) {
    oracle::Generator gen(17);
    const auto algebras = corpus_algebras();
    for (int trial = 0; trial < 200; ++trial) {
        const auto& g = algebras[gen.index(algebras.size())];
        const KForm a = gen.form(g.dim(), gen.index(g.dim() + 1));
        EXPECT_TRUE(ce_differential(g, ce_differential(g, a)).is_zero()) << format_structure_equations(g);
    }
}

TEST(Differential, Antiderivation) {
    oracle::Generator gen(19);
    const auto algebras = corpus_algebras();
    for (int trial = 0; trial < 150; ++trial) {
        const auto& g = algebras[gen.index(algebras.size())];
        const std::size_t n = g.dim();
        const std::size_t p = gen.index(std::min<std::size_t>(n, 4));
        const std::size_t q = gen.index(std::min<std::size_t>(n - p, 3) + 1);
        const KForm a = gen.form(n, p), b = gen.form(n, q);
        const KForm lhs = ce_differential(g, wedge(a, b));
        const KForm rhs = wedge(ce_differential(g, a), b) + parity_sign(p) * wedge(a, ce_differential(g, b));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Differential, MatrixAgreesWithOperator) {
    oracle::Generator gen(23);
    const auto g = algebra("(0,0,-13+24,-14-23,0,16,17,0)");
    for (std::size_t k = 0; k < 8; ++k) {
        const KForm a = gen.form(8, k);
        const Vector image = differential_matrix(g, k) * a.coordinates();
        EXPECT_EQ(KForm::from_coordinates(8, k + 1, image), ce_differential(g, a));
    }
}

TEST(Adjoint, Examples) {
    EXPECT_TRUE(adjoint(LieAlgebra::abelian(3), {1, 2, 3}).is_zero());
    const auto g = algebra("(0,-12,13,0)");
    EXPECT_EQ(adjoint(g, unit_vector(4, 0)), QMatrix::diagonal({0, 1, -1, 0}));
}

TEST(Adjoint, MatchesBracketTable) {
    oracle::Generator gen(29);
    for (const auto& g : corpus_algebras()) {
        const std::size_t n = g.dim();
        for (std::size_t i = 0; i < n; ++i) {
            const QMatrix ad = adjoint(g, unit_vector(n, i));
            for (std::size_t j = 0; j < n; ++j) {
                Vector expected(n, 0);
                for (std::size_t k = 0; k < n; ++k)
                    expected[k] = i < j ? g.constant(i, j, k) : (i > j ? -g.constant(j, i, k) : Rational(0));
                EXPECT_EQ(ad.col(j), expected);
            }
        }
        const Vector x = gen.vector(n), y = gen.vector(n);
        Vector sum(n);
        for (std::size_t i = 0; i < n; ++i) sum[i] = x[i] + y[i];
        EXPECT_EQ(adjoint(g, sum), adjoint(g, x) + adjoint(g, y));
    }
}

TEST(Unimodular, Examples) {
    EXPECT_TRUE(is_unimodular(LieAlgebra::abelian(4)));
    EXPECT_TRUE(is_unimodular(algebra("(0,-12,13,0)")));
    const auto r2prime = algebra("(0,0,-13+24,-14-23)");
    EXPECT_FALSE(is_unimodular(r2prime));
    EXPECT_EQ(adjoint(r2prime, unit_vector(4, 0)).trace(), 2);
}

TEST(Unimodular, EquivalentToZeroTraces) {
    for (const auto& g : corpus_algebras()) {
        bool traces_vanish = true;
        for (std::size_t i = 0; i < g.dim(); ++i) {
            Rational t = 0;
            for (std::size_t j = 0; j < g.dim(); ++j) t += j < i ? -g.constant(j, i, j) : (j > i ? g.constant(i, j, j) : 0);
            traces_vanish = traces_vanish && t == 0;
        }
        EXPECT_EQ(is_unimodular(g), traces_vanish) << format_structure_equations(g);
    }
}

TEST(Center, DerivedAlgebra) {
    const auto h3 = algebra("(0,0,-12,0)");
    EXPECT_TRUE(oracle::same_span(center(h3), {unit_vector(4, 2), unit_vector(4, 3)}));
    EXPECT_TRUE(oracle::same_span(derived_algebra(h3), {unit_vector(4, 2)}));
    EXPECT_TRUE(derived_algebra(LieAlgebra::abelian(3)).empty());
}

TEST(Matrix, RankMatchesOracle) {
    oracle::Generator gen(31);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t r = 1 + gen.index(6), c = 1 + gen.index(6);
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < r; ++i) rows.push_back(gen.vector(c));
        if (r > 2) rows[r - 1] = gen.combination({rows[0], rows[1]}, c);
        QMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        EXPECT_EQ(rank(m), oracle::rank(rows));
        const auto kernel = nullspace(m);
        EXPECT_EQ(kernel.size(), c - oracle::rank(rows));
        for (const auto& v : kernel) EXPECT_TRUE(oracle::solves(rows, v));
    }
}

TEST(Matrix, InverseAndDeterminant) {
    QMatrix a(3, 3);
    a(0, 0) = 2, a(0, 1) = 1, a(1, 1) = Rational(1, 2), a(2, 0) = -1, a(2, 2) = 3;
    EXPECT_EQ(determinant(a), 3);
    const auto inv = inverse(a);
    ASSERT_TRUE(inv);
    EXPECT_EQ(a * *inv, QMatrix::identity(3));
    QMatrix s(2, 2);
    s(0, 0) = 1, s(0, 1) = 2, s(1, 0) = 2, s(1, 1) = 4;
    EXPECT_EQ(determinant(s), 0);
    EXPECT_FALSE(inverse(s));
    EXPECT_FALSE(solve(s, {1, 0}));
    EXPECT_TRUE(solve(s, {1, 2}));
}
