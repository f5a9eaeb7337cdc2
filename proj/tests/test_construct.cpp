#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lcs;
using testing_support::algebra;
using testing_support::form;

namespace {

KForm e(std::size_t n, std::size_t i) { return KForm::one_form(unit_vector(n, i)); }

QMatrix scaled_identity(std::size_t n, const Rational& s) { return s * QMatrix::identity(n); }

/// pi(e_1) = diag(lambda Id_n, 0_n) on R^{2n} with omega0 = sum e^{i, n+i},
/// acting algebra rr_{3,lambda} with omega = e^{12} + e^{34}, theta = -lambda e^1.
struct DiagonalFamily {
    LieAlgebra h;
    KForm omega, theta;
    Representation rep;
};

DiagonalFamily diagonal_family(std::size_t n, const Rational& lambda) {
    LieAlgebra h = algebra("(0,-12,-λ13,0)", {{"λ", lambda}});
    QMatrix gram(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        gram(i, n + i) = 1;
        gram(n + i, i) = -1;
    }
    Vector d(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = lambda;
    std::vector<QMatrix> mats(4, QMatrix(2 * n, 2 * n));
    mats[0] = QMatrix::diagonal(d);
    Representation rep(h, SymplecticSpace(gram), std::move(mats));
    return {h, form("12+34", 4, 2), -lambda * e(4, 0), std::move(rep)};
}

const LieAlgebra& r2prime() {
    static const LieAlgebra g = algebra("(0,0,-13+24,-14-23)");
    return g;
}

Representation r2prime_rep() {
    std::vector<QMatrix> mats(4, QMatrix(4, 4));
    mats[0] = QMatrix::diagonal({0, -1, -1, 0});
    return Representation(r2prime(), SymplecticSpace::standard(2), std::move(mats));
}

bool in_span(const std::vector<Vector>& basis, const Vector& v) {
    auto both = basis;
    both.push_back(v);
    return oracle::rank(both) == oracle::rank(basis);
}

} // namespace

TEST(SymplecticSpace, Validation) {
    EXPECT_NO_THROW(SymplecticSpace::standard(3));
    EXPECT_THROW(SymplecticSpace(QMatrix(3, 3)), InvalidArgument);
    EXPECT_THROW(SymplecticSpace(QMatrix(2, 2)), InvalidArgument);
    QMatrix sym(2, 2);
    sym(0, 1) = 1, sym(1, 0) = 1;
    EXPECT_THROW(SymplecticSpace{sym}, InvalidArgument);
    EXPECT_EQ(SymplecticSpace::standard(2).form(), form("12+34", 4, 2));
}

TEST(Split, ScalarIsSymmetric) {
    const auto v = SymplecticSpace::standard(2);
    const auto [s, r] = symmetric_skew_split(v, scaled_identity(4, Rational(3, 7)));
    EXPECT_EQ(s, scaled_identity(4, Rational(3, 7)));
    EXPECT_TRUE(r.is_zero());
}

TEST(Split, SymplecticElementIsSkew) {
    const auto v = SymplecticSpace::standard(1);
    const QMatrix a = QMatrix::diagonal({Rational(1, 2), Rational(-1, 2)});
    const auto [s, r] = symmetric_skew_split(v, a);
    EXPECT_TRUE(s.is_zero());
    EXPECT_EQ(r, a);
    EXPECT_TRUE((r.transpose() * v.gram() + v.gram() * r).is_zero());
}

TEST(Split, DiagonalFamilyBlocks) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const Rational lambda(2, 5);
        const auto fam = diagonal_family(n, lambda);
        const auto [s, r] = symmetric_skew_split(fam.rep.space(), fam.rep[0]);
        EXPECT_EQ(s, scaled_identity(2 * n, lambda / 2));
        Vector d(2 * n, -lambda / 2);
        for (std::size_t i = 0; i < n; ++i) d[i] = lambda / 2;
        EXPECT_EQ(r, QMatrix::diagonal(d));
    }
}

TEST(Split, RandomMatricesSplitUniquely) {
    oracle::Generator gen(67);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 1 + gen.index(3);
        QMatrix gram(2 * m, 2 * m);
        for (std::size_t i = 0; i < 2 * m; ++i)
            for (std::size_t j = i + 1; j < 2 * m; ++j) {
                gram(i, j) = gen.small_rational();
                gram(j, i) = -gram(i, j);
            }
        if (determinant(gram) == 0) continue;
        const SymplecticSpace v(gram);
        QMatrix a(2 * m, 2 * m);
        for (std::size_t i = 0; i < 2 * m; ++i)
            for (std::size_t j = 0; j < 2 * m; ++j) a(i, j) = gen.small_rational();
        const auto [s, r] = symmetric_skew_split(v, a);
        EXPECT_EQ(s + r, a);
        EXPECT_EQ(s.transpose() * gram, gram * s);
        EXPECT_TRUE(v.in_sp(r));
        // omega0(Ax, y) = omega0(x, A* y) on random vectors.
        const Vector x = gen.vector(2 * m), y = gen.vector(2 * m);
        const KForm w = v.form();
        EXPECT_EQ(oracle::on_vectors(w, {a * x, y}), oracle::on_vectors(w, {x, v.adjoint_of(a) * y}));
    }
}

TEST(Representation, RejectsNonHomomorphism) {
    const auto h = algebra("(0,-12)");
    std::vector<QMatrix> mats{QMatrix::diagonal({1, 0}), QMatrix::diagonal({0, 1})};
    EXPECT_THROW(Representation(h, SymplecticSpace::standard(1), mats), InvalidArgument);
    EXPECT_THROW(Representation(h, SymplecticSpace::standard(1), {QMatrix(2, 2)}), InvalidArgument);
}

TEST(LcsRepresentation, ScalarAction) {
    const auto h = algebra("(0,-12,13,0)");
    const KForm theta = e(4, 0);
    std::vector<QMatrix> mats(4, QMatrix(2, 2));
    mats[0] = scaled_identity(2, Rational(-1, 2));
    EXPECT_TRUE(is_lcs_representation(Representation(h, SymplecticSpace::standard(1), mats), theta));
}

TEST(LcsRepresentation, RotationRepresentation) {
    EXPECT_TRUE(is_lcs_representation(r2prime_rep(), e(4, 0)));
}

TEST(LcsRepresentation, IdentityFails) {
    const auto h = algebra("(0,-12,13,0)");
    std::vector<QMatrix> mats(4, QMatrix(2, 2));
    mats[0] = QMatrix::identity(2);
    const auto c = is_lcs_representation(Representation(h, SymplecticSpace::standard(1), mats), e(4, 0));
    EXPECT_FALSE(c);
    EXPECT_EQ(c.failing_index, 0u);
    EXPECT_EQ(c.symmetric_part, QMatrix::identity(2));
}

TEST(Extend, DiagonalFamilyCenter) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto fam = diagonal_family(n, 1);
        const auto ext = extend(fam.h, fam.omega, fam.theta, fam.rep);
        EXPECT_EQ(ext.algebra.dim(), 4 + 2 * n);
        EXPECT_EQ(center(ext.algebra).size(), n + 1);
        EXPECT_TRUE(in_span(center(ext.algebra), unit_vector(4 + 2 * n, 3)));
        EXPECT_EQ(ext.verdict.kind, Kind::Second);
        EXPECT_FALSE(ext.exact);
    }
    const auto one = extend(diagonal_family(1, 1).h, diagonal_family(1, 1).omega, diagonal_family(1, 1).theta,
                            diagonal_family(1, 1).rep);
    EXPECT_EQ(one.algebra, algebra("(0,-12,-13,0,-15,0)"));
}

TEST(Extend, RotationExampleBrackets) {
    const KForm omega = form("13-1/2 24", 4, 2);
    const auto ext = extend(r2prime(), omega, e(4, 0), r2prime_rep());
    const auto expected = algebra("(0,0,-13+24,-14-23,0,16,17,0)");
    EXPECT_EQ(ext.algebra, expected);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j) nonzero += !is_zero(ext.algebra.bracket_basis(i, j));
    EXPECT_EQ(nonzero, 6u);
    EXPECT_EQ(ext.structure.omega, form("13-1/2 24+56+78", 8, 2));
    EXPECT_EQ(ext.structure.theta, e(8, 0));
    EXPECT_EQ(ext.verdict.kind, Kind::Second);
    EXPECT_FALSE(ext.exact);
    EXPECT_TRUE(ext.unimodular);
}

TEST(Extend, TrivialSymplecticExtension) {
    const auto h = algebra("(0,-12)");
    const auto ext = extend(h, form("12", 2, 2), KForm(2, 1), Representation::trivial(h, SymplecticSpace::standard(1)));
    EXPECT_EQ(ext.verdict.kind, Kind::Symplectic);
    EXPECT_TRUE(check_lcs(ext.algebra, ext.structure.omega, KForm(4, 1)));
}

TEST(Extend, RejectsBadInputs) {
    const auto h = algebra("(0,-12,13,0)");
    std::vector<QMatrix> mats(4, QMatrix(2, 2));
    mats[0] = QMatrix::identity(2);
    const Representation bad(h, SymplecticSpace::standard(1), mats);
    EXPECT_THROW(extend(h, form("12+34", 4, 2), e(4, 0), bad), InvalidArgument);
    EXPECT_THROW(extend(h, form("12+34", 4, 2), e(4, 1), Representation::trivial(h, SymplecticSpace::standard(1))),
                 InvalidArgument);
}

TEST(Extend, BlocksAreOrthogonalAndRestrictionsMatch) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto fam = diagonal_family(n, Rational(-1, 3));
        const auto ext = extend(fam.h, fam.omega, fam.theta, fam.rep);
        const QMatrix G = ext.structure.omega.gram();
        for (std::size_t i = 0; i < 4 + 2 * n; ++i)
            for (std::size_t j = 0; j < 4 + 2 * n; ++j) {
                const bool hi = i < 4, hj = j < 4;
                if (hi && hj) EXPECT_EQ(G(i, j), fam.omega.gram()(i, j));
                else if (!hi && !hj) EXPECT_EQ(G(i, j), fam.rep.space().gram()(i - 4, j - 4));
                else EXPECT_EQ(G(i, j), 0);
            }
        for (std::size_t a = 4; a < 4 + 2 * n; ++a) EXPECT_EQ(ext.structure.theta.as_vector()[a], 0);
    }
}

TEST(UnimodularDimension, TableExamples) {
    const Rational sigma(2, 3);
    EXPECT_EQ(unimodular_extension_dim(r2prime(), sigma * e(4, 0)), Rational(3));
    const Rational lambda(-1, 3);
    EXPECT_EQ(unimodular_extension_dim(algebra("(0,-12,-λ13,0)", {{"λ", lambda}}), -lambda * e(4, 0)), Rational(2));
    EXPECT_EQ(unimodular_extension_dim(algebra("(0,-12,13,0)"), e(4, 0)), Rational(0));
    EXPECT_THROW(unimodular_extension_dim(r2prime(), KForm(4, 1)), InvalidArgument);
    EXPECT_FALSE(unimodular_extension_dim(algebra("(0,-12,0,-34)"), e(4, 0) + e(4, 2) * Rational(2)));
}

// tr ad^g_X = tr ad^h_X + tr pi(X) = tr ad^h_X - m theta(X) for an LCS
// representation on a 2m-dimensional space.
TEST(UnimodularDimension, ExtensionUnimodularIffTraceCondition) {
    for (std::size_t n = 1; n <= 3; ++n)
        for (const Rational& lambda : {Rational(-1, 3), Rational(-1, 2), Rational(1), Rational(-1, 4)}) {
            const auto fam = diagonal_family(n, lambda);
            const auto ext = extend(fam.h, fam.omega, fam.theta, fam.rep);
            bool traces = true;
            for (std::size_t i = 0; i < 4; ++i)
                traces = traces && adjoint(fam.h, unit_vector(4, i)).trace() == Rational(n) * fam.theta.as_vector()[i];
            EXPECT_EQ(ext.unimodular, traces);
            const auto dim = unimodular_extension_dim(fam.h, fam.theta);
            EXPECT_EQ(ext.unimodular, dim && *dim == Rational(n));
        }
}

TEST(UnimodularDimension, SecondTableFormulas) {
    for (const auto* entry : testing_support::second_table()) {
        const auto g = entry->algebra();
        EXPECT_EQ(unimodular_extension_dim(g, entry->theta_form(g.dim())), entry->expect.extension_dim) << entry->name;
    }
}

TEST(Decompose, RrExample) {
    const auto g = algebra("(0,-12,13,0)");
    const auto d = decompose(g, form("12+34", 4, 2), e(4, 0), {unit_vector(4, 2), unit_vector(4, 3)});
    EXPECT_EQ(d.acting, algebra("(0,-12)"));
    EXPECT_EQ(d.rep[0], QMatrix::diagonal({-1, 0}));
    EXPECT_TRUE(d.rep[1].is_zero());
    EXPECT_EQ(d.theta, e(2, 0));
    EXPECT_EQ(d.omega, form("12", 2, 2));
    EXPECT_TRUE(is_lcs_representation(d.rep, d.theta));
}

TEST(Decompose, RoundTripThroughExtend) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto fam = diagonal_family(n, Rational(-1, 3));
        const auto ext = extend(fam.h, fam.omega, fam.theta, fam.rep);
        std::vector<Vector> u;
        for (std::size_t a = 0; a < 2 * n; ++a) u.push_back(unit_vector(4 + 2 * n, 4 + a));
        const auto d = decompose(ext.algebra, ext.structure.omega, ext.structure.theta, u);
        EXPECT_EQ(d.acting, fam.h);
        EXPECT_EQ(d.omega, fam.omega);
        EXPECT_EQ(d.theta, fam.theta);
        EXPECT_EQ(d.rep, fam.rep);
    }
    const auto ext = extend(r2prime(), form("13-1/2 24", 4, 2), e(4, 0), r2prime_rep());
    std::vector<Vector> u;
    for (std::size_t a = 4; a < 8; ++a) u.push_back(unit_vector(8, a));
    const auto d = decompose(ext.algebra, ext.structure.omega, ext.structure.theta, u);
    EXPECT_EQ(d.acting, r2prime());
    EXPECT_EQ(d.rep, r2prime_rep());
}

TEST(Decompose, FirstTableRoundTrip) {
    int decomposed = 0;
    for (const auto* entry : testing_support::first_table()) {
        if (entry->expect.decomposable != true) continue;
        const auto g = entry->algebra();
        const KForm omega = entry->omega_form(4), theta = entry->theta_form(4);
        const auto u = find_nondegenerate_abelian_ideal(g, omega, theta);
        ASSERT_TRUE(u) << entry->name;
        const auto d = decompose(g, omega, theta, *u);
        const auto back = extend(d.acting, d.omega, d.theta, d.rep);
        EXPECT_EQ(back.algebra, g.in_basis(d.basis)) << entry->name;
        EXPECT_EQ(back.structure.omega, KForm::from_gram(d.basis.transpose() * omega.gram() * d.basis));
        EXPECT_EQ(back.verdict.kind, Kind::Second);
        ++decomposed;
    }
    EXPECT_GE(decomposed, 10);
}

TEST(Decompose, NamedPreconditionFailures) {
    const auto g = algebra("(0,-12,13,0)");
    const KForm omega = form("12+34", 4, 2), theta = e(4, 0);
    const auto reason = [&](const std::vector<Vector>& u) {
        try {
            decompose(g, omega, theta, u);
        } catch (const DecompositionError& err) {
            return err.reason();
        }
        return IdealFailure::None;
    };
    EXPECT_EQ(reason({unit_vector(4, 2), unit_vector(4, 2)}), IdealFailure::Dependent);
    EXPECT_EQ(reason({unit_vector(4, 0), unit_vector(4, 3)}), IdealFailure::NotIdeal);
    EXPECT_EQ(reason({unit_vector(4, 1), unit_vector(4, 2)}), IdealFailure::Degenerate);
    EXPECT_EQ(reason({unit_vector(4, 2), unit_vector(4, 3)}), IdealFailure::None);

    const auto h3 = algebra("(0,0,-12,0)");
    const KForm o = form("13+24", 4, 2);
    ASSERT_TRUE(check_lcs(h3, o, KForm(4, 1)));
    EXPECT_EQ(check_decomposable_ideal(h3, o, KForm(4, 1), {unit_vector(4, 0), unit_vector(4, 1), unit_vector(4, 2),
                                                            unit_vector(4, 3)})
                  .failure,
              IdealFailure::NotAbelian);

    const auto ab = LieAlgebra::abelian(4);
    const auto c = check_decomposable_ideal(ab, form("12+34", 4, 2), e(4, 0), {unit_vector(4, 0), unit_vector(4, 1)});
    EXPECT_EQ(c.failure, IdealFailure::ThetaNonvanishing);
    EXPECT_EQ(c.witness, unit_vector(4, 0));
}

TEST(Decompose, SearchFindsRrIdeal) {
    const auto u = find_nondegenerate_abelian_ideal(algebra("(0,-12,13,0)"), form("12+34", 4, 2), e(4, 0));
    ASSERT_TRUE(u);
    EXPECT_TRUE(oracle::same_span(*u, {unit_vector(4, 2), unit_vector(4, 3)}));
}

TEST(Decompose, SearchRejectsZeroTheta) {
    EXPECT_THROW(find_nondegenerate_abelian_ideal(LieAlgebra::abelian(4), form("12+34", 4, 2), KForm(4, 1)),
                 InvalidArgument);
}

TEST(Decompose, ExceptionalStructureHasNoCoordinateIdeal) {
    const auto g = algebra("(14,-24,-12,0)");
    const KForm omega = form("12-34+24", 4, 2), theta = e(4, 3);
    EXPECT_FALSE(find_nondegenerate_abelian_ideal(g, omega, theta));
    // Every 2-dimensional coordinate subspace fails some hypothesis.
    for (const auto& t : oracle::increasing_tuples(4, 2)) {
        const std::vector<Vector> u{unit_vector(4, t[0]), unit_vector(4, t[1])};
        EXPECT_FALSE(check_decomposable_ideal(g, omega, theta, u));
        EXPECT_THROW(decompose(g, omega, theta, u), DecompositionError);
    }
    // Candidates supplied by the caller are tried as well.
    const std::vector<Vector> mixed{{0, 1, 1, 0}, {1, 0, 0, 0}};
    EXPECT_FALSE(find_nondegenerate_abelian_ideal(g, omega, theta, {mixed}));
}
