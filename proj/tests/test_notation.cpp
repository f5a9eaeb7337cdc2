#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lcs;
using testing_support::algebra;
using testing_support::form;

TEST(Notation, AbelianTuple) {
    const auto g = algebra("(0,0,0,0)");
    EXPECT_EQ(g.dim(), 4u);
    EXPECT_TRUE(g.is_abelian());
}

TEST(Notation, BracketsCarryOppositeSign) {
    const auto g = algebra("(0,-12,13,0)");
    EXPECT_EQ(g.bracket_basis(0, 1), unit_vector(4, 1));
    Vector minus_e3(4, 0);
    minus_e3[2] = -1;
    EXPECT_EQ(g.bracket_basis(0, 2), minus_e3);
    EXPECT_TRUE(is_zero(g.bracket_basis(1, 2)));
    EXPECT_TRUE(is_zero(g.bracket_basis(0, 3)));
}

TEST(Notation, ParameterSubstitution) {
    const auto g = algebra("(14,α24,-(1+α)34,0)", {{"α", Rational(1, 2)}});
    const auto d = structure_forms(g);
    EXPECT_EQ(d[0], form("14", 4, 2));
    EXPECT_EQ(d[1], KForm::monomial(4, {1, 3}, Rational(1, 2)));
    EXPECT_EQ(d[2], KForm::monomial(4, {2, 3}, Rational(-3, 2)));
    EXPECT_TRUE(d[3].is_zero());
}

TEST(Notation, ReversedPairFlipsSign) {
    EXPECT_EQ(form("21", 2, 2), -form("12", 2, 2));
    EXPECT_EQ(form("-1/2 24+56", 6, 2), KForm::monomial(6, {1, 3}, Rational(-1, 2)) + KForm::monomial(6, {4, 5}));
}

TEST(Notation, FormatExamples) {
    EXPECT_EQ(format_structure_equations(LieAlgebra::abelian(2)), "(0,0)");
    EXPECT_EQ(format_structure_equations(algebra("(0,-12,13,0)")), "(0,-12,13,0)");
    EXPECT_EQ(format_form(form("13-1/2 24+56+78", 8, 2)), "13-1/2 24+56+78");
}

TEST(Notation, BracketedIndicesAboveNine) {
    std::string eq = "(0";
    for (int k = 2; k <= 10; ++k) eq += k == 10 ? ",-[1][10]" : ",0";
    eq += ")";
    const auto g = algebra(eq);
    EXPECT_EQ(g.dim(), 10u);
    EXPECT_EQ(g.bracket_basis(0, 9), unit_vector(10, 9));
    EXPECT_EQ(format_structure_equations(g), eq);
    EXPECT_THROW(algebra("(0,0,0,0,0,0,0,0,0,-12)"), ParseError);
}

TEST(Notation, RoundTripOnCorpus) {
    for (const auto& e : testing_support::corpus()) {
        const auto g = e.algebra();
        const std::string text = format_structure_equations(g);
        const auto again = algebra(text);
        EXPECT_EQ(again, g) << e.name;
        EXPECT_EQ(format_structure_equations(again), text) << e.name;
    }
}

TEST(Notation, RoundTripRandomForms) {
    oracle::Generator gen(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + gen.index(11);
        const std::size_t k = 1 + gen.index(std::min<std::size_t>(n, 3));
        const KForm f = gen.form(n, k);
        EXPECT_EQ(parse_form(format_form(f), n, k), f) << format_form(f);
    }
}

TEST(Notation, StructureEquationsReproduceTuple) {
    for (const auto& e : testing_support::corpus()) {
        const auto g = e.algebra();
        const auto d = structure_forms(g);
        for (std::size_t k = 0; k < g.dim(); ++k)
            EXPECT_EQ(ce_differential(g, KForm::one_form(unit_vector(g.dim(), k))), d[k]) << e.name;
    }
}

namespace {

ParseError parse_error(const std::string& text, const Parameters& params = {}) {
    try {
        parse_structure_equations({text, params}, 3, 5);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no ParseError for " << text;
    return ParseError("none", 0, 0);
}

} // namespace

TEST(NotationErrors, UnboundParameterReportsColumn) {
    const auto e = parse_error("(0,-λ12,0)");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 5u + 4);
    EXPECT_NE(std::string(e.what()).find("λ"), std::string::npos);
}

TEST(NotationErrors, Malformed) {
    parse_error("0,-12,0)");
    parse_error("(0,-12,0");
    parse_error("(0,-11,0)");
    parse_error("(0,-1,0)");
    parse_error("(0,-13,5)");
    parse_error("(0,-12*,0)");
    parse_error("(0,2 +,0)");
}

TEST(NotationErrors, DimensionMismatchInForm) {
    EXPECT_THROW(parse_form("15", 4, 2), ParseError);
    EXPECT_THROW(parse_form("123", 4, 2), ParseError);
}

TEST(NotationErrors, JacobiViolationHasWitness) {
    // d_4 with de^1 doubled.
    try {
        algebra("(2 14,-24,-12,0)");
        FAIL() << "expected a Jacobi failure";
    } catch (const JacobiError& e) {
        const auto& w = e.result().witness;
        StructureConstants c = algebra("(0,0,0,0)").constants();
        c.set(0, 3, 0, -2);
        c.set(1, 3, 1, 1);
        c.set(0, 1, 2, 1);
        Vector sum(4, 0);
        const std::size_t i = w[0], j = w[1], k = w[2];
        const auto add = [&](const Vector& v) {
            for (std::size_t l = 0; l < 4; ++l) sum[l] += v[l];
        };
        add(c.bracket(c.bracket_basis(i, j), unit_vector(4, k)));
        add(c.bracket(c.bracket_basis(j, k), unit_vector(4, i)));
        add(c.bracket(c.bracket_basis(k, i), unit_vector(4, j)));
        EXPECT_FALSE(is_zero(sum));
        EXPECT_EQ(sum, e.result().defect);
    }
}

TEST(NotationErrors, JacobiOnRawConstants) {
    const StructureConstants c = [] {
        StructureConstants s(4);
        s.set(0, 3, 0, -2);
        s.set(1, 3, 1, 1);
        s.set(0, 1, 2, 1);
        return s;
    }();
    EXPECT_FALSE(check_jacobi(c).holds);
    EXPECT_TRUE(check_jacobi(algebra("(14,-24,-12,0)").constants()).holds);
    EXPECT_TRUE(check_jacobi(StructureConstants(3)).holds);
}

TEST(NotationErrors, ParameterizedJacobiFailure) {
    EXPECT_THROW(algebra("(δ/2 14+24,1/2 24,-12+34,0)", {{"δ", Rational(2)}}), JacobiError);
    EXPECT_NO_THROW(algebra("(δ/2 14+24,1/2 24,-12+34,0)", {{"δ", Rational(1)}}));
}
