#include <random>

#include <gtest/gtest.h>

#include "relroots/closed_forms.hpp"
#include "relroots/io.hpp"
#include "relroots/roots.hpp"
#include "relroots/stability.hpp"
#include "support.hpp"

using namespace relroots;
using relroots::testing::poly;

namespace
{

std::string signs(const SchurCohnReport& r) { return r.sign_string(); }

}

TEST(Determinant, GaussianRationalMatrices)
{
    const ComplexMatrix m{{ComplexRational(1), ComplexRational(2)}, {ComplexRational(3), ComplexRational(4)}};
    EXPECT_EQ(determinant(m), ComplexRational(-2));
    const ComplexMatrix c{{ComplexRational(0, 1), ComplexRational(make_rational(1, 2))},
                          {ComplexRational(2), ComplexRational(1, 1)}};
    // i(1+i) - 1/2 * 2 = -2 + i
    EXPECT_EQ(determinant(c), ComplexRational(-2, 1));
    const ComplexMatrix needs_pivot{{ComplexRational(0), ComplexRational(1)}, {ComplexRational(1), ComplexRational(0)}};
    EXPECT_EQ(determinant(needs_pivot), ComplexRational(-1));
    EXPECT_EQ(determinant(ComplexMatrix{}), ComplexRational(1));
}

TEST(SchurCohn, LinearExamples)
{
    const auto outside = schur_cohn(parse_poly_literal("q-2"));
    EXPECT_EQ(signs(outside), "-");
    EXPECT_EQ(outside.beta, 1);
    const auto inside = schur_cohn(parse_poly_literal("q-1/2"));
    EXPECT_EQ(signs(inside), "+");
    EXPECT_EQ(inside.beta, 0);
}

TEST(SchurCohn, FirstDeterminantIsLeadingMinusConstantNorm)
{
    std::mt19937_64 rng(64);
    std::uniform_int_distribution<long> c(-9, 9);
    for (int trial = 0; trial < 50; ++trial)
    {
        std::vector<ComplexRational> coeffs;
        for (int i = 0; i < 2 + trial % 6; ++i)
            coeffs.emplace_back(make_rational(c(rng), 1 + trial % 3), mpq_class(c(rng)));
        coeffs.back() = ComplexRational(mpq_class(10 + trial), mpq_class(1));
        const ComplexPoly p(coeffs);
        EXPECT_EQ(schur_cohn_determinants(p).front(), p.coeffs().back().norm() - p.coeffs().front().norm());
    }
}

TEST(SchurCohn, HypothesisFailureOnTheCircle)
{
    const auto r = schur_cohn(parse_poly_literal("q^2-1"));
    EXPECT_TRUE(r.hypothesis_failed);
    EXPECT_FALSE(r.beta.has_value());
}

TEST(SchurCohn, InputErrors)
{
    EXPECT_THROW(schur_cohn(ComplexPoly()), InputError);
    EXPECT_THROW(schur_cohn(parse_poly_literal("5")), InputError);
}

TEST(SchurCohn, AgreesWithRootCountsOnKnownPolynomials)
{
    // (q - 2)(q - 1/3)(q + 3i): two roots outside.
    const ComplexPoly p = parse_poly_literal("q-2") * parse_poly_literal("q-1/3") * parse_poly_literal("q+3i");
    EXPECT_EQ(schur_cohn(p).beta, 2);
    // (q - i/2)(q + 1/4): none outside.
    EXPECT_EQ(schur_cohn(parse_poly_literal("q-i/2") * parse_poly_literal("q+1/4")).beta, 0);
}

TEST(BuildFn, LowDegreeForms)
{
    const ParametricPoly f3 = build_fn(3);
    EXPECT_EQ(f3.degree(), 1);
    // (2 + a + bi) q - (a + bi) at a = 5/2, b = -1.
    const ComplexPoly at = f3.instantiate(make_rational(5, 2), -1);
    EXPECT_EQ(at, ComplexPoly({ComplexRational(make_rational(-5, 2), 1), ComplexRational(make_rational(9, 2), -1)}));

    const ParametricPoly f4 = build_fn(4);
    EXPECT_EQ(f4.degree(), 3);
    const mpq_class a(-7, 3), b(4);
    const ComplexRational t(a, b);
    const ComplexPoly expected = ComplexPoly(poly({0, 0, 2, 6})) - t * ComplexPoly(one_minus_q() * poly({1, 3, 4}));
    EXPECT_EQ(f4.instantiate(a, b), expected);
}

TEST(BuildFn, HigherDegreesMatchClosedFormsAtAPoint)
{
    for (int n = 5; n <= 6; ++n)
    {
        const ParametricPoly f = build_fn(n);
        EXPECT_EQ(f.degree(), (n - 1) * (n - 2) / 2);
        const mpq_class q(1, 3);
        const ComplexRational t(1, 1);
        const mpq_class scale = one_minus_q_power(n - 2)(q);
        const ComplexRational expected =
            (ComplexRational(sprel_Kn_minus(n)(q)) - t * ComplexRational(rel_Kn_minus(n)(q))) / ComplexRational(scale);
        EXPECT_EQ(f.instantiate(1, 1)(ComplexRational(q)), expected);
    }
    EXPECT_THROW(build_fn(2), InputError);
    EXPECT_THROW(build_fn(7), InputError);
}

TEST(DeterminantPoly, FirstDeterminantOfF3IsFourAPlusFour)
{
    const BivariatePoly m1 = schur_cohn_determinant_poly(build_fn(3), 1);
    for (std::size_t i = 0; i < m1.c.size(); ++i)
        for (std::size_t j = 0; j < m1.c[i].size(); ++j)
        {
            const mpq_class expected = (i == 0 && j == 0) || (i == 1 && j == 0) ? 4 : 0;
            EXPECT_EQ(m1.c[i][j], expected) << i << ',' << j;
        }
}

TEST(DeterminantPoly, MatchesPointwiseDeterminants)
{
    const ParametricPoly f = build_fn(4);
    for (std::size_t k = 1; k <= 3; ++k)
    {
        const BivariatePoly m = schur_cohn_determinant_poly(f, k);
        for (const auto& [a, b] : std::vector<std::pair<mpq_class, mpq_class>>{{make_rational(-9, 10), make_rational(83, 10)},
                                                                                {make_rational(1, 7), mpq_class(-2)},
                                                                                {mpq_class(3), make_rational(5, 3)}})
        {
            const auto d = determinant(schur_cohn_matrix(f.coefficients(a, b), k));
            EXPECT_EQ(m(a, b), d.re);
        }
    }
}

TEST(RangeOverBox, EnclosesSampledValues)
{
    const BivariatePoly m = schur_cohn_determinant_poly(build_fn(4), 3);
    const ParamBox box{mpq_class(-1), make_rational(1, 2), mpq_class(2), mpq_class(3)};
    const RationalInterval r = range_over_box(m, box);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j)
        {
            const mpq_class a = box.a_lo + (box.a_hi - box.a_lo) * make_rational(i, 6);
            const mpq_class b = box.b_lo + (box.b_hi - box.b_lo) * make_rational(j, 6);
            EXPECT_LE(r.lo, m(a, b));
            EXPECT_GE(r.hi, m(a, b));
        }
}

TEST(SchurCohnBox, F3OverPublishedBox)
{
    const auto r = schur_cohn_box(build_fn(3), *published_param_box(9));
    EXPECT_EQ(signs(r), "-");
    EXPECT_EQ(r.beta, 1);
}

TEST(SchurCohnBox, F4OverPublishedBox)
{
    const auto r = schur_cohn_box(build_fn(4), *published_param_box(7));
    EXPECT_EQ(signs(r), "++-");
    EXPECT_EQ(r.beta, 1);
    EXPECT_EQ(r.subdivision_depth, 0);
}

TEST(SchurCohnBox, StraddlingBoxIsIndeterminate)
{
    const auto r = schur_cohn_box(build_fn(3), ParamBox{mpq_class(-2), mpq_class(2), mpq_class(0), mpq_class(1)});
    EXPECT_FALSE(r.beta.has_value());
    EXPECT_FALSE(r.hypothesis_failed);
}

TEST(SchurCohnBox, SubdivisionResolvesAWideBox)
{
    // One enclosure of M_3 over the whole box is too loose; a single bisection settles it.
    const ParamBox box{make_rational(-95, 100), make_rational(-89, 100), mpq_class(8), mpq_class(9)};
    const auto coarse = schur_cohn_box(build_fn(4), box, 0);
    EXPECT_FALSE(coarse.beta.has_value());
    const auto r = schur_cohn_box(build_fn(4), box);
    ASSERT_TRUE(r.beta.has_value());
    EXPECT_EQ(signs(r), "++-");
    EXPECT_EQ(*r.beta, 1);
    EXPECT_GT(r.subdivision_depth, 0);
}

TEST(SchurCohnBox, BoxAcrossASignChangeOfM3StaysIndeterminate)
{
    // At b = 8.5, M_3 of f_4 is negative at a = -0.9 and positive at a = -0.85.
    EXPECT_EQ(schur_cohn(build_fn(4).instantiate(make_rational(-9, 10), make_rational(17, 2))).sign_string(), "++-");
    EXPECT_EQ(schur_cohn(build_fn(4).instantiate(make_rational(-85, 100), make_rational(17, 2))).sign_string(), "+++");
    const auto r = schur_cohn_box(build_fn(4), ParamBox{make_rational(-95, 100), make_rational(-85, 100), mpq_class(8), mpq_class(9)});
    EXPECT_FALSE(r.beta.has_value());
    EXPECT_EQ(r.sign_string(), "++?");
}

TEST(SchurCohnBox, SubBoxesOfADeterminateBoxAgree)
{
    const ParamBox box = *published_param_box(7);
    const auto parent = schur_cohn_box(build_fn(4), box);
    ASSERT_TRUE(parent.beta.has_value());
    for (int i = 0; i < 4; ++i)
    {
        ParamBox sub = box;
        const mpq_class wa = (box.a_hi - box.a_lo) / 2, wb = (box.b_hi - box.b_lo) / 2;
        sub.a_lo += (i & 1) * wa;
        sub.a_hi = sub.a_lo + wa;
        sub.b_lo += (i >> 1) * wb;
        sub.b_hi = sub.b_lo + wb;
        const auto child = schur_cohn_box(build_fn(4), sub);
        EXPECT_EQ(child.signs, parent.signs);
    }
}

TEST(SchurCohnBox, PointBoxesMatchExactTest)
{
    const ParametricPoly f = build_fn(5);
    for (const auto& [a, b] : std::vector<std::pair<long, long>>{{-1, 7}, {2, 1}, {0, -3}})
    {
        const auto point = schur_cohn_box(f, ParamBox{a, a, b, b});
        const auto exact = schur_cohn(f.instantiate(a, b));
        EXPECT_EQ(point.signs, exact.signs);
        EXPECT_EQ(point.beta, exact.beta);
    }
}

TEST(ParamBoxFromRoot, PointAtOneHalf)
{
    const ParamBox b = param_box_from_root({make_rational(1, 2), make_rational(1, 2), mpq_class(0), mpq_class(0)}, 1);
    EXPECT_EQ(b.a_lo, 1);
    EXPECT_EQ(b.a_hi, 1);
    EXPECT_EQ(b.b_lo, 0);
    EXPECT_EQ(b.b_hi, 0);
}

TEST(ParamBoxFromRoot, DerivedBoxesLieInsidePublishedBoxes)
{
    for (int k : {9, 7})
    {
        const ParamBox derived = param_box_from_root(g33_root_box(), k);
        EXPECT_TRUE(published_param_box(k)->contains(derived)) << "k = " << k;
    }
}

TEST(ParamBoxFromRoot, EnclosesImagesOfSampledPoints)
{
    const ParamBox root = g33_root_box();
    for (unsigned long k : {1ul, 6ul, 9ul})
    {
        const ParamBox out = param_box_from_root(root, k);
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 4; ++j)
            {
                const std::complex<double> w(root.a_lo.get_d() + mpq_class(root.a_hi - root.a_lo).get_d() * i / 4,
                                             root.b_lo.get_d() + mpq_class(root.b_hi - root.b_lo).get_d() * j / 4);
                const std::complex<double> z = std::pow(w, 1.0 / static_cast<double>(k));
                const std::complex<double> g = z / (1.0 - z);
                EXPECT_LE(out.a_lo.get_d(), g.real() + 1e-12);
                EXPECT_GE(out.a_hi.get_d(), g.real() - 1e-12);
                EXPECT_LE(out.b_lo.get_d(), g.imag() + 1e-12);
                EXPECT_GE(out.b_hi.get_d(), g.imag() - 1e-12);
            }
    }
}

TEST(ParamBoxFromRoot, InputErrors)
{
    EXPECT_THROW(param_box_from_root({make_rational(1, 2), mpq_class(2), mpq_class(-1), mpq_class(1)}, 3), InputError);
    EXPECT_THROW(param_box_from_root({mpq_class(-2), mpq_class(-1), mpq_class(-1), mpq_class(1)}, 3), InputError);
    EXPECT_THROW(param_box_from_root({mpq_class(1), mpq_class(0), mpq_class(0), mpq_class(1)}, 3), InputError);
}
