#include <gtest/gtest.h>

#include "vgw/recursion.hpp"
#include "vgw/residue.hpp"

using namespace vgw;

namespace {

MultiPoly var(int n, int i) { return MultiPoly::variable(n, i); }

} // namespace

TEST(Residue, DegreeOneIsTheEmptyProduct)
{
    EXPECT_EQ(poly_d(1), MultiPoly(2, 1));
}

TEST(Residue, ConicIntegrand)
{
    // A^2/(A - z) with A = (x+y)/2 + t: the two residues add up to A(0) + z by partial fractions.
    auto p = iterated_residue(trial_integrand(2));
    EXPECT_EQ(p, (var(3, 0) + var(3, 1)) * make_rational(1, 2) + var(3, 2));
    EXPECT_EQ(p, poly_d(2));
}

TEST(Residue, HandComputedSingleVariable)
{
    // A = x + 2t, pole at A = y: x^2/(x-y) + y^2/(y-x) = x + y.
    ResidueIntegrand f;
    f.nvars = 2;
    f.base = {var(2, 0)};
    f.slope = {{2}};
    f.pole_var = {1};
    EXPECT_EQ(iterated_residue(f), var(2, 0) + var(2, 1));
}

TEST(Residue, OriginOnlyContourIsNotPolynomial)
{
    EXPECT_THROW(iterated_residue(trial_integrand(2), ContourRule::OriginOnly), ResidueError);
}

TEST(Residue, FrozenCubicPolynomial)
{
    // Independently obtained by symbolic partial fractions.
    const int n = 4;
    MultiPoly x = var(n, 0), y = var(n, 1), z1 = var(n, 2), z2 = var(n, 3);
    MultiPoly expected = x * x * make_rational(2, 9) + x * y * make_rational(5, 9) + y * y * make_rational(2, 9)
                         + x * z1 * make_rational(1, 3) + x * z2 * make_rational(2, 3) + y * z1 * make_rational(2, 3)
                         + y * z2 * make_rational(1, 3) + z1 * z1 * make_rational(1, 2) + z1 * z2
                         + z2 * z2 * make_rational(1, 2);
    EXPECT_EQ(poly_d(3), expected);
}

TEST(Residue, PolynomialInvariants)
{
    for (int d = 1; d <= 5; ++d) {
        const auto& p = poly_d(d);
        EXPECT_EQ(p.nvars(), d + 1);
        EXPECT_TRUE(p.is_homogeneous(d - 1)) << "d=" << d;
        // Setting every variable to 1 collapses each A_j onto its pole and leaves the
        // coefficient sum; it must be positive for the recursion to reproduce the series.
        std::vector<Rational> ones(d + 1, 1);
        EXPECT_GT(p.evaluate(ones), 0) << "d=" << d;
        // Reversal x <-> y, z_j <-> z_{d-j} is a symmetry of the integrand.
        for (const auto& [e, c] : p.terms()) {
            Exponents r(e.size());
            r[0] = e[1];
            r[1] = e[0];
            for (int j = 1; j < d; ++j)
                r[1 + j] = e[1 + d - j];
            EXPECT_EQ(p.coeff(r), c) << "d=" << d;
        }
    }
}

TEST(Residue, DegreeGate)
{
    EXPECT_THROW(poly_d(6), ValidationError);
    EXPECT_THROW(poly_d(0), ValidationError);
}
