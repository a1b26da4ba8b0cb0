#include <random>

#include <gtest/gtest.h>

#include "vgw/linear_algebra.hpp"
#include "vgw/multi_poly.hpp"
#include "vgw/series.hpp"

using namespace vgw;

namespace {

Rational random_rational(std::mt19937& rng)
{
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
    return make_rational(num(rng), den(rng));
}

MultiPoly x() { return MultiPoly::variable(3, 0); }
MultiPoly y() { return MultiPoly::variable(3, 1); }
MultiPoly z1() { return MultiPoly::variable(3, 2); }

MultiPoly monomial(Exponents e, const Rational& c)
{
    MultiPoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

} // namespace

TEST(Rational, FieldAxiomsOnRandomValues)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        EXPECT_EQ(Rational(a + b), Rational(b + a));
        EXPECT_EQ(Rational(a * b), Rational(b * a));
        EXPECT_EQ(Rational((a + b) + c), Rational(a + (b + c)));
        EXPECT_EQ(Rational((a * b) * c), Rational(a * (b * c)));
        EXPECT_EQ(Rational(a * (b + c)), Rational(a * b + a * c));
        EXPECT_EQ(Rational(a - a), Rational(0));
        if (a != 0) {
            EXPECT_EQ(Rational(a * *try_invert(a)), Rational(1));
        }
    }
}

TEST(Rational, CanonicalFormAndParsing)
{
    EXPECT_EQ(make_rational(6, -4), parse_rational("-3/2"));
    EXPECT_EQ(to_pq(make_rational(10, 5)), "2/1");
    EXPECT_EQ(to_plain(make_rational(10, 5)), "2");
    EXPECT_EQ(to_pq(parse_rational("4/6")), "2/3");
    EXPECT_THROW(parse_rational("1/0"), ValidationError);
    EXPECT_THROW(parse_rational("abc"), ValidationError);
    EXPECT_FALSE(try_invert(Rational(0)).has_value());
    EXPECT_EQ(factorial(10), Integer(3628800));
    EXPECT_EQ(pow(make_rational(2, 3), 3), make_rational(8, 27));
}

TEST(MultiPoly, Products)
{
    EXPECT_EQ(x() * y(), monomial({1, 1, 0}, 1));
    MultiPoly conic = (x() + y()) * make_rational(1, 2) + z1();
    EXPECT_EQ(conic * MultiPoly(3, 1), conic);
    MultiPoly sq = (x() + y()) * (x() + y());
    EXPECT_EQ(sq, monomial({2, 0, 0}, 1) + monomial({1, 1, 0}, 2) + monomial({0, 2, 0}, 1));
    EXPECT_TRUE(sq.is_homogeneous(2));
    EXPECT_EQ(sq.degree_in(0), 2);
    EXPECT_TRUE((sq - sq).is_zero());
    std::vector<Rational> pt{2, 3, 5};
    EXPECT_EQ(sq.evaluate(pt), Rational(25));
    EXPECT_EQ(conic.to_string({"x", "y", "z1"}), "1/2*x + 1/2*y + z1");
}

TEST(MultiPoly, ArityMismatchIsRejected)
{
    EXPECT_THROW(MultiPoly::variable(2, 0) + x(), ValidationError);
}

TEST(Series, GeometricSeries)
{
    TruncatedSeries<Rational> s(2, std::vector<Rational>{1, -1, 0});
    auto inv = series_invert(s, 2);
    EXPECT_EQ(inv, (TruncatedSeries<Rational>(2, std::vector<Rational>{1, 1, 1})));
}

TEST(Series, ScalarInverse)
{
    TruncatedSeries<Rational> s(0, std::vector<Rational>{make_rational(3, 7)});
    EXPECT_EQ(series_invert(s, 0)[0], make_rational(7, 3));
}

TEST(Series, SymbolicFirstOrderInverse)
{
    RationalFunction c((x() + y()) * make_rational(1, 2));
    RationalFunction one(MultiPoly(3, 1));
    TruncatedSeries<RationalFunction> s(1, std::vector<RationalFunction>{c, one});
    auto inv = series_invert(s, 1);
    EXPECT_EQ(inv[0], RationalFunction(MultiPoly(3, 1), c.num()));
    EXPECT_EQ(inv[1], RationalFunction(MultiPoly(3, -1), c.num() * c.num()));
}

TEST(Series, NonInvertibleConstantTerm)
{
    TruncatedSeries<Rational> s(2, std::vector<Rational>{0, 1, 0});
    EXPECT_THROW(series_invert(s, 2), SeriesError);
    EXPECT_THROW(series_invert(TruncatedSeries<Rational>(2, std::vector<Rational>{1, 0, 0}), 3), ValidationError);
}

TEST(Series, InverseIsTwoSidedOnRandomSeries)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> c(8);
        for (auto& v : c)
            v = random_rational(rng);
        if (c[0] == 0)
            c[0] = 1;
        TruncatedSeries<Rational> s(7, c);
        auto prod = s * series_invert(s, 7);
        TruncatedSeries<Rational> one(7, Rational(0));
        one[0] = 1;
        EXPECT_EQ(prod, one);
    }
}

TEST(Series, Exponential)
{
    TruncatedSeries<Rational> t(4, std::vector<Rational>{0, 1, 0, 0, 0});
    auto e = series_exp(t);
    EXPECT_EQ(e, (TruncatedSeries<Rational>(
                     4, std::vector<Rational>{1, 1, make_rational(1, 2), make_rational(1, 6), make_rational(1, 24)})));
    EXPECT_THROW(series_exp(TruncatedSeries<Rational>(1, std::vector<Rational>{1, 0})), SeriesError);
}

TEST(LinearAlgebra, SquareSolveAndDeterminant)
{
    Matrix a{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    EXPECT_EQ(determinant(a), Rational(18));
    std::vector<Rational> xs{1, make_rational(-2, 3), 5};
    std::vector<Rational> b(3, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            b[i] += a[i][j] * xs[j];
    auto sol = solve_square(a, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(*sol, xs);
}

TEST(LinearAlgebra, RankDeficientAndInconsistent)
{
    Matrix a{{1, 2}, {2, 4}};
    auto r = eliminate(a, {1, 2}, 2);
    EXPECT_TRUE(r.consistent);
    EXPECT_EQ(r.rank, 1);
    EXPECT_EQ(r.free_columns, std::vector<int>{1});
    EXPECT_FALSE(solve_square(a, {1, 2}).has_value());
    auto bad = eliminate(a, {1, 3}, 2);
    EXPECT_FALSE(bad.consistent);
    auto over = eliminate({{1, 0}, {0, 1}, {1, 1}}, {2, 3, 5}, 2);
    EXPECT_TRUE(over.consistent);
    EXPECT_EQ(over.solution, (std::vector<Rational>{2, 3}));
}
