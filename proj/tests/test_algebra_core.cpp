#include "dq/parse.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dq;

namespace {

const VariableSet V1 = VariableSet::phase_space(1);
const VariableSet V2 = VariableSet::phase_space(2);

FormalSeries S(const char* text, Truncation w = {8, 8}) { return parse_series(text, V1, w); }

} // namespace

TEST(Rational, CanonicalAndParse)
{
    EXPECT_EQ(make_rational(6, -4).get_str(), "-3/2");
    EXPECT_EQ(parse_rational("-7/2"), make_rational(-7, 2));
    EXPECT_EQ(parse_rational("+5"), Rational(5));
    EXPECT_THROW(parse_rational("1/0"), std::exception);
    EXPECT_THROW(parse_rational("1.5"), std::exception);
    EXPECT_THROW(make_rational(1, 0), std::domain_error);
    EXPECT_EQ(binomial(6, 2), Rational(15));
    EXPECT_EQ(falling_factorial(5, 2), Rational(20));
}

TEST(Variables, PhaseSpaceLayout)
{
    EXPECT_EQ(V1.names(), (std::vector<std::string>{"t", "q", "p"}));
    EXPECT_EQ(V2.names(), (std::vector<std::string>{"t", "q1", "q2", "p1", "p2"}));
    EXPECT_EQ(V2.q(1), 2u);
    EXPECT_EQ(V2.p(0), 3u);
    EXPECT_THROW(VariableSet({"t", "t"}), std::invalid_argument);
    EXPECT_THROW(VariableSet({"1x"}), std::invalid_argument);
    EXPECT_TRUE(natural_less("z2", "z10"));
    EXPECT_FALSE(natural_less("z10", "z2"));
}

TEST(Print, CanonicalOrder)
{
    EXPECT_EQ(to_string(S("1+p") * S("1+q")), "p*q + q + p + 1");
    EXPECT_EQ(to_string(S("q*t^2*p + t^3")), "t^2*p*q + t^3");
    EXPECT_EQ(to_string(S("-p + 1/2")), "-p + 1/2");
    EXPECT_EQ(to_string(S("0")), "0");
    EXPECT_EQ(to_string(S("p - p")), "0");
    EXPECT_EQ(to_string(S("2*p^2*q^3")), "2*p^2*q^3");
}

TEST(Parse, Errors)
{
    EXPECT_THROW(S("p +"), ParseError);
    EXPECT_THROW(S("x"), ParseError);
    EXPECT_THROW(S("p^"), ParseError);
    EXPECT_THROW(S("3/0*p"), std::exception);
    EXPECT_THROW(S("(p)"), ParseError);
}

TEST(Parse, RoundTrip500)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const VariableSet& V = i % 2 ? V2 : V1;
        MultiPoly p = oracle::random_poly(V, 5, 1 + i % 7, rng);
        std::string text = to_string(p);
        MultiPoly back = parse_poly(text, V);
        ASSERT_EQ(back, p) << text;
        ASSERT_EQ(to_string(back), text);
    }
}

TEST(Parse, InferVariables)
{
    EXPECT_EQ(infer_variables("z10*z2 + z1 - 3"), (std::vector<std::string>{"z1", "z2", "z10"}));
}

TEST(Series, RingAxiomsOnRandomInputs)
{
    std::mt19937_64 rng(3);
    Truncation w{5, 5};
    for (int i = 0; i < 100; ++i) {
        auto a = FormalSeries::from_poly(oracle::random_poly(V2, 4, 4, rng), w);
        auto b = FormalSeries::from_poly(oracle::random_poly(V2, 4, 4, rng), w);
        auto c = FormalSeries::from_poly(oracle::random_poly(V2, 4, 4, rng), w);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a - a, FormalSeries(V2, w));
    }
}

TEST(Series, ProductMatchesTruncatedPolynomialProduct)
{
    std::mt19937_64 rng(4);
    Truncation w{3, 4};
    for (int i = 0; i < 50; ++i) {
        MultiPoly a = oracle::random_poly(V1, 6, 5, rng), b = oracle::random_poly(V1, 6, 5, rng);
        auto prod = FormalSeries::from_poly(a, w) * FormalSeries::from_poly(b, w);
        // Product of truncations agrees with the truncated product on the window.
        MultiPoly want = oracle::truncate(oracle::truncate(a, w) * oracle::truncate(b, w), w);
        ASSERT_EQ(prod.poly(), want);
    }
}

TEST(Series, CompletenessTracking)
{
    auto a = S("p^3 + 1", {8, 2});
    EXPECT_FALSE(a.is_complete());
    EXPECT_EQ(to_string(a), "1");
    EXPECT_TRUE(S("p^2").is_complete());
    EXPECT_FALSE((S("p^5", {8, 8}) * S("q^5", {8, 8})).is_complete());
    EXPECT_TRUE(S("p^2").truncated({10, 10}).is_complete());
    EXPECT_THROW(a.truncated({8, 3}), std::domain_error);
    EXPECT_FALSE(S("p").as_truncation().is_complete());
}

TEST(Series, DerivativeShrinksIncompleteWindow)
{
    auto a = S("p^3 + p*q + t").as_truncation();
    auto d = a.derivative("p", 2);
    EXPECT_EQ(d.trunc(), (Truncation{8, 6}));
    EXPECT_EQ(to_string(d), "6*p");
    EXPECT_EQ(S("p^3").derivative("p").trunc(), (Truncation{8, 8}));
    EXPECT_EQ(S("t^2").as_truncation().derivative("t").trunc(), (Truncation{7, 8}));
    EXPECT_THROW(S("p", {0, 1}).as_truncation().derivative("p", 2), std::domain_error);
}

TEST(Series, DerivativeCommutesAndInvertsIntegration)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        auto f = FormalSeries::from_poly(oracle::random_poly(V2, 5, 5, rng), {8, 8});
        ASSERT_EQ(f.derivative("p1").derivative("q2"), f.derivative("q2").derivative("p1"));
        ASSERT_EQ(f.integrate("q1").derivative("q1"), f);
        // Antiderivative vanishes at q1 = 0.
        ASSERT_TRUE(f.integrate("q1").evaluate({{"q1", 0}}).is_zero());
    }
}

TEST(Series, IntegrateWithUpperLimit)
{
    auto f = S("p");
    MultiPoly up = parse_poly("q", V1);
    EXPECT_EQ(to_string(f.integrate("p", up)), "1/2*q^2");
    EXPECT_THROW(S("p^8").integrate("p"), WindowOverflow);
    EXPECT_THROW(S("p").as_truncation().integrate("p", up), std::domain_error);
}

TEST(Series, Evaluate)
{
    auto f = S("t*p*q + p + 3");
    EXPECT_EQ(to_string(f.evaluate({{"p", 2}})), "2*t*q + 5");
    EXPECT_THROW(f.evaluate({{"t", 1}}), std::invalid_argument);
    auto g = f.as_truncation();
    EXPECT_EQ(to_string(g.evaluate({{"p", 0}})), "3");
    EXPECT_THROW(g.evaluate({{"p", 1}}), std::domain_error);
}

TEST(Series, WeightedExactWindow)
{
    auto complete = S("p");
    auto inc = S("p").truncated({8, 8}).as_truncation();
    EXPECT_EQ(weighted_exact_window({&complete, &complete}), (Truncation{8, 8}));
    EXPECT_EQ(weighted_exact_window({&complete, &inc}), (Truncation{4, 0}));
    auto wide = parse_series("p", V1, {8, 24}).as_truncation();
    EXPECT_EQ(weighted_exact_window({&wide, &wide}), (Truncation{8, 8}));
}

TEST(Series, EqualityOnCommonWindow)
{
    EXPECT_EQ(S("p + p^5", {8, 8}), S("p", {8, 2}));
    EXPECT_FALSE(S("1") == parse_series("1", V2, {8, 8}));
}

TEST(MultiPoly, SubstituteEmbedAndEvaluate)
{
    VariableSet Z({"z1", "z2"});
    MultiPoly p = parse_poly("z1^2 + z2", Z);
    EXPECT_EQ(to_string(p.substitute("z1", parse_poly("z2 + 1", Z))), "z2^2 + 3*z2 + 1");
    VariableSet W({"a", "z1", "z2", "z3"});
    EXPECT_EQ(to_string(p.embed(W, {{"z2", "z3"}})), "z1^2 + z3");
    EXPECT_EQ(p.evaluate_at({Rational(2), Rational(-1)}), Rational(3));
    EXPECT_NEAR(p.evaluate_numeric({{0.0, 1.0}, {2.0, 0.0}}).real(), 1.0, 1e-15);
    EXPECT_EQ(p.degree("z1"), 2);
    auto cs = p.coefficients_in(std::size_t{0});
    ASSERT_EQ(cs.size(), 3u);
    EXPECT_EQ(to_string(cs[0]), "z2");
}
