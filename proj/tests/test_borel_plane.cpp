#include "dq/borel.hpp"
#include "dq/parse.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dq;

namespace {

const VariableSet V1 = VariableSet::phase_space(1);
const VariableSet B1 = VariableSet::phase_space(1, "xi");
const VariableSet B2 = VariableSet::phase_space(2, "xi");
const VariableSet X({"xi"});

FormalSeries H(const char* text, Truncation w = {8, 8}) { return parse_series(text, B1, w); }

} // namespace

TEST(Borel, TransformAndInverse)
{
    auto f = parse_series("t^2*p*q + t^3 + 5", V1, {8, 8});
    auto fh = borel(f);
    EXPECT_EQ(to_string(fh), "1/2*xi^2*p*q + 1/6*xi^3 + 5");
    EXPECT_EQ(fh.vars(), B1);
    EXPECT_EQ(inverse_borel(fh), f);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = oracle::random_poly(V1, 6, 6, rng);
        auto s = FormalSeries::from_poly(p, {8, 8});
        ASSERT_EQ(borel(s).poly(), oracle::borel(p, B1));
        ASSERT_EQ(inverse_borel(borel(s)), s);
    }
}

TEST(Borel, StarRegression)
{
    EXPECT_EQ(to_string(borel_star(H("xi*p"), H("xi*q"), StarKind::standard)), "1/2*xi^2*p*q + 1/6*xi^3");
}

TEST(Borel, StarMatchesCoefficientExpansion)
{
    std::mt19937_64 rng(32);
    for (int i = 0; i < 100; ++i) {
        MultiPoly f = oracle::random_poly(B1, 5, 5, rng), g = oracle::random_poly(B1, 5, 5, rng);
        Truncation w{14, 14};
        auto got = borel_star(FormalSeries::from_poly(f, w), FormalSeries::from_poly(g, w), StarKind::standard);
        ASSERT_EQ(got.poly(), oracle::truncate(oracle::borel_star_expansion(f, g), w));
    }
}

TEST(Borel, StarMatchesConjugatedBruteForce)
{
    std::mt19937_64 rng(33);
    for (int i = 0; i < 40; ++i) {
        MultiPoly f = oracle::random_poly(B2, 4, 4, rng), g = oracle::random_poly(B2, 4, 4, rng);
        Truncation w{10, 10};
        auto F = FormalSeries::from_poly(f, w), G = FormalSeries::from_poly(g, w);
        VariableSet T2 = VariableSet::phase_space(2);
        // Undo the Borel transform by hand, multiply, transform back.
        auto unborel = [&](const MultiPoly& p) {
            TermMap out;
            for (const auto& [e, c] : p.terms())
                add_to(out, e, c * factorial(e[0]));
            return MultiPoly(T2, out);
        };
        MultiPoly s = oracle::standard_star(unborel(f), unborel(g));
        MultiPoly m = oracle::moyal_star(unborel(f), unborel(g));
        ASSERT_EQ(borel_star(F, G, StarKind::standard).poly(), oracle::truncate(oracle::borel(s, B2), w));
        ASSERT_EQ(borel_star(F, G, StarKind::moyal).poly(), oracle::truncate(oracle::borel(m, B2), w));
        MultiPoly tf = oracle::transition(unborel(f));
        ASSERT_EQ(borel_T(F).poly(), oracle::truncate(oracle::borel(tf, B2), w));
    }
}

TEST(Borel, EulerImage)
{
    // beta((1-p)^-1 *S (1-q)^-1) = 1/((1-p)(1-q) - xi).
    std::string gp = "1", gq = "1";
    for (int a = 1; a <= 18; ++a) {
        gp += " + p^" + std::to_string(a);
        gq += " + q^" + std::to_string(a);
    }
    auto f = parse_series(gp, B1, {6, 18}).as_truncation(), g = parse_series(gq, B1, {6, 18}).as_truncation();
    auto h = borel_star(f, g, StarKind::standard);
    ASSERT_EQ(h.trunc(), (Truncation{6, 6}));
    for (int k = 0; k <= 6; ++k)
        for (int a = 0; a <= 6; ++a)
            for (int b = 0; a + b <= 6; ++b)
                ASSERT_EQ(h.coefficient({k, b, a}), oracle::borel_euler_coefficient(k, a, b));
}

TEST(Hadamard, Basics)
{
    auto A = [](const char* s, int n = 8) { return parse_series(s, X, {n, 0}); };
    EXPECT_EQ(to_string(hadamard(A("xi + xi^2"), A("xi"))), "xi");
    EXPECT_EQ(to_string(hadamard(A("2 + 3*xi^3"), A("5 + xi^3"))), "3*xi^3 + 10");
    EXPECT_TRUE(hadamard(A("xi"), A("xi").as_truncation()).is_complete());
    EXPECT_FALSE(hadamard(A("xi").as_truncation(), A("xi").as_truncation()).is_complete());
    EXPECT_THROW(hadamard(H("xi"), H("xi")), std::invalid_argument);
}

TEST(Hadamard, LogLogIsDilogarithm)
{
    TermMap t;
    for (int k = 1; k <= 20; ++k)
        add_to(t, Exponents{k}, make_rational(-1, k));
    auto f = FormalSeries::from_poly(MultiPoly(X, t), {20, 0}, false);
    auto h = hadamard(f, f);
    for (int k = 0; k <= 20; ++k)
        ASSERT_EQ(h.coefficient({k}), oracle::li2_coefficient(k));
    // d/dxi Li2 = -log(1 - xi)/xi on the window.
    auto d = h.derivative("xi");
    for (int k = 0; k < 19; ++k)
        ASSERT_EQ(d.coefficient({k}), make_rational(1, k + 1));
}

TEST(Odot, Definition)
{
    VariableSet Z({"w", "z1", "z2"});
    auto F = parse_series("z1*z2 + z1^2*z2^2 + z1", Z, {0, 8});
    auto out = odot_ij(F, "z1", "z2");
    EXPECT_EQ(out.vars().names(), (std::vector<std::string>{"xi", "w", "z1", "z2"}));
    EXPECT_EQ(to_string(out), "z1^2*z2^2 + 4*xi*z1*z2 + xi^2 + z1*z2 + xi + z1");
    EXPECT_THROW(odot_ij(F, "z1", "z1"), std::invalid_argument);
    EXPECT_THROW(odot_ij(F, "w", "z1"), std::invalid_argument);
    EXPECT_THROW(odot_ij(F, "z1", "z2", "z2"), std::invalid_argument);
}

TEST(Odot, ContourOfProductOfPowers)
{
    // odot of z1^m z2^n equals the z^0 coefficient of (z1 + z)^m (z2 + xi/z)^n.
    VariableSet Z({"w", "z1", "z2"});
    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n) {
            auto F = FormalSeries::from_poly(MultiPoly::monomial(Z, {0, m, n}, 1), {0, 10});
            auto out = odot_ij(F, "z1", "z2");
            for (int a = 0; a <= std::min(m, n); ++a)
                ASSERT_EQ(out.coefficient({a, 0, m - a, n - a}), binomial(m, a) * binomial(n, a));
        }
}

TEST(Odot, TruncatedWindow)
{
    VariableSet Z({"w", "z1", "z2"});
    auto F = parse_series("z1*z2", Z, {4, 9}).as_truncation();
    EXPECT_EQ(odot_ij(F, "z1", "z2").trunc(), (Truncation{3, 3}));
}
