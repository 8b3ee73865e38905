#include "dq/numeric.hpp"
#include "dq/parse.hpp"
#include "dq/verify.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace dq;

namespace {

const VariableSet X({"xi"});

std::vector<Rational> geometric(const Rational& s, int order)
{
    std::vector<Rational> out;
    for (int k = 0; k <= order; ++k)
        out.push_back(pow(s, k));
    return out;
}

FormalSeries univariate(const std::vector<Rational>& c)
{
    TermMap t;
    for (std::size_t k = 0; k < c.size(); ++k)
        add_to(t, Exponents{static_cast<int>(k)}, c[k]);
    return FormalSeries::from_poly(MultiPoly(X, t), {static_cast<int>(c.size()) - 1, 0}, false);
}

std::vector<Rational> coefficients(const FormalSeries& s, int order)
{
    std::vector<Rational> out;
    for (int k = 0; k <= order; ++k)
        out.push_back(s.coefficient({k}));
    return out;
}

} // namespace

TEST(RadiusEstimate, GeometricTail)
{
    for (RadiusMethod m : {RadiusMethod::ratio, RadiusMethod::root}) {
        auto est = radius_estimate(geometric(3, 20), m);
        EXPECT_NEAR(est.value, 1.0 / 3, 1e-14);
        EXPECT_EQ(est.order_used, 20);
    }
    EXPECT_NEAR(radius_estimate(geometric(3, 20), RadiusMethod::ratio).spread, 0.0, 1e-14);
}

TEST(RadiusEstimate, DilogarithmTail)
{
    std::vector<Rational> li2;
    for (int k = 0; k <= 40; ++k)
        li2.push_back(oracle::li2_coefficient(k));
    auto est = radius_estimate(li2, RadiusMethod::ratio);
    EXPECT_LT(std::abs(est.value - 1.0), 0.1);
    EXPECT_GT(est.spread, 0.0);
}

TEST(RadiusEstimate, Errors)
{
    EXPECT_THROW(radius_estimate(geometric(2, 5), RadiusMethod::ratio), std::invalid_argument);
    auto tail = geometric(2, 20);
    tail[18] = 0;
    EXPECT_THROW(radius_estimate(tail, RadiusMethod::ratio), std::invalid_argument);
    EXPECT_THROW(parse_radius_method("pade"), std::invalid_argument);
    EXPECT_EQ(parse_radius_method("root"), RadiusMethod::root);
}

TEST(LocusDistance, Examples)
{
    Bindings pt{{"q", make_rational(1, 3)}, {"p", make_rational(1, 2)}};
    EXPECT_NEAR(locus_distance_xi(euler_family_locus(), pt), 1.0 / 3, 1e-15);
    EXPECT_NEAR(locus_distance_xi(hadamard_locus_1d({Rational(1)}, {Rational(1)}), {}), 1.0, 1e-15);
    EXPECT_TRUE(std::isinf(locus_distance_xi(hadamard_locus_1d({}, {Rational(1)}), {})));
    EXPECT_THROW(locus_distance_xi(euler_family_locus(), {{"q", 0}}), std::invalid_argument);
}

TEST(RadiusVsLocus, EulerFamilyAtOnePoint)
{
    Bindings pt{{"q", make_rational(1, 3)}, {"p", make_rational(1, 2)}};
    auto est = radius_estimate(borel_euler_coefficients(pt, 20), RadiusMethod::ratio);
    EXPECT_NEAR(est.value, 1.0 / 3, 1e-9);
    // The coefficients are those of 1/((1-p)(1-q) - xi): c^{-k-1} with c = 1/3.
    auto c = borel_euler_coefficients(pt, 6);
    for (int k = 0; k <= 6; ++k)
        EXPECT_EQ(c[static_cast<std::size_t>(k)], pow(Rational(3), k + 1));
}

TEST(RadiusVsLocus, LogFamilyMatchesDilogarithm)
{
    // At q = p = 0 the xi^k coefficient is Li2's 1/k^2.
    Bindings origin{{"q", 0}, {"p", 0}};
    auto c = borel_log_coefficients(origin, 12);
    for (int k = 1; k <= 12; ++k)
        EXPECT_EQ(c[static_cast<std::size_t>(k)], oracle::li2_coefficient(k));
}

TEST(RadiusVsLocus, Suite)
{
    std::vector<RadiusReport> reports;
    auto r = run_radius_suite({}, &reports);
    EXPECT_TRUE(r.all_pass()) << to_string(r);
    EXPECT_EQ(reports.size(), 30u);
    RadiusSuiteOptions strict;
    strict.log_tol = 0.01;
    EXPECT_FALSE(run_radius_suite(strict).all_pass());
}

TEST(RadiusVsLocus, ReportFormat)
{
    RadiusReport r{{{"q", make_rational(1, 3)}}, 0.5, 0, RadiusMethod::ratio, 20, 1.0 / 3, 0.5, false};
    EXPECT_EQ(to_string(r), "point=(q=1/3) estimate=0.5 locus=0.333333333333333 gap=0.5 verdict=fail");
}

TEST(RadiusVsLocus, HadamardRadiusDirection)
{
    // Two geometric components each; the Hadamard product radius is at least R_f R_g.
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> num(2, 9), den(1, 4);
    const int order = 60;
    for (int i = 0; i < 20; ++i) {
        Rational s = make_rational(num(rng), den(rng)), s2 = make_rational(num(rng), den(rng));
        Rational u = s / 3, u2 = -s2 / 2;
        std::vector<Rational> a, b;
        for (int k = 0; k <= order; ++k) {
            a.push_back(pow(s, k) + pow(u, k));
            b.push_back(2 * pow(s2, k) + pow(u2, k));
        }
        auto h = hadamard(univariate(a), univariate(b));
        double rf = radius_estimate(a, RadiusMethod::ratio).value;
        double rg = radius_estimate(b, RadiusMethod::ratio).value;
        double rh = radius_estimate(coefficients(h, order), RadiusMethod::ratio).value;
        ASSERT_GE(rh, rf * rg * (1 - 1e-6));
    }
}

TEST(Quadrature, AgreesWithExactHadamard)
{
    std::mt19937_64 rng(72);
    for (int i = 0; i < 20; ++i) {
        auto f = random_univariate(X, 6, rng), g = random_univariate(X, 6, rng);
        auto exact = hadamard(f, g);
        auto q = quadrature_hadamard(f, g, 32);
        EXPECT_FALSE(q.aliasing);
        for (std::size_t k = 0; k < q.coeffs.size(); ++k)
            ASSERT_NEAR(q.coeffs[k], to_double(exact.coefficient({static_cast<int>(k)})), 1e-12);
        EXPECT_TRUE(quadrature_hadamard(f, g, 4).aliasing);
    }
}

TEST(Quadrature, ErrorShrinksOnceNodesExceedModes)
{
    std::mt19937_64 rng(73);
    auto f = random_univariate(X, 6, rng), g = random_univariate(X, 6, rng);
    auto exact = hadamard(f, g);
    auto err = [&](int K) {
        auto q = quadrature_hadamard(f, g, K);
        double e = 0;
        for (std::size_t k = 0; k < q.coeffs.size(); ++k)
            e = std::max(e, std::abs(q.coeffs[k] - to_double(exact.coefficient({static_cast<int>(k)}))));
        return e;
    };
    for (int K = 13; K <= 64; ++K)
        ASSERT_LT(err(K), 1e-12) << K;
    EXPECT_THROW(quadrature_hadamard(f, g, 0), std::invalid_argument);
}

TEST(Quadrature, LogOdotLog)
{
    std::vector<Rational> c{0};
    for (int k = 1; k <= 20; ++k)
        c.push_back(make_rational(-1, k));
    auto f = univariate(c);
    auto q = quadrature_hadamard(f, f, 64);
    EXPECT_FALSE(q.aliasing);
    for (int k = 1; k <= 20; ++k)
        ASSERT_NEAR(q.coeffs[static_cast<std::size_t>(k)], 1.0 / (k * k), 1e-12);
}
