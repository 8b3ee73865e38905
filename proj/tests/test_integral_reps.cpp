#include "dq/integral_reps.hpp"
#include "dq/parse.hpp"
#include "dq/verify.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dq;

namespace {

const VariableSet B1 = VariableSet::phase_space(1, "xi");
const VariableSet B2 = VariableSet::phase_space(2, "xi");
const VariableSet X({"xi"});

FormalSeries H(const char* text, Truncation w = {8, 8}) { return parse_series(text, B1, w); }

} // namespace

TEST(Laurent, ModesAndShift)
{
    VariableSet V({"a", "b"});
    MultiPoly b = MultiPoly::variable(V, "b");
    // a^2 under a -> a + b z: a^2 + 2ab z + b^2 z^2.
    LaurentSlice s = laurent_shift(parse_poly("a^2", V), {{0, b, 1}});
    EXPECT_EQ(to_string(s.coefficient(0)), "a^2");
    EXPECT_EQ(to_string(s.coefficient(1)), "2*a*b");
    EXPECT_EQ(to_string(s.coefficient(2)), "b^2");
    LaurentSlice t = laurent_shift(parse_poly("a", V), {{0, b, -1}});
    EXPECT_EQ(to_string((s * t).theta_average()), "a^3 + 2*a*b^2");
    EXPECT_EQ(to_string(t.shifted(-1).contour_integral()), "a");
}

TEST(IntegralReps, Regression)
{
    auto got = eval_borel_star_rep(H("xi*p"), H("xi*q"));
    EXPECT_EQ(to_string(got), "1/2*xi^2*p*q + 1/6*xi^3");
    EXPECT_EQ(got.coefficient({3, 0, 0}), make_rational(1, 6));
}

TEST(IntegralReps, AgreeWithDefinitionsAcrossWindows)
{
    std::mt19937_64 rng(41);
    for (Truncation w : {Truncation{3, 3}, Truncation{6, 5}, Truncation{7, 8}})
        for (int i = 0; i < 15; ++i) {
            auto f = random_series(B1, w, 4, rng), g = random_series(B1, w, 4, rng);
            ASSERT_EQ(eval_borel_star_rep(f, g), borel_star(f, g, StarKind::standard));
            ASSERT_EQ(eval_moyal_rep(f, g), borel_star(f, g, StarKind::moyal));
            ASSERT_EQ(eval_That_rep(f), borel_T(f));
            ASSERT_EQ(eval_That_rep(f, true), borel_T(f, true));
            ASSERT_EQ(eval_formulahigh(f, g, 1), borel_star(f, g, StarKind::standard));
            auto f2 = random_series(B2, w, 4, rng), g2 = random_series(B2, w, 4, rng);
            ASSERT_EQ(eval_formulahigh(f2, g2, 2), borel_star(f2, g2, StarKind::standard));
        }
}

TEST(IntegralReps, AgreeWithCoefficientExpansion)
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 30; ++i) {
        MultiPoly f = oracle::random_poly(B1, 4, 4, rng), g = oracle::random_poly(B1, 4, 4, rng);
        Truncation w{10, 10};
        auto got = eval_borel_star_rep(FormalSeries::from_poly(f, w), FormalSeries::from_poly(g, w));
        ASSERT_EQ(got.poly(), oracle::truncate(oracle::borel_star_expansion(f, g), w));
    }
}

TEST(IntegralReps, TruncatedInputsKeepExactWindow)
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 10; ++i) {
        auto f = random_series(B1, {6, 9}, 6, rng).as_truncation();
        auto g = random_series(B1, {6, 9}, 6, rng).as_truncation();
        auto rep = eval_borel_star_rep(f, g);
        auto def = borel_star(f, g, StarKind::standard);
        ASSERT_EQ(rep.trunc(), def.trunc());
        ASSERT_EQ(rep, def);
        ASSERT_FALSE(rep.is_complete());
    }
}

TEST(IntegralReps, ThetaAverageIgnoresOffDiagonalModes)
{
    // Adding modes z^k with k != 0 to the integrand must not change the
    // result; adding to the z^0 mode must.
    std::mt19937_64 rng(44);
    for (int i = 0; i < 20; ++i) {
        auto f = random_series(B1, {6, 5}, 4, rng), g = random_series(B1, {6, 5}, 4, rng);
        auto in = borel_star_rep_integrand(f, g);
        auto base = borel_star_rep_finish(in, in.slice.theta_average());
        LaurentSlice noisy = in.slice;
        MultiPoly junk = oracle::random_poly(in.ws.work, 3, 3, rng) + MultiPoly::constant(in.ws.work, 1);
        noisy.add(1, junk);
        noisy.add(-2, junk * junk);
        ASSERT_EQ(borel_star_rep_finish(in, noisy.theta_average()), base);
        LaurentSlice shifted = in.slice;
        shifted.add(0, MultiPoly::variable(in.ws.work, "__x1"));
        ASSERT_FALSE(borel_star_rep_finish(in, shifted.theta_average()) == base);
    }
}

TEST(IntegralReps, HadamardContour)
{
    std::mt19937_64 rng(45);
    for (int i = 0; i < 50; ++i) {
        auto f = random_univariate(X, 8, rng), g = random_univariate(X, 8, rng);
        ASSERT_EQ(hadamard_contour(f, g), hadamard(f, g));
    }
    auto A = [](const char* s) { return parse_series(s, X, {8, 0}); };
    EXPECT_EQ(to_string(hadamard_contour(A("xi + xi^2"), A("xi"))), "xi");
}

TEST(IntegralReps, Errors)
{
    auto f2 = parse_series("xi*p1", B2, {4, 4});
    EXPECT_THROW(eval_borel_star_rep(f2, f2), std::invalid_argument);
    EXPECT_THROW(eval_moyal_rep(f2, f2), std::invalid_argument);
    EXPECT_THROW(eval_formulahigh(f2, f2, 1), std::invalid_argument);
}

TEST(IntegralReps, SuiteIsDeterministic)
{
    auto a = run_integral_reps_suite(99, 5), b = run_integral_reps_suite(99, 5);
    ASSERT_TRUE(a.all_pass());
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i)
        EXPECT_EQ(a.checks[i].detail, b.checks[i].detail);
}
