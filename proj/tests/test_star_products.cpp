#include "dq/parse.hpp"
#include "dq/star.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dq;

namespace {

const VariableSet V1 = VariableSet::phase_space(1);
const VariableSet V2 = VariableSet::phase_space(2);

FormalSeries S(const char* text, Truncation w = {8, 8}) { return parse_series(text, V1, w); }

FormalSeries random_series(const VariableSet& V, std::mt19937_64& rng, int deg = 4, int terms = 4)
{
    return FormalSeries::from_poly(oracle::random_poly(V, deg, terms, rng), {6, 6});
}

} // namespace

TEST(StarProducts, StandardSimplex)
{
    EXPECT_EQ(to_string(standard_star(S("t*p"), S("t*q"))), "t^2*p*q + t^3");
    EXPECT_EQ(to_string(standard_star(S("t*q"), S("t*p"))), "t^2*p*q");
}

TEST(StarProducts, MoyalSimplex)
{
    EXPECT_EQ(to_string(moyal_star(S("t*p"), S("t*q"))), "t^2*p*q + 1/2*t^3");
    EXPECT_EQ(to_string(moyal_star(S("t*q"), S("t*p"))), "t^2*p*q - 1/2*t^3");
}

TEST(StarProducts, ParseKind)
{
    EXPECT_EQ(parse_star_kind("moyal"), StarKind::moyal);
    EXPECT_EQ(parse_star_kind("S"), StarKind::standard);
    EXPECT_THROW(parse_star_kind("weyl"), std::invalid_argument);
}

TEST(StarProducts, MatchBruteForceExpansion)
{
    std::mt19937_64 rng(21);
    for (const VariableSet* V : {&V1, &V2})
        for (int i = 0; i < 60; ++i) {
            MultiPoly f = oracle::random_poly(*V, 4, 4, rng), g = oracle::random_poly(*V, 4, 4, rng);
            Truncation w{12, 12};
            auto F = FormalSeries::from_poly(f, w), G = FormalSeries::from_poly(g, w);
            ASSERT_EQ(standard_star(F, G).poly(), oracle::truncate(oracle::standard_star(f, g), w));
            ASSERT_EQ(moyal_star(F, G).poly(), oracle::truncate(oracle::moyal_star(f, g), w));
        }
}

TEST(StarProducts, TransitionMatchesBruteForce)
{
    std::mt19937_64 rng(22);
    for (int i = 0; i < 60; ++i) {
        MultiPoly f = oracle::random_poly(V2, 5, 5, rng);
        Truncation w{12, 12};
        auto F = FormalSeries::from_poly(f, w);
        ASSERT_EQ(transition_T(F).poly(), oracle::truncate(oracle::transition(f), w));
        ASSERT_EQ(transition_T(F, true).poly(), oracle::truncate(oracle::transition(f, true), w));
        ASSERT_EQ(transition_T(transition_T(F), true), F);
    }
}

TEST(StarProducts, AssociativityAndEquivalence)
{
    std::mt19937_64 rng(23);
    for (const VariableSet* V : {&V1, &V2})
        for (int i = 0; i < 30; ++i) {
            auto f = random_series(*V, rng), g = random_series(*V, rng), h = random_series(*V, rng);
            for (StarKind k : {StarKind::standard, StarKind::moyal})
                ASSERT_EQ(star(star(f, g, k), h, k), star(f, star(g, h, k), k));
            ASSERT_EQ(transition_T(standard_star(f, g)), moyal_star(transition_T(f), transition_T(g)));
        }
}

TEST(StarProducts, UnitAndDeformation)
{
    std::mt19937_64 rng(24);
    for (int i = 0; i < 40; ++i) {
        auto f = random_series(V2, rng), g = random_series(V2, rng);
        auto one = FormalSeries::constant(V2, {6, 6}, 1);
        for (StarKind k : {StarKind::standard, StarKind::moyal}) {
            ASSERT_EQ(star(one, f, k), f);
            ASSERT_EQ(star(f, one, k), f);
        }
        // t^0 part is the pointwise product; the Moyal commutator starts at the Poisson bracket.
        auto at_t0 = [](const FormalSeries& s) { return s.evaluate({}).truncated({0, s.trunc().deg_xy}); };
        ASSERT_EQ(at_t0(moyal_star(f, g)), at_t0(f * g));
        auto fc = FormalSeries::from_poly(f.truncated({0, 6}).poly(), {6, 6});
        auto gc = FormalSeries::from_poly(g.truncated({0, 6}).poly(), {6, 6});
        ASSERT_EQ(moyal_commutator(fc, gc).truncated({0, 6}), poisson_bracket(fc, gc).truncated({0, 6}));
    }
}

TEST(StarProducts, CanonicalCommutationRelations)
{
    VariableSet V3 = VariableSet::phase_space(3);
    Truncation w{4, 4};
    auto var = [&](const std::string& n) { return FormalSeries::from_poly(MultiPoly::variable(V3, n), w); };
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            std::string qi = "q" + std::to_string(i), pi = "p" + std::to_string(i);
            std::string qj = "q" + std::to_string(j), pj = "p" + std::to_string(j);
            EXPECT_EQ(to_string(moyal_commutator(var(pi), var(qj))), i == j ? "1" : "0");
            EXPECT_EQ(to_string(moyal_commutator(var(qi), var(pj))), i == j ? "-1" : "0");
            EXPECT_EQ(to_string(moyal_commutator(var(qi), var(qj))), "0");
            EXPECT_EQ(to_string(moyal_commutator(var(pi), var(pj))), "0");
        }
}

TEST(StarProducts, CommutatorWindow)
{
    auto c = moyal_commutator(S("t*p^2"), S("q^2"));
    EXPECT_EQ(c.trunc(), (Truncation{7, 8}));
    EXPECT_THROW(moyal_commutator(S("p", {0, 4}), S("q", {0, 4})), std::domain_error);
}

TEST(StarProducts, TruncatedInputsGiveExactWindow)
{
    // (1-p)^-1 and (1-q)^-1 known through degree 12: the exact window is (6, 0) at deg_t 8.
    std::string gp = "1", gq = "1";
    for (int a = 1; a <= 12; ++a) {
        gp += " + p^" + std::to_string(a);
        gq += " + q^" + std::to_string(a);
    }
    auto f = parse_series(gp, V1, {8, 12}).as_truncation(), g = parse_series(gq, V1, {8, 12}).as_truncation();
    auto h = standard_star(f, g);
    EXPECT_EQ(h.trunc(), (Truncation{6, 0}));
    EXPECT_FALSE(h.is_complete());
    for (int k = 0; k <= 6; ++k)
        EXPECT_EQ(h.coefficient({k, 0, 0}), oracle::euler_coefficient(k, 0, 0));
}

TEST(StarProducts, Errors)
{
    VariableSet plain({"x", "y"});
    auto f = FormalSeries::from_poly(parse_poly("x", plain), {2, 2});
    EXPECT_THROW(standard_star(f, f), std::invalid_argument);
    EXPECT_THROW(standard_star(S("p"), parse_series("p1", V2, {2, 2})), std::invalid_argument);
}
