#include "nbhd/error.hpp"
#include "nbhd/exact/laurent.hpp"
#include "nbhd/exact/linear_system.hpp"
#include "nbhd/exact/poly_matrix.hpp"
#include "nbhd/exact/serialize.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace nbhd;
using namespace nbhd::exact;
using nbhd::testing::random_poly;
using nbhd::testing::random_rational;

namespace {

LaurentPoly x1() { return LaurentPoly::variable(1, 0); }

}  // namespace

TEST(Rational, CanonicalForm) {
    Rational r(6, -4);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
    EXPECT_EQ(Rational::parse("-7"), Rational(-7));
    EXPECT_EQ(Rational(3).str(), "3/1");
    EXPECT_THROW((void)Rational::parse("1/0"), ParseError);
    EXPECT_THROW((void)Rational::parse("1.5"), ParseError);
    EXPECT_THROW((void)Rational::parse("/2"), ParseError);
}

TEST(Substitute, IdentityAndInvolution) {
    const LaurentPoly x = x1();
    const std::vector<LaurentPoly> id{x};
    EXPECT_EQ(substitute(x, id), x);

    const LaurentPoly xinv = LaurentPoly::monomial({-1});
    const std::vector<LaurentPoly> inv{xinv};
    EXPECT_EQ(substitute(xinv, inv), x);
}

TEST(Substitute, ShiftExpandsByHand) {
    // x^2 + 2x with x -> y + 1 is y^2 + 4y + 3.
    LaurentPoly p = x1() * x1() + x1() * Rational(2);
    const std::vector<LaurentPoly> shift{x1() + LaurentPoly::constant(1, Rational(1))};
    LaurentPoly expected = LaurentPoly::monomial({2}) + LaurentPoly::monomial({1}, Rational(4)) +
                           LaurentPoly::constant(1, Rational(3));
    EXPECT_EQ(substitute(p, shift), expected);
}

TEST(Substitute, NegativePowerOfNonMonomialThrows) {
    const std::vector<LaurentPoly> shift{x1() + LaurentPoly::constant(1, Rational(1))};
    EXPECT_THROW((void)substitute(LaurentPoly::monomial({-1}), shift), NonInvertibleSubstitution);
}

TEST(Substitute, CompositionProperty) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        // f: 2 vars -> 2 vars with monomial images so every negative power is defined.
        std::vector<LaurentPoly> f{LaurentPoly::monomial({1, 1}, random_rational(rng, 3, 1) + Rational(5)),
                                   LaurentPoly::monomial({0, -1}, Rational(2))};
        std::vector<LaurentPoly> g{random_poly(rng, {0, 0}, {2, 2}),
                                   LaurentPoly::monomial({1, 2}, random_rational(rng, 3, 1) + Rational(4))};
        const LaurentPoly p = random_poly(rng, {0, 0}, {3, 3}, 5);
        // g o f: variable i maps to f_i(g).
        std::vector<LaurentPoly> gf;
        for (const auto& fi : f) gf.push_back(substitute(fi, g));
        EXPECT_EQ(substitute(substitute(p, f), g), substitute(p, gf));
    }
}

TEST(LaurentPoly, RingAxiomsOnRandomTriples) {
    std::mt19937 rng(11);
    const std::vector<int> lo{-2, -1, 0};
    const std::vector<int> hi{2, 2, 1};
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_poly(rng, lo, hi);
        const auto b = random_poly(rng, lo, hi);
        const auto c = random_poly(rng, lo, hi);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) - b, a);
    }
}

TEST(LaurentPoly, NoStoredZerosAndDerivative) {
    LaurentPoly p = LaurentPoly::monomial({2, -1}) - LaurentPoly::monomial({2, -1});
    EXPECT_TRUE(p.is_zero());
    const LaurentPoly q = LaurentPoly::monomial({-2, 1}, Rational(3));
    EXPECT_EQ(q.derivative(0), LaurentPoly::monomial({-3, 1}, Rational(-6)));
}

TEST(MonomialWindow, Enumeration) {
    const std::vector<int> lo1{-1}, hi1{1};
    EXPECT_EQ(monomial_window(lo1, hi1), (std::vector<Exponent>{{-1}, {0}, {1}}));
    const std::vector<int> lo2{0, 0}, hi2{1, 1};
    EXPECT_EQ(monomial_window(lo2, hi2).size(), 4U);
    const std::vector<int> lo3{-3}, hi3{-1};
    EXPECT_EQ(monomial_window(lo3, hi3), (std::vector<Exponent>{{-3}, {-2}, {-1}}));
    const std::vector<int> lo4{-1, 0, 2}, hi4{1, 3, 2};
    EXPECT_EQ(monomial_window(lo4, hi4).size(), 3U * 4U * 1U);
}

TEST(SolveExact, Identity) {
    const std::vector<std::vector<Rational>> a{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const std::vector<Rational> b{Rational(3), Rational(-1, 2), Rational(7)};
    const auto sol = solve_exact(ExactLinearSystem::dense(a, b));
    ASSERT_TRUE(sol.consistent());
    EXPECT_EQ(*sol.particular, b);
    EXPECT_TRUE(sol.nullspace_basis.empty());
}

TEST(SolveExact, UnderdeterminedByHand) {
    // x + y = 2: particular (2, 0), kernel spanned by (1, -1).
    const auto sol = solve_exact(ExactLinearSystem::dense({{1, 1}}, {Rational(2)}));
    ASSERT_TRUE(sol.consistent());
    EXPECT_EQ(*sol.particular, (std::vector<Rational>{Rational(2), Rational(0)}));
    ASSERT_EQ(sol.nullspace_basis.size(), 1U);
    const auto& v = sol.nullspace_basis[0];
    EXPECT_EQ(v[0], -v[1]);
    EXPECT_FALSE(v[0].is_zero());
}

TEST(SolveExact, Inconsistent) {
    const auto sol = solve_exact(ExactLinearSystem::dense({{1}, {1}}, {Rational(1), Rational(2)}));
    EXPECT_FALSE(sol.consistent());
}

TEST(SolveExact, RandomConsistentSystemsAreSolvedExactly) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 80; ++trial) {
        const int rows = std::uniform_int_distribution<int>(1, 9)(rng);
        const int cols = std::uniform_int_distribution<int>(1, 9)(rng);
        std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
        for (auto& r : a) {
            for (auto& v : r) v = (rng() % 3 == 0) ? Rational(0) : random_rational(rng, 4, 3);
        }
        std::vector<Rational> x0(cols);
        for (auto& v : x0) v = random_rational(rng, 5, 4);
        std::vector<Rational> b(rows, Rational(0));
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) b[r] += a[r][c] * x0[c];
        }
        const auto sys = ExactLinearSystem::dense(a, b);
        const auto sol = solve_exact(sys);
        ASSERT_TRUE(sol.consistent());
        for (const auto& res : sys.residual(*sol.particular)) EXPECT_TRUE(res.is_zero());
        EXPECT_EQ(sol.rank + sol.nullspace_basis.size(), static_cast<std::size_t>(cols));
        // Kernel vectors really are in the kernel.
        auto hom = ExactLinearSystem::dense(a, std::vector<Rational>(rows, Rational(0)));
        for (const auto& v : sol.nullspace_basis) {
            for (const auto& res : hom.residual(v)) EXPECT_TRUE(res.is_zero());
        }
        EXPECT_EQ(rank_exact(sys.matrix(), sys.cols()), sol.rank);
    }
}

TEST(Serialize, PolynomialTermListIsSortedAndRoundTrips) {
    LaurentPoly p = LaurentPoly::monomial({1, 0}, Rational(1, 2)) + LaurentPoly::monomial({-1, 0}, Rational(3));
    const auto j = to_json(p);
    EXPECT_EQ(j.dump(), R"([[[-1,0],"3/1"],[[1,0],"1/2"]])");
    EXPECT_EQ(poly_from_json(j, 2, "p"), p);
    EXPECT_THROW((void)poly_from_json(Json::parse(R"([[[1],"1/1"]])"), 2, "field.x"), ParseError);
}
