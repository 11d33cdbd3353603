#include "nbhd/error.hpp"
#include "nbhd/geometry/automorphism.hpp"
#include "nbhd/geometry/transition.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace nbhd;
using namespace nbhd::geom;
using nbhd::testing::random_graded_poly;
using nbhd::testing::random_nilpotent_derivation;
using nbhd::testing::random_rational;
using nbhd::testing::random_unipotent;

namespace {

// p = 1, q = 1: variables (u, t).
LaurentPoly ut(int a, int b, const Rational& c = Rational(1)) { return LaurentPoly::monomial({a, b}, c); }

Truncation tr11(int k) { return Truncation{1, 1, k, std::nullopt}; }

}  // namespace

TEST(LogExp, IdentityAndZero) {
    const auto tr = tr11(3);
    EXPECT_TRUE(log_unipotent(FilteredAutomorphism::identity(tr, 2)).is_zero());
    EXPECT_EQ(exp_nilpotent(PairDerivation::zero(tr, 2)), FilteredAutomorphism::identity(tr, 2));
}

TEST(LogExp, LogOfQuadraticShift) {
    // t -> t + t^2 at k = 2: log(1 + x) = x - x^2/2 and x^2 t = 2t^3 is truncated.
    const auto tr = tr11(2);
    auto phi = FilteredAutomorphism::identity(tr, 0);
    phi.normal_images[0] = ut(0, 1) + ut(0, 2);
    const auto d = log_unipotent(phi);
    EXPECT_EQ(d.normal_images[0], ut(0, 2));
    EXPECT_TRUE(d.base_images[0].is_zero());
    EXPECT_EQ(d.L(1)[0], ut(0, 2));
}

TEST(LogExp, ExpOfQuadraticField) {
    // D = c t^2 d/dt at k = 3: t -> t + c t^2 + c^2 t^3.
    const auto tr = tr11(3);
    const Rational c(3, 2);
    auto d = PairDerivation::zero(tr, 0);
    d.normal_images[0] = ut(0, 2, c);
    const auto phi = exp_nilpotent(d);
    EXPECT_EQ(phi.normal_images[0], ut(0, 1) + ut(0, 2, c) + ut(0, 3, c * c));
}

TEST(LogExp, NotUnipotentRejected) {
    const auto tr = tr11(2);
    auto phi = FilteredAutomorphism::identity(tr, 0);
    phi.normal_images[0] = ut(0, 1, Rational(2));
    EXPECT_THROW((void)log_unipotent(phi), NotUnipotent);
}

TEST(LogExp, RoundTripsOnRandomInstances) {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t p = 1 + rng() % 2, q = 1 + rng() % 2, e = rng() % 3;
        const Truncation tr{p, q, 1 + static_cast<int>(rng() % 3), std::nullopt};
        const auto phi = random_unipotent(rng, tr, e);
        EXPECT_EQ(exp_nilpotent(log_unipotent(phi)), phi);
        const auto d = random_nilpotent_derivation(rng, tr, e);
        EXPECT_EQ(log_unipotent(exp_nilpotent(d)), d);
    }
}

TEST(LogExp, InverseComposesToIdentity) {
    std::mt19937 rng(5);
    const Truncation tr{2, 1, 3, std::nullopt};
    for (int trial = 0; trial < 10; ++trial) {
        const auto phi = random_unipotent(rng, tr, 2);
        EXPECT_EQ(compose(phi, inverse(phi)), FilteredAutomorphism::identity(tr, 2));
    }
}

TEST(Bch2, TrivialCases) {
    std::mt19937 rng(8);
    const Truncation tr{1, 2, 3, std::nullopt};
    const auto x = random_nilpotent_derivation(rng, tr, 1);
    const auto zero = PairDerivation::zero(tr, 1);
    EXPECT_EQ(bch2(x, zero), x.graded(1) + x.graded(2));
    // Two constant-coefficient degree-1 fields commute.
    auto a = PairDerivation::zero(tr, 1);
    auto b = PairDerivation::zero(tr, 1);
    a.base_images[0] = LaurentPoly::monomial({0, 1, 0});
    b.base_images[0] = LaurentPoly::monomial({0, 0, 1}, Rational(2));
    EXPECT_TRUE(bch2(a, b).graded(2).is_zero());
}

TEST(Bch2, MatchesCompositionOfExponentials) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t p = 1 + rng() % 2, q = 1 + rng() % 2, e = rng() % 3;
        const Truncation tr{p, q, 2 + static_cast<int>(rng() % 2), std::nullopt};
        const auto x = random_nilpotent_derivation(rng, tr, e);
        const auto y = random_nilpotent_derivation(rng, tr, e);
        const auto lhs = log_unipotent(compose(exp_nilpotent(x), exp_nilpotent(y)));
        const auto rhs = bch2(x, y);
        EXPECT_EQ(lhs.graded(1), rhs.graded(1));
        EXPECT_EQ(lhs.graded(2), rhs.graded(2));
    }
}

TEST(Leibniz, ZeroAndHandExample) {
    const auto tr = tr11(2);
    Connection conn{{PolyMatrix::scalar(1, ut(1, 0, Rational(5)))}};  // Gamma = 5u
    EXPECT_TRUE(leibniz_extend(PairDerivation::zero(tr, 1), conn).is_zero());
    auto d = PairDerivation::zero(tr, 1);
    d.base_images[0] = ut(0, 1);  // a_1: du -> t
    const auto s = leibniz_extend(d, conn);
    // psi(u s) = t s + u (t * 5u) s
    const ModuleElement us{ut(1, 0)};
    EXPECT_EQ(s.apply(us), (ModuleElement{ut(0, 1) + ut(2, 1, Rational(5))}));
}

TEST(Leibniz, ProductRuleOnRandomPairs) {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const Truncation tr{2, 1, 3, std::nullopt};
        const std::size_t e = 2;
        const auto d = random_nilpotent_derivation(rng, tr, 0);
        Connection conn;
        for (int b = 0; b < 2; ++b) {
            PolyMatrix g(e, e, tr.nvars());
            for (std::size_t r = 0; r < e; ++r) {
                for (std::size_t c = 0; c < e; ++c) g(r, c) = random_graded_poly(rng, 2, 1, 0, 0, -1, 2);
            }
            conn.gamma.push_back(g);
        }
        auto dd = d;
        dd.e = e;
        dd.module_matrix = PolyMatrix(e, e, tr.nvars());
        const auto s = leibniz_extend(dd, conn);
        const LaurentPoly f = random_graded_poly(rng, 2, 1, 0, 3, -1, 2, 4);
        const LaurentPoly g = random_graded_poly(rng, 2, 1, 0, 3, -1, 2, 4);
        const ModuleElement v{random_graded_poly(rng, 2, 1, 0, 3, -1, 2), random_graded_poly(rng, 2, 1, 0, 3, -1, 2)};
        EXPECT_EQ(s.apply(mul(f, g, tr)), mul(s.apply(f), g, tr) + mul(f, s.apply(g), tr));
        EXPECT_EQ(s.apply(scale(f, v, tr)), add(scale(s.apply(f), v, tr), scale(f, s.apply(v), tr)));
    }
}

TEST(Commutator, JacobiAndAntisymmetry) {
    std::mt19937 rng(34);
    const Truncation tr{2, 1, 3, std::nullopt};
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = random_nilpotent_derivation(rng, tr, 2);
        const auto y = random_nilpotent_derivation(rng, tr, 2);
        const auto z = random_nilpotent_derivation(rng, tr, 2);
        EXPECT_EQ(commutator(x, y), Rational(-1) * commutator(y, x));
        const auto jac = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                         commutator(z, commutator(x, y));
        EXPECT_TRUE(jac.is_zero());
    }
}

TEST(InducedTransition, LinearRescaling) {
    const auto tr = tr11(3);
    const Rational c(-2, 3);
    const ChartTransition fwd{{ut(1, 0), ut(0, 1, c)}};
    const ChartTransition bwd{{ut(1, 0), ut(0, 1, c.inverse())}};
    const auto it = induced_transition(fwd, bwd, tr);
    EXPECT_EQ(it.conormal(0, 0), LaurentPoly::constant(2, c));
    EXPECT_EQ(it.unipotent, FilteredAutomorphism::identity(tr, 0));
}

TEST(InducedTransition, LineInProjectivePlane) {
    // u' = 1/u, t' = t/u and back.
    const auto tr = tr11(3);
    const ChartTransition fwd{{ut(-1, 0), ut(-1, 1)}};
    const ChartTransition bwd{{ut(-1, 0), ut(-1, 1)}};
    const auto it = induced_transition(fwd, bwd, tr);
    EXPECT_EQ(it.conormal(0, 0), ut(-1, 0));
    EXPECT_EQ(it.base_map[0], ut(-1, 0));
    EXPECT_EQ(it.unipotent, FilteredAutomorphism::identity(tr, 0));
}

TEST(InducedTransition, QuadraticNormalForm) {
    const auto tr = tr11(2);
    const ChartTransition fwd{{ut(1, 0), ut(0, 1) - ut(0, 2)}};
    const ChartTransition bwd{{ut(1, 0), ut(0, 1) + ut(0, 2)}};
    const auto it = induced_transition(fwd, bwd, tr);
    EXPECT_EQ(it.unipotent.normal_images[0], ut(0, 1) + ut(0, 2));
}

TEST(InducedTransition, NotAdapted) {
    const auto tr = tr11(2);
    const ChartTransition fwd{{ut(1, 0), ut(0, 1) + ut(1, 0)}};
    const ChartTransition bwd{{ut(1, 0), ut(0, 1)}};
    EXPECT_THROW((void)induced_transition(fwd, bwd, tr), NotAdapted);
}

TEST(InducedTransition, CocycleOnTripleOverlaps) {
    // Transitions with trivial linear part built from random unipotent pullbacks.
    std::mt19937 rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const Truncation tr{1, 2, 3, std::nullopt};
        const auto a = random_unipotent(rng, tr, 0, 0, 2);  // pullback chart i -> chart j
        const auto b = random_unipotent(rng, tr, 0, 0, 2);  // pullback chart j -> chart h
        auto images = [](const FilteredAutomorphism& f) {
            std::vector<LaurentPoly> v = f.base_images;
            v.insert(v.end(), f.normal_images.begin(), f.normal_images.end());
            return ChartTransition{v};
        };
        const auto ab = compose(b, a);
        const auto phi_ij = induced_transition(images(inverse(a)), images(a), tr).unipotent;
        const auto phi_jh = induced_transition(images(inverse(b)), images(b), tr).unipotent;
        const auto phi_ih = induced_transition(images(inverse(ab)), images(ab), tr).unipotent;
        // Substitution order: first Phi_ij, then Phi_jh on the result.
        EXPECT_EQ(compose(phi_jh, phi_ij), phi_ih);
    }
}

TEST(ChartNormalize, BasesAndDiscrepancy) {
    ChartRing ring{{"u"}, {"t"}, {}};
    const auto n0 = chart_normalize(ring, {ut(0, 1)}, 0);
    ASSERT_EQ(n0.basis.size(), 1U);
    EXPECT_EQ(n0.unipotent, FilteredAutomorphism::identity(n0.tr, 0));
    const auto n1 = chart_normalize(ring, {ut(0, 1)}, 2);
    EXPECT_EQ(n1.basis, (std::vector<std::vector<Exponent>>{{{0}}, {{1}}, {{2}}}));
    const auto n2 = chart_normalize(ring, {ut(0, 1) + ut(0, 2)}, 2);
    const auto disc = normalization_discrepancy(n1, n2);
    EXPECT_TRUE(disc.is_unipotent());
    EXPECT_EQ(disc.normal_images[0], ut(0, 1) + ut(0, 2));
    // Rescaled coordinate: same conormal part on both sides keeps it unipotent.
    const auto n3 = chart_normalize(ring, {ut(1, 1) + ut(0, 2)}, 2);
    const auto n4 = chart_normalize(ring, {ut(1, 1) + ut(1, 2, Rational(3))}, 2);
    EXPECT_TRUE(normalization_discrepancy(n3, n4).is_unipotent());
}

TEST(Hochschild, DefectIdentity) {
    std::mt19937 rng(77);
    const auto tr = tr11(3);
    PolyMatrix g(2, 2, 2);
    g(0, 0) = ut(0, 0) + ut(1, 1);
    g(0, 1) = ut(2, 0);
    g(1, 1) = ut(0, 0);
    const ModuleMap linear = [&](const ModuleElement& m) { return mul(g, m, tr); };
    // kappa-linear but not R-linear: rescale each monomial by a weight.
    const ModuleMap twisted = [&](const ModuleElement& m) {
        ModuleElement out;
        for (const auto& f : m) {
            LaurentPoly h(2);
            for (const auto& [e, c] : f.terms()) h.add_term(e, c * Rational(1 + e[0] * e[0] + 3 * e[1]));
            out.push_back(h);
        }
        return out;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_graded_poly(rng, 1, 1, 0, 3, -1, 2);
        const auto y = random_graded_poly(rng, 1, 1, 0, 3, -1, 2);
        const ModuleElement m{random_graded_poly(rng, 1, 1, 0, 3, -1, 2), random_graded_poly(rng, 1, 1, 0, 3, -1, 2)};
        EXPECT_TRUE(is_zero(hochschild_defect(linear, x, m, tr)));
        EXPECT_TRUE(is_zero(hochschild_defect(twisted, LaurentPoly::constant(2, Rational(1)), m, tr)));
        EXPECT_TRUE(is_zero(hochschild_identity(twisted, x, y, m, tr)));
        EXPECT_TRUE(is_zero(hochschild_identity(linear, x, y, m, tr)));
    }
    // The twisted map is genuinely not a module map.
    const ModuleElement m{ut(0, 0), ut(0, 0)};
    EXPECT_FALSE(is_zero(hochschild_defect(twisted, ut(1, 0), m, tr)));
}
