#include "nbhd/cech/cohomology.hpp"
#include "nbhd/cech/solve.hpp"
#include "nbhd/error.hpp"
#include "nbhd/scenario/scenario.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace nbhd;
using namespace nbhd::cech;

namespace {

struct Instance {
    scenario::Scenario s;
    CoverNerve nerve;
    BundleData bundle;
};

Instance instance(const scenario::Scenario& s) { return {s, scenario::make_nerve(s), scenario::make_bundle(s)}; }

PolyMatrix random_value(std::mt19937& rng, const CoverNerve& nerve, const Simplex& s, std::size_t rows,
                        std::size_t cols, int weight) {
    const std::size_t p = nerve.tr.p, q = nerve.tr.q;
    PolyMatrix m(rows, cols, p + q);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            LaurentPoly f(p + q);
            for (int k = 0; k < 2; ++k) {
                LaurentPoly term = nbhd::testing::random_graded_poly(rng, p, q, weight, weight, 0, 2, 1);
                for (const std::size_t b : s.inverted) {
                    exact::Exponent shift(p + q, 0);
                    shift[b] = -2;
                    term = term * LaurentPoly::monomial(shift);
                }
                f += term;
            }
            m(r, c) = f;
        }
    }
    return m;
}

CechCochain random_cochain(std::mt19937& rng, const CoverNerve& nerve, std::size_t e, int degree, ValueKind kind,
                           int weight) {
    CechCochain c = CechCochain::zero(nerve, e, degree, kind, weight);
    const auto [rows, cols] = value_shape(kind, e, nerve.tr.p);
    for (std::size_t s = 0; s < c.values.size(); ++s) {
        c.values[s] = random_value(rng, nerve, nerve.of_degree(degree)[s], rows, cols, weight);
    }
    return c;
}

}  // namespace

TEST(Nerve, BuiltinShapes) {
    const auto line = instance(scenario::generate_builtin("line_in_p2", 2, 2));
    EXPECT_EQ(line.nerve.count(0), 2u);
    EXPECT_EQ(line.nerve.count(1), 1u);
    EXPECT_EQ(line.nerve.count(2), 0u);
    EXPECT_EQ(line.nerve.tr.q, 1u);
    const auto plane = instance(scenario::generate_builtin("hyperplane_p2_in_p3", 1, 2));
    EXPECT_EQ(plane.nerve.count(2), 1u);
    EXPECT_EQ(plane.nerve.count(3), 0u);
    const auto p3 = instance(scenario::projective_neighborhood(3, {}, {0}, 0));
    EXPECT_EQ(p3.nerve.count(3), 1u);
    EXPECT_THROW((void)scenario::generate_builtin("nope"), UnknownScenario);
}

TEST(CechDifferential, SquaresToZero) {
    std::mt19937 rng(11);
    const auto inst = instance(scenario::perturb_coordinates(scenario::projective_neighborhood(3, {1}, {1, -1}, 2), 5));
    for (const ValueKind kind : {ValueKind::End, ValueKind::Vector, ValueKind::Scalar, ValueKind::Form}) {
        for (int degree = 0; degree <= 1; ++degree) {
            const auto c = random_cochain(rng, inst.nerve, inst.bundle.e, degree, kind, kind == ValueKind::Form ? 0 : 1);
            const auto dc = cech_differential(inst.nerve, inst.bundle, c);
            ASSERT_FALSE(dc.is_zero()) << kind_name(kind) << degree;
            EXPECT_TRUE(values_in_ring(inst.nerve, dc));
            EXPECT_TRUE(cech_differential(inst.nerve, inst.bundle, dc).is_zero()) << kind_name(kind) << degree;
        }
    }
}

TEST(Atiyah, LineBundleOnP1IsDOverU) {
    for (int d = -3; d <= 3; ++d) {
        const auto inst = instance(scenario::projective_neighborhood(1, {}, {d}, 0));
        const auto at = atiyah_cocycle(inst.nerve, inst.bundle);
        ASSERT_EQ(at.values.size(), 1u);
        PolyMatrix expected(1, 1, 1);
        if (d != 0) expected(0, 0) = LaurentPoly::monomial({-1}, exact::Rational(d));
        EXPECT_EQ(at.values[0][0], expected) << d;
    }
}

TEST(Obstruction, FirstOrderMatchesDirectDefect) {
    int nonzero = 0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto base = scenario::projective_neighborhood(2, {1, 2}, {1, 0}, 2);
        const auto inst = instance(scenario::perturb_connections(scenario::perturb_coordinates(base, seed), seed));
        const auto G = initial_transitions(inst.nerve, inst.bundle);
        const auto c1 = direct_obstruction(inst.nerve, inst.bundle, G, 1);
        const auto comps = extract_components(inst.nerve, inst.bundle, G, 1);
        const auto at = atiyah_cocycle(inst.nerve, inst.bundle);
        const auto f1 = first_order_obstruction(inst.nerve, inst.bundle, comps, at);
        const auto dm = cech_differential(inst.nerve, inst.bundle, comps.m_cochain(inst.nerve, inst.bundle.e, 1));
        EXPECT_EQ(c1, f1 + dm) << seed;
        if (!f1.is_zero()) ++nonzero;
    }
    EXPECT_GT(nonzero, 2);
}

TEST(Solve, LineBundleOnP1TorsorCountsH1) {
    for (int k = 2; k <= 4; ++k) {
        const auto inst = instance(scenario::projective_neighborhood(1, {}, {-k}, 0));
        const auto zero = CechCochain::zero(inst.nerve, 1, 2, ValueKind::Vector, 0);
        const auto res = solve_coboundary(inst.nerve, inst.bundle, zero, Window{k + 1});
        ASSERT_EQ(res.status, SolveStatus::Solved);
        EXPECT_EQ(res.torsor_dim, k - 1) << k;
    }
    const auto inst = instance(scenario::projective_neighborhood(1, {}, {2}, 0));
    EXPECT_EQ(window_cohomology(inst.nerve, inst.bundle, 0, ValueKind::Vector, 0, Window{4}), 3);
    EXPECT_EQ(window_cohomology(inst.nerve, inst.bundle, 1, ValueKind::Vector, 0, Window{4}), 0);
}

TEST(Solve, TopClassOfP2IsProvenNonzero) {
    const auto inst = instance(scenario::projective_neighborhood(2, {}, {-3}, 0));
    int proven = 0, solved = 0;
    for (int a = -3; a <= 1; ++a) {
        for (int b = -3; b <= 1; ++b) {
            auto c = CechCochain::zero(inst.nerve, 1, 2, ValueKind::Vector, 0);
            c.values[0](0, 0) = LaurentPoly::monomial({a, b});
            const auto res = solve_coboundary(inst.nerve, inst.bundle, c, Window{4});
            if (res.status == SolveStatus::ProvenNonzero) {
                ++proven;
                EXPECT_EQ(res.witnesses.size(), 1u);
            } else {
                EXPECT_EQ(res.status, SolveStatus::Solved) << a << "," << b;
                ++solved;
            }
        }
    }
    EXPECT_EQ(proven, 1);
    EXPECT_EQ(solved, 24);
}

TEST(Solve, NonClosedInputRejected) {
    const auto inst = instance(scenario::projective_neighborhood(3, {}, {0}, 0));
    auto c = CechCochain::zero(inst.nerve, 1, 2, ValueKind::Vector, 0);
    c.values[0](0, 0) = LaurentPoly::constant(3, exact::Rational(1));
    EXPECT_THROW((void)solve_coboundary(inst.nerve, inst.bundle, c, Window{1}), NotClosed);
}

TEST(Obstruction, SecondOrderMatchesDirectDefect) {
    int nonzero = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto base = scenario::projective_neighborhood(2, {1, 2}, {1, 0}, 2);
        const auto inst = instance(scenario::perturb_coordinates(base, seed));
        auto G = initial_transitions(inst.nerve, inst.bundle);
        const auto c1 = direct_obstruction(inst.nerve, inst.bundle, G, 1);
        const auto r1 = solve_coboundary(inst.nerve, inst.bundle, c1, Window{3});
        ASSERT_EQ(r1.status, SolveStatus::Solved) << seed;
        apply_correction(inst.nerve, inst.bundle, G, r1.solution[0]);
        EXPECT_TRUE(direct_obstruction(inst.nerve, inst.bundle, G, 1).is_zero());
        const auto c2 = direct_obstruction(inst.nerve, inst.bundle, G, 2);
        const auto comps = extract_components(inst.nerve, inst.bundle, G, 2);
        const auto at = atiyah_cocycle(inst.nerve, inst.bundle);
        const auto f2 = second_order_obstruction(inst.nerve, inst.bundle, comps, at);
        const auto dm = cech_differential(inst.nerve, inst.bundle, comps.m_cochain(inst.nerve, inst.bundle.e, 2));
        EXPECT_EQ(c2, f2 + dm) << seed;
        if (!f2.is_zero()) ++nonzero;
        for (const auto& defect : bch_cocycle_defect(inst.nerve, inst.bundle, comps)) {
            const auto low = defect.up_to(2);
            for (const auto& f : low.base_images) EXPECT_TRUE(f.is_zero()) << seed;
            for (const auto& f : low.normal_images) EXPECT_TRUE(f.is_zero()) << seed;
            EXPECT_TRUE(defect.graded(1).module_matrix.is_zero()) << seed;
        }
    }
    EXPECT_GT(nonzero, 1);
}

TEST(Cohomology, ProjectiveLineAndPlane) {
    EXPECT_EQ(cohomology_dim(1, {-2}), (std::vector<long>{0, 1}));
    for (int d = -1; d <= 3; ++d) EXPECT_EQ(cohomology_dim(1, {d})[1], 0) << d;
    EXPECT_EQ(cohomology_dim(2, {-3}), (std::vector<long>{0, 0, 1}));
    EXPECT_EQ(cohomology_dim(2, {2})[0], 6);
    EXPECT_EQ(cohomology_dim(3, {-4, 1}), (std::vector<long>{4, 0, 0, 1}));
    EXPECT_THROW((void)sheaf_twists({1}, {0}, 1, ValueKind::Form), UnsupportedSheaf);
    EXPECT_EQ(sheaf_twists({1}, {2, 0}, 1, ValueKind::End), (std::vector<int>{-1, 1, -3, -1}));
}

TEST(Cohomology, AgreesWithWindowRanks) {
    for (int d = -5; d <= 2; ++d) {
        const auto p1 = instance(scenario::projective_neighborhood(1, {}, {d}, 0));
        const auto h1 = cohomology_dim(1, {d});
        for (int deg = 0; deg <= 1; ++deg) {
            EXPECT_EQ(window_cohomology(p1.nerve, p1.bundle, deg, ValueKind::Vector, 0, Window{6}), h1[deg]) << d;
        }
    }
    for (int d = -5; d <= -3; ++d) {
        const auto p2 = instance(scenario::projective_neighborhood(2, {}, {d}, 0));
        EXPECT_EQ(window_cohomology(p2.nerve, p2.bundle, 2, ValueKind::Vector, 0, Window{-d}), cohomology_dim(2, {d})[2]);
    }
}

TEST(Atiyah, TraceClassDetectsDegree) {
    for (int d = -2; d <= 2; ++d) {
        const auto inst = instance(scenario::projective_neighborhood(1, {}, {d}, 0));
        const auto tr = atiyah_trace(inst.nerve, inst.bundle, atiyah_cocycle(inst.nerve, inst.bundle));
        const auto res = solve_coboundary(inst.nerve, inst.bundle, tr, Window{3});
        if (d == 0) {
            EXPECT_EQ(res.status, SolveStatus::Solved);
        } else {
            EXPECT_EQ(res.status, SolveStatus::ProvenNonzero) << d;
            ASSERT_EQ(res.witnesses.size(), 1u);
            EXPECT_EQ(res.witnesses[0].exponent, (exact::Exponent{-1}));
        }
    }
}

TEST(Obstruction, FirstOrderClassIgnoresConnectionChoice) {
    const auto base = scenario::perturb_coordinates(scenario::projective_neighborhood(2, {1}, {1, -1}, 1), 3);
    std::vector<CechCochain> f1s;
    for (std::uint64_t seed : {4u, 9u}) {
        const auto inst = instance(scenario::perturb_connections(base, seed));
        const auto G = initial_transitions(inst.nerve, inst.bundle);
        const auto comps = extract_components(inst.nerve, inst.bundle, G, 1);
        f1s.push_back(first_order_obstruction(inst.nerve, inst.bundle, comps, atiyah_cocycle(inst.nerve, inst.bundle)));
    }
    const auto diff = f1s[0] - f1s[1];
    ASSERT_FALSE(diff.is_zero());
    const auto inst = instance(base);
    // radius 4 is too small for the connecting cochain
    EXPECT_EQ(solve_coboundary(inst.nerve, inst.bundle, diff, Window{6}).status, SolveStatus::Solved);
}

TEST(Obstruction, DirectDefectIndependentOfWorkers) {
    const auto inst = instance(
        scenario::perturb_coordinates(scenario::projective_neighborhood(3, {1}, {2}, 2), 17));
    const auto G = initial_transitions(inst.nerve, inst.bundle);
    const auto one = direct_obstruction(inst.nerve, inst.bundle, G, 1, 1);
    EXPECT_EQ(one, direct_obstruction(inst.nerve, inst.bundle, G, 1, 4));
    EXPECT_EQ(extract_components(inst.nerve, inst.bundle, G, 1, 1).m_cochain(inst.nerve, 1, 1),
              extract_components(inst.nerve, inst.bundle, G, 1, 3).m_cochain(inst.nerve, 1, 1));
}
