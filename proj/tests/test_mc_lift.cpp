#include "nbhd/error.hpp"
#include "nbhd/mc/dg_lie.hpp"

#include <gtest/gtest.h>

using namespace nbhd;
using namespace nbhd::mc;

namespace {

Matrix zeros(std::size_t r, std::size_t c) { return Matrix(r, Vector(c, Rational(0))); }

std::vector<std::vector<Vector>> no_bracket(std::size_t n) {
    return std::vector<std::vector<Vector>>(n, std::vector<Vector>(n, Vector(n, Rational(0))));
}

// L = <x, y> abelian in degree 0, hat = <x, y, z> with [x, y] = z.
AbelianExtension heisenberg(const Rational& twist) {
    auto br = no_bracket(3);
    br[0][1][2] = Rational(1);
    br[1][0][2] = Rational(-1);
    GradedDgLie hat({0, 0, 0}, zeros(3, 3), br);
    GradedDgLie base({0, 0}, zeros(2, 2), no_bracket(2));
    Matrix proj{{1, 0, 0}, {0, 1, 0}};
    Matrix sec{{1, 0}, {0, 1}, {twist, 0}};
    return AbelianExtension(hat, {2}, base, proj, sec);
}

// Sample grid of E^1 vectors: every coordinate in {-1, 0, 1}, plus `extra`.
std::vector<Vector> alpha_grid(const AbelianExtension& ext, const std::optional<Vector>& extra) {
    const auto e1 = ext.kernel_of_degree(1);
    std::vector<Vector> out;
    std::size_t count = 1;
    for (std::size_t i = 0; i < e1.size(); ++i) count *= 3;
    for (std::size_t code = 0; code < count; ++code) {
        Vector a = ext.hat.zero();
        std::size_t c = code;
        for (auto k : e1) {
            a[k] = Rational(static_cast<long>(c % 3) - 1);
            c /= 3;
        }
        out.push_back(a);
    }
    if (extra) out.push_back(*extra);
    return out;
}

}  // namespace

TEST(GradedDgLie, RejectsBrokenJacobi) {
    // sl2-like brackets with a wrong sign: [h,e] = 2e, [h,f] = 2f, [e,f] = h.
    auto br = no_bracket(3);
    br[0][1][1] = Rational(2);
    br[1][0][1] = Rational(-2);
    br[0][2][2] = Rational(2);
    br[2][0][2] = Rational(-2);
    br[1][2][0] = Rational(1);
    br[2][1][0] = Rational(-1);
    EXPECT_THROW(GradedDgLie({0, 0, 0}, zeros(3, 3), br), InvalidAlgebra);
    br[0][2][2] = Rational(-2);
    br[2][0][2] = Rational(2);
    EXPECT_NO_THROW(GradedDgLie({0, 0, 0}, zeros(3, 3), br));
}

TEST(GradedDgLie, RejectsNonNilpotentDifferential) {
    Matrix d = zeros(2, 2);
    d[1][0] = Rational(1);
    EXPECT_NO_THROW(GradedDgLie({0, 1}, d, no_bracket(2)));
    d[0][1] = Rational(1);
    EXPECT_THROW(GradedDgLie({0, 1}, d, no_bracket(2)), InvalidAlgebra);
}

TEST(Defects, MorphismSectionHasNoDefect) {
    const auto ext = heisenberg(Rational(0));
    auto br = no_bracket(3);
    GradedDgLie flat({0, 0, 0}, zeros(3, 3), br);
    AbelianExtension split(flat, {2}, ext.base, ext.projection, ext.section);
    const auto d = defects(split);
    for (const auto& v : d.delta1) EXPECT_TRUE(is_zero(v));
    for (const auto& row : d.delta2) {
        for (const auto& v : row) EXPECT_TRUE(is_zero(v));
    }
}

TEST(Defects, HeisenbergCommutatorDefect) {
    for (const auto& twist : {Rational(0), Rational(5, 3)}) {
        const auto d = defects(heisenberg(twist));
        EXPECT_EQ(d.delta2[0][1], (Vector{0, 0, 1}));
        EXPECT_EQ(d.delta2[1][0], (Vector{0, 0, -1}));
        EXPECT_TRUE(is_zero(d.delta2[0][0]));
        EXPECT_TRUE(is_zero(d.delta1[0]));
    }
}

TEST(Defects, Delta2GradedAntisymmetric) {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = trial % 2 ? random_semidirect_extension(rng) : random_central_extension(rng);
        const auto d = defects(inst.ext);
        for (std::size_t i = 0; i < inst.ext.base.dim(); ++i) {
            for (std::size_t j = 0; j < inst.ext.base.dim(); ++j) {
                const int s = (inst.ext.base.degree(i) * inst.ext.base.degree(j)) % 2 == 0 ? -1 : 1;
                EXPECT_EQ(d.delta2[i][j], scale(Rational(s), d.delta2[j][i]));
            }
        }
    }
}

TEST(IsMc, Basics) {
    const auto ext = heisenberg(Rational(0));
    EXPECT_TRUE(is_mc(ext.hat, ext.hat.zero()).holds);
    // abelian, d = 0, degree-1 element
    GradedDgLie ab({1, 1}, zeros(2, 2), no_bracket(2));
    EXPECT_TRUE(is_mc(ab, Vector{2, -1}).holds);
    // d e0 = e1: perturbing phi = 0 by e0 breaks MC
    Matrix d = zeros(2, 2);
    d[1][0] = Rational(1);
    GradedDgLie g({1, 2}, d, no_bracket(2));
    const auto r = is_mc(g, Vector{1, 0});
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(r.witness, (Vector{0, 1}));
}

TEST(LiftResidual, LinearInAlphaAndZeroForMorphisms) {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_semidirect_extension(rng);
        const auto& ext = inst.ext;
        const Vector r0 = lift_residual(ext, inst.phi, ext.hat.zero());
        for (const auto& a : alpha_grid(ext, std::nullopt)) {
            const Vector lin = add(ext.hat.d(a), ext.hat.bracket(ext.s(inst.phi), a));
            EXPECT_EQ(sub(lift_residual(ext, inst.phi, a), r0), lin);
        }
    }
}

TEST(LiftResidual, RejectsNonMc) {
    std::mt19937 rng(12);
    auto inst = random_semidirect_extension(rng);
    Vector phi = inst.phi;
    phi[0] += Rational(1);  // E12 coordinate: (Q + phi)^2 no longer vanishes
    EXPECT_THROW((void)lift_residual(inst.ext, phi, inst.ext.hat.zero()), NotMaurerCartan);
}

TEST(LiftResidual, EquivalenceWithDirectMcCheck) {
    std::mt19937 rng(2024);
    int positives = 0, negatives = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = trial % 2 ? random_semidirect_extension(rng) : random_central_extension(rng);
        const auto& ext = inst.ext;
        for (const auto& a : alpha_grid(ext, solve_lift(ext, inst.phi))) {
            const bool res_zero = is_zero(lift_residual(ext, inst.phi, a));
            const bool direct = is_mc(ext.hat, add(ext.s(inst.phi), a)).holds;
            EXPECT_EQ(res_zero, direct);
            (res_zero ? positives : negatives) += 1;
        }
    }
    EXPECT_GT(positives, 0);
    EXPECT_GT(negatives, 0);
}

TEST(LiftResidual, RightHandSideClosedWhenLiftExists) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = random_semidirect_extension(rng);
        const auto& ext = inst.ext;
        if (!solve_lift(ext, inst.phi)) continue;
        const Vector rhs = add(delta1(ext, inst.phi), scale(Rational(1, 2), delta2(ext, inst.phi, inst.phi)));
        const Vector closed = add(ext.hat.d(rhs), ext.hat.bracket(ext.s(inst.phi), rhs));
        EXPECT_TRUE(is_zero(closed));
    }
}
