#include "nbhd/lab/suites.hpp"

#include "nbhd/formal/formal_model.hpp"
#include "nbhd/geometry/automorphism.hpp"
#include "nbhd/mc/dg_lie.hpp"
#include "nbhd/testing/random.hpp"

namespace nbhd::lab {

namespace {

using exact::LaurentPoly;
using exact::PolyMatrix;
using exact::Rational;

std::mt19937 make_rng(std::uint64_t seed) { return std::mt19937(static_cast<std::uint32_t>(seed ^ (seed >> 32))); }

void record(PropertyResult& r, bool ok, bool nontrivial, const std::string& what) {
    ++r.trials;
    if (nontrivial) ++r.nontrivial;
    if (!ok && r.passed) {
        r.passed = false;
        r.detail = what;
    }
}

std::vector<mc::Vector> alpha_grid(const mc::AbelianExtension& ext, const std::optional<mc::Vector>& extra) {
    const auto e1 = ext.kernel_of_degree(1);
    std::vector<mc::Vector> out;
    std::size_t count = 1;
    for (std::size_t i = 0; i < e1.size(); ++i) count *= 3;
    for (std::size_t code = 0; code < count; ++code) {
        mc::Vector a = ext.hat.zero();
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

formal::FormalContext flat_context(std::mt19937& rng, formal::FormalDisk disk, int l, int k) {
    const PolyMatrix g = formal::random_gauge(rng, disk);
    const LaurentPoly h = testing::random_graded_poly(rng, disk.p, disk.q, 0, 0, 0, 2, 2);
    return formal::FormalContext{disk, l, k, formal::gauge_connection(disk, g, h)};
}

}  // namespace

std::vector<PropertyResult> geometry_suite(std::uint64_t seed, int trials) {
    auto rng = make_rng(seed);
    PropertyResult round{"exp(log phi) = phi"}, bch{"log(phi phi') = bch2 in degrees 1, 2"};
    for (int t = 0; t < trials; ++t) {
        const std::size_t p = 1 + rng() % 2, q = 1 + rng() % 2, e = rng() % 3;
        const geom::Truncation tr{p, q, 1 + static_cast<int>(rng() % 3), std::nullopt};
        const auto phi = testing::random_unipotent(rng, tr, e);
        const auto psi = testing::random_unipotent(rng, tr, e);
        const auto x = geom::log_unipotent(phi);
        record(round, geom::exp_nilpotent(x) == phi, !x.is_zero(), "trial " + std::to_string(t));
        const auto lhs = geom::log_unipotent(geom::compose(phi, psi));
        const auto rhs = geom::bch2(x, geom::log_unipotent(psi));
        const bool ok = lhs.graded(1) == rhs.graded(1) && lhs.graded(2) == rhs.graded(2);
        record(bch, ok, !rhs.graded(2).is_zero(), "trial " + std::to_string(t));
    }
    return {round, bch};
}

std::vector<PropertyResult> mc_suite(std::uint64_t seed, int instances) {
    auto rng = make_rng(seed);
    PropertyResult eq{"lift_residual = 0 <=> direct MC check"};
    PropertyResult closed{"obstruction closed when a lift exists"};
    long positives = 0, negatives = 0;
    for (int t = 0; t < instances; ++t) {
        const auto inst = t % 2 ? mc::random_semidirect_extension(rng) : mc::random_central_extension(rng);
        const auto& ext = inst.ext;
        const auto lift = mc::solve_lift(ext, inst.phi);
        for (const auto& a : alpha_grid(ext, lift)) {
            const bool res_zero = mc::is_zero(mc::lift_residual(ext, inst.phi, a));
            const bool direct = mc::is_mc(ext.hat, mc::add(ext.s(inst.phi), a)).holds;
            record(eq, res_zero == direct, true, "instance " + std::to_string(t));
            (res_zero ? positives : negatives) += 1;
        }
        if (lift) {
            const auto rhs = mc::add(mc::delta1(ext, inst.phi),
                                     mc::scale(Rational(1, 2), mc::delta2(ext, inst.phi, inst.phi)));
            const auto d = mc::add(ext.hat.d(rhs), ext.hat.bracket(ext.s(inst.phi), rhs));
            record(closed, mc::is_zero(d), !mc::is_zero(rhs), "instance " + std::to_string(t));
        }
    }
    eq.nontrivial = negatives;
    eq.detail += (eq.detail.empty() ? "" : "; ") + std::to_string(positives) + " liftable, " +
                 std::to_string(negatives) + " non-liftable samples";
    if (positives == 0 || negatives == 0) eq.passed = false;
    return {eq, closed};
}

std::vector<PropertyResult> formal_suite(std::uint64_t seed, int pairs) {
    auto rng = make_rng(seed);
    PropertyResult flat{"flat splitting is bracket compatible"};
    for (int t = 0; t < pairs; ++t) {
        const auto ctx = flat_context(rng, formal::FormalDisk{2, 1, 1 + static_cast<std::size_t>(t % 2), 6}, 0, 3);
        const auto x = formal::random_formal_derivation(rng, ctx.disk, ctx.k, -1);
        const auto y = formal::random_formal_derivation(rng, ctx.disk, ctx.k, -1);
        const auto defect = formal::splitting_defect(x, y, ctx.conn);
        const bool zero = formal::below(geom::endomorphism(x.tr, defect), ctx.disk.N - 2).is_zero();
        record(flat, zero && geom::is_flat(ctx.conn), !formal::bracket(x, y).is_zero(), "pair " + std::to_string(t));
    }

    PropertyResult curved{"curved defect equals curvature contraction"};
    {
        // p = 2, Gamma = x_1 dx_2, curvature dx_1 ^ dx_2
        formal::FormalDisk disk{2, 1, 1, 6};
        geom::Connection conn{{PolyMatrix(1, 1, 3), PolyMatrix::scalar(1, LaurentPoly::monomial({1, 0, 0}))}};
        const formal::FormalContext ctx{disk, 0, 2, conn};
        const auto tr = ctx.truncation();
        auto x = geom::PairDerivation::zero(tr, 1);
        auto y = x;
        x.base_images[0] = LaurentPoly::monomial({0, 0, 0});
        x.base_images[1] = LaurentPoly::monomial({0, 0, 1});
        y.base_images[1] = LaurentPoly::monomial({0, 0, 0});
        const auto defect = formal::splitting_defect(x, y, conn);
        record(curved, defect == formal::curvature_contraction(x, y, conn), !defect.is_zero(), "curated instance");
        for (int t = 0; t < 20; ++t) {
            const auto a = formal::random_formal_derivation(rng, disk, ctx.k, -1);
            const auto b = formal::random_formal_derivation(rng, disk, ctx.k, -1);
            const auto d = formal::below(geom::endomorphism(tr, formal::splitting_defect(a, b, conn)), 4);
            record(curved, d == formal::below(geom::endomorphism(tr, formal::curvature_contraction(a, b, conn)), 4),
                   !d.is_zero(), "random pair " + std::to_string(t));
        }
    }

    PropertyResult beta{"extension cocycle = -d(beta), N = k+2"};
    PropertyResult closed{"extension cocycle closed and relative"};
    for (int t = 0; t < 24; ++t) {
        const int l = t % 2, k = 1 + l + t % 3;
        const auto ctx = flat_context(rng, formal::FormalDisk{2, 1, 1 + static_cast<std::size_t>(t % 2), k + 2}, l, k);
        const auto X = formal::random_formal_derivation(rng, ctx.disk, k, k);
        const auto Y = formal::random_formal_derivation(rng, ctx.disk, k, k);
        const std::vector<formal::FormalDerivation> xy{X, Y};
        const auto db = formal::lie_differential(ctx, formal::beta_cochain(ctx), formal::Algebra::DerK)(xy);
        const auto c = formal::extension_cocycle(ctx, X, Y);
        record(beta, db == Rational(-1) * c, !c.is_zero(), "trial " + std::to_string(t));
    }
    for (int t = 0; t < 6; ++t) {
        formal::FormalDisk disk{2, 1, 1 + static_cast<std::size_t>(t % 2), 6};
        const PolyMatrix g = formal::random_gauge(rng, disk);
        const formal::FormalContext ctx{disk, 0, 2, formal::gauge_connection(disk, g, LaurentPoly::monomial({1, 1, 0}))};
        std::vector<formal::FormalDerivation> samples;
        for (int i = 0; i < 3; ++i) samples.push_back(formal::random_formal_derivation(rng, disk, ctx.k, ctx.l));
        const auto verdict = formal::relative_check(ctx, formal::extension_cochain(ctx), formal::der0_generators(ctx, g),
                                                    samples, disk.N - 3);
        const auto dc = formal::lie_differential(ctx, formal::extension_cochain(ctx))(samples);
        const auto c = formal::extension_cocycle(ctx, samples[0], samples[1]);
        record(closed, verdict.holds && dc.below(disk.N - 3).is_zero(), !c.below(disk.N - 3).is_zero(),
               verdict.holds ? "closedness, trial " + std::to_string(t) : verdict.witness);
    }
    return {flat, curved, beta, closed};
}

}  // namespace nbhd::lab
