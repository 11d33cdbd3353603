#pragma once

#include "nbhd/cech/cochain.hpp"
#include "nbhd/geometry/automorphism.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace nbhd::cech {

/// Bundle transition matrices over Y^(k), one per edge i < j, in chart-i
/// coordinates: G_ij = g_ij + (t-degree >= 1).
using EdgeMatrices = std::vector<PolyMatrix>;

[[nodiscard]] EdgeMatrices initial_transitions(const CoverNerve& nerve, const BundleData& bundle);

/// c_ijh = [G_ij Theta_ij(G_jh) - G_ih]_k g_ih^{-1}, with Theta_ij the full
/// chart transition. Lower t-degrees of the defect must vanish (NotClosed).
/// Adding x to the order-k part (G_ij += x_ij g_ij) changes c by dx.
[[nodiscard]] CechCochain direct_obstruction(const CoverNerve& nerve, const BundleData& bundle, const EdgeMatrices& G,
                                             int k, std::size_t workers = 1);

/// G_ij += x_ij g_ij.
void apply_correction(const CoverNerve& nerve, const BundleData& bundle, EdgeMatrices& G, const CechCochain& x);

/// Connection differences: At_ij[b] = Gamma^i_b - Gamma^(j in i)_b.
struct AtiyahCocycle {
    std::vector<std::vector<PolyMatrix>> values;
};

[[nodiscard]] AtiyahCocycle atiyah_cocycle(const CoverNerve& nerve, const BundleData& bundle);
/// Form transport of a value on (j, h) to chart i < j.
[[nodiscard]] std::vector<PolyMatrix> transport_form(const CoverNerve& nerve, const BundleData& bundle, std::size_t i,
                                                     std::size_t j, const std::vector<PolyMatrix>& form);
/// Trace of the Atiyah cocycle as a scalar form cochain.
[[nodiscard]] CechCochain atiyah_trace(const CoverNerve& nerve, const BundleData& bundle, const AtiyahCocycle& at);

/// Components of log Xi_ij, Xi_ij the transition with its linear model
/// (u -> f, t -> C t, frame g) divided out.
struct EdgeComponents {
    geom::PairDerivation xi;
    /// Connection of the larger chart, in the frame of the smaller.
    geom::Connection nabla;
    /// m^v = M^v - a^v . nabla, v = 1..order.
    std::map<int, PolyMatrix> m;

    [[nodiscard]] std::vector<LaurentPoly> a(int v) const;
};

struct Components {
    int order = 0;
    std::vector<EdgeComponents> edges;

    /// m^v as a 1-cochain.
    [[nodiscard]] CechCochain m_cochain(const CoverNerve& nerve, std::size_t e, int v) const;
};

/// Xi_ij as a unipotent filtered automorphism at truncation order k.
[[nodiscard]] geom::FilteredAutomorphism normalized_transition(const CoverNerve& nerve, const BundleData& bundle,
                                                               std::size_t edge, const PolyMatrix& G, int k);

/// Throws NotOLinear if M^v - a^v nabla fails linearity on test sections.
[[nodiscard]] Components extract_components(const CoverNerve& nerve, const BundleData& bundle, const EdgeMatrices& G,
                                            int k, std::size_t workers = 1);

/// Lambda_ij o x o Lambda_ij^{-1}: a derivation of chart j moved to chart i.
[[nodiscard]] geom::PairDerivation transport_derivation(const CoverNerve& nerve, const BundleData& bundle,
                                                        std::size_t i, std::size_t j, const geom::PairDerivation& x);

/// xi_ih - bch2(xi_ij, Ad xi_jh) in degrees 1 and 2, per triangle.
[[nodiscard]] std::vector<geom::PairDerivation> bch_cocycle_defect(const CoverNerve& nerve, const BundleData& bundle,
                                                                   const Components& comps);

/// sum_b a_b At_b.
[[nodiscard]] PolyMatrix contract(const std::vector<LaurentPoly>& a, const std::vector<PolyMatrix>& form);

/// a^1_ij . At_jh (cup product, At transported to chart i).
[[nodiscard]] CechCochain first_order_obstruction(const CoverNerve& nerve, const BundleData& bundle,
                                                  const Components& comps, const AtiyahCocycle& at);

/// a^2_ij At_jh + [A, B]/2 + [s phi^1_ij, B]/2 - [s phi^1_jh, A]/2 with
/// A = m^1_ij + a^1_ij At_jh, B = m^1_jh, s the lift along nabla_h, all in
/// the frame of i. Needs flat local connections (NotFlat).
[[nodiscard]] CechCochain second_order_obstruction(const CoverNerve& nerve, const BundleData& bundle,
                                                   const Components& comps, const AtiyahCocycle& at);

/// Pair (a^1 At, a^2 Tr At) for the abelianized extension; End-valued
/// weight 1 and scalar weight 2.
struct AbelianizedCochain {
    CechCochain linear;
    CechCochain trace;
};

[[nodiscard]] AbelianizedCochain abelianized_obstruction(const CoverNerve& nerve, const BundleData& bundle,
                                                         const Components& comps, const AtiyahCocycle& at);

/// Differential of the abelianized complex on a pair of 1-cochains:
/// (dy1, Lambda(y2_jh) + [Theta(Tr y1_jh)]_2 - y2_ih + y2_ij).
[[nodiscard]] AbelianizedCochain abelianized_differential(const CoverNerve& nerve, const BundleData& bundle,
                                                          const AbelianizedCochain& y);

}  // namespace nbhd::cech
