#pragma once

#include "nbhd/geometry/automorphism.hpp"

#include <functional>
#include <vector>

namespace nbhd::geom {

/// Coordinates of chart `to` written in the coordinates of chart `from`:
/// images[x] for x = u_1..u_p, t_1..t_q of the target chart.
struct ChartTransition {
    std::vector<LaurentPoly> images;
};

/// Output of induced_transition for the ordered overlap (i, j).
struct InducedTransition {
    /// f_ij: base images u^(j) = f_ij(u), the restriction to X.
    std::vector<LaurentPoly> base_map;
    /// C_ij: t^(j) = C_ij t + O(t^2), base-only q x q matrix.
    PolyMatrix conormal;
    /// Unipotent part in the frame of chart i.
    FilteredAutomorphism unipotent;
};

/// Taylor-expands the transition pair (i -> j, j -> i) to t-degree k, factors
/// out the linear model u -> f, t -> C t, and returns the unipotent rest
/// Phi(x) = T_ji(x) evaluated at u^(j) = f(u), t^(j) = C t.
/// Throws NotAdapted if {t = 0} is not preserved or C is not invertible.
[[nodiscard]] InducedTransition induced_transition(const ChartTransition& forward, const ChartTransition& backward,
                                                   const Truncation& tr, std::size_t e = 0);

/// Linear model u -> f(u), t -> C t as a filtered map (not unipotent in general).
[[nodiscard]] FilteredAutomorphism linear_model(const std::vector<LaurentPoly>& base_map, const PolyMatrix& conormal,
                                                const Truncation& tr, std::size_t e = 0);

/// Linear part C of t -> images (q images); throws NotAdapted when an image
/// does not vanish on t = 0.
[[nodiscard]] PolyMatrix conormal_part(const std::vector<LaurentPoly>& normal_images, const Truncation& tr);

/// Identification R/I^{k+1} = Sym^<=k con attached to adapted coordinates
/// s_1..s_q (each vanishing on X). The basis lists, per degree, the
/// t-monomials; `coordinates` sends t_a to s_a and fixes u.
struct ChartNormalization {
    Truncation tr;
    std::vector<std::vector<Exponent>> basis;
    PolyMatrix conormal;
    FilteredAutomorphism coordinates;
    FilteredAutomorphism unipotent;
};

[[nodiscard]] ChartNormalization chart_normalize(const ChartRing& ring, const std::vector<LaurentPoly>& normal_coords,
                                                 int k);
/// N2 o N1^{-1}; unipotent when both share the conormal part.
[[nodiscard]] FilteredAutomorphism normalization_discrepancy(const ChartNormalization& n1,
                                                             const ChartNormalization& n2);

using ModuleMap = std::function<ModuleElement(const ModuleElement&)>;

/// psi(x, m) = x Phi(m) - Phi(x m).
[[nodiscard]] ModuleElement hochschild_defect(const ModuleMap& phi, const LaurentPoly& x, const ModuleElement& m,
                                              const Truncation& tr);
/// psi(xy, m) - x psi(y, m) - psi(x, ym), identically zero.
[[nodiscard]] ModuleElement hochschild_identity(const ModuleMap& phi, const LaurentPoly& x, const LaurentPoly& y,
                                                const ModuleElement& m, const Truncation& tr);

}  // namespace nbhd::geom
