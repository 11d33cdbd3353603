#pragma once

#include "nbhd/geometry/derivation.hpp"

#include <cstddef>
#include <vector>

namespace nbhd::geom {

/// Filtered automorphism of the pair, stored by generator images:
///   u_b -> base_images[b], t_a -> normal_images[a], Psi(eps_r) = column r of
///   module_matrix. On functions it acts by truncated substitution and on
///   module vectors by Psi(v) = G . Phi(v).
struct FilteredAutomorphism {
    Truncation tr;
    std::size_t e = 0;
    std::vector<LaurentPoly> base_images;
    std::vector<LaurentPoly> normal_images;
    PolyMatrix module_matrix;

    static FilteredAutomorphism identity(const Truncation& tr, std::size_t e);

    [[nodiscard]] LaurentPoly apply(const LaurentPoly& f) const;
    [[nodiscard]] PolyMatrix apply_entrywise(const PolyMatrix& m) const;
    [[nodiscard]] ModuleElement apply(const ModuleElement& v) const;

    /// u_b -> u_b + (t-degree >= 1), t_a -> t_a + (t-degree >= 2), G = 1 + (t-degree >= 1).
    [[nodiscard]] bool is_unipotent() const;

    friend bool operator==(const FilteredAutomorphism&, const FilteredAutomorphism&) = default;
};

/// Truncated substitution of generator images; negative powers go through
/// the series inverse, so their t-degree-0 parts must be monomials.
[[nodiscard]] LaurentPoly substitute_truncated(const LaurentPoly& f, const std::vector<LaurentPoly>& images,
                                               const Truncation& tr);

/// (a o b)(x) = a(b(x)).
[[nodiscard]] FilteredAutomorphism compose(const FilteredAutomorphism& a, const FilteredAutomorphism& b);

[[nodiscard]] PairDerivation log_unipotent(const FilteredAutomorphism& phi);
[[nodiscard]] FilteredAutomorphism exp_nilpotent(const PairDerivation& d);
/// Inverse of a unipotent automorphism, exp(-log).
[[nodiscard]] FilteredAutomorphism inverse(const FilteredAutomorphism& phi);

/// Grading degrees 1 and 2 of log(exp x exp y): x1 + y1 + x2 + y2 + [x1, y1]/2.
[[nodiscard]] PairDerivation bch2(const PairDerivation& x, const PairDerivation& y);

}  // namespace nbhd::geom
