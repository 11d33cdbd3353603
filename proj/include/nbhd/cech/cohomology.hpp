#pragma once

#include "nbhd/cech/cochain.hpp"

#include <vector>

namespace nbhd::cech {

/// dim H^i(P^n, O(d_1) + ... + O(d_r)) for i = 0..n, counted monomial by
/// monomial on the standard cover: a Laurent monomial x^a of total degree d
/// spans a subcomplex over the charts sigma with a_m >= 0 off sigma.
[[nodiscard]] std::vector<long> cohomology_dim(std::size_t n, const std::vector<int>& twists);

/// Line-bundle twists of Sym^v con (x) End E (or (x) E, or Sym^v con) for a
/// neighborhood of P^n with conormal pieces O(-m_a) and E = sum O(d_r).
/// Throws UnsupportedSheaf for forms.
[[nodiscard]] std::vector<int> sheaf_twists(const std::vector<int>& normal_twists, const std::vector<int>& bundle_twists,
                                            int v, ValueKind kind);

}  // namespace nbhd::cech
