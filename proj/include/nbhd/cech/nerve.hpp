#pragma once

#include "nbhd/geometry/derivation.hpp"
#include "nbhd/geometry/transition.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace nbhd::cech {

using exact::Exponent;
using exact::LaurentPoly;
using exact::PolyMatrix;
using exact::Rational;
using geom::Truncation;

/// Nonempty intersection of charts (increasing indices). Its ring is the ring
/// of the first chart with `inverted` base variables allowed negative powers.
struct Simplex {
    std::vector<std::size_t> charts;
    std::vector<std::size_t> inverted;
};

/// u^(j) = f(u), t^(j) = C t: the transition with the higher-order terms dropped.
struct LinearModel {
    std::vector<LaurentPoly> base_map;
    PolyMatrix conormal;
    /// f_1..f_p, (Ct)_1..(Ct)_q, ready for substitution.
    std::vector<LaurentPoly> images;
    /// jacobian(c, b) = d f_b / d u_c.
    PolyMatrix jacobian;
};

using ChartPair = std::pair<std::size_t, std::size_t>;

/// Charts of Y near X, their transitions (both directions per overlap) and
/// the intersections up to four charts.
struct CoverNerve {
    Truncation tr;
    std::vector<geom::ChartRing> charts;
    /// transitions[{i, j}]: chart-j coordinates written in chart-i coordinates.
    std::map<ChartPair, geom::ChartTransition> transitions;
    std::map<ChartPair, LinearModel> linear;
    /// simplices[d] lists the d-simplices in lexicographic order.
    std::vector<std::vector<Simplex>> simplices;

    [[nodiscard]] std::size_t count(int degree) const;
    [[nodiscard]] const std::vector<Simplex>& of_degree(int degree) const;
    [[nodiscard]] std::optional<std::size_t> index(const std::vector<std::size_t>& charts) const;
    /// Throws FrameMismatch when the pair has no transition.
    [[nodiscard]] const geom::ChartTransition& transition(std::size_t i, std::size_t j) const;
    [[nodiscard]] const LinearModel& linear_model(std::size_t i, std::size_t j) const;
    /// Base exponents allowed negative on the simplex.
    [[nodiscard]] bool in_ring(const Simplex& s, const LaurentPoly& f) const;
};

/// Builds linear models and intersections. Every pair listed in one direction
/// must be listed in the other. The ring of an intersection inverts, in the
/// coordinates of its first chart, everything the other charts' coordinates
/// and inverted variables require.
[[nodiscard]] CoverNerve build_nerve(std::vector<geom::ChartRing> charts,
                                     std::map<ChartPair, geom::ChartTransition> transitions, int order);

/// Locally free E on X: g_ij (i < j, chart-i coordinates) sends chart-j frame
/// coefficients to chart-i frame coefficients; one connection per chart.
struct BundleData {
    std::size_t e = 1;
    std::map<ChartPair, PolyMatrix> g;
    std::vector<geom::Connection> connections;
    std::vector<bool> flat;

    [[nodiscard]] const PolyMatrix& transition(std::size_t i, std::size_t j) const;
};

/// g_ij^{-1} in chart-i coordinates.
[[nodiscard]] PolyMatrix inverse_frame(const CoverNerve& nerve, const BundleData& bundle, std::size_t i, std::size_t j);

/// Substitution u^(j) -> f(u), t^(j) -> C t (exact, for t-homogeneous data).
[[nodiscard]] LaurentPoly linear_substitute(const CoverNerve& nerve, std::size_t i, std::size_t j, const LaurentPoly& f);
[[nodiscard]] PolyMatrix linear_substitute(const CoverNerve& nerve, std::size_t i, std::size_t j, const PolyMatrix& m);
/// Full truncated substitution of the transition (chart-j data into chart i).
[[nodiscard]] LaurentPoly full_substitute(const CoverNerve& nerve, std::size_t i, std::size_t j, const LaurentPoly& f);
[[nodiscard]] PolyMatrix full_substitute(const CoverNerve& nerve, std::size_t i, std::size_t j, const PolyMatrix& m);

/// Connection of chart j rewritten in the frame and coordinates of chart i:
/// g Gamma^j g^{-1} - dg g^{-1} with Gamma^j pulled back along f.
[[nodiscard]] geom::Connection connection_in_frame(const CoverNerve& nerve, const BundleData& bundle, std::size_t i,
                                                   std::size_t j);

/// Linear model of the pair (functions and frame) for the overlap i < j, as a
/// filtered map from chart-j data to chart-i data, and its inverse.
[[nodiscard]] geom::FilteredAutomorphism frame_model(const CoverNerve& nerve, const BundleData& bundle, std::size_t i,
                                                     std::size_t j);
[[nodiscard]] geom::FilteredAutomorphism frame_model_inverse(const CoverNerve& nerve, const BundleData& bundle,
                                                             std::size_t i, std::size_t j);

/// True when every linear model and frame transition sends monomials to
/// monomials (each row of C and g a single monomial entry, f monomial).
[[nodiscard]] bool is_monomial(const CoverNerve& nerve, const BundleData& bundle);

}  // namespace nbhd::cech
