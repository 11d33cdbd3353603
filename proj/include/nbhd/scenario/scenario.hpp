#pragma once

#include "nbhd/cech/nerve.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nbhd::scenario {

using cech::ChartPair;
using exact::LaurentPoly;
using exact::PolyMatrix;

inline constexpr int kSchemaVersion = 1;

/// Window of the coboundary solve: base exponents in [-radius, radius].
struct SolveWindow {
    int radius = 3;
    friend bool operator==(const SolveWindow&, const SolveWindow&) = default;
};

/// Toric description when X = P^n with the standard cover; lets the pipeline
/// count cohomology of the obstruction sheaves.
struct ProjectiveData {
    std::size_t n = 1;
    std::vector<int> normal_twists;
    std::vector<int> bundle_twists;
    friend bool operator==(const ProjectiveData&, const ProjectiveData&) = default;
};

/// Charts of X with adapted coordinates of Y, transitions of Y (both
/// directions per overlap, truncated at `order`), and E with local connections.
struct Scenario {
    std::string name;
    std::string description;
    int order = 2;
    std::vector<geom::ChartRing> charts;
    std::map<ChartPair, geom::ChartTransition> transitions;
    std::size_t e = 1;
    std::map<ChartPair, PolyMatrix> bundle_transitions;
    std::vector<geom::Connection> connections;
    std::vector<bool> flat;
    int target_order = 2;
    SolveWindow window;
    std::optional<ProjectiveData> projective;

    [[nodiscard]] std::size_t p() const { return charts.empty() ? 0 : charts[0].p(); }
    [[nodiscard]] std::size_t q() const { return charts.empty() ? 0 : charts[0].q(); }
};

[[nodiscard]] cech::CoverNerve make_nerve(const Scenario& s);
[[nodiscard]] cech::BundleData make_bundle(const Scenario& s);

/// X = P^n inside a neighborhood whose conormal pieces are O(-m_a), E = sum O(d_r).
/// Standard cover by the n+1 coordinate charts of P^n.
[[nodiscard]] Scenario projective_neighborhood(std::size_t n, const std::vector<int>& normal_twists,
                                               const std::vector<int>& bundle_twists, int order);
/// The diagonal of P^1 x P^1 with E = O(d).
[[nodiscard]] Scenario diagonal_p1xp1(int d, int order);
/// A^1 x A^1 along A^1 x 0, covered by A^1 and A^1 minus the origin, E = O(d) frames.
[[nodiscard]] Scenario affine_split(int d, int order);

/// line_in_p2, hyperplane_p2_in_p3, diagonal_p1xp1, affine_split; throws UnknownScenario.
[[nodiscard]] Scenario generate_builtin(const std::string& name, int d = 1, int order = 2);
[[nodiscard]] const std::vector<std::string>& builtin_names();

/// Replaces the adapted coordinates of every chart by a random unipotent
/// change u -> u + O(t), t -> t + O(t^2); E on X is unchanged.
[[nodiscard]] Scenario perturb_coordinates(const Scenario& s, std::uint64_t seed);
/// Adds random base-only matrices to the local connections (not flat in general).
[[nodiscard]] Scenario perturb_connections(const Scenario& s, std::uint64_t seed);

}  // namespace nbhd::scenario
