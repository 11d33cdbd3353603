#pragma once

#include "nbhd/cech/obstruction.hpp"
#include "nbhd/exact/linear_system.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nbhd::cech {

/// Monomial window for unknown cochains: base exponents of inverted variables
/// in [-radius, radius], of the others in [0, radius]; t-part of the cochain's weight.
struct Window {
    int radius = 3;
};

/// One unknown cochain block of a linear problem.
struct Block {
    int degree = 1;
    ValueKind kind = ValueKind::End;
    int weight = 1;
};

/// Coordinate of a cochain: block, simplex, entry (row-major) and monomial.
struct CellKey {
    std::size_t block = 0;
    std::size_t simplex = 0;
    std::size_t entry = 0;
    exact::Exponent exponent;
    friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

using LinearOp = std::function<std::vector<CechCochain>(const std::vector<CechCochain>&)>;

[[nodiscard]] std::vector<CellKey> window_basis(const CoverNerve& nerve, std::size_t e, const std::vector<Block>& blocks,
                                                const Window& w);
/// Nonzero coefficients of a family of cochains, in canonical order.
[[nodiscard]] std::vector<std::pair<CellKey, Rational>> coordinates(const std::vector<CechCochain>& cs);
[[nodiscard]] std::vector<CechCochain> from_coordinates(const CoverNerve& nerve, std::size_t e,
                                                        const std::vector<Block>& blocks,
                                                        const std::vector<CellKey>& basis,
                                                        const std::vector<Rational>& x);

/// Images of the basis unit cochains under op (one column each).
[[nodiscard]] std::vector<std::vector<std::pair<CellKey, Rational>>> assemble(const CoverNerve& nerve, std::size_t e,
                                                                              const std::vector<Block>& blocks,
                                                                              const std::vector<CellKey>& basis,
                                                                              const LinearOp& op, std::size_t workers);

enum class SolveStatus { Solved, ProvenNonzero, UnresolvedWithinWindow };
[[nodiscard]] std::string status_name(SolveStatus s);

/// Coefficient of the obstruction at a monomial that no coboundary can reach.
struct Witness {
    std::vector<std::size_t> charts;
    std::size_t row = 0;
    std::size_t col = 0;
    exact::Exponent exponent;
    Rational coefficient;
};

struct SolveResult {
    SolveStatus status = SolveStatus::UnresolvedWithinWindow;
    std::vector<CechCochain> solution;
    std::optional<long> torsor_dim;
    std::vector<Witness> witnesses;
    Window window;
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t rank = 0;
};

/// Finds m with -dm = c (c of degree 1 or 2) among window cochains.
/// Solved carries m with the residual checked exactly and torsor_dim, the
/// window dimension of H^{deg c - 1}. ProvenNonzero needs a monomial nerve and
/// a nonzero coefficient of c at a monomial outside the image of every face.
/// Throws NotClosed when dc != 0 can be evaluated and fails.
[[nodiscard]] SolveResult solve_coboundary(const CoverNerve& nerve, const BundleData& bundle, const CechCochain& c,
                                           const Window& w, std::size_t workers = 1);

/// dim ker(d on window V_deg) - dim(d(V_{deg-1}) inside V_deg).
[[nodiscard]] long window_cohomology(const CoverNerve& nerve, const BundleData& bundle, int degree, ValueKind kind,
                                     int weight, const Window& w, std::size_t workers = 1);

/// Monomials where c is nonzero and which no face can reach; empty when the
/// nerve or the kind has no monomial structure.
[[nodiscard]] std::vector<Witness> unreachable_witnesses(const CoverNerve& nerve, const BundleData& bundle,
                                                         const CechCochain& c);

/// Solves the pair equation in the rank-one abelianized complex.
[[nodiscard]] SolveResult solve_abelianized(const CoverNerve& nerve, const BundleData& bundle,
                                            const AbelianizedCochain& c, const Window& w, std::size_t workers = 1);

}  // namespace nbhd::cech
