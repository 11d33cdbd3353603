#pragma once

#include "nbhd/geometry/derivation.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace nbhd::formal {

using exact::LaurentPoly;
using exact::PolyMatrix;
using exact::Rational;
using geom::Connection;
using geom::PairDerivation;
using geom::Truncation;

/// Power-series disk in x_1..x_p truncated at total degree N, with a free
/// conormal module of rank q (variables t) and a free bundle of rank e.
struct FormalDisk {
    std::size_t p = 1;
    std::size_t q = 1;
    std::size_t e = 1;
    int N = 4;

    [[nodiscard]] Truncation truncation(int k) const { return Truncation{p, q, k, N}; }
};

/// Elements of Der_k are pair derivations on the disk truncation. An element
/// of Der_l (l < k) is stored the same way with module part of t-degree <= l.
using FormalDerivation = PairDerivation;

/// Working context: disk, orders l < k and the connection used for s.
struct FormalContext {
    FormalDisk disk;
    int l = 0;
    int k = 1;
    Connection conn;

    [[nodiscard]] Truncation truncation() const { return disk.truncation(k); }
};

/// End^{l,k} made abelian: S^v (x) End E for l+1 <= v <= min(k, 2l+1) and
/// traces S^v for 2l+2 <= v <= k.
struct AbelianizedKernel {
    std::size_t p = 0;  ///< number of base variables, for horizon cuts
    std::map<int, PolyMatrix> end;
    std::map<int, LaurentPoly> scalar;

    static AbelianizedKernel zero(const FormalContext& ctx);
    [[nodiscard]] bool is_zero() const;
    /// Drops base degree above h (comparison below the validity horizon).
    [[nodiscard]] AbelianizedKernel below(int h) const;
    AbelianizedKernel& operator+=(const AbelianizedKernel& o);
    AbelianizedKernel& operator-=(const AbelianizedKernel& o);
    AbelianizedKernel& operator*=(const Rational& c);
    friend AbelianizedKernel operator+(AbelianizedKernel a, const AbelianizedKernel& b) { return a += b; }
    friend AbelianizedKernel operator-(AbelianizedKernel a, const AbelianizedKernel& b) { return a -= b; }
    friend AbelianizedKernel operator*(const Rational& c, AbelianizedKernel a) { return a *= c; }
    friend bool operator==(const AbelianizedKernel&, const AbelianizedKernel&) = default;
    [[nodiscard]] std::string str() const;
};

/// Commutator in Der_k.
[[nodiscard]] FormalDerivation bracket(const FormalDerivation& x, const FormalDerivation& y);
/// Commutator in Der_l: module part above degree l dropped.
[[nodiscard]] FormalDerivation bracket_l(const FormalDerivation& x, const FormalDerivation& y, int l);
/// Drops module components of t-degree above l.
[[nodiscard]] FormalDerivation project_to(const FormalDerivation& x, int l);
/// Drops base degree above h everywhere.
[[nodiscard]] FormalDerivation below(const FormalDerivation& x, int h);

/// Module matrix of the Leibniz extension of the function part: sum_b phi(x_b) Gamma_b.
[[nodiscard]] PolyMatrix connection_part(const FormalDerivation& x, const Connection& conn);
/// e(x) = M(x) - connection_part(x), all degrees.
[[nodiscard]] PolyMatrix e_part(const FormalDerivation& x, const Connection& conn);

/// s: Der_l -> Der_k. Keeps phi and module degrees <= l, fills l+1..k with
/// the connection part.
[[nodiscard]] FormalDerivation splitting(const FormalDerivation& x, const Connection& conn, int l);

/// Projection End^{l,k} -> End_ab (t-degrees l+1..k of m).
[[nodiscard]] AbelianizedKernel project(const FormalContext& ctx, const PolyMatrix& m);
/// Lift back; scalar parts become f I / e.
[[nodiscard]] PolyMatrix lift(const FormalContext& ctx, const AbelianizedKernel& a);

/// [s x, s y] - s[x, y] projected to End_ab. Valid for any connection.
[[nodiscard]] AbelianizedKernel section_defect_cocycle(const FormalContext& ctx, const FormalDerivation& x,
                                                       const FormalDerivation& y);
/// Closed formula in terms of the e_p and the Leibniz extensions of the
/// graded pieces phi_w. Throws NotFlat for a curved connection.
[[nodiscard]] AbelianizedKernel extension_cocycle(const FormalContext& ctx, const FormalDerivation& x,
                                                  const FormalDerivation& y);
/// Bracket defect of the full Leibniz splitting on pure vector-field parts
/// (l = -1): [S phi, S phi'] - S[phi, phi'] as a module matrix.
[[nodiscard]] PolyMatrix splitting_defect(const FormalDerivation& x, const FormalDerivation& y,
                                          const Connection& conn);
/// sum_{b,c} phi(x_b) phi'(x_c) F_bc.
[[nodiscard]] PolyMatrix curvature_contraction(const FormalDerivation& x, const FormalDerivation& y,
                                               const Connection& conn);

/// Action of Der_l on End_ab: project([s x, lift(m)]).
[[nodiscard]] AbelianizedKernel act(const FormalContext& ctx, const FormalDerivation& x, const AbelianizedKernel& m);

/// Alternating cochain on Der_l with values in End_ab, given by an evaluator.
struct RelativeCochain {
    int degree = 0;
    std::function<AbelianizedKernel(std::span<const FormalDerivation>)> eval;

    [[nodiscard]] AbelianizedKernel operator()(std::span<const FormalDerivation> xs) const;
};

/// Which Lie algebra a cochain lives on; Der_k acts through Der_k -> Der_l.
enum class Algebra { DerL, DerK };

/// Chevalley-Eilenberg differential (degree <= 2 input).
[[nodiscard]] RelativeCochain lie_differential(const FormalContext& ctx, const RelativeCochain& c,
                                               Algebra on = Algebra::DerL);
/// beta(X) = projection of the e-components of X above degree l (X in Der_k).
[[nodiscard]] AbelianizedKernel beta(const FormalContext& ctx, const FormalDerivation& x);
[[nodiscard]] RelativeCochain beta_cochain(const FormalContext& ctx);
[[nodiscard]] RelativeCochain extension_cochain(const FormalContext& ctx);
[[nodiscard]] RelativeCochain section_defect_cochain(const FormalContext& ctx);

/// Der'_0 generators: s d/dx_b and covariantly constant endomorphisms
/// G E_rs G^{-1} (constant E_rs when no gauge is known).
[[nodiscard]] std::vector<FormalDerivation> der0_generators(const FormalContext& ctx,
                                                            const std::optional<PolyMatrix>& gauge);

struct RelativeVerdict {
    bool holds = true;
    std::string witness;
};
/// Insertion of generators vanishes and the cochain is generator-invariant on
/// the given samples. Comparisons are made below base degree `horizon`.
[[nodiscard]] RelativeVerdict relative_check(const FormalContext& ctx, const RelativeCochain& c,
                                             const std::vector<FormalDerivation>& generators,
                                             const std::vector<FormalDerivation>& samples, int horizon);

/// Flat connection Gamma_b = -(d_b G) G^{-1} + d_b h I with G unipotent upper
/// triangular (so G^{-1} is polynomial).
[[nodiscard]] Connection gauge_connection(const FormalDisk& disk, const PolyMatrix& g, const LaurentPoly& h);
[[nodiscard]] PolyMatrix unipotent_inverse(const PolyMatrix& g);

/// Random Der_k element with module part up to degree `module_max` and base
/// coefficients of degree <= coeff_degree.
[[nodiscard]] FormalDerivation random_formal_derivation(std::mt19937& rng, const FormalDisk& disk, int k,
                                                        int module_max, int coeff_degree = 1);
/// Random unipotent upper triangular gauge matrix with linear entries.
[[nodiscard]] PolyMatrix random_gauge(std::mt19937& rng, const FormalDisk& disk);

}  // namespace nbhd::formal
