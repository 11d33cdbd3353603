#pragma once

#include "nbhd/geometry/truncated.hpp"

#include <cstddef>
#include <vector>

namespace nbhd::geom {

/// Connection d + sum_b Gamma_b du_b on a trivialized rank-e bundle.
/// The matrices live in the chart ring and involve base variables only.
struct Connection {
    std::vector<PolyMatrix> gamma;

    static Connection trivial(std::size_t p, std::size_t e, std::size_t nvars);
    [[nodiscard]] std::size_t p() const { return gamma.size(); }
    friend bool operator==(const Connection&, const Connection&) = default;
};

/// F_bc = d_b Gamma_c - d_c Gamma_b + [Gamma_b, Gamma_c], listed for b < c.
[[nodiscard]] std::vector<PolyMatrix> curvature(const Connection& c);
[[nodiscard]] bool is_flat(const Connection& c);

/// Filtered derivation of the pair (Sym^<=k con, Sym^<=k con (x) E), stored
/// by its values on generators:
///   phi(u_b) = base_images[b], phi(t_a) = normal_images[a],
///   psi(eps_r) = column r of module_matrix.
/// Then psi(sum f_r eps_r) = sum phi(f_r) eps_r + sum f_r psi(eps_r).
struct PairDerivation {
    Truncation tr;
    std::size_t e = 0;
    std::vector<LaurentPoly> base_images;
    std::vector<LaurentPoly> normal_images;
    PolyMatrix module_matrix;

    static PairDerivation zero(const Truncation& tr, std::size_t e);

    [[nodiscard]] LaurentPoly apply(const LaurentPoly& f) const;
    /// phi applied entrywise (no module part).
    [[nodiscard]] PolyMatrix apply_entrywise(const PolyMatrix& m) const;
    [[nodiscard]] ModuleElement apply(const ModuleElement& v) const;

    /// Grading-degree v part: base images of t-degree v, normal images of
    /// t-degree v+1, module part of t-degree v.
    [[nodiscard]] PairDerivation graded(int v) const;
    /// Sum of graded parts of degree <= v.
    [[nodiscard]] PairDerivation up_to(int v) const;
    [[nodiscard]] bool is_zero() const;
    /// Smallest grading degree present (INT_MAX when zero).
    [[nodiscard]] int min_degree() const;

    /// a_v(du_b): degree-v part of phi(u_b).
    [[nodiscard]] LaurentPoly a(int v, std::size_t b) const;
    /// L_v as a q x q matrix of coefficient polynomials is not always defined
    /// (higher t-degree); this returns the images L_v(t_a).
    [[nodiscard]] std::vector<LaurentPoly> L(int v) const;
    /// Degree-v part of the module matrix.
    [[nodiscard]] PolyMatrix M(int v) const;

    PairDerivation& operator+=(const PairDerivation& o);
    PairDerivation& operator-=(const PairDerivation& o);
    PairDerivation& operator*=(const Rational& c);
    friend PairDerivation operator+(PairDerivation a, const PairDerivation& b) { return a += b; }
    friend PairDerivation operator-(PairDerivation a, const PairDerivation& b) { return a -= b; }
    friend PairDerivation operator*(const Rational& c, PairDerivation a) { return a *= c; }
    friend bool operator==(const PairDerivation&, const PairDerivation&) = default;
};

/// [x, y] = x o y - y o x, computed on generators.
[[nodiscard]] PairDerivation commutator(const PairDerivation& x, const PairDerivation& y);

/// Derivation with function part of d and module matrix sum_b phi(u_b) Gamma_b,
/// i.e. psi(f eps) = phi(f) eps + f nabla_phi(eps).
[[nodiscard]] PairDerivation leibniz_extend(const PairDerivation& d, const Connection& conn);

/// Multiplication operator by an End(E)-valued function, as a derivation with
/// zero function part.
[[nodiscard]] PairDerivation endomorphism(const Truncation& tr, const PolyMatrix& m);

}  // namespace nbhd::geom
