#pragma once

#include "nbhd/exact/laurent.hpp"
#include "nbhd/exact/poly_matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nbhd::geom {

using exact::Exponent;
using exact::LaurentPoly;
using exact::PolyMatrix;
using exact::Rational;

/// Truncation context for Sym^{<=k} con over a chart ring.
///
/// Polynomials carry p base (tangential) variables followed by q normal
/// variables t_1..t_q. Everything of t-degree above `order` is dropped. When
/// `base_order` is set (formal disk), base total degree above it is dropped too.
struct Truncation {
    std::size_t p = 0;
    std::size_t q = 0;
    int order = 0;
    std::optional<int> base_order;

    [[nodiscard]] std::size_t nvars() const { return p + q; }
    [[nodiscard]] Truncation with_order(int k) const {
        Truncation t = *this;
        t.order = k;
        return t;
    }
    friend bool operator==(const Truncation&, const Truncation&) = default;
};

using ModuleElement = std::vector<LaurentPoly>;

[[nodiscard]] int t_degree(const Exponent& e, std::size_t p);
[[nodiscard]] int base_degree(const Exponent& e, std::size_t p);

[[nodiscard]] LaurentPoly truncate(const LaurentPoly& f, const Truncation& tr);
[[nodiscard]] PolyMatrix truncate(const PolyMatrix& m, const Truncation& tr);
[[nodiscard]] ModuleElement truncate(const ModuleElement& v, const Truncation& tr);

/// Homogeneous t-degree v part.
[[nodiscard]] LaurentPoly t_part(const LaurentPoly& f, std::size_t p, int v);
[[nodiscard]] PolyMatrix t_part(const PolyMatrix& m, std::size_t p, int v);
/// Lowest t-degree occurring (INT_MAX for zero).
[[nodiscard]] int min_t_degree(const LaurentPoly& f, std::size_t p);
[[nodiscard]] int min_t_degree(const PolyMatrix& m, std::size_t p);
/// True when the polynomial involves no normal variable.
[[nodiscard]] bool is_base_only(const LaurentPoly& f, std::size_t p);

[[nodiscard]] LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b, const Truncation& tr);
[[nodiscard]] PolyMatrix mul(const PolyMatrix& a, const PolyMatrix& b, const Truncation& tr);
[[nodiscard]] ModuleElement mul(const PolyMatrix& a, const ModuleElement& v, const Truncation& tr);
[[nodiscard]] ModuleElement scale(const LaurentPoly& f, const ModuleElement& v, const Truncation& tr);
[[nodiscard]] ModuleElement add(const ModuleElement& a, const ModuleElement& b);
[[nodiscard]] ModuleElement sub(const ModuleElement& a, const ModuleElement& b);
[[nodiscard]] bool is_zero(const ModuleElement& v);
[[nodiscard]] ModuleElement column(const PolyMatrix& m, std::size_t c);
[[nodiscard]] ModuleElement basis_vector(std::size_t e, std::size_t r, std::size_t nvars);

/// Inverse of f in the truncated ring; the t-degree-0 part must be a monomial.
[[nodiscard]] LaurentPoly inverse(const LaurentPoly& f, const Truncation& tr);
/// Inverse of a square matrix whose t-degree-0 part has monomial determinant.
[[nodiscard]] PolyMatrix inverse(const PolyMatrix& m, const Truncation& tr);

/// Degree-u monomials in q variables, graded-lex order. Size is C(q+u-1, u).
[[nodiscard]] std::vector<Exponent> sym_basis(std::size_t q, int u);

/// Lift a t-exponent (length q) to a full exponent with zero base part.
[[nodiscard]] Exponent normal_exponent(std::size_t p, const Exponent& t_exp);

/// Chart ring: Laurent polynomials in the base variables (only `inverted`
/// ones may carry negative exponents) adjoined the normal variables.
struct ChartRing {
    std::vector<std::string> base_names;
    std::vector<std::string> normal_names;
    std::vector<std::size_t> inverted;

    [[nodiscard]] std::size_t p() const { return base_names.size(); }
    [[nodiscard]] std::size_t q() const { return normal_names.size(); }
    [[nodiscard]] Truncation truncation(int order) const { return Truncation{p(), q(), order, std::nullopt}; }
    [[nodiscard]] std::vector<std::string> names() const;
    /// Whether f lies in the ring (non-inverted base variables non-negative).
    [[nodiscard]] bool contains(const LaurentPoly& f) const;
};

/// Element of Sym^{<=k} con over a chart, i.e. a polynomial of t-degree <= k.
struct TruncatedElement {
    Truncation truncation;
    LaurentPoly value;

    [[nodiscard]] LaurentPoly component(int u) const { return t_part(value, truncation.p, u); }
};

}  // namespace nbhd::geom
