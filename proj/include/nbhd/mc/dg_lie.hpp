#pragma once

#include "nbhd/exact/rational.hpp"

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nbhd::mc {

using exact::Rational;
using Vector = std::vector<Rational>;
using Matrix = std::vector<std::vector<Rational>>;  // row-major, Matrix[i][j] = <e_i, A e_j>

/// Finite-dimensional graded dg Lie algebra given by structure constants.
/// bracket[i][j][k] is the e_k coefficient of [e_i, e_j]; d[k][j] the e_k
/// coefficient of d e_j. Validated on construction.
class GradedDgLie {
public:
    GradedDgLie(std::vector<int> degrees, Matrix d, std::vector<std::vector<Vector>> bracket,
                std::vector<int> weights = {});

    [[nodiscard]] std::size_t dim() const { return degrees_.size(); }
    [[nodiscard]] int degree(std::size_t i) const { return degrees_[i]; }
    [[nodiscard]] const std::vector<int>& degrees() const { return degrees_; }
    [[nodiscard]] const std::vector<int>& weights() const { return weights_; }
    [[nodiscard]] const Matrix& differential() const { return d_; }
    [[nodiscard]] const std::vector<std::vector<Vector>>& structure() const { return bracket_; }
    /// Basis indices of homological degree `deg`.
    [[nodiscard]] std::vector<std::size_t> basis_of_degree(int deg) const;

    [[nodiscard]] Vector d(const Vector& x) const;
    [[nodiscard]] Vector bracket(const Vector& x, const Vector& y) const;
    [[nodiscard]] Vector zero() const { return Vector(dim(), Rational(0)); }
    [[nodiscard]] Vector unit(std::size_t i) const;
    /// Whether x is homogeneous of degree deg (zero counts).
    [[nodiscard]] bool is_homogeneous(const Vector& x, int deg) const;

private:
    void validate() const;

    std::vector<int> degrees_;
    std::vector<int> weights_;
    Matrix d_;
    std::vector<std::vector<Vector>> bracket_;
};

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Rational& c, const Vector& a);
bool is_zero(const Vector& a);
Vector mat_vec(const Matrix& m, const Vector& x);

struct McCheck {
    bool holds = false;
    Vector witness;  ///< d phi + [phi, phi]/2
};

/// Evaluates d phi + 1/2 [phi, phi] exactly.
[[nodiscard]] McCheck is_mc(const GradedDgLie& g, const Vector& phi);

/// 0 -> E -> hat -> L -> 0 with E spanned by the basis vectors `kernel` of hat.
/// projection: dim L x dim hat; section: dim hat x dim L.
struct AbelianExtension {
    GradedDgLie hat;
    std::vector<std::size_t> kernel;
    GradedDgLie base;
    Matrix projection;
    Matrix section;

    AbelianExtension(GradedDgLie hat, std::vector<std::size_t> kernel, GradedDgLie base, Matrix projection,
                     Matrix section);

    [[nodiscard]] Vector s(const Vector& x) const { return mat_vec(section, x); }
    [[nodiscard]] Vector pi(const Vector& x) const { return mat_vec(projection, x); }
    [[nodiscard]] bool in_kernel(const Vector& v) const;
    /// Degree-deg part of E as basis indices of hat.
    [[nodiscard]] std::vector<std::size_t> kernel_of_degree(int deg) const;
};

/// Delta_1(x) = d s x - s d x.
[[nodiscard]] Vector delta1(const AbelianExtension& ext, const Vector& x);
/// Delta_2(x, y) = [s x, s y] - s [x, y].
[[nodiscard]] Vector delta2(const AbelianExtension& ext, const Vector& x, const Vector& y);

struct Defects {
    std::vector<Vector> delta1;               ///< on basis vectors of L
    std::vector<std::vector<Vector>> delta2;  ///< on pairs of basis vectors
};
/// Both defect maps on the basis of L; throws SectionNotValued if any value
/// leaves E.
[[nodiscard]] Defects defects(const AbelianExtension& ext);

/// (d + [s phi, .]) alpha + Delta_1(phi) + Delta_2(phi, phi)/2.
/// Throws NotMaurerCartan if phi is not MC in L.
[[nodiscard]] Vector lift_residual(const AbelianExtension& ext, const Vector& phi, const Vector& alpha);

/// Solves lift_residual = 0 for alpha in E^1 (nullopt when impossible).
[[nodiscard]] std::optional<Vector> solve_lift(const AbelianExtension& ext, const Vector& phi);

/// Random instance families for the equivalence property.
struct RandomInstance {
    AbelianExtension ext;
    Vector phi;  ///< MC element of L
};
[[nodiscard]] RandomInstance random_central_extension(std::mt19937& rng);
[[nodiscard]] RandomInstance random_semidirect_extension(std::mt19937& rng);

}  // namespace nbhd::mc
