#pragma once

#include "nbhd/exact/laurent.hpp"
#include "nbhd/exact/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace nbhd::exact {

/// Column label of an unknown: which cell of the cochain and which monomial.
struct Unknown {
    std::size_t cell = 0;
    Exponent exponent;
    friend bool operator==(const Unknown&, const Unknown&) = default;
};

using SparseRow = std::map<std::size_t, Rational>;

/// A x = b over Q with sparse rows; columns indexed by `unknowns`.
class ExactLinearSystem {
public:
    ExactLinearSystem() = default;
    explicit ExactLinearSystem(std::vector<Unknown> unknowns) : unknowns_(std::move(unknowns)) {}
    /// Unlabelled system with `cols` anonymous unknowns.
    static ExactLinearSystem with_columns(std::size_t cols);
    /// Dense convenience constructor.
    static ExactLinearSystem dense(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b);

    void add_equation(SparseRow coefficients, Rational rhs);

    [[nodiscard]] std::size_t cols() const { return unknowns_.size(); }
    [[nodiscard]] std::size_t rows() const { return rows_.size(); }
    [[nodiscard]] const std::vector<Unknown>& unknowns() const { return unknowns_; }
    [[nodiscard]] const std::vector<SparseRow>& matrix() const { return rows_; }
    [[nodiscard]] const std::vector<Rational>& rhs() const { return rhs_; }

    /// Residual A x - b.
    [[nodiscard]] std::vector<Rational> residual(const std::vector<Rational>& x) const;

private:
    std::vector<Unknown> unknowns_;
    std::vector<SparseRow> rows_;
    std::vector<Rational> rhs_;
};

struct Solution {
    std::optional<std::vector<Rational>> particular;  ///< nullopt when inconsistent
    std::vector<std::vector<Rational>> nullspace_basis;
    std::size_t rank = 0;

    [[nodiscard]] bool consistent() const { return particular.has_value(); }
};

/// Fraction-free Gauss-Jordan elimination. Rows are cleared to integers and
/// each row operation is p*row - a*pivot_row followed by content removal.
/// Pivots are taken column by column in canonical order, so the output is a
/// deterministic function of the input.
[[nodiscard]] Solution solve_exact(const ExactLinearSystem& sys);

/// Rank of a sparse matrix with `cols` columns.
[[nodiscard]] std::size_t rank_exact(const std::vector<SparseRow>& rows, std::size_t cols);

}  // namespace nbhd::exact
