#include "nbhd/exact/linear_system.hpp"

#include "nbhd/error.hpp"

#include <algorithm>

namespace nbhd::exact {

namespace {

// Integer row; the augmented right-hand side lives at column `cols`.
using IntRow = std::map<std::size_t, mpz_class>;

IntRow to_integer_row(const SparseRow& row, const Rational& rhs, std::size_t rhs_col) {
    mpz_class lcm = 1;
    for (const auto& [c, v] : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.raw().get_den_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), rhs.raw().get_den_mpz_t());
    IntRow out;
    for (const auto& [c, v] : row) {
        if (v.is_zero()) continue;
        out[c] = v.raw().get_num() * (lcm / v.raw().get_den());
    }
    if (!rhs.is_zero()) out[rhs_col] = rhs.raw().get_num() * (lcm / rhs.raw().get_den());
    return out;
}

void remove_content(IntRow& row) {
    mpz_class g = 0;
    for (const auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1) {
        for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
}

// target := p * target - a * pivot, where a = target[col], p = pivot[col].
void eliminate(IntRow& target, const IntRow& pivot, std::size_t col) {
    const mpz_class a = target.at(col);
    const mpz_class p = pivot.at(col);
    for (auto& [c, v] : target) v *= p;
    for (const auto& [c, v] : pivot) {
        auto& slot = target[c];
        slot -= a * v;
    }
    std::erase_if(target, [](const auto& kv) { return kv.second == 0; });
    remove_content(target);
}

struct Reduced {
    std::vector<IntRow> pivot_rows;
    std::vector<std::size_t> pivot_cols;
    bool inconsistent = false;
};

Reduced reduce(std::vector<IntRow> rows, std::size_t cols) {
    Reduced out;
    std::vector<bool> used(rows.size(), false);
    std::vector<std::size_t> pivot_row_index;
    for (std::size_t col = 0; col < cols; ++col) {
        // First unused row with a nonzero entry in this column.
        std::size_t pick = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!used[r] && rows[r].contains(col)) {
                pick = r;
                break;
            }
        }
        if (pick == rows.size()) continue;
        used[pick] = true;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != pick && rows[r].contains(col)) eliminate(rows[r], rows[pick], col);
        }
        out.pivot_cols.push_back(col);
        pivot_row_index.push_back(pick);
    }
    for (auto r : pivot_row_index) out.pivot_rows.push_back(rows[r]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!used[r] && !rows[r].empty()) {
            // Only the augmented column can survive in a non-pivot row.
            out.inconsistent = true;
        }
    }
    return out;
}

}  // namespace

ExactLinearSystem ExactLinearSystem::with_columns(std::size_t cols) {
    std::vector<Unknown> u(cols);
    for (std::size_t i = 0; i < cols; ++i) u[i].cell = i;
    return ExactLinearSystem(std::move(u));
}

ExactLinearSystem ExactLinearSystem::dense(const std::vector<std::vector<Rational>>& a,
                                           const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("matrix rows and rhs length differ");
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    auto sys = with_columns(cols);
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r].size() != cols) throw DimensionMismatch("ragged matrix");
        SparseRow row;
        for (std::size_t c = 0; c < cols; ++c) {
            if (!a[r][c].is_zero()) row[c] = a[r][c];
        }
        sys.add_equation(std::move(row), b[r]);
    }
    return sys;
}

void ExactLinearSystem::add_equation(SparseRow coefficients, Rational rhs) {
    for (const auto& [c, v] : coefficients) {
        if (c >= unknowns_.size()) throw DimensionMismatch("equation references unknown column");
    }
    std::erase_if(coefficients, [](const auto& kv) { return kv.second.is_zero(); });
    rows_.push_back(std::move(coefficients));
    rhs_.push_back(std::move(rhs));
}

std::vector<Rational> ExactLinearSystem::residual(const std::vector<Rational>& x) const {
    if (x.size() != cols()) throw DimensionMismatch("solution length differs from column count");
    std::vector<Rational> out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rational acc = -rhs_[r];
        for (const auto& [c, v] : rows_[r]) acc += v * x[c];
        out[r] = acc;
    }
    return out;
}

Solution solve_exact(const ExactLinearSystem& sys) {
    const std::size_t cols = sys.cols();
    std::vector<IntRow> rows;
    rows.reserve(sys.rows());
    for (std::size_t r = 0; r < sys.rows(); ++r) {
        rows.push_back(to_integer_row(sys.matrix()[r], sys.rhs()[r], cols));
    }
    const Reduced red = reduce(std::move(rows), cols);

    Solution sol;
    sol.rank = red.pivot_cols.size();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : red.pivot_cols) is_pivot[c] = true;

    if (!red.inconsistent) {
        std::vector<Rational> x(cols, Rational(0));
        for (std::size_t i = 0; i < red.pivot_cols.size(); ++i) {
            const auto& row = red.pivot_rows[i];
            const auto it = row.find(cols);
            if (it == row.end()) continue;
            x[red.pivot_cols[i]] = Rational(mpq_class(it->second, row.at(red.pivot_cols[i])));
        }
        sol.particular = std::move(x);
    }
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = Rational(1);
        for (std::size_t i = 0; i < red.pivot_cols.size(); ++i) {
            const auto& row = red.pivot_rows[i];
            const auto it = row.find(f);
            if (it == row.end()) continue;
            v[red.pivot_cols[i]] = -Rational(mpq_class(it->second, row.at(red.pivot_cols[i])));
        }
        sol.nullspace_basis.push_back(std::move(v));
    }
    return sol;
}

std::size_t rank_exact(const std::vector<SparseRow>& rows, std::size_t cols) {
    std::vector<IntRow> int_rows;
    int_rows.reserve(rows.size());
    for (const auto& r : rows) int_rows.push_back(to_integer_row(r, Rational(0), cols));
    return reduce(std::move(int_rows), cols).pivot_cols.size();
}

}  // namespace nbhd::exact
