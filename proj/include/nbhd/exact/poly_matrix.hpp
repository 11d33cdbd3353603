#pragma once

#include "nbhd/exact/laurent.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace nbhd::exact {

/// Dense matrix of Laurent polynomials sharing one variable set.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

    static PolyMatrix identity(std::size_t n, std::size_t nvars);
    static PolyMatrix scalar(std::size_t n, const LaurentPoly& value);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] std::size_t nvars() const { return nvars_; }

    [[nodiscard]] LaurentPoly& operator()(std::size_t r, std::size_t c) { return entries_.at(r * cols_ + c); }
    [[nodiscard]] const LaurentPoly& operator()(std::size_t r, std::size_t c) const {
        return entries_.at(r * cols_ + c);
    }

    [[nodiscard]] bool is_zero() const;

    PolyMatrix& operator+=(const PolyMatrix& o);
    PolyMatrix& operator-=(const PolyMatrix& o);
    PolyMatrix& operator*=(const Rational& c);
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
    friend PolyMatrix operator*(PolyMatrix a, const Rational& c) { return a *= c; }
    friend PolyMatrix operator*(const Rational& c, PolyMatrix a) { return a *= c; }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const LaurentPoly& f, const PolyMatrix& a);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

    [[nodiscard]] PolyMatrix map(const std::function<LaurentPoly(const LaurentPoly&)>& f) const;
    [[nodiscard]] LaurentPoly trace() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t nvars_ = 0;
    std::vector<LaurentPoly> entries_;
};

/// Commutator ab - ba of square matrices.
[[nodiscard]] PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace nbhd::exact
