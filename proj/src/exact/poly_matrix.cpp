#include "nbhd/exact/poly_matrix.hpp"

#include "nbhd/error.hpp"

#include <algorithm>

namespace nbhd::exact {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), entries_(rows * cols, LaurentPoly(nvars)) {}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t nvars) {
    PolyMatrix m(n, n, nvars);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly::constant(nvars, Rational(1));
    return m;
}

PolyMatrix PolyMatrix::scalar(std::size_t n, const LaurentPoly& value) {
    PolyMatrix m(n, n, value.nvars());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
    return m;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("matrix sum shapes differ");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("matrix difference shapes differ");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
}

PolyMatrix& PolyMatrix::operator*=(const Rational& c) {
    for (auto& e : entries_) e *= c;
    return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shapes differ");
    PolyMatrix out(a.rows_, b.cols_, a.nvars_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

PolyMatrix operator*(const LaurentPoly& f, const PolyMatrix& a) {
    return a.map([&f](const LaurentPoly& x) { return f * x; });
}

PolyMatrix PolyMatrix::map(const std::function<LaurentPoly(const LaurentPoly&)>& f) const {
    PolyMatrix out = *this;
    for (auto& e : out.entries_) e = f(e);
    if (!out.entries_.empty()) out.nvars_ = out.entries_.front().nvars();
    return out;
}

LaurentPoly PolyMatrix::trace() const {
    if (rows_ != cols_) throw DimensionMismatch("trace of non-square matrix");
    LaurentPoly t(nvars_);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) { return a * b - b * a; }

}  // namespace nbhd::exact
