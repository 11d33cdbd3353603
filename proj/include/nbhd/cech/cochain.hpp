#pragma once

#include "nbhd/cech/nerve.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nbhd::cech {

/// Sym^v con (x) End E, Sym^v con (x) E, Sym^v con, or scalar 1-forms.
enum class ValueKind { End, Vector, Scalar, Form };

[[nodiscard]] std::string kind_name(ValueKind k);

/// Values per simplex of one degree, each in the frame and coordinates of the
/// simplex's first chart. `weight` is the t-degree v of the values.
struct CechCochain {
    int degree = 0;
    ValueKind kind = ValueKind::End;
    int weight = 0;
    std::vector<PolyMatrix> values;

    static CechCochain zero(const CoverNerve& nerve, std::size_t e, int degree, ValueKind kind, int weight);

    [[nodiscard]] bool is_zero() const;
    CechCochain& operator+=(const CechCochain& o);
    CechCochain& operator-=(const CechCochain& o);
    CechCochain& operator*=(const Rational& c);
    friend CechCochain operator+(CechCochain a, const CechCochain& b) { return a += b; }
    friend CechCochain operator-(CechCochain a, const CechCochain& b) { return a -= b; }
    friend CechCochain operator*(const Rational& c, CechCochain a) { return a *= c; }
    friend bool operator==(const CechCochain&, const CechCochain&) = default;
};

/// rows x cols of a value of this kind.
[[nodiscard]] std::pair<std::size_t, std::size_t> value_shape(ValueKind kind, std::size_t e, std::size_t p);

/// Moves a value from the frame of chart j to the frame of chart i (i < j):
/// substitute the linear model, then g (.) for E, g (.) g^{-1} for End E,
/// pull back for forms.
[[nodiscard]] PolyMatrix transport(const CoverNerve& nerve, const BundleData& bundle, std::size_t i, std::size_t j,
                                   ValueKind kind, const PolyMatrix& value);

/// (dc)_{s_0..s_{d+1}} = sum_k (-1)^k c(face_k), face_0 transported to the
/// frame of s_0. Degrees 0, 1 and 2.
[[nodiscard]] CechCochain cech_differential(const CoverNerve& nerve, const BundleData& bundle, const CechCochain& c,
                                            std::size_t workers = 1);

/// Whether every value lies in the ring of its simplex.
[[nodiscard]] bool values_in_ring(const CoverNerve& nerve, const CechCochain& c);

}  // namespace nbhd::cech
