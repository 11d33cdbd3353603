#pragma once

#include "nbhd/exact/rational.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nbhd::exact {

using Exponent = std::vector<int>;

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

[[nodiscard]] int total_degree(const Exponent& e);

/// Exact multivariate Laurent polynomial over Q.
///
/// Terms are kept in graded-lex order with no stored zero coefficients, so
/// equality is structural and serialization is canonical.
class LaurentPoly {
public:
    using TermMap = std::map<Exponent, Rational, GrlexLess>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

    static LaurentPoly constant(std::size_t nvars, const Rational& c);
    static LaurentPoly monomial(Exponent e, const Rational& c = Rational(1));
    static LaurentPoly variable(std::size_t nvars, std::size_t index);

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] Rational coefficient(const Exponent& e) const;
    /// Constant term, i.e. coefficient of the zero exponent.
    [[nodiscard]] Rational constant_term() const;

    void add_term(const Exponent& e, const Rational& c);

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rational& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
    friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

    /// Multiplicative inverse; only monomials are units.
    [[nodiscard]] LaurentPoly monomial_inverse() const;
    [[nodiscard]] LaurentPoly pow(int n) const;
    [[nodiscard]] LaurentPoly derivative(std::size_t var) const;

    /// Keeps the terms whose exponent satisfies `keep`.
    [[nodiscard]] LaurentPoly filter(const std::function<bool(const Exponent&)>& keep) const;

    /// Pads or reorders variables: new variable i takes old variable map[i]
    /// (or is absent when map[i] < 0). Old variables not listed must not occur.
    [[nodiscard]] LaurentPoly remap(std::span<const int> map, std::size_t new_nvars) const;

    [[nodiscard]] std::string str(std::span<const std::string> names = {}) const;

private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

/// Substitutes images[i] for variable i. Negative powers require the image to
/// be a monomial (a unit in the target Laurent ring).
[[nodiscard]] LaurentPoly substitute(const LaurentPoly& p, std::span<const LaurentPoly> images);

/// All exponent vectors in the box [lo_i, hi_i], in graded-lex order.
[[nodiscard]] std::vector<Exponent> monomial_window(std::span<const int> lo, std::span<const int> hi);

}  // namespace nbhd::exact
