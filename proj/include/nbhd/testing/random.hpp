#pragma once

// Seeded random instance generators shared by the unit tests, the acceptance
// binary and the lab commands of the CLI.

#include "nbhd/exact/laurent.hpp"
#include "nbhd/exact/poly_matrix.hpp"
#include "nbhd/geometry/automorphism.hpp"

#include <random>
#include <vector>

namespace nbhd::testing {

using exact::Exponent;
using exact::LaurentPoly;
using exact::PolyMatrix;
using exact::Rational;

inline Rational random_rational(std::mt19937& rng, int num_range = 3, int den_range = 2) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return Rational(num(rng), den(rng));
}

inline Rational random_nonzero_rational(std::mt19937& rng, int num_range = 3, int den_range = 2) {
    Rational r;
    do {
        r = random_rational(rng, num_range, den_range);
    } while (r.is_zero());
    return r;
}

/// Random polynomial with exponents in [lo[i], hi[i]].
inline LaurentPoly random_poly(std::mt19937& rng, const std::vector<int>& lo, const std::vector<int>& hi,
                               int max_terms = 4) {
    LaurentPoly p(lo.size());
    std::uniform_int_distribution<int> count(0, max_terms);
    const int n = count(rng);
    for (int t = 0; t < n; ++t) {
        Exponent e(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            e[i] = std::uniform_int_distribution<int>(lo[i], hi[i])(rng);
        }
        p.add_term(e, random_rational(rng));
    }
    return p;
}

/// Random polynomial in p base and q normal variables whose terms have
/// t-degree in [tmin, tmax] and base exponents in [blo, bhi].
inline LaurentPoly random_graded_poly(std::mt19937& rng, std::size_t p, std::size_t q, int tmin, int tmax, int blo,
                                      int bhi, int max_terms = 3) {
    LaurentPoly out(p + q);
    if (tmin > tmax || (q == 0 && tmin > 0)) return out;
    const int n = std::uniform_int_distribution<int>(0, max_terms)(rng);
    for (int k = 0; k < n; ++k) {
        Exponent e(p + q, 0);
        for (std::size_t b = 0; b < p; ++b) e[b] = std::uniform_int_distribution<int>(blo, bhi)(rng);
        int deg = std::uniform_int_distribution<int>(tmin, tmax)(rng);
        if (q == 0) deg = 0;
        for (int d = 0; d < deg; ++d) {
            e[p + std::uniform_int_distribution<std::size_t>(0, q - 1)(rng)] += 1;
        }
        out.add_term(e, random_rational(rng));
    }
    return out;
}

/// Random derivation raising the t-filtration by at least one.
inline geom::PairDerivation random_nilpotent_derivation(std::mt19937& rng, const geom::Truncation& tr, std::size_t e,
                                                        int blo = -1, int bhi = 1) {
    auto d = geom::PairDerivation::zero(tr, e);
    for (auto& f : d.base_images) f = random_graded_poly(rng, tr.p, tr.q, 1, tr.order, blo, bhi);
    for (auto& f : d.normal_images) f = random_graded_poly(rng, tr.p, tr.q, 2, tr.order, blo, bhi);
    for (std::size_t r = 0; r < e; ++r) {
        for (std::size_t c = 0; c < e; ++c) {
            d.module_matrix(r, c) = random_graded_poly(rng, tr.p, tr.q, 1, tr.order, blo, bhi, 2);
        }
    }
    return d;
}

/// Random unipotent automorphism given directly by generator images.
inline geom::FilteredAutomorphism random_unipotent(std::mt19937& rng, const geom::Truncation& tr, std::size_t e,
                                                   int blo = -1, int bhi = 1) {
    auto a = geom::FilteredAutomorphism::identity(tr, e);
    for (auto& f : a.base_images) f += random_graded_poly(rng, tr.p, tr.q, 1, tr.order, blo, bhi);
    for (auto& f : a.normal_images) f += random_graded_poly(rng, tr.p, tr.q, 2, tr.order, blo, bhi);
    for (std::size_t r = 0; r < e; ++r) {
        for (std::size_t c = 0; c < e; ++c) {
            a.module_matrix(r, c) += random_graded_poly(rng, tr.p, tr.q, 1, tr.order, blo, bhi, 2);
        }
    }
    return a;
}

}  // namespace nbhd::testing
