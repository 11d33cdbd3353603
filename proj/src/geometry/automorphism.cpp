#include "nbhd/geometry/automorphism.hpp"

#include "nbhd/error.hpp"

#include <cstdlib>
#include <map>

namespace nbhd::geom {

namespace {

bool raises_by(const LaurentPoly& f, const LaurentPoly& base, std::size_t p, int by) {
    return min_t_degree(f - base, p) >= by;
}

}  // namespace

FilteredAutomorphism FilteredAutomorphism::identity(const Truncation& tr, std::size_t e) {
    FilteredAutomorphism a;
    a.tr = tr;
    a.e = e;
    for (std::size_t b = 0; b < tr.p; ++b) a.base_images.push_back(LaurentPoly::variable(tr.nvars(), b));
    for (std::size_t i = 0; i < tr.q; ++i) {
        a.normal_images.push_back(truncate(LaurentPoly::variable(tr.nvars(), tr.p + i), tr));
    }
    a.module_matrix = PolyMatrix::identity(e, tr.nvars());
    return a;
}

LaurentPoly substitute_truncated(const LaurentPoly& f, const std::vector<LaurentPoly>& images,
                                 const Truncation& tr) {
    if (images.size() != f.nvars()) throw DimensionMismatch("substitution needs one image per variable");
    std::map<std::pair<std::size_t, int>, LaurentPoly> cache;
    std::map<std::size_t, LaurentPoly> inverses;
    auto power = [&](std::size_t var, int n) -> const LaurentPoly& {
        auto it = cache.find({var, n});
        if (it != cache.end()) return it->second;
        const LaurentPoly* base = &images[var];
        if (n < 0) {
            auto inv = inverses.find(var);
            if (inv == inverses.end()) inv = inverses.emplace(var, inverse(images[var], tr)).first;
            base = &inv->second;
        }
        LaurentPoly val = truncate(*base, tr);
        for (int i = 1; i < std::abs(n); ++i) val = mul(val, *base, tr);
        return cache.emplace(std::make_pair(var, n), std::move(val)).first->second;
    };
    LaurentPoly out(tr.nvars());
    for (const auto& [e, c] : f.terms()) {
        LaurentPoly term = LaurentPoly::constant(tr.nvars(), c);
        for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
            if (e[i] == 0) continue;
            term = mul(term, power(i, e[i]), tr);
        }
        out += term;
    }
    return out;
}

LaurentPoly FilteredAutomorphism::apply(const LaurentPoly& f) const {
    std::vector<LaurentPoly> images = base_images;
    images.insert(images.end(), normal_images.begin(), normal_images.end());
    return substitute_truncated(f, images, tr);
}

PolyMatrix FilteredAutomorphism::apply_entrywise(const PolyMatrix& m) const {
    return m.map([this](const LaurentPoly& f) { return apply(f); });
}

ModuleElement FilteredAutomorphism::apply(const ModuleElement& v) const {
    if (v.size() != e) throw DimensionMismatch("module element rank differs from automorphism rank");
    ModuleElement w;
    for (const auto& f : v) w.push_back(apply(f));
    return mul(module_matrix, w, tr);
}

bool FilteredAutomorphism::is_unipotent() const {
    for (std::size_t b = 0; b < tr.p; ++b) {
        if (!raises_by(base_images[b], truncate(LaurentPoly::variable(tr.nvars(), b), tr), tr.p, 1)) return false;
    }
    for (std::size_t a = 0; a < tr.q; ++a) {
        if (!raises_by(normal_images[a], truncate(LaurentPoly::variable(tr.nvars(), tr.p + a), tr), tr.p, 2)) return false;
    }
    return min_t_degree(module_matrix - PolyMatrix::identity(e, tr.nvars()), tr.p) >= 1;
}

FilteredAutomorphism compose(const FilteredAutomorphism& a, const FilteredAutomorphism& b) {
    if (a.tr != b.tr || a.e != b.e) throw DimensionMismatch("composing automorphisms of different shape");
    FilteredAutomorphism out = a;
    for (std::size_t i = 0; i < a.tr.p; ++i) out.base_images[i] = a.apply(b.base_images[i]);
    for (std::size_t i = 0; i < a.tr.q; ++i) out.normal_images[i] = a.apply(b.normal_images[i]);
    out.module_matrix = mul(a.module_matrix, a.apply_entrywise(b.module_matrix), a.tr);
    return out;
}

PairDerivation log_unipotent(const FilteredAutomorphism& phi) {
    if (!phi.is_unipotent()) throw NotUnipotent("automorphism is not unipotent on the associated graded");
    const Truncation& tr = phi.tr;
    PairDerivation d = PairDerivation::zero(tr, phi.e);
    // (Phi - id) raises t-degree, so the series stops after tr.order terms.
    auto log_series = [&](const LaurentPoly& x) {
        LaurentPoly acc(tr.nvars());
        LaurentPoly cur = x;
        for (int n = 1; n <= tr.order; ++n) {
            cur = phi.apply(cur) - cur;
            if (cur.is_zero()) break;
            acc += cur * Rational(n % 2 == 1 ? 1 : -1, n);
        }
        return acc;
    };
    for (std::size_t b = 0; b < tr.p; ++b) d.base_images[b] = log_series(LaurentPoly::variable(tr.nvars(), b));
    for (std::size_t a = 0; a < tr.q; ++a) {
        d.normal_images[a] = log_series(LaurentPoly::variable(tr.nvars(), tr.p + a));
    }
    for (std::size_t r = 0; r < phi.e; ++r) {
        ModuleElement acc(phi.e, LaurentPoly(tr.nvars()));
        ModuleElement cur = basis_vector(phi.e, r, tr.nvars());
        for (int n = 1; n <= tr.order; ++n) {
            cur = sub(phi.apply(cur), cur);
            if (is_zero(cur)) break;
            for (std::size_t i = 0; i < phi.e; ++i) acc[i] += cur[i] * Rational(n % 2 == 1 ? 1 : -1, n);
        }
        for (std::size_t i = 0; i < phi.e; ++i) d.module_matrix(i, r) = acc[i];
    }
    return d;
}

FilteredAutomorphism exp_nilpotent(const PairDerivation& d) {
    if (d.min_degree() < 1) throw NotUnipotent("derivation does not raise the t-filtration");
    const Truncation& tr = d.tr;
    FilteredAutomorphism out = FilteredAutomorphism::identity(tr, d.e);
    auto exp_series = [&](const LaurentPoly& x) {
        LaurentPoly acc = truncate(x, tr);
        LaurentPoly cur = x;
        Rational fact(1);
        for (int n = 1; n <= tr.order; ++n) {
            cur = d.apply(cur);
            if (cur.is_zero()) break;
            fact *= Rational(n);
            acc += cur * fact.inverse();
        }
        return acc;
    };
    for (std::size_t b = 0; b < tr.p; ++b) out.base_images[b] = exp_series(out.base_images[b]);
    for (std::size_t a = 0; a < tr.q; ++a) out.normal_images[a] = exp_series(out.normal_images[a]);
    for (std::size_t r = 0; r < d.e; ++r) {
        ModuleElement cur = basis_vector(d.e, r, tr.nvars());
        ModuleElement acc = cur;
        Rational fact(1);
        for (int n = 1; n <= tr.order; ++n) {
            cur = d.apply(cur);
            if (is_zero(cur)) break;
            fact *= Rational(n);
            for (std::size_t i = 0; i < d.e; ++i) acc[i] += cur[i] * fact.inverse();
        }
        for (std::size_t i = 0; i < d.e; ++i) out.module_matrix(i, r) = acc[i];
    }
    return out;
}

FilteredAutomorphism inverse(const FilteredAutomorphism& phi) {
    PairDerivation d = log_unipotent(phi);
    d *= Rational(-1);
    return exp_nilpotent(d);
}

PairDerivation bch2(const PairDerivation& x, const PairDerivation& y) {
    const PairDerivation x1 = x.graded(1);
    const PairDerivation y1 = y.graded(1);
    PairDerivation out = x1 + y1 + x.graded(2) + y.graded(2);
    out += Rational(1, 2) * commutator(x1, y1).graded(2);
    return out;
}

}  // namespace nbhd::geom
