#include "nbhd/geometry/transition.hpp"

#include "nbhd/error.hpp"

namespace nbhd::geom {

PolyMatrix conormal_part(const std::vector<LaurentPoly>& normal_images, const Truncation& tr) {
    PolyMatrix c(tr.q, tr.q, tr.nvars());
    for (std::size_t a = 0; a < tr.q; ++a) {
        if (!t_part(normal_images[a], tr.p, 0).is_zero()) {
            throw NotAdapted("normal coordinate " + std::to_string(a) + " does not vanish on X: " +
                             normal_images[a].str());
        }
        const LaurentPoly linear = t_part(normal_images[a], tr.p, 1);
        for (const auto& [e, coef] : linear.terms()) {
            Exponent base = e;
            std::size_t which = 0;
            for (std::size_t i = tr.p; i < e.size(); ++i) {
                if (e[i] == 1) which = i - tr.p;
                base[i] = 0;
            }
            c(a, which).add_term(base, coef);
        }
    }
    return c;
}

FilteredAutomorphism linear_model(const std::vector<LaurentPoly>& base_map, const PolyMatrix& conormal,
                                  const Truncation& tr, std::size_t e) {
    FilteredAutomorphism lam = FilteredAutomorphism::identity(tr, e);
    lam.base_images = base_map;
    for (std::size_t a = 0; a < tr.q; ++a) {
        LaurentPoly img(tr.nvars());
        for (std::size_t c = 0; c < tr.q; ++c) {
            img += conormal(a, c) * LaurentPoly::variable(tr.nvars(), tr.p + c);
        }
        lam.normal_images[a] = truncate(img, tr);
    }
    return lam;
}

InducedTransition induced_transition(const ChartTransition& forward, const ChartTransition& backward,
                                     const Truncation& tr, std::size_t e) {
    if (forward.images.size() != tr.nvars() || backward.images.size() != tr.nvars()) {
        throw DimensionMismatch("transition needs p + q images");
    }
    InducedTransition out;
    for (std::size_t b = 0; b < tr.p; ++b) out.base_map.push_back(t_part(forward.images[b], tr.p, 0));
    const std::vector<LaurentPoly> normal(forward.images.begin() + static_cast<long>(tr.p), forward.images.end());
    out.conormal = conormal_part(normal, tr);
    try {
        (void)inverse(out.conormal, tr);
    } catch (const NonInvertibleSubstitution&) {
        throw NotAdapted("conormal transition is not invertible");
    }
    const FilteredAutomorphism lam = linear_model(out.base_map, out.conormal, tr, e);
    std::vector<LaurentPoly> lam_images = lam.base_images;
    lam_images.insert(lam_images.end(), lam.normal_images.begin(), lam.normal_images.end());
    out.unipotent = FilteredAutomorphism::identity(tr, e);
    for (std::size_t x = 0; x < tr.nvars(); ++x) {
        LaurentPoly img = substitute_truncated(backward.images[x], lam_images, tr);
        if (x < tr.p) {
            out.unipotent.base_images[x] = std::move(img);
        } else {
            out.unipotent.normal_images[x - tr.p] = std::move(img);
        }
    }
    if (!out.unipotent.is_unipotent()) {
        throw NotAdapted("transition pair does not reduce to a unipotent map; are the two directions inverse?");
    }
    return out;
}

ChartNormalization chart_normalize(const ChartRing& ring, const std::vector<LaurentPoly>& normal_coords, int k) {
    if (k < 0) throw UnsupportedOrder("negative order");
    if (normal_coords.size() != ring.q()) throw DimensionMismatch("one adapted coordinate per normal variable");
    ChartNormalization n;
    n.tr = ring.truncation(k);
    for (int u = 0; u <= k; ++u) n.basis.push_back(sym_basis(ring.q(), u));
    n.conormal = conormal_part(normal_coords, n.tr);
    const PolyMatrix c_inv = [&] {
        try {
            return inverse(n.conormal, n.tr);
        } catch (const NonInvertibleSubstitution&) {
            throw NotAdapted("adapted coordinates have singular linear part");
        }
    }();
    n.coordinates = FilteredAutomorphism::identity(n.tr, 0);
    for (std::size_t a = 0; a < ring.q(); ++a) n.coordinates.normal_images[a] = truncate(normal_coords[a], n.tr);
    // coordinates = unipotent o linear, so unipotent = coordinates o linear^{-1}.
    std::vector<LaurentPoly> ident;
    for (std::size_t b = 0; b < ring.p(); ++b) ident.push_back(LaurentPoly::variable(n.tr.nvars(), b));
    n.unipotent = compose(n.coordinates, linear_model(ident, c_inv, n.tr));
    if (!n.unipotent.is_unipotent()) throw NotAdapted("normalization is not filtered");
    return n;
}

FilteredAutomorphism normalization_discrepancy(const ChartNormalization& n1, const ChartNormalization& n2) {
    if (n1.tr != n2.tr) throw DimensionMismatch("normalizations of different charts or orders");
    std::vector<LaurentPoly> ident;
    for (std::size_t b = 0; b < n1.tr.p; ++b) ident.push_back(LaurentPoly::variable(n1.tr.nvars(), b));
    const PolyMatrix c1_inv = inverse(n1.conormal, n1.tr);
    // N1^{-1} = linear^{-1} o unipotent^{-1}
    const FilteredAutomorphism n1_inv = compose(linear_model(ident, c1_inv, n1.tr), inverse(n1.unipotent));
    return compose(n2.coordinates, n1_inv);
}

ModuleElement hochschild_defect(const ModuleMap& phi, const LaurentPoly& x, const ModuleElement& m,
                                const Truncation& tr) {
    return sub(scale(x, phi(m), tr), phi(scale(x, m, tr)));
}

ModuleElement hochschild_identity(const ModuleMap& phi, const LaurentPoly& x, const LaurentPoly& y,
                                  const ModuleElement& m, const Truncation& tr) {
    ModuleElement out = hochschild_defect(phi, mul(x, y, tr), m, tr);
    out = sub(out, scale(x, hochschild_defect(phi, y, m, tr), tr));
    return sub(out, hochschild_defect(phi, x, scale(y, m, tr), tr));
}

}  // namespace nbhd::geom
