#include "nbhd/cech/obstruction.hpp"

#include "nbhd/cech/parallel.hpp"
#include "nbhd/error.hpp"
#include "nbhd/geometry/transition.hpp"

namespace nbhd::cech {

using geom::PairDerivation;

namespace {

std::size_t edge_index(const CoverNerve& nerve, std::size_t i, std::size_t j) {
    const auto idx = nerve.index({i, j});
    if (!idx) throw FrameMismatch("missing overlap (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return *idx;
}

PolyMatrix substitute_matrix(const PolyMatrix& m, const std::vector<LaurentPoly>& images, const Truncation& tr) {
    return m.map([&](const LaurentPoly& f) { return geom::substitute_truncated(f, images, tr); });
}

PairDerivation function_part(const PairDerivation& d) {
    PairDerivation out = d;
    out.module_matrix = PolyMatrix(d.e, d.e, d.tr.nvars());
    return out;
}

PairDerivation tangential_part(const PairDerivation& d) {
    PairDerivation out = PairDerivation::zero(d.tr, d.e);
    out.base_images = d.base_images;
    return out;
}

void retruncate(geom::FilteredAutomorphism& a, const Truncation& tr) {
    a.tr = tr;
    for (auto& f : a.base_images) f = geom::truncate(f, tr);
    for (auto& f : a.normal_images) f = geom::truncate(f, tr);
    a.module_matrix = geom::truncate(a.module_matrix, tr);
}

}  // namespace

EdgeMatrices initial_transitions(const CoverNerve& nerve, const BundleData& bundle) {
    EdgeMatrices G;
    for (const auto& s : nerve.of_degree(1)) G.push_back(bundle.transition(s.charts[0], s.charts[1]));
    return G;
}

CechCochain direct_obstruction(const CoverNerve& nerve, const BundleData& bundle, const EdgeMatrices& G, int k,
                               std::size_t workers) {
    const Truncation tr = nerve.tr.with_order(k);
    CechCochain out = CechCochain::zero(nerve, bundle.e, 2, ValueKind::End, k);
    const auto& tri = nerve.of_degree(2);
    out.values = parallel_map<PolyMatrix>(tri.size(), workers, [&](std::size_t t) {
        const std::size_t i = tri[t].charts[0], j = tri[t].charts[1], h = tri[t].charts[2];
        const PolyMatrix& gij = G.at(edge_index(nerve, i, j));
        const PolyMatrix& gjh = G.at(edge_index(nerve, j, h));
        const PolyMatrix& gih = G.at(edge_index(nerve, i, h));
        const PolyMatrix moved = substitute_matrix(gjh, nerve.transition(i, j).images, tr);
        const PolyMatrix defect = geom::mul(gij, moved, tr) - geom::truncate(gih, tr);
        for (int v = 0; v < k; ++v) {
            if (!geom::t_part(defect, tr.p, v).is_zero()) {
                throw NotClosed("transition cocycle fails in t-degree " + std::to_string(v) + " on triple (" +
                                std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(h) + ")");
            }
        }
        return geom::t_part(defect, tr.p, k) * inverse_frame(nerve, bundle, i, h);
    });
    return out;
}

void apply_correction(const CoverNerve& nerve, const BundleData& bundle, EdgeMatrices& G, const CechCochain& x) {
    const auto& edges = nerve.of_degree(1);
    for (std::size_t s = 0; s < edges.size(); ++s) {
        G[s] += x.values.at(s) * bundle.transition(edges[s].charts[0], edges[s].charts[1]);
    }
}

AtiyahCocycle atiyah_cocycle(const CoverNerve& nerve, const BundleData& bundle) {
    AtiyahCocycle at;
    for (const auto& s : nerve.of_degree(1)) {
        const std::size_t i = s.charts[0], j = s.charts[1];
        const auto& gi = bundle.connections.at(i).gamma;
        const auto gj = connection_in_frame(nerve, bundle, i, j).gamma;
        std::vector<PolyMatrix> v;
        for (std::size_t b = 0; b < nerve.tr.p; ++b) v.push_back(gi[b] - gj[b]);
        at.values.push_back(std::move(v));
    }
    return at;
}

std::vector<PolyMatrix> transport_form(const CoverNerve& nerve, const BundleData& bundle, std::size_t i, std::size_t j,
                                       const std::vector<PolyMatrix>& form) {
    const auto& jac = nerve.linear_model(i, j).jacobian;
    const PolyMatrix& g = bundle.transition(i, j);
    const PolyMatrix gi = inverse_frame(nerve, bundle, i, j);
    std::vector<PolyMatrix> moved;
    for (const auto& m : form) moved.push_back(g * linear_substitute(nerve, i, j, m) * gi);
    std::vector<PolyMatrix> out;
    for (std::size_t c = 0; c < nerve.tr.p; ++c) {
        PolyMatrix acc(bundle.e, bundle.e, nerve.tr.nvars());
        for (std::size_t b = 0; b < nerve.tr.p; ++b) acc += jac(c, b) * moved[b];
        out.push_back(std::move(acc));
    }
    return out;
}

CechCochain atiyah_trace(const CoverNerve& nerve, const BundleData& bundle, const AtiyahCocycle& at) {
    CechCochain out = CechCochain::zero(nerve, bundle.e, 1, ValueKind::Form, 0);
    for (std::size_t s = 0; s < at.values.size(); ++s) {
        for (std::size_t b = 0; b < nerve.tr.p; ++b) out.values[s](b, 0) = at.values[s][b].trace();
    }
    return out;
}

std::vector<LaurentPoly> EdgeComponents::a(int v) const {
    std::vector<LaurentPoly> out;
    for (std::size_t b = 0; b < xi.tr.p; ++b) out.push_back(xi.a(v, b));
    return out;
}

CechCochain Components::m_cochain(const CoverNerve& nerve, std::size_t e, int v) const {
    CechCochain c = CechCochain::zero(nerve, e, 1, ValueKind::End, v);
    for (std::size_t s = 0; s < edges.size(); ++s) {
        const auto it = edges[s].m.find(v);
        if (it != edges[s].m.end()) c.values[s] = it->second;
    }
    return c;
}

PolyMatrix contract(const std::vector<LaurentPoly>& a, const std::vector<PolyMatrix>& form) {
    PolyMatrix acc(form.at(0).rows(), form.at(0).cols(), form.at(0).nvars());
    for (std::size_t b = 0; b < a.size(); ++b) acc += a[b] * form.at(b);
    return acc;
}

geom::FilteredAutomorphism normalized_transition(const CoverNerve& nerve, const BundleData& bundle, std::size_t edge,
                                                 const PolyMatrix& G, int k) {
    const Truncation tr = nerve.tr.with_order(k);
    const auto& s = nerve.of_degree(1).at(edge);
    const std::size_t i = s.charts[0], j = s.charts[1];
    const auto it = geom::induced_transition(nerve.transition(i, j), nerve.transition(j, i), tr, bundle.e);
    geom::FilteredAutomorphism xi = geom::inverse(it.unipotent);
    const PolyMatrix lifted_g = xi.apply_entrywise(bundle.transition(i, j));
    xi.module_matrix = geom::mul(geom::truncate(G, tr), geom::inverse(lifted_g, tr), tr);
    return xi;
}

Components extract_components(const CoverNerve& nerve, const BundleData& bundle, const EdgeMatrices& G, int k,
                              std::size_t workers) {
    Components comps;
    comps.order = k;
    const auto& edges = nerve.of_degree(1);
    const std::size_t n = nerve.tr.nvars();
    comps.edges = parallel_map<EdgeComponents>(edges.size(), workers, [&](std::size_t s) {
        EdgeComponents ec;
        ec.xi = geom::log_unipotent(normalized_transition(nerve, bundle, s, G.at(s), k));
        ec.nabla = connection_in_frame(nerve, bundle, edges[s].charts[0], edges[s].charts[1]);
        for (int v = 1; v <= k; ++v) {
            const PairDerivation piece = ec.xi.graded(v);
            const PairDerivation lifted = geom::leibniz_extend(tangential_part(piece), ec.nabla);
            const PairDerivation rest = piece - lifted;
            for (std::size_t r = 0; r < bundle.e; ++r) {
                const auto unit = geom::basis_vector(bundle.e, r, n);
                const auto at_unit = rest.apply(unit);
                for (std::size_t b = 0; b < nerve.tr.p; ++b) {
                    const LaurentPoly ub = LaurentPoly::variable(n, b);
                    if (rest.apply(geom::scale(ub, unit, piece.tr)) != geom::scale(ub, at_unit, piece.tr)) {
                        throw NotOLinear("M^" + std::to_string(v) + " - a^" + std::to_string(v) +
                                         " nabla is not linear over the base on overlap " + std::to_string(s));
                    }
                }
            }
            ec.m[v] = geom::t_part(rest.module_matrix, nerve.tr.p, v);
        }
        return ec;
    });
    return comps;
}

PairDerivation transport_derivation(const CoverNerve& nerve, const BundleData& bundle, std::size_t i, std::size_t j,
                                    const PairDerivation& x) {
    geom::FilteredAutomorphism lam = frame_model(nerve, bundle, i, j);
    geom::FilteredAutomorphism back = frame_model_inverse(nerve, bundle, i, j);
    retruncate(lam, x.tr);
    retruncate(back, x.tr);
    PairDerivation out = PairDerivation::zero(x.tr, x.e);
    for (std::size_t b = 0; b < x.tr.p; ++b) out.base_images[b] = lam.apply(x.apply(back.base_images[b]));
    for (std::size_t a = 0; a < x.tr.q; ++a) out.normal_images[a] = lam.apply(x.apply(back.normal_images[a]));
    for (std::size_t r = 0; r < x.e; ++r) {
        const auto col = lam.apply(x.apply(geom::column(back.module_matrix, r)));
        for (std::size_t c = 0; c < x.e; ++c) out.module_matrix(c, r) = col[c];
    }
    return out;
}

std::vector<PairDerivation> bch_cocycle_defect(const CoverNerve& nerve, const BundleData& bundle,
                                               const Components& comps) {
    std::vector<PairDerivation> out;
    for (const auto& t : nerve.of_degree(2)) {
        const std::size_t i = t.charts[0], j = t.charts[1], h = t.charts[2];
        const auto& xij = comps.edges.at(edge_index(nerve, i, j)).xi;
        const auto& xjh = comps.edges.at(edge_index(nerve, j, h)).xi;
        const auto& xih = comps.edges.at(edge_index(nerve, i, h)).xi;
        out.push_back(xih.up_to(2) - geom::bch2(xij, transport_derivation(nerve, bundle, i, j, xjh)));
    }
    return out;
}

CechCochain first_order_obstruction(const CoverNerve& nerve, const BundleData& bundle, const Components& comps,
                                    const AtiyahCocycle& at) {
    CechCochain out = CechCochain::zero(nerve, bundle.e, 2, ValueKind::End, 1);
    const auto& tri = nerve.of_degree(2);
    for (std::size_t t = 0; t < tri.size(); ++t) {
        const std::size_t i = tri[t].charts[0], j = tri[t].charts[1], h = tri[t].charts[2];
        const auto moved = transport_form(nerve, bundle, i, j, at.values.at(edge_index(nerve, j, h)));
        out.values[t] = contract(comps.edges.at(edge_index(nerve, i, j)).a(1), moved);
    }
    return out;
}

CechCochain second_order_obstruction(const CoverNerve& nerve, const BundleData& bundle, const Components& comps,
                                     const AtiyahCocycle& at) {
    for (std::size_t c = 0; c < bundle.connections.size(); ++c) {
        if (!geom::is_flat(bundle.connections[c])) {
            throw NotFlat("local connection on chart " + std::to_string(c) + " has curvature");
        }
    }
    if (comps.order < 2) throw UnsupportedOrder("second-order formula needs components to order 2");
    const std::size_t p = nerve.tr.p;
    CechCochain out = CechCochain::zero(nerve, bundle.e, 2, ValueKind::End, 2);
    const auto& tri = nerve.of_degree(2);
    for (std::size_t t = 0; t < tri.size(); ++t) {
        const std::size_t i = tri[t].charts[0], j = tri[t].charts[1], h = tri[t].charts[2];
        const auto& eij = comps.edges.at(edge_index(nerve, i, j));
        const auto& ejh = comps.edges.at(edge_index(nerve, j, h));
        const auto moved_at = transport_form(nerve, bundle, i, j, at.values.at(edge_index(nerve, j, h)));
        const geom::Connection nabla_h = connection_in_frame(nerve, bundle, i, h);
        const PairDerivation xjh = transport_derivation(nerve, bundle, i, j, ejh.xi);
        const PolyMatrix A = eij.m.at(1) + contract(eij.a(1), moved_at);
        const PolyMatrix B = transport(nerve, bundle, i, j, ValueKind::End, ejh.m.at(1));
        const PairDerivation s1 = geom::leibniz_extend(function_part(eij.xi.graded(1)), nabla_h);
        const PairDerivation s2 = geom::leibniz_extend(function_part(xjh.graded(1)), nabla_h);
        const Truncation& tr = eij.xi.tr;
        PolyMatrix f = contract(eij.a(2), moved_at);
        f += Rational(1, 2) * exact::commutator(A, B);
        f += Rational(1, 2) * geom::commutator(s1, geom::endomorphism(tr, B)).module_matrix;
        f -= Rational(1, 2) * geom::commutator(s2, geom::endomorphism(tr, A)).module_matrix;
        out.values[t] = geom::t_part(f, p, 2);
    }
    return out;
}

AbelianizedCochain abelianized_obstruction(const CoverNerve& nerve, const BundleData& bundle, const Components& comps,
                                           const AtiyahCocycle& at) {
    AbelianizedCochain out;
    out.linear = first_order_obstruction(nerve, bundle, comps, at);
    out.trace = CechCochain::zero(nerve, bundle.e, 2, ValueKind::Scalar, 2);
    const auto& tri = nerve.of_degree(2);
    for (std::size_t t = 0; t < tri.size(); ++t) {
        const std::size_t i = tri[t].charts[0], j = tri[t].charts[1], h = tri[t].charts[2];
        const auto moved = transport_form(nerve, bundle, i, j, at.values.at(edge_index(nerve, j, h)));
        const auto a2 = comps.edges.at(edge_index(nerve, i, j)).a(2);
        LaurentPoly acc(nerve.tr.nvars());
        for (std::size_t b = 0; b < a2.size(); ++b) acc += a2[b] * moved[b].trace();
        out.trace.values[t](0, 0) = acc;
    }
    return out;
}

AbelianizedCochain abelianized_differential(const CoverNerve& nerve, const BundleData& bundle,
                                            const AbelianizedCochain& y) {
    AbelianizedCochain out;
    out.linear = cech_differential(nerve, bundle, y.linear);
    out.trace = cech_differential(nerve, bundle, y.trace);
    const Truncation tr2 = nerve.tr.with_order(2);
    const auto& tri = nerve.of_degree(2);
    for (std::size_t t = 0; t < tri.size(); ++t) {
        const std::size_t i = tri[t].charts[0], j = tri[t].charts[1], h = tri[t].charts[2];
        const LaurentPoly tr1 = y.linear.values.at(edge_index(nerve, j, h)).trace();
        const LaurentPoly moved = geom::substitute_truncated(tr1, nerve.transition(i, j).images, tr2);
        out.trace.values[t](0, 0) += geom::t_part(moved, nerve.tr.p, 2);
    }
    return out;
}

}  // namespace nbhd::cech
