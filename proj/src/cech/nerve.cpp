#include "nbhd/cech/nerve.hpp"

#include "nbhd/error.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace nbhd::cech {

namespace {

std::string pair_name(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Base variables carrying a negative exponent somewhere in f.
void negative_vars(const LaurentPoly& f, std::size_t p, std::set<std::size_t>& out) {
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t b = 0; b < p; ++b) {
            if (e[b] < 0) out.insert(b);
        }
    }
}

// Chart-j variables in `vars` must stay invertible in chart-i coordinates.
void pull_back_inverted(const LinearModel& lin, const std::vector<std::size_t>& vars, std::size_t p,
                        std::set<std::size_t>& out) {
    for (std::size_t v : vars) {
        const LaurentPoly& f = lin.base_map.at(v);
        if (!f.is_monomial()) {
            throw FrameMismatch("inverted coordinate maps to a non-monomial " + f.str());
        }
        const Exponent& e = f.terms().begin()->first;
        for (std::size_t b = 0; b < p; ++b) {
            if (e[b] != 0) out.insert(b);
        }
    }
}

LinearModel make_linear(const geom::ChartTransition& t, const Truncation& tr) {
    LinearModel lin;
    const std::size_t n = tr.nvars();
    for (std::size_t b = 0; b < tr.p; ++b) lin.base_map.push_back(geom::t_part(t.images.at(b), tr.p, 0));
    const std::vector<LaurentPoly> normal(t.images.begin() + static_cast<long>(tr.p), t.images.end());
    lin.conormal = geom::conormal_part(normal, tr);
    lin.images = lin.base_map;
    for (std::size_t a = 0; a < tr.q; ++a) {
        LaurentPoly img(n);
        for (std::size_t c = 0; c < tr.q; ++c) img += lin.conormal(a, c) * LaurentPoly::variable(n, tr.p + c);
        lin.images.push_back(std::move(img));
    }
    lin.jacobian = PolyMatrix(tr.p, tr.p, n);
    for (std::size_t c = 0; c < tr.p; ++c) {
        for (std::size_t b = 0; b < tr.p; ++b) lin.jacobian(c, b) = lin.base_map[b].derivative(c);
    }
    return lin;
}

std::vector<std::size_t> to_vector(const std::set<std::size_t>& s) { return {s.begin(), s.end()}; }

bool single_monomial_rows(const PolyMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        int nonzero = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c).is_zero()) continue;
            if (!m(r, c).is_monomial()) return false;
            ++nonzero;
        }
        if (nonzero != 1) return false;
    }
    return true;
}

}  // namespace

std::size_t CoverNerve::count(int degree) const { return of_degree(degree).size(); }

const std::vector<Simplex>& CoverNerve::of_degree(int degree) const {
    static const std::vector<Simplex> empty;
    if (degree < 0 || static_cast<std::size_t>(degree) >= simplices.size()) return empty;
    return simplices[static_cast<std::size_t>(degree)];
}

std::optional<std::size_t> CoverNerve::index(const std::vector<std::size_t>& ch) const {
    if (ch.empty()) return std::nullopt;
    const auto& list = of_degree(static_cast<int>(ch.size()) - 1);
    const auto it = std::lower_bound(list.begin(), list.end(), ch,
                                     [](const Simplex& s, const std::vector<std::size_t>& key) { return s.charts < key; });
    if (it == list.end() || it->charts != ch) return std::nullopt;
    return static_cast<std::size_t>(it - list.begin());
}

const geom::ChartTransition& CoverNerve::transition(std::size_t i, std::size_t j) const {
    const auto it = transitions.find({i, j});
    if (it == transitions.end()) throw FrameMismatch("no transition for overlap " + pair_name(i, j));
    return it->second;
}

const LinearModel& CoverNerve::linear_model(std::size_t i, std::size_t j) const {
    const auto it = linear.find({i, j});
    if (it == linear.end()) throw FrameMismatch("no transition for overlap " + pair_name(i, j));
    return it->second;
}

bool CoverNerve::in_ring(const Simplex& s, const LaurentPoly& f) const {
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t b = 0; b < tr.p; ++b) {
            if (e[b] < 0 && !std::binary_search(s.inverted.begin(), s.inverted.end(), b)) return false;
        }
        for (std::size_t a = tr.p; a < e.size(); ++a) {
            if (e[a] < 0) return false;
        }
    }
    return true;
}

CoverNerve build_nerve(std::vector<geom::ChartRing> charts, std::map<ChartPair, geom::ChartTransition> transitions,
                       int order) {
    if (charts.empty()) throw DimensionMismatch("cover needs at least one chart");
    CoverNerve nerve;
    const std::size_t p = charts[0].p(), q = charts[0].q();
    for (const auto& c : charts) {
        if (c.p() != p || c.q() != q) throw DimensionMismatch("charts disagree on (p, q)");
    }
    nerve.tr = Truncation{p, q, order, std::nullopt};
    nerve.charts = std::move(charts);
    nerve.transitions = std::move(transitions);
    const std::size_t n = nerve.charts.size();
    for (const auto& [key, t] : nerve.transitions) {
        const auto [i, j] = key;
        if (i >= n || j >= n || i == j) throw FrameMismatch("bad overlap " + pair_name(i, j));
        if (!nerve.transitions.contains({j, i})) throw FrameMismatch("missing reverse transition for " + pair_name(i, j));
        if (t.images.size() != p + q) throw DimensionMismatch("transition " + pair_name(i, j) + " needs p + q images");
        nerve.linear.emplace(key, make_linear(t, nerve.tr));
    }

    auto has = [&](std::size_t i, std::size_t j) { return nerve.transitions.contains({i, j}); };
    nerve.simplices.resize(4);
    for (std::size_t i = 0; i < n; ++i) {
        auto inv = nerve.charts[i].inverted;
        std::sort(inv.begin(), inv.end());
        nerve.simplices[0].push_back({{i}, inv});
    }
    auto edge_inverted = [&](std::size_t i, std::size_t j) {
        std::set<std::size_t> s(nerve.simplices[0][i].inverted.begin(), nerve.simplices[0][i].inverted.end());
        for (const auto& img : nerve.transition(i, j).images) negative_vars(img, p, s);
        pull_back_inverted(nerve.linear_model(i, j), nerve.charts[j].inverted, p, s);
        return s;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (has(i, j)) nerve.simplices[1].push_back({{i, j}, to_vector(edge_inverted(i, j))});
        }
    }
    auto inverted_of = [&](const std::vector<std::size_t>& ch) { return nerve.of_degree(static_cast<int>(ch.size()) - 1).at(*nerve.index(ch)).inverted; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t h = j + 1; h < n; ++h) {
                if (!has(i, j) || !has(i, h) || !has(j, h)) continue;
                std::set<std::size_t> s;
                for (auto v : inverted_of({i, j})) s.insert(v);
                for (auto v : inverted_of({i, h})) s.insert(v);
                pull_back_inverted(nerve.linear_model(i, j), inverted_of({j, h}), p, s);
                nerve.simplices[2].push_back({{i, j, h}, to_vector(s)});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t h = j + 1; h < n; ++h) {
                for (std::size_t l = h + 1; l < n; ++l) {
                    if (!nerve.index({i, j, h}) || !nerve.index({i, j, l}) || !nerve.index({i, h, l}) ||
                        !nerve.index({j, h, l})) {
                        continue;
                    }
                    std::set<std::size_t> s;
                    for (auto v : inverted_of({i, j, h})) s.insert(v);
                    for (auto v : inverted_of({i, j, l})) s.insert(v);
                    for (auto v : inverted_of({i, h, l})) s.insert(v);
                    pull_back_inverted(nerve.linear_model(i, j), inverted_of({j, h, l}), p, s);
                    nerve.simplices[3].push_back({{i, j, h, l}, to_vector(s)});
                }
            }
        }
    }
    return nerve;
}

const PolyMatrix& BundleData::transition(std::size_t i, std::size_t j) const {
    const auto it = g.find({i, j});
    if (it == g.end()) throw FrameMismatch("no frame transition for overlap " + pair_name(i, j));
    return it->second;
}

PolyMatrix inverse_frame(const CoverNerve& nerve, const BundleData& bundle, std::size_t i, std::size_t j) {
    return geom::inverse(bundle.transition(i, j), nerve.tr.with_order(0));
}

LaurentPoly linear_substitute(const CoverNerve& nerve, std::size_t i, std::size_t j, const LaurentPoly& f) {
    return exact::substitute(f, nerve.linear_model(i, j).images);
}

PolyMatrix linear_substitute(const CoverNerve& nerve, std::size_t i, std::size_t j, const PolyMatrix& m) {
    const auto& images = nerve.linear_model(i, j).images;
    return m.map([&](const LaurentPoly& f) { return exact::substitute(f, images); });
}

LaurentPoly full_substitute(const CoverNerve& nerve, std::size_t i, std::size_t j, const LaurentPoly& f) {
    return geom::substitute_truncated(f, nerve.transition(i, j).images, nerve.tr);
}

PolyMatrix full_substitute(const CoverNerve& nerve, std::size_t i, std::size_t j, const PolyMatrix& m) {
    const auto& images = nerve.transition(i, j).images;
    return m.map([&](const LaurentPoly& f) { return geom::substitute_truncated(f, images, nerve.tr); });
}

geom::Connection connection_in_frame(const CoverNerve& nerve, const BundleData& bundle, std::size_t i, std::size_t j) {
    if (i == j) return bundle.connections.at(i);
    if (i > j) throw FrameMismatch("connections are transported towards the lower chart only");
    const Truncation base = nerve.tr.with_order(0);
    const PolyMatrix& g = bundle.transition(i, j);
    const PolyMatrix gi = inverse_frame(nerve, bundle, i, j);
    const auto& lin = nerve.linear_model(i, j);
    const auto& gamma = bundle.connections.at(j).gamma;
    std::vector<PolyMatrix> pulled;
    for (const auto& m : gamma) pulled.push_back(geom::mul(geom::mul(g, linear_substitute(nerve, i, j, m), base), gi, base));
    geom::Connection out;
    for (std::size_t c = 0; c < nerve.tr.p; ++c) {
        PolyMatrix acc = Rational(-1) * geom::mul(g.map([&](const LaurentPoly& f) { return f.derivative(c); }), gi, base);
        for (std::size_t b = 0; b < nerve.tr.p; ++b) acc += lin.jacobian(c, b) * pulled[b];
        out.gamma.push_back(std::move(acc));
    }
    return out;
}

geom::FilteredAutomorphism frame_model(const CoverNerve& nerve, const BundleData& bundle, std::size_t i, std::size_t j) {
    const auto& lin = nerve.linear_model(i, j);
    geom::FilteredAutomorphism a = geom::FilteredAutomorphism::identity(nerve.tr, bundle.e);
    for (std::size_t x = 0; x < nerve.tr.nvars(); ++x) {
        (x < nerve.tr.p ? a.base_images[x] : a.normal_images[x - nerve.tr.p]) = geom::truncate(lin.images[x], nerve.tr);
    }
    a.module_matrix = bundle.transition(i, j);
    return a;
}

geom::FilteredAutomorphism frame_model_inverse(const CoverNerve& nerve, const BundleData& bundle, std::size_t i,
                                               std::size_t j) {
    const auto& lin = nerve.linear_model(j, i);
    geom::FilteredAutomorphism a = geom::FilteredAutomorphism::identity(nerve.tr, bundle.e);
    for (std::size_t x = 0; x < nerve.tr.nvars(); ++x) {
        (x < nerve.tr.p ? a.base_images[x] : a.normal_images[x - nerve.tr.p]) = geom::truncate(lin.images[x], nerve.tr);
    }
    a.module_matrix = linear_substitute(nerve, j, i, inverse_frame(nerve, bundle, i, j));
    return a;
}

bool is_monomial(const CoverNerve& nerve, const BundleData& bundle) {
    for (const auto& [key, lin] : nerve.linear) {
        for (const auto& f : lin.base_map) {
            if (!f.is_monomial()) return false;
        }
        if (!single_monomial_rows(lin.conormal)) return false;
    }
    for (const auto& [key, g] : bundle.g) {
        if (!single_monomial_rows(g)) return false;
    }
    return true;
}

}  // namespace nbhd::cech
