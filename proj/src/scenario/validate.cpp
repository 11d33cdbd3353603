#include "nbhd/scenario/validate.hpp"

#include "nbhd/error.hpp"
#include "nbhd/exact/serialize.hpp"

namespace nbhd::scenario {

namespace {

std::string triple_name(std::size_t i, std::size_t j, std::size_t h) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(h) + ")";
}

std::string pair_name(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

bool ValidationLog::ok() const {
    for (const auto& e : entries) {
        if (!e.ok) return false;
    }
    return true;
}

std::string ValidationLog::first_failure() const {
    for (const auto& e : entries) {
        if (!e.ok) return e.check + ": " + e.detail;
    }
    return {};
}

ValidationLog validate_scenario(const Scenario& s) {
    ValidationLog log;
    auto fail = [&](const std::string& check, const std::string& detail) { log.entries.push_back({check, false, detail}); };
    auto pass = [&](const std::string& check, const std::string& detail) { log.entries.push_back({check, true, detail}); };

    const std::size_t nc = s.charts.size(), p = s.p(), q = s.q(), nv = p + q;
    bool structure = nc > 0 && s.connections.size() == nc && s.flat.size() == nc;
    for (const auto& [key, t] : s.transitions) {
        if (!s.transitions.contains({key.second, key.first})) {
            fail("structure", "overlap " + pair_name(key.first, key.second) + " listed in one direction only");
            structure = false;
        }
        if (key.first == key.second || t.images.size() != nv) {
            fail("structure", "transition " + pair_name(key.first, key.second) + " malformed");
            structure = false;
        }
        if (key.first < key.second && !s.bundle_transitions.contains(key)) {
            fail("structure", "no frame transition on " + pair_name(key.first, key.second));
            structure = false;
        }
    }
    for (const auto& [key, g] : s.bundle_transitions) {
        if (key.first >= key.second || !s.transitions.contains(key)) {
            fail("structure", "frame transition " + pair_name(key.first, key.second) + " without an overlap i < j");
            structure = false;
        }
        if (g.rows() != s.e || g.cols() != s.e) {
            fail("structure", "frame transition " + pair_name(key.first, key.second) + " is not e x e");
            structure = false;
        }
    }
    if (s.target_order > s.order) {
        fail("structure", "target order exceeds the order the transitions are known to");
        structure = false;
    }
    if (!structure) return log;
    pass("structure", std::to_string(nc) + " charts, " + std::to_string(s.transitions.size()) + " ordered overlaps");

    const geom::Truncation tr{p, q, s.order, std::nullopt};
    bool charts_ok = true;
    for (const auto& [key, t] : s.transitions) {
        const auto& back = s.transitions.at({key.second, key.first});
        for (std::size_t y = 0; y < nv; ++y) {
            const LaurentPoly round = geom::substitute_truncated(back.images[y], t.images, tr);
            if (round != LaurentPoly::variable(nv, y)) {
                fail("chart cocycle", "T" + pair_name(key.second, key.first) + " o T" + pair_name(key.first, key.second) +
                                          " moves coordinate " + std::to_string(y) + " to " + round.str());
                charts_ok = false;
                break;
            }
        }
    }
    for (const auto& [ij, tij] : s.transitions) {
        for (const auto& [jh, tjh] : s.transitions) {
            if (jh.first != ij.second || jh.second == ij.first) continue;
            const auto it = s.transitions.find({ij.first, jh.second});
            if (it == s.transitions.end()) continue;
            for (std::size_t y = 0; y < nv; ++y) {
                const LaurentPoly via = geom::substitute_truncated(tjh.images[y], tij.images, tr);
                if (via != geom::truncate(it->second.images[y], tr)) {
                    fail("chart cocycle", "triple " + triple_name(ij.first, ij.second, jh.second) + " coordinate " +
                                              std::to_string(y) + ": " + via.str() + " vs " + it->second.images[y].str());
                    charts_ok = false;
                    break;
                }
            }
        }
    }
    if (!charts_ok) return log;
    pass("chart cocycle", "transitions compose mod t^" + std::to_string(s.order + 1));

    bool adapted = true;
    for (const auto& [key, t] : s.transitions) {
        try {
            (void)geom::induced_transition(t, s.transitions.at({key.second, key.first}), tr, s.e);
        } catch (const Error& e) {
            fail("adapted", pair_name(key.first, key.second) + ": " + e.what());
            adapted = false;
        }
    }
    if (!adapted) return log;
    pass("adapted", "t = 0 preserved, conormal parts invertible");

    cech::CoverNerve nerve;
    cech::BundleData bundle;
    try {
        nerve = make_nerve(s);
        bundle = make_bundle(s);
        for (const auto& [key, g] : s.bundle_transitions) {
            for (std::size_t r = 0; r < s.e; ++r) {
                for (std::size_t c = 0; c < s.e; ++c) {
                    if (!geom::is_base_only(g(r, c), p)) throw FrameMismatch("g" + pair_name(key.first, key.second) + " involves t");
                }
            }
            (void)cech::inverse_frame(nerve, bundle, key.first, key.second);
        }
    } catch (const Error& e) {
        fail("nerve", e.what());
        return log;
    }
    pass("nerve", std::to_string(nerve.count(1)) + " edges, " + std::to_string(nerve.count(2)) + " triangles, " +
                      std::to_string(nerve.count(3)) + " tetrahedra");

    bool frames_ok = true;
    for (const auto& t : nerve.of_degree(2)) {
        const std::size_t i = t.charts[0], j = t.charts[1], h = t.charts[2];
        const PolyMatrix lhs = bundle.transition(i, j) * cech::linear_substitute(nerve, i, j, bundle.transition(j, h));
        if (lhs != bundle.transition(i, h)) {
            fail("frame cocycle", "g_ih != g_ij g_jh on triple " + triple_name(i, j, h));
            frames_ok = false;
        }
    }
    if (frames_ok) pass("frame cocycle", "g_ih = g_ij g_jh on every triple");

    for (std::size_t i = 0; i < nc; ++i) {
        if (s.connections[i].gamma.size() != p) {
            fail("flatness", "chart " + std::to_string(i) + " connection has the wrong number of components");
            continue;
        }
        const auto curv = geom::curvature(s.connections[i]);
        bool zero = true;
        std::string shown;
        for (std::size_t k = 0; k < curv.size(); ++k) {
            if (!curv[k].is_zero()) {
                zero = false;
                shown += (shown.empty() ? "" : "; ") + std::string("F[") + std::to_string(k) + "] = " + exact::to_json(curv[k]).dump();
            }
        }
        if (s.flat[i] && !zero) {
            fail("flatness", "chart " + std::to_string(i) + " flagged flat but curvature " + shown);
        } else {
            pass("flatness", "chart " + std::to_string(i) + (zero ? " flat" : " curved (flag off)"));
        }
    }
    return log;
}

}  // namespace nbhd::scenario
