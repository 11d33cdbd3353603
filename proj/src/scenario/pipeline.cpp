#include "nbhd/scenario/pipeline.hpp"

#include "nbhd/cech/cohomology.hpp"
#include "nbhd/error.hpp"
#include "nbhd/scenario/io.hpp"
#include "nbhd/version.hpp"

#include <sstream>

namespace nbhd::scenario {

namespace {

using exact::Json;

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(name, e.what());
    }
}

bool all_flat(const cech::BundleData& b) {
    for (const auto& c : b.connections) {
        if (!geom::is_flat(c)) return false;
    }
    return true;
}

Json charts_json(const std::vector<std::size_t>& charts) {
    Json j = Json::array();
    for (auto c : charts) j.push_back(c);
    return j;
}

Json cochain_json(const cech::CechCochain& c, const std::vector<std::vector<std::size_t>>& simplices) {
    Json out = Json::array();
    for (std::size_t s = 0; s < c.values.size(); ++s) {
        if (c.values[s].is_zero()) continue;
        out.push_back({{"charts", charts_json(simplices.at(s))}, {"value", exact::to_json(c.values[s])}});
    }
    return out;
}

Json solve_json(const cech::SolveResult& r, const std::vector<std::vector<std::size_t>>& edges) {
    Json j;
    j["status"] = cech::status_name(r.status);
    j["system"] = {{"unknowns", r.unknowns}, {"equations", r.equations}, {"rank", r.rank}};
    j["torsor_dim"] = r.torsor_dim ? Json(*r.torsor_dim) : Json(nullptr);
    Json sol = Json::array();
    for (const auto& c : r.solution) sol.push_back(cochain_json(c, edges));
    j["solution"] = sol;
    Json w = Json::array();
    for (const auto& x : r.witnesses) {
        w.push_back({{"charts", charts_json(x.charts)},
                     {"entry", {x.row, x.col}},
                     {"exponent", x.exponent},
                     {"coefficient", exact::to_json(x.coefficient)}});
    }
    j["witnesses"] = w;
    return j;
}

std::vector<std::vector<std::size_t>> chart_lists(const cech::CoverNerve& nerve, int degree) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : nerve.of_degree(degree)) out.push_back(s.charts);
    return out;
}

}  // namespace

Json validation_to_json(const ValidationLog& log) {
    Json out = Json::array();
    for (const auto& e : log.entries) out.push_back({{"check", e.check}, {"ok", e.ok}, {"detail", e.detail}});
    return out;
}

ReportBundle run_pipeline(const Scenario& s, const PipelineOptions& opt) {
    ReportBundle rep;
    rep.scenario = s.name;
    rep.scenario_hash = scenario_hash(s);
    rep.engine = std::string("nbhd ") + kEngineVersion;
    const int target = opt.order.value_or(s.target_order);
    rep.radius = opt.radius.value_or(s.window.radius);
    if (target > 2) {
        throw UnsupportedOrder("order " + std::to_string(target) +
                               ": beyond order 2 the obstruction lives in a homotopy Lie algebra; not implemented");
    }
    if (target > s.order) throw UnsupportedOrder("transitions are only known to order " + std::to_string(s.order));
    rep.validation = validate_scenario(s);
    if (!rep.validation.ok()) throw ValidationError(rep.validation.first_failure());

    const auto nerve = stage("nerve", [&] { return make_nerve(s); });
    const auto bundle = make_bundle(s);
    rep.edges = chart_lists(nerve, 1);
    rep.triangles = chart_lists(nerve, 2);
    const cech::Window window{rep.radius};
    const auto at = stage("atiyah", [&] { return cech::atiyah_cocycle(nerve, bundle); });
    auto G = cech::initial_transitions(nerve, bundle);
    std::optional<long> previous_torsor;

    for (int k = 1; k <= target; ++k) {
        OrderReport o;
        o.order = k;
        o.obstruction = stage("obstruction", [&] { return cech::direct_obstruction(nerve, bundle, G, k, opt.workers); });
        const auto comps = stage("components", [&] { return cech::extract_components(nerve, bundle, G, k, opt.workers); });
        if (k == 2 && !all_flat(bundle)) {
            o.formula_check = "skipped: curved local connections";
        } else {
            const auto f = stage("formula", [&] {
                return k == 1 ? cech::first_order_obstruction(nerve, bundle, comps, at)
                              : cech::second_order_obstruction(nerve, bundle, comps, at);
            });
            const auto dm = cech::cech_differential(nerve, bundle, comps.m_cochain(nerve, bundle.e, k), opt.workers);
            o.formula_check = o.obstruction == f + dm ? "exact" : "mismatch";
        }
        o.solve = stage("solve", [&] { return cech::solve_coboundary(nerve, bundle, o.obstruction, window, opt.workers); });
        if (o.solve.status == cech::SolveStatus::ProvenNonzero && k == 2 && previous_torsor != 0) {
            o.solve.status = cech::SolveStatus::UnresolvedWithinWindow;
            o.note = "nonzero for this order-1 choice only; the order-1 solutions form a torsor of positive dimension";
        }
        if (s.projective) {
            const auto& pd = *s.projective;
            const auto dims = stage("cohomology", [&] {
                return cech::cohomology_dim(pd.n, cech::sheaf_twists(pd.normal_twists, pd.bundle_twists, k, cech::ValueKind::End));
            });
            o.h1 = pd.n >= 1 ? dims[1] : 0;
            o.h2 = pd.n >= 2 ? dims[2] : 0;
            if (o.solve.torsor_dim && *o.solve.torsor_dim != *o.h1) {
                o.note = "window torsor dimension " + std::to_string(*o.solve.torsor_dim) + " differs from H^1 = " +
                         std::to_string(*o.h1);
            }
        }
        if (k == 2 && bundle.e == 1) {
            const auto ab = cech::abelianized_obstruction(nerve, bundle, comps, at);
            o.abelianized = stage("abelianized", [&] { return cech::solve_abelianized(nerve, bundle, ab, window, opt.workers); });
        }
        const bool solved = o.solve.status == cech::SolveStatus::Solved;
        if (solved) {
            cech::apply_correction(nerve, bundle, G, o.solve.solution.at(0));
            previous_torsor = o.solve.torsor_dim;
        }
        rep.orders.push_back(std::move(o));
        if (!solved) break;
    }
    return rep;
}

Json report_to_json(const ReportBundle& r) {
    Json j;
    j["engine"] = r.engine;
    j["scenario"] = {{"name", r.scenario}, {"hash", r.scenario_hash}};
    j["window"] = {{"radius", r.radius}};
    j["validation"] = validation_to_json(r.validation);
    Json orders = Json::array();
    for (const auto& o : r.orders) {
        Json oj;
        oj["order"] = o.order;
        oj["status"] = cech::status_name(o.solve.status);
        oj["obstruction"] = cochain_json(o.obstruction, r.triangles);
        oj["formula_check"] = o.formula_check;
        oj["solve"] = solve_json(o.solve, r.edges);
        oj["cohomology"] = o.h1 ? Json{{"H1", *o.h1}, {"H2", *o.h2}} : Json(nullptr);
        oj["abelianized"] = o.abelianized ? solve_json(*o.abelianized, r.edges) : Json(nullptr);
        oj["note"] = o.note;
        orders.push_back(oj);
    }
    j["orders"] = orders;
    return j;
}

std::string report_text(const ReportBundle& r) {
    std::ostringstream out;
    out << r.scenario << " [" << r.scenario_hash << "] window " << r.radius << "\n";
    for (const auto& o : r.orders) {
        out << "  order " << o.order << ": " << cech::status_name(o.solve.status);
        if (o.solve.torsor_dim) out << ", torsor_dim " << *o.solve.torsor_dim;
        if (o.h1) out << ", H1 " << *o.h1 << ", H2 " << *o.h2;
        out << ", formula " << o.formula_check;
        if (o.abelianized) out << ", abelianized " << cech::status_name(o.abelianized->status);
        if (!o.note.empty()) out << " (" << o.note << ")";
        out << "\n";
    }
    return out.str();
}

}  // namespace nbhd::scenario
