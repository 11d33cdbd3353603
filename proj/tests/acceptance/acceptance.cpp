// One PASS/FAIL line per acceptance criterion; exit code 1 if any fails.
#include "nbhd/cech/cohomology.hpp"
#include "nbhd/cech/solve.hpp"
#include "nbhd/lab/suites.hpp"
#include "nbhd/scenario/pipeline.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace nbhd;

namespace {

struct Verdict {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail.str("");
            detail << "failed: " << what;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Verdict&)>& body) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.ok = false;
        v.detail.str("");
        v.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) v.require(false, "runtime " + std::to_string(secs) + " s over budget");
    if (!v.ok) ++failures;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << t.str() << " s] "
              << v.detail.str() << std::endl;
}

void suite_into(Verdict& v, const std::vector<lab::PropertyResult>& results, const std::vector<std::string>& names) {
    for (const auto& r : results) {
        if (std::find(names.begin(), names.end(), r.name) == names.end()) continue;
        v.require(r.passed, r.name + " (" + r.detail + ")");
        v.require(r.nontrivial > 0, r.name + " never exercised a nonzero case");
        v.detail << r.name << ": " << r.trials << " trials, " << r.nontrivial << " nontrivial; ";
    }
}

struct Inst {
    cech::CoverNerve nerve;
    cech::BundleData bundle;
};

Inst instance(const scenario::Scenario& s) { return {scenario::make_nerve(s), scenario::make_bundle(s)}; }

// Laurent monomials u^a on the P^1 overlap reached by neither chart for O(d):
// chart 0 gives a >= 0, chart 1 gives u^d u^(-b) for b >= 0.
long unreachable_p1(int d, int radius) {
    long n = 0;
    for (int a = -radius; a <= radius; ++a) {
        if (a < 0 && a > d) ++n;
    }
    return n;
}

}  // namespace

int main() {
    criterion(1, "log/exp round trip and bch2 on 200 random unipotent maps", 60, [](Verdict& v) {
        suite_into(v, lab::geometry_suite(1, 200), {"exp(log phi) = phi", "log(phi phi') = bch2 in degrees 1, 2"});
    });

    criterion(2, "lift residual vanishes iff the lifted element is Maurer-Cartan", 60, [](Verdict& v) {
        const auto res = lab::mc_suite(1, 60);
        suite_into(v, res, {"lift_residual = 0 <=> direct MC check"});
    });

    std::vector<lab::PropertyResult> formal;
    criterion(3, "flat splitting brackets, curved defect = curvature contraction", 60, [&](Verdict& v) {
        formal = lab::formal_suite(1, 100);
        suite_into(v, formal, {"flat splitting is bracket compatible", "curved defect equals curvature contraction"});
    });
    criterion(4, "extension cocycle closed, relative, and equal to -d(beta)", 60, [&](Verdict& v) {
        suite_into(v, formal, {"extension cocycle = -d(beta), N = k+2", "extension cocycle closed and relative"});
    });

    criterion(5, "order 1 on line_in_p2 and torsor dimension k-1 for O(-k) on P1", 30, [](Verdict& v) {
        for (int d = -3; d <= 3; ++d) {
            scenario::PipelineOptions opt;
            opt.order = 1;
            const auto rep = scenario::run_pipeline(scenario::generate_builtin("line_in_p2", d), opt);
            const auto& o = rep.orders.at(0);
            const long oracle = cech::cohomology_dim(1, cech::sheaf_twists({1}, {d}, 1, cech::ValueKind::End))[1];
            v.require(o.solve.status == cech::SolveStatus::Solved, "line_in_p2 d=" + std::to_string(d) + " not Solved");
            v.require(o.solve.torsor_dim == oracle && oracle == 0, "line_in_p2 torsor_dim");
        }
        for (int k = 2; k <= 4; ++k) {
            const auto inst = instance(scenario::projective_neighborhood(1, {}, {-k}, 0));
            const auto zero = cech::CechCochain::zero(inst.nerve, 1, 2, cech::ValueKind::Vector, 0);
            const auto res = cech::solve_coboundary(inst.nerve, inst.bundle, zero, cech::Window{k + 2});
            const long oracle = unreachable_p1(-k, k + 2);
            v.require(res.status == cech::SolveStatus::Solved && res.torsor_dim == oracle && oracle == k - 1,
                      "O(-" + std::to_string(k) + ") torsor_dim");
            v.detail << "O(-" << k << "): " << (res.torsor_dim ? *res.torsor_dim : -1) << "; ";
        }
    });

    criterion(6, "diagonal of P1 x P1: orders 1 and 2 Solved for |d| <= 2", 120, [](Verdict& v) {
        for (int d = -2; d <= 2; ++d) {
            for (const bool perturbed : {false, true}) {
                auto s = scenario::generate_builtin("diagonal_p1xp1", d);
                if (perturbed) s = scenario::perturb_coordinates(s, 40 + static_cast<std::uint64_t>(d + 2));
                const auto rep = scenario::run_pipeline(s);
                v.require(rep.orders.size() == 2, "diagonal d=" + std::to_string(d) + " stopped early");
                for (const auto& o : rep.orders) {
                    v.require(o.solve.status == cech::SolveStatus::Solved,
                              "diagonal d=" + std::to_string(d) + " order " + std::to_string(o.order));
                    v.require(o.formula_check == "exact", "component formula mismatch");
                }
            }
        }
    });

    criterion(7, "monomial-count cohomology agrees with brute-force window ranks", 60, [](Verdict& v) {
        for (int k = 1; k <= 5; ++k) {
            const auto p1 = instance(scenario::projective_neighborhood(1, {}, {-k}, 0));
            const long h1 = cech::cohomology_dim(1, {-k})[1];
            const long b1 = cech::window_cohomology(p1.nerve, p1.bundle, 1, cech::ValueKind::Vector, 0, cech::Window{k + 1});
            v.require(h1 == k - 1 && b1 == h1, "H1(P1, O(-" + std::to_string(k) + "))");
            const auto p2 = instance(scenario::projective_neighborhood(2, {}, {-k}, 0));
            const long h2 = cech::cohomology_dim(2, {-k})[2];
            const long b2 = cech::window_cohomology(p2.nerve, p2.bundle, 2, cech::ValueKind::Vector, 0, cech::Window{k + 1});
            v.require(h2 == (k - 1) * (k - 2) / 2 && b2 == h2, "H2(P2, O(-" + std::to_string(k) + "))");
            v.detail << "k=" << k << ": " << h1 << "/" << b1 << ", " << h2 << "/" << b2 << "; ";
        }
    });

    criterion(8, "rank-one abelianized pair is exact for builtins with global extensions", 60, [](Verdict& v) {
        for (const auto& name : scenario::builtin_names()) {
            for (int d = -2; d <= 2; ++d) {
                for (const bool perturbed : {false, true}) {
                    auto s = scenario::generate_builtin(name, d);
                    if (perturbed) s = scenario::perturb_coordinates(s, 70 + static_cast<std::uint64_t>(d + 2));
                    const auto rep = scenario::run_pipeline(s);
                    const bool ok = rep.orders.size() == 2 && rep.orders[1].abelianized &&
                                    rep.orders[1].abelianized->status == cech::SolveStatus::Solved;
                    v.require(ok, name + " d=" + std::to_string(d));
                }
            }
        }
    });

    criterion(9, "obstruct reports are byte-identical across worker counts", 60, [](Verdict& v) {
        for (const auto& name : scenario::builtin_names()) {
            for (const bool perturbed : {false, true}) {
                auto s = scenario::generate_builtin(name, 1);
                if (perturbed) s = scenario::perturb_coordinates(s, 5);
                std::string first;
                for (std::size_t w : {1u, 2u, 3u, 8u}) {
                    for (int rep = 0; rep < 2; ++rep) {
                        scenario::PipelineOptions opt;
                        opt.workers = w;
                        const auto text = scenario::report_to_json(scenario::run_pipeline(s, opt)).dump(2);
                        if (first.empty()) first = text;
                        v.require(text == first, name + " differs at workers=" + std::to_string(w));
                    }
                }
            }
        }
    });

    return failures == 0 ? 0 : 1;
}
