#include "nbhd/cech/cohomology.hpp"
#include "nbhd/error.hpp"
#include "nbhd/lab/suites.hpp"
#include "nbhd/scenario/io.hpp"
#include "nbhd/scenario/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace nbhd;

namespace {

// "builtin:NAME" or a path to a scenario file.
scenario::Scenario resolve(const std::string& ref, int twist) {
    const std::string prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) return scenario::generate_builtin(ref.substr(prefix.size()), twist);
    return scenario::load_scenario(ref);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot write");
    out << text;
}

int print_suite(const std::vector<lab::PropertyResult>& results) {
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  trials=" << r.trials << " nontrivial=" << r.nontrivial;
        if (!r.detail.empty()) std::cout << "  " << r.detail;
        std::cout << "\n";
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Obstructions to extending vector bundles to formal neighborhoods"};
    app.require_subcommand(1);

    std::string ref;
    int twist = 1;
    auto* validate = app.add_subcommand("validate", "check a scenario's transitions, frames and connections");
    validate->add_option("scenario", ref, "scenario file or builtin:NAME")->required();
    validate->add_option("--twist", twist, "E = O(d) for builtins");

    int order = 2, window = 3;
    std::size_t workers = 1;
    std::string json_out;
    bool window_set = false;
    auto* obstruct = app.add_subcommand("obstruct", "compute and solve obstructions order by order");
    obstruct->add_option("scenario", ref, "scenario file or builtin:NAME")->required();
    obstruct->add_option("--order,-k", order, "highest order (<= 2)");
    auto* wopt = obstruct->add_option("--window,-w", window, "solve window radius");
    obstruct->add_option("--workers,-j", workers, "threads for per-simplex work")->check(CLI::PositiveNumber);
    obstruct->add_option("--twist", twist, "E = O(d) for builtins");
    obstruct->add_option("--json", json_out, "write the report bundle here ('-' for stdout)");

    std::size_t n = 1;
    std::vector<int> twists;
    auto* coh = app.add_subcommand("cohomology", "dim H^i(P^n, sum O(d)) by monomial counting");
    coh->add_option("--n", n, "dimension of P^n")->required();
    coh->add_option("--twists", twists, "line bundle twists")->required();

    std::uint64_t seed = 1;
    auto* formal_lab = app.add_subcommand("formal-lab", "run the formal-model property suite");
    formal_lab->add_option("--seed", seed);
    auto* mc_lab = app.add_subcommand("mc-lab", "run the Maurer-Cartan lifting property suite");
    mc_lab->add_option("--seed", seed);

    std::string name, out_path;
    int gen_order = 2;
    std::optional<std::uint64_t> perturb;
    auto* gen = app.add_subcommand("generate", "write a builtin scenario");
    gen->add_option("name", name, "line_in_p2, hyperplane_p2_in_p3, diagonal_p1xp1, affine_split")->required();
    gen->add_option("--twist", twist, "E = O(d)");
    gen->add_option("--order", gen_order, "order the transitions are expanded to");
    gen->add_option("--perturb", perturb, "apply a seeded random change of adapted coordinates");
    gen->add_option("-o,--output", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);
    window_set = wopt->count() > 0;

    try {
        if (*validate) {
            const auto log = scenario::validate_scenario(resolve(ref, twist));
            for (const auto& e : log.entries) std::cout << (e.ok ? "ok   " : "FAIL ") << e.check << ": " << e.detail << "\n";
            return log.ok() ? 0 : 1;
        }
        if (*obstruct) {
            scenario::PipelineOptions opt;
            opt.workers = workers;
            opt.order = order;
            if (window_set) opt.radius = window;
            const auto rep = scenario::run_pipeline(resolve(ref, twist), opt);
            if (json_out != "-") std::cout << scenario::report_text(rep);
            if (!json_out.empty()) write_text(json_out, scenario::report_to_json(rep).dump(2) + "\n");
            return 0;
        }
        if (*coh) {
            const auto dims = cech::cohomology_dim(n, twists);
            for (std::size_t i = 0; i < dims.size(); ++i) std::cout << "H" << i << " " << dims[i] << "\n";
            return 0;
        }
        if (*formal_lab) return print_suite(lab::formal_suite(seed));
        if (*mc_lab) return print_suite(lab::mc_suite(seed));
        if (*gen) {
            auto s = scenario::generate_builtin(name, twist, gen_order);
            if (perturb) s = scenario::perturb_coordinates(s, *perturb);
            write_text(out_path, scenario::dump_scenario(s));
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
