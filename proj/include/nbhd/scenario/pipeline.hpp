#pragma once

#include "nbhd/cech/solve.hpp"
#include "nbhd/exact/serialize.hpp"
#include "nbhd/scenario/validate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nbhd::scenario {

struct PipelineOptions {
    std::size_t workers = 1;
    /// Overrides the scenario's own target order and window when set.
    std::optional<int> order;
    std::optional<int> radius;
};

struct OrderReport {
    int order = 1;
    cech::CechCochain obstruction;
    /// "exact" when the obstruction equals the component formula plus dm.
    std::string formula_check;
    cech::SolveResult solve;
    /// Counted dims of H^1, H^2 of Sym^k con (x) End E when X = P^n.
    std::optional<long> h1;
    std::optional<long> h2;
    std::string note;
    std::optional<cech::SolveResult> abelianized;
};

struct ReportBundle {
    std::string scenario;
    std::string scenario_hash;
    std::string engine;
    int radius = 0;
    ValidationLog validation;
    std::vector<std::vector<std::size_t>> edges;
    std::vector<std::vector<std::size_t>> triangles;
    std::vector<OrderReport> orders;
};

/// validate, transitions, logs, components, obstruction, solve, order by
/// order up to 2. Throws ValidationError, UnsupportedOrder, StageError.
[[nodiscard]] ReportBundle run_pipeline(const Scenario& s, const PipelineOptions& opt = {});

[[nodiscard]] exact::Json report_to_json(const ReportBundle& r);
[[nodiscard]] std::string report_text(const ReportBundle& r);
[[nodiscard]] exact::Json validation_to_json(const ValidationLog& log);

}  // namespace nbhd::scenario
