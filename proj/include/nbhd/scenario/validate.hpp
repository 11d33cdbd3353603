#pragma once

#include "nbhd/scenario/scenario.hpp"

#include <string>
#include <vector>

namespace nbhd::scenario {

struct ValidationEntry {
    std::string check;
    bool ok = true;
    std::string detail;
};

struct ValidationLog {
    std::vector<ValidationEntry> entries;

    [[nodiscard]] bool ok() const;
    /// First failing entry's check and detail, empty when ok.
    [[nodiscard]] std::string first_failure() const;
};

/// Structure, chart-transition groupoid identities mod t^(order+1),
/// adaptedness, frame cocycle on X, and flatness flags against curvature.
[[nodiscard]] ValidationLog validate_scenario(const Scenario& s);

}  // namespace nbhd::scenario
