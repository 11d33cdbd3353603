#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nbhd::lab {

/// Outcome of one seeded property run. `nontrivial` counts trials where the
/// compared quantities were nonzero, so a pass is not vacuous.
struct PropertyResult {
    std::string name;
    bool passed = true;
    long trials = 0;
    long nontrivial = 0;
    std::string detail;
};

/// exp(log phi) = phi and log(phi phi') = bch2 in degrees <= 2 on random unipotent maps.
[[nodiscard]] std::vector<PropertyResult> geometry_suite(std::uint64_t seed = 1, int trials = 200);
/// lift_residual = 0 iff s(phi) + alpha is MC in the extension, over an alpha grid.
[[nodiscard]] std::vector<PropertyResult> mc_suite(std::uint64_t seed = 1, int instances = 60);
/// Flat-splitting bracket compatibility, curved defect, and the extension cocycle identities.
[[nodiscard]] std::vector<PropertyResult> formal_suite(std::uint64_t seed = 1, int pairs = 100);

}  // namespace nbhd::lab
