#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "projgeom/numeric.hpp"

namespace projgeom {

/// Outcome of one property-suite run. worst_residuals maps check names to
/// the largest residual seen across all trials; the report is deterministic
/// for a fixed seed apart from elapsed_seconds.
struct SuiteReport {
    std::string suite;
    int trials = 0;
    int failures = 0;
    std::map<std::string, double> worst_residuals;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;
};

/// Run one of the named invariant batteries (lemmas, atlas, midpoint,
/// dedekind, or all of them). Trial i derives its randomness from seed + i.
SuiteReport run_suite(const std::string& name, Eigen::Index n, int trials, std::uint64_t seed,
                      const ToleranceConfig& tol = {});

/// Single JSON object, keys in fixed order.
std::string to_json(const SuiteReport& report);

}  // namespace projgeom
