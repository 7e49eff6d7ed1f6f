#pragma once

// Whole-model property checks shared by the unit tests and the acceptance
// runner. Each returns a verdict plus the measured numbers.

#include <string>

#include "irmen/params.hpp"

namespace props {

struct Verdict {
  bool pass = false;
  std::string detail;
};

/// Parameters with the calibrated overrides applied (see configs/).
irmen::ParamSet calibrated();

Verdict rk4_global_order();
Verdict norm_drift(std::size_t steps);
Verdict damping_monotonicity();
Verdict thermal_moments(std::size_t draws);
Verdict boltzmann_equilibrium();
Verdict synapse_fixed_point();
Verdict fixed_points_3x3();
Verdict error_metric_endpoints();
/// Fixed-seed simulate twice in-process, and a sweep with 1 vs 8 jobs.
Verdict determinism(const std::string& scratch_dir);

}  // namespace props
