#pragma once

#include <vector>

#include "spdchg/oracle_quadrature.hpp"
#include "spdchg/params.hpp"

namespace spdchg {

// One analytic-vs-quadrature comparison: a full coefficient matrix for pump
// order n at waist ratio w/delta under one collection-width mode.
struct VerifyCase {
  int pump_order = 0;
  double w_over_delta = 1.0;
  SigmaMode sigma_mode = SigmaMode::Geometric;
  double max_rel_deviation = 0.0;  // vs the largest quadrature magnitude
  double parity_violation = 0.0;   // largest |entry| on parity-forbidden cells
};

struct VerifyReport {
  std::vector<VerifyCase> cases;
  double max_rel_deviation = 0.0;
  double max_parity_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Cross-checks the analytic coefficients against the quadrature oracle on a
// fixed grid: pump orders {0, 1, 2, 5} x waist ratios {1/3, 1/2, 1, 2, 3} x
// all three derived collection-width modes, with delta = 1. Matrices are
// compared raw (unnormalized), deviations measured relative to the largest
// quadrature magnitude in each case. Also samples the node-doubling check
// and accumulates parity-forbidden residuals.
VerifyReport verify_default_grid(double tolerance, int max_index = 12,
                                 const QuadratureSpec& spec = {});

}  // namespace spdchg
