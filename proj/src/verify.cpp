#include "spdchg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spdchg/analysis.hpp"
#include "spdchg/analytic_coefficients.hpp"

namespace spdchg {

VerifyReport verify_default_grid(double tolerance, int max_index, const QuadratureSpec& spec) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw DomainError("verify_default_grid: tolerance must be positive and finite");
  if (max_index < 0) throw DomainError("verify_default_grid: negative max index");

  const int pump_orders[] = {0, 1, 2, 5};
  const double ratios[] = {1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};
  const SigmaMode modes[] = {SigmaMode::Geometric, SigmaMode::PumpMatched,
                             SigmaMode::PhaseMatched};

  // When the truncation window holds no physical weight (every allowed index
  // pair lies outside it), the oracle matrix is pure quadrature noise and a
  // relative comparison against its largest entry is meaningless.  Flooring
  // the scale turns the comparison absolute in that regime: both pipelines
  // must then agree the window is numerically empty.
  constexpr double kScaleFloor = 1e-6;

  VerifyReport report;
  report.tolerance = tolerance;

  for (int n : pump_orders) {
    for (double ratio : ratios) {
      for (SigmaMode mode : modes) {
        PhysicalParams params;
        params.pump_waist = ratio;  // delta fixed at 1
        params.pm_width = 1.0;
        params.sigma_mode = mode;
        params.pump_order_n = n;
        const double sigma = params.sigma();

        const CoefficientMatrix analytic =
            coefficient_matrix(n, params, max_index, /*normalize=*/false);
        const Eigen::MatrixXd quad =
            coefficient_matrix_quadrature(n, params, max_index, sigma, sigma, spec);

        const double scale = std::max(quad.cwiseAbs().maxCoeff(), kScaleFloor);
        VerifyCase vc;
        vc.pump_order = n;
        vc.w_over_delta = ratio;
        vc.sigma_mode = mode;
        vc.max_rel_deviation = (analytic.entries - quad).cwiseAbs().maxCoeff() / scale;

        // Parity residual of the oracle matrix, relative to its own largest
        // entry (the analytic side is exactly zero there by construction).
        double parity = 0.0;
        for (int a = 0; a <= max_index; ++a)
          for (int b = 0; b <= max_index; ++b)
            if ((a + b + n) % 2 != 0) parity = std::max(parity, std::abs(quad(a, b)));
        vc.parity_violation = parity / scale;

        // Node-doubling spot check at the oracle's largest entry; a failed
        // check throws NumericError out of the whole run.
        Eigen::Index amax = 0, bmax = 0;
        quad.cwiseAbs().maxCoeff(&amax, &bmax);
        coefficient_quadrature(n, static_cast<int>(amax), static_cast<int>(bmax), params,
                               sigma, sigma, spec);

        report.max_rel_deviation = std::max(report.max_rel_deviation, vc.max_rel_deviation);
        report.max_parity_violation =
            std::max(report.max_parity_violation, vc.parity_violation);
        report.cases.push_back(vc);
      }
    }
  }

  report.passed = report.max_rel_deviation <= tolerance &&
                  report.max_parity_violation <= tolerance;
  return report;
}

}  // namespace spdchg
