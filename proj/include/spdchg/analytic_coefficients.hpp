#pragma once

#include <Eigen/Dense>

#include "spdchg/params.hpp"
#include "spdchg/special_functions.hpp"

namespace spdchg {

// B(n,m,k): coefficient of the axis-aligned pair (n+m-k, k) in the expansion
// of a diagonal (45-degree rotated) Hermite-Gauss pair (n, m).  Rows with
// fixed n+m form an orthogonal family: sum_k B(n,m,k) B(n',m',k) = delta.
double diag_hg_coefficient(int n, int m, int k);

// Overlap I(gamma, sigma, t, s) = Int dq v_t(sqrt(2) q; gamma) v_s(q; sigma)
// with unit-norm modes.  Zero when t+s is odd.  Evaluated by the finite
// Gamma-function double series for t > 0 and a closed single-product form for
// t = 0; compensated summation with a cancellation guard (NumericError carries
// the partial sum and the estimated bound when the guard trips).
double overlap_integral(double gamma, double sigma, int t, int s);

namespace detail {

struct OverlapResult {
  double value = 0.0;
  double abs_error = 0.0;  // estimated absolute rounding error of the sum
  double condition = 1.0;  // sum|terms| / |sum|
};

OverlapResult overlap_series(double gamma, double sigma_sq, int t, int s);
OverlapResult overlap_t0_closed(double gamma, double sigma_sq, int s);
// Dispatcher used by the coefficient assembly: closed form for t = 0 (exact
// zeros at matched widths), series otherwise.
OverlapResult overlap_eval(double gamma, double sigma_sq, int t, int s);

}  // namespace detail

// 1D decomposition coefficient C_ab^{(n)}: projection of the unit-norm pair
// amplitude onto detection modes a, b of common width sigma.  Exactly zero
// when a+b and n have different parity.  Entries whose series evaluation
// trips the cancellation guard are recomputed by the quadrature oracle.
double coefficient_1d(int n, int a, int b, const PhysicalParams& params);

struct CoefficientMatrix {
  int pump_index_1d = 0;  // n
  PhysicalParams params;
  int max_index = 0;          // A: indices run 0..A inclusive
  Eigen::MatrixXd entries;    // (A+1) x (A+1); entries(a, b) = C_ab
  double raw_frobenius_norm = 0.0;  // Frobenius norm before any rescaling
  bool normalized = false;

  // Captured-weight deficit of the truncated grid.  The full grid carries
  // unit Frobenius norm, so the deficit is measured directly rather than
  // only estimated from the diagonal's geometric decay.
  double truncation_tail() const;
};

CoefficientMatrix coefficient_matrix(int n, const PhysicalParams& params, int max_index,
                                     bool normalize = true);

// Separable 4D coefficient C^{(nm)}_{jkst} = C_js^{(n)} C_kt^{(m)}.
double coefficient_4d(int n, int m, int j, int k, int s, int t,
                      const PhysicalParams& params);

enum class ClosedFormCase {
  GaussianPumpDiagonal,  // n = 0, Geometric sigma: C_js = delta_js sqrt(1-mu^2) mu^j
  ConfocalBinomial,      // w_p = delta, Geometric sigma: C_ab = sqrt(n!/(2^n a! b!)) on a+b = n
};

// Reference closed forms for the two analytically solvable regimes.
// paper_verbatim selects the historically published Gaussian-pump prefactor
// (w delta/2) (w-delta)^j / (w+delta)^{j+1}, which is not unit-normalized; it
// is kept as a diagnostic and never used by the production pipeline.
double closed_form_reference(ClosedFormCase which, int index_a, int index_b,
                             const PhysicalParams& params, bool paper_verbatim = false);

}  // namespace spdchg
