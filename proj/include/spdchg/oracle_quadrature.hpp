#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spdchg/params.hpp"
#include "spdchg/special_functions.hpp"

namespace spdchg {

enum class QuadratureRule { GaussHermite, ClenshawCurtis };

struct QuadratureSpec {
  int nodes_per_axis = 200;
  // Clenshaw-Curtis box half-width, measured in Gaussian-envelope widths
  // beyond the classical turning point of the highest polynomial order on the
  // axis.  Gauss-Hermite needs no box.
  double domain_halfwidth_sigmas = 8.0;
  QuadratureRule rule = QuadratureRule::GaussHermite;
};

// Nodes and weights for plain integrals Int f(x) dx of functions that decay
// like exp(-x^2) (Gauss-Hermite weights come premultiplied by exp(x_i^2), so
// the integrand is evaluated as-is and nothing under/overflows at high node
// counts).
struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Quadrature1D gauss_hermite_rule(int n);
// n+1 nodes (n rounded up to even) on [-halfwidth, halfwidth].
Quadrature1D clenshaw_curtis_rule(int n, double halfwidth);

// Gaussian-matching width of the collinear phase-matching function:
// delta = 0.257 sqrt(L / (4 K)).
double gaussian_approx_delta(double crystal_length, double pump_wavenumber);

// Unit-norm 1D pair amplitude sqrt(2) v_n(q1+q2; w_p) v_0(q1-q2; delta).
double two_photon_amplitude_1d(double q1, double q2, int n, const PhysicalParams& params);

// Quadrature estimate of C_ab^{(n)} (same value convention as coefficient_1d,
// including the parity phase), with detection widths that may differ as a
// diagnostic.  Runs the node-doubling convergence check and throws
// NumericError carrying both estimates if they disagree by 1e-10 or more.
double coefficient_quadrature(int n, int a, int b, const PhysicalParams& params,
                              double sigma1, double sigma2, const QuadratureSpec& spec);

// Whole coefficient grid in one pass over the tensor node set (no per-entry
// doubling check; callers sample-check convergence separately).
Eigen::MatrixXd coefficient_matrix_quadrature(int n, const PhysicalParams& params,
                                              int max_index, double sigma1, double sigma2,
                                              const QuadratureSpec& spec);

// Squared L2 norm of the 1D pair amplitude by 2D quadrature (1 by
// construction; computed honestly for the truncation-monotonicity checks).
double amplitude_norm_squared_quadrature(int n, const PhysicalParams& params,
                                         const QuadratureSpec& spec);

// Complex-mode projection used to verify the constant-phase cancellation:
// with PaperPhase constants the imaginary part must vanish and the real part
// must reproduce coefficient_quadrature under either reading of -i^n.
std::complex<double> coefficient_quadrature_complex(int n, int a, int b,
                                                    const PhysicalParams& params,
                                                    double sigma1, double sigma2,
                                                    const QuadratureSpec& spec,
                                                    PhaseReading reading);

}  // namespace spdchg
