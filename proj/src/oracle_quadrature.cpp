#include "spdchg/oracle_quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace spdchg {

namespace {

// Node-doubling agreement required of a converged coefficient estimate.
constexpr double kDoublingGate = 1e-10;

constexpr int kNewtonMaxIter = 100;

void check_quadrature_spec(const QuadratureSpec& spec) {
  if (spec.nodes_per_axis < 2)
    throw DomainError("QuadratureSpec: need at least 2 nodes per axis");
  if (!(spec.domain_halfwidth_sigmas > 0.0) || !std::isfinite(spec.domain_halfwidth_sigmas))
    throw DomainError("QuadratureSpec: domain half-width must be positive and finite");
}

void check_detection_width(double sigma, const char* name) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DomainError(std::string("coefficient_quadrature: ") + name +
                      " must be positive and finite");
}

}  // namespace

Quadrature1D gauss_hermite_rule(int n) {
  if (n < 1) throw DomainError("gauss_hermite_rule: need at least one node");

  Quadrature1D rule;
  rule.nodes.assign(static_cast<size_t>(n), 0.0);
  rule.weights.assign(static_cast<size_t>(n), 0.0);

  const int half = (n + 1) / 2;
  std::vector<double> h(static_cast<size_t>(n) + 1);
  std::vector<double> pos(static_cast<size_t>(half), 0.0);
  double z = 0.0;

  for (int i = 0; i < half; ++i) {
    // Root guesses: asymptotic form for the largest root, then a fixed
    // correction, then linear extrapolation from the previously found roots.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * pos[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * pos[1];
    } else {
      z = 2.0 * z - pos[static_cast<size_t>(i) - 2];
    }

    bool converged = false;
    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
      hermite_functions(n, z, h);
      // Derivative of the damped function h_n: sqrt(2n) h_{n-1}(z) - z h_n(z).
      const double fp = std::sqrt(2.0 * n) * h[static_cast<size_t>(n) - 1] -
                        z * h[static_cast<size_t>(n)];
      const double dz = h[static_cast<size_t>(n)] / fp;
      z -= dz;
      if (std::abs(dz) <= 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericError("gauss_hermite_rule: root iteration did not converge for node " +
                             std::to_string(i) + " of " + std::to_string(n),
                         z, std::abs(h[static_cast<size_t>(n)]));

    hermite_functions(n, z, h);
    pos[static_cast<size_t>(i)] = z;
    // Weight premultiplied by exp(z^2): 1 / (n h_{n-1}(z)^2).  All quantities
    // stay O(1) at every node count.
    const double weight =
        1.0 / (static_cast<double>(n) * h[static_cast<size_t>(n) - 1] * h[static_cast<size_t>(n) - 1]);
    rule.nodes[static_cast<size_t>(i)] = -z;
    rule.weights[static_cast<size_t>(i)] = weight;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = z;
    rule.weights[static_cast<size_t>(n - 1 - i)] = weight;
  }
  return rule;
}

Quadrature1D clenshaw_curtis_rule(int n, double halfwidth) {
  if (n < 1) throw DomainError("clenshaw_curtis_rule: need at least one interval");
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
    throw DomainError("clenshaw_curtis_rule: half-width must be positive and finite");

  const int m = n + (n % 2);  // even interval count, m+1 nodes
  Quadrature1D rule;
  rule.nodes.resize(static_cast<size_t>(m) + 1);
  rule.weights.resize(static_cast<size_t>(m) + 1);

  for (int k = 0; k <= m; ++k) {
    const double theta = std::numbers::pi * k / m;
    double w = 1.0 - std::cos(m * theta) / (static_cast<double>(m) * m - 1.0);
    for (int j = 1; j <= m / 2 - 1; ++j)
      w -= 2.0 * std::cos(2.0 * j * theta) / (4.0 * j * j - 1.0);
    const double ck = (k == 0 || k == m) ? 1.0 : 2.0;
    // -cos(pi k / m) runs from -1 to +1, so the abscissas come out ascending.
    rule.nodes[static_cast<size_t>(k)] = -std::cos(theta) * halfwidth;
    rule.weights[static_cast<size_t>(k)] = ck / m * w * halfwidth;
  }
  return rule;
}

double gaussian_approx_delta(double crystal_length, double pump_wavenumber) {
  if (!(crystal_length > 0.0) || !std::isfinite(crystal_length))
    throw DomainError("gaussian_approx_delta: crystal length must be positive and finite");
  if (!(pump_wavenumber > 0.0) || !std::isfinite(pump_wavenumber))
    throw DomainError("gaussian_approx_delta: pump wavenumber must be positive and finite");
  return 0.257 * std::sqrt(crystal_length / (4.0 * pump_wavenumber));
}

double two_photon_amplitude_1d(double q1, double q2, int n, const PhysicalParams& params) {
  params.validate();
  if (n < 0) throw DomainError("two_photon_amplitude_1d: negative pump order");
  return kPairAmplitudeNorm * hg_mode_eval(n, q1 + q2, params.pump_waist) *
         hg_mode_eval(0, q1 - q2, params.pm_width);
}

namespace {

// One quadrature axis in physical coordinates.
struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Builds the rule for one rotated axis whose integrand decays like
// exp(-c_axis q^2) and carries polynomial content up to max_poly_order.
AxisRule make_axis_rule(double c_axis, int max_poly_order, const QuadratureSpec& spec,
                        int nodes_per_axis) {
  AxisRule axis;
  if (spec.rule == QuadratureRule::GaussHermite) {
    const Quadrature1D base = gauss_hermite_rule(nodes_per_axis);
    const double scale = 1.0 / std::sqrt(c_axis);
    axis.nodes.resize(base.nodes.size());
    axis.weights.resize(base.weights.size());
    for (size_t i = 0; i < base.nodes.size(); ++i) {
      axis.nodes[i] = base.nodes[i] * scale;
      axis.weights[i] = base.weights[i] * scale;
    }
  } else {
    // Box wide enough for the classical turning point of the highest
    // polynomial order plus the requested number of envelope widths.
    const double halfwidth = (std::sqrt(2.0 * max_poly_order + 1.0) +
                              spec.domain_halfwidth_sigmas) /
                             std::sqrt(2.0 * c_axis);
    const Quadrature1D base = clenshaw_curtis_rule(nodes_per_axis, halfwidth);
    axis.nodes = base.nodes;
    axis.weights = base.weights;
  }
  return axis;
}

// Raw projection grid: entry (a,b) holds the magnitude-convention projection
// of the pair amplitude onto detection modes (a, b), before the constant-
// phase sign.  Evaluated over a tensor rule in the rotated coordinates
// q+- = (q1 +- q2)/sqrt(2) (unit Jacobian), where the Gaussian envelopes
// separate per axis for sigma1 = sigma2.
Eigen::MatrixXd projection_grid(int n, const PhysicalParams& params, int max_index,
                                double sigma1, double sigma2, const QuadratureSpec& spec,
                                int nodes_per_axis, int max_detection_total) {
  const double w = params.pump_waist;
  const double d = params.pm_width;
  const double c_plus = w * w + 0.25 * (sigma1 * sigma1 + sigma2 * sigma2);
  const double c_minus = d * d + 0.25 * (sigma1 * sigma1 + sigma2 * sigma2);

  const AxisRule plus =
      make_axis_rule(c_plus, n + max_detection_total, spec, nodes_per_axis);
  const AxisRule minus = make_axis_rule(c_minus, max_detection_total, spec, nodes_per_axis);

  // Per-axis amplitude tables: weight times the pump / phase-matching factor.
  std::vector<double> pump(plus.nodes.size());
  for (size_t i = 0; i < plus.nodes.size(); ++i)
    pump[i] = plus.weights[i] * kPairAmplitudeNorm *
              hg_mode_eval(n, std::numbers::sqrt2 * plus.nodes[i], w);
  std::vector<double> pm(minus.nodes.size());
  for (size_t j = 0; j < minus.nodes.size(); ++j)
    pm[j] = minus.weights[j] * hg_mode_eval(0, std::numbers::sqrt2 * minus.nodes[j], d);

  const double mode_scale = std::sqrt(sigma1 * sigma2);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  std::vector<double> h1(static_cast<size_t>(max_index) + 1);
  std::vector<double> h2(static_cast<size_t>(max_index) + 1);
  const Eigen::Map<const Eigen::VectorXd> v1(h1.data(), max_index + 1);
  const Eigen::Map<const Eigen::VectorXd> v2(h2.data(), max_index + 1);

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(max_index + 1, max_index + 1);
  for (size_t i = 0; i < plus.nodes.size(); ++i) {
    if (pump[i] == 0.0) continue;
    for (size_t j = 0; j < minus.nodes.size(); ++j) {
      const double amp = pump[i] * pm[j];
      if (amp == 0.0) continue;
      const double q1 = inv_sqrt2 * (plus.nodes[i] + minus.nodes[j]);
      const double q2 = inv_sqrt2 * (plus.nodes[i] - minus.nodes[j]);
      hermite_functions(max_index, sigma1 * q1, h1);
      hermite_functions(max_index, sigma2 * q2, h2);
      acc.noalias() += (amp * mode_scale) * v1 * v2.transpose();
    }
  }
  return acc;
}

double projection_entry(int n, int a, int b, const PhysicalParams& params, double sigma1,
                        double sigma2, const QuadratureSpec& spec, int nodes_per_axis) {
  const Eigen::MatrixXd grid = projection_grid(n, params, std::max(a, b), sigma1, sigma2,
                                               spec, nodes_per_axis, a + b);
  return grid(a, b);
}

void check_projection_args(int n, const PhysicalParams& params, double sigma1,
                           double sigma2, const QuadratureSpec& spec) {
  if (n < 0) throw DomainError("coefficient_quadrature: negative pump order");
  params.validate();
  check_detection_width(sigma1, "sigma1");
  check_detection_width(sigma2, "sigma2");
  check_quadrature_spec(spec);
}

}  // namespace

double coefficient_quadrature(int n, int a, int b, const PhysicalParams& params,
                              double sigma1, double sigma2, const QuadratureSpec& spec) {
  if (a < 0 || b < 0) throw DomainError("coefficient_quadrature: negative detection index");
  check_projection_args(n, params, sigma1, sigma2, spec);

  const double coarse =
      projection_entry(n, a, b, params, sigma1, sigma2, spec, spec.nodes_per_axis);
  const double fine =
      projection_entry(n, a, b, params, sigma1, sigma2, spec, 2 * spec.nodes_per_axis);
  if (std::abs(fine - coarse) >= kDoublingGate) {
    throw NumericError(
        "coefficient_quadrature: node-doubling check failed; estimates " +
            std::to_string(coarse) + " and " + std::to_string(fine) + " differ by " +
            std::to_string(std::abs(fine - coarse)),
        fine, std::abs(fine - coarse));
  }
  return paper_phase_sign(n, a + b) * fine;
}

Eigen::MatrixXd coefficient_matrix_quadrature(int n, const PhysicalParams& params,
                                              int max_index, double sigma1, double sigma2,
                                              const QuadratureSpec& spec) {
  if (max_index < 0) throw DomainError("coefficient_matrix_quadrature: negative max index");
  check_projection_args(n, params, sigma1, sigma2, spec);

  Eigen::MatrixXd grid = projection_grid(n, params, max_index, sigma1, sigma2, spec,
                                         spec.nodes_per_axis, 2 * max_index);
  for (int a = 0; a <= max_index; ++a)
    for (int b = 0; b <= max_index; ++b) grid(a, b) *= paper_phase_sign(n, a + b);
  return grid;
}

double amplitude_norm_squared_quadrature(int n, const PhysicalParams& params,
                                         const QuadratureSpec& spec) {
  if (n < 0) throw DomainError("amplitude_norm_squared_quadrature: negative pump order");
  params.validate();
  check_quadrature_spec(spec);

  const double w = params.pump_waist;
  const double d = params.pm_width;
  // The squared amplitude separates exactly: 2 v_n(sqrt(2) q+; w)^2 has
  // envelope exp(-2 w^2 q+^2), and likewise for the q- factor.
  const AxisRule plus = make_axis_rule(2.0 * w * w, 2 * n, spec, spec.nodes_per_axis);
  const AxisRule minus = make_axis_rule(2.0 * d * d, 0, spec, spec.nodes_per_axis);

  double sum_plus = 0.0;
  for (size_t i = 0; i < plus.nodes.size(); ++i) {
    const double v = hg_mode_eval(n, std::numbers::sqrt2 * plus.nodes[i], w);
    sum_plus += plus.weights[i] * 2.0 * v * v;
  }
  double sum_minus = 0.0;
  for (size_t j = 0; j < minus.nodes.size(); ++j) {
    const double v = hg_mode_eval(0, std::numbers::sqrt2 * minus.nodes[j], d);
    sum_minus += minus.weights[j] * v * v;
  }
  return sum_plus * sum_minus;
}

std::complex<double> coefficient_quadrature_complex(int n, int a, int b,
                                                    const PhysicalParams& params,
                                                    double sigma1, double sigma2,
                                                    const QuadratureSpec& spec,
                                                    PhaseReading reading) {
  if (a < 0 || b < 0)
    throw DomainError("coefficient_quadrature_complex: negative detection index");
  check_projection_args(n, params, sigma1, sigma2, spec);

  // The pump and phase-matching modes carry their constant phases; the
  // detection modes enter conjugated.  Everything else is the real
  // magnitude-convention projection.
  const std::complex<double> phase = mode_phase_constant(n, reading) *
                                     mode_phase_constant(0, reading) *
                                     std::conj(mode_phase_constant(a, reading)) *
                                     std::conj(mode_phase_constant(b, reading));
  const double projection =
      projection_entry(n, a, b, params, sigma1, sigma2, spec, spec.nodes_per_axis);
  return phase * projection;
}

}  // namespace spdchg
