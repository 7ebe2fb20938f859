#include "spdchg/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace spdchg {

SchmidtSpectrum schmidt_spectrum(const CoefficientMatrix& matrix) {
  if (!matrix.normalized)
    throw PreconditionError(
        "schmidt_spectrum: the coefficient matrix must be normalized (the Schmidt "
        "weights of a state are defined up to its norm)");

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix.entries);
  const Eigen::VectorXd& sv = svd.singularValues();  // descending

  SchmidtSpectrum out;
  out.lambdas.resize(static_cast<size_t>(sv.size()));
  double sum_sq = 0.0;
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double lambda = sv(i) * sv(i);
    out.lambdas[static_cast<size_t>(i)] = lambda;
    sum_sq += lambda * lambda;
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  out.entropy_bits = entropy;
  out.schmidt_number = sum_sq > 0.0 ? 1.0 / sum_sq : 1.0;
  // Weight the truncated grid failed to capture: the raw squared Frobenius
  // norm is the captured probability of the unit-norm state.
  out.truncation_tail = std::max(
      0.0, 1.0 - matrix.raw_frobenius_norm * matrix.raw_frobenius_norm);
  return out;
}

double parity_violation(const CoefficientMatrix& matrix) {
  double worst = 0.0;
  for (int a = 0; a <= matrix.max_index; ++a)
    for (int b = 0; b <= matrix.max_index; ++b)
      if ((a + b + matrix.pump_index_1d) % 2 != 0)
        worst = std::max(worst, std::abs(matrix.entries(a, b)));
  return worst;
}

Eigen::MatrixXi sign_pattern(const CoefficientMatrix& matrix) {
  const double threshold = 1e-12 * matrix.entries.cwiseAbs().maxCoeff();
  Eigen::MatrixXi out(matrix.entries.rows(), matrix.entries.cols());
  for (Eigen::Index a = 0; a < matrix.entries.rows(); ++a)
    for (Eigen::Index b = 0; b < matrix.entries.cols(); ++b) {
      const double v = matrix.entries(a, b);
      out(a, b) = std::abs(v) <= threshold ? 0 : (v > 0.0 ? 1 : -1);
    }
  return out;
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> support_pattern(
    const CoefficientMatrix& matrix) {
  const double threshold = 1e-10 * matrix.entries.cwiseAbs().maxCoeff();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> out(matrix.entries.rows(),
                                                          matrix.entries.cols());
  for (Eigen::Index a = 0; a < matrix.entries.rows(); ++a)
    for (Eigen::Index b = 0; b < matrix.entries.cols(); ++b)
      out(a, b) = std::abs(matrix.entries(a, b)) > threshold;
  return out;
}

}  // namespace spdchg
