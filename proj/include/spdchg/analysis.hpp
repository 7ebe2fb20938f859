#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spdchg/analytic_coefficients.hpp"

namespace spdchg {

struct SchmidtSpectrum {
  std::vector<double> lambdas;  // squared singular values, descending
  double entropy_bits = 0.0;    // -sum lambda log2 lambda (0 log 0 := 0)
  double schmidt_number = 1.0;  // 1 / sum lambda^2
  double truncation_tail = 0.0;
};

// Schmidt decomposition of a normalized coefficient matrix.  Throws
// PreconditionError if the matrix was not normalized.
SchmidtSpectrum schmidt_spectrum(const CoefficientMatrix& matrix);

// Largest |entry| on parity-forbidden positions (a+b and n of opposite
// parity); 0 when no forbidden position exists in the grid.
double parity_violation(const CoefficientMatrix& matrix);

// Entry signs (-1/0/+1) with zero threshold 1e-12 * max|entry|.
Eigen::MatrixXi sign_pattern(const CoefficientMatrix& matrix);

// Nonzero support with threshold 1e-10 * max|entry|.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> support_pattern(
    const CoefficientMatrix& matrix);

}  // namespace spdchg
