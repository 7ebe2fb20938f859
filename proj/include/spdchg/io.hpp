#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "spdchg/analysis.hpp"
#include "spdchg/analytic_coefficients.hpp"

namespace spdchg {

// CSV layout: header "a,b,value", one row per grid entry including exact
// zeros, values at 17 significant digits (round-trips double exactly).
void write_matrix_csv(const Eigen::MatrixXd& entries, std::ostream& os);
Eigen::MatrixXd read_matrix_csv(std::istream& is);

nlohmann::json matrix_to_json(const CoefficientMatrix& matrix);
nlohmann::json schmidt_to_json(const SchmidtSpectrum& spectrum);
nlohmann::json params_to_json(const PhysicalParams& params);

// Writes contents to path via a temp file in the same directory plus an
// atomic rename, so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace spdchg
