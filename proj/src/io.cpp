#include "spdchg/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spdchg/errors.hpp"

namespace spdchg {

void write_matrix_csv(const Eigen::MatrixXd& entries, std::ostream& os) {
  os << "a,b,value\n";
  char buf[96];
  for (Eigen::Index a = 0; a < entries.rows(); ++a)
    for (Eigen::Index b = 0; b < entries.cols(); ++b) {
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%.17g\n", static_cast<long long>(a),
                    static_cast<long long>(b), entries(a, b));
      os << buf;
    }
  if (!os) throw std::runtime_error("write_matrix_csv: stream write failed");
}

Eigen::MatrixXd read_matrix_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw DomainError("read_matrix_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "a,b,value")
    throw DomainError("read_matrix_csv: expected header 'a,b,value', got '" + line + "'");

  struct Entry {
    long a, b;
    double value;
  };
  std::vector<Entry> parsed;
  long max_index = -1;
  long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Entry e{};
    char trailing = '\0';
    const int matched =
        std::sscanf(line.c_str(), "%ld,%ld,%lf%c", &e.a, &e.b, &e.value, &trailing);
    if (matched != 3 || e.a < 0 || e.b < 0)
      throw DomainError("read_matrix_csv: malformed row at line " +
                        std::to_string(line_no) + ": '" + line + "'");
    max_index = std::max({max_index, e.a, e.b});
    parsed.push_back(e);
  }
  if (max_index < 0) throw DomainError("read_matrix_csv: no data rows");

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(max_index + 1, max_index + 1);
  for (const Entry& e : parsed) out(e.a, e.b) = e.value;
  return out;
}

nlohmann::json params_to_json(const PhysicalParams& params) {
  nlohmann::json j;
  j["pump_waist"] = params.pump_waist;
  j["pm_width"] = params.pm_width;
  j["sigma_mode"] = to_string(params.sigma_mode);
  j["sigma"] = params.sigma();
  j["pump_order"] = {params.pump_order_n, params.pump_order_m};
  return j;
}

nlohmann::json matrix_to_json(const CoefficientMatrix& matrix) {
  nlohmann::json j;
  j["n"] = matrix.pump_index_1d;
  j["params"] = params_to_json(matrix.params);
  j["max_index"] = matrix.max_index;
  std::vector<std::vector<double>> rows(static_cast<size_t>(matrix.entries.rows()));
  for (Eigen::Index a = 0; a < matrix.entries.rows(); ++a) {
    auto& row = rows[static_cast<size_t>(a)];
    row.resize(static_cast<size_t>(matrix.entries.cols()));
    for (Eigen::Index b = 0; b < matrix.entries.cols(); ++b)
      row[static_cast<size_t>(b)] = matrix.entries(a, b);
  }
  j["entries"] = rows;
  j["raw_frobenius_norm"] = matrix.raw_frobenius_norm;
  j["normalized"] = matrix.normalized;
  return j;
}

nlohmann::json schmidt_to_json(const SchmidtSpectrum& spectrum) {
  nlohmann::json j;
  j["lambdas"] = spectrum.lambdas;
  j["entropy_bits"] = spectrum.entropy_bits;
  j["schmidt_number"] = spectrum.schmidt_number;
  j["truncation_tail"] = spectrum.truncation_tail;
  return j;
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path parent = target.parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);  // best effort; open error reports below
  }
  const fs::path temp = target.string() + ".tmp";

  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("atomic_write_file: cannot open '" + temp.string() +
                               "': " + std::strerror(errno));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out)
      throw std::runtime_error("atomic_write_file: write to '" + temp.string() +
                               "' failed");
  }

  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw std::runtime_error("atomic_write_file: rename to '" + target.string() +
                             "' failed: " + ec.message());
  }
}

}  // namespace spdchg
