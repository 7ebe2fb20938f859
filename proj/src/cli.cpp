#include "spdchg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spdchg/analysis.hpp"
#include "spdchg/analytic_coefficients.hpp"
#include "spdchg/errors.hpp"
#include "spdchg/figures.hpp"
#include "spdchg/io.hpp"
#include "spdchg/oracle_quadrature.hpp"
#include "spdchg/params.hpp"
#include "spdchg/verify.hpp"

namespace spdchg {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

constexpr double kDefaultVerifyTolerance = 1e-8;
constexpr const char* kVerifyToleranceEnvVar = "SPDC_HG_VERIFY_TOL";

// Parses "geometric", "pump", "pm", or "explicit:V" into the params fields.
void apply_sigma_mode(const std::string& text, PhysicalParams& params) {
  if (text == "geometric") {
    params.sigma_mode = SigmaMode::Geometric;
    return;
  }
  if (text == "pump") {
    params.sigma_mode = SigmaMode::PumpMatched;
    return;
  }
  if (text == "pm") {
    params.sigma_mode = SigmaMode::PhaseMatched;
    return;
  }
  const std::string prefix = "explicit:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string number = text.substr(prefix.size());
    try {
      size_t consumed = 0;
      const double value = std::stod(number, &consumed);
      if (consumed != number.size())
        throw DomainError("trailing characters after the width value");
      params.sigma_mode = SigmaMode::Explicit;
      params.explicit_sigma = value;
      return;
    } catch (const DomainError&) {
      throw;
    } catch (const std::exception&) {
      throw DomainError("--sigma-mode explicit:V needs a numeric width, got '" + number +
                        "'");
    }
  }
  throw DomainError("--sigma-mode must be geometric, pump, pm, or explicit:V; got '" +
                    text + "'");
}

// Writes to the path atomically, or to stdout when the path is empty.
void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty()) {
    std::cout << contents;
    return;
  }
  atomic_write_file(out_path, contents);
}

double verify_tolerance_default() {
  const char* env = std::getenv(kVerifyToleranceEnvVar);
  if (env == nullptr || *env == '\0') return kDefaultVerifyTolerance;
  char* end = nullptr;
  const double value = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(value > 0.0) || !std::isfinite(value))
    throw DomainError(std::string(kVerifyToleranceEnvVar) + " must be a positive number, got '" +
                      env + "'");
  return value;
}

struct PhysicsFlags {
  int n = 0;
  int m = 0;
  bool m_given = false;
  double pump_waist = 1.0;
  double pm_width = 1.0;
  std::string sigma_mode = "geometric";
  int max_index = 40;

  PhysicalParams to_params() const {
    PhysicalParams params;
    params.pump_waist = pump_waist;
    params.pm_width = pm_width;
    params.pump_order_n = n;
    params.pump_order_m = m;
    apply_sigma_mode(sigma_mode, params);
    params.validate();
    return params;
  }
};

void add_physics_flags(CLI::App* cmd, PhysicsFlags& flags) {
  cmd->add_option("--n", flags.n, "pump transverse order on the x axis")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--m", flags.m, "pump transverse order on the y axis")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--w", flags.pump_waist, "pump angular-spectrum width w_p")
      ->capture_default_str();
  cmd->add_option("--delta", flags.pm_width, "phase-matching width delta")
      ->capture_default_str();
  cmd->add_option("--sigma-mode", flags.sigma_mode,
                  "detection width rule: geometric, pump, pm, or explicit:V")
      ->capture_default_str();
  cmd->add_option("--max-index", flags.max_index, "largest detection-mode index A")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

int run_coeffs(const PhysicsFlags& flags, const std::string& format,
               const std::string& out_path, bool raw) {
  const PhysicalParams params = flags.to_params();
  const CoefficientMatrix matrix =
      coefficient_matrix(flags.n, params, flags.max_index, /*normalize=*/!raw);
  if (format == "csv") {
    std::ostringstream os;
    write_matrix_csv(matrix.entries, os);
    emit(out_path, os.str());
  } else {
    emit(out_path, matrix_to_json(matrix).dump(2) + "\n");
  }
  return kExitOk;
}

int run_schmidt(const PhysicsFlags& flags, const std::string& out_path) {
  const PhysicalParams params = flags.to_params();
  const CoefficientMatrix mx = coefficient_matrix(flags.n, params, flags.max_index);
  const SchmidtSpectrum sx = schmidt_spectrum(mx);

  nlohmann::json j;
  j["n"] = flags.n;
  j["params"] = params_to_json(params);
  j["max_index"] = flags.max_index;

  if (!flags.m_given) {
    j.update(schmidt_to_json(sx));
    emit(out_path, j.dump(2) + "\n");
    return kExitOk;
  }

  // Two-axis pump HG_nm: the state factorizes per axis, so the combined
  // Schmidt weights are the products of the per-axis weights.
  const CoefficientMatrix my = coefficient_matrix(flags.m, params, flags.max_index);
  const SchmidtSpectrum sy = schmidt_spectrum(my);
  SchmidtSpectrum combined;
  combined.lambdas.reserve(sx.lambdas.size() * sy.lambdas.size());
  for (double lx : sx.lambdas)
    for (double ly : sy.lambdas) combined.lambdas.push_back(lx * ly);
  std::sort(combined.lambdas.begin(), combined.lambdas.end(), std::greater<>());
  double sum_sq = 0.0;
  for (double l : combined.lambdas) {
    sum_sq += l * l;
    if (l > 0.0) combined.entropy_bits -= l * std::log2(l);
  }
  combined.schmidt_number = sum_sq > 0.0 ? 1.0 / sum_sq : 1.0;
  combined.truncation_tail =
      std::max(0.0, 1.0 - (1.0 - sx.truncation_tail) * (1.0 - sy.truncation_tail));

  j["m"] = flags.m;
  j.update(schmidt_to_json(combined));
  j["per_axis_entropy_bits"] = {sx.entropy_bits, sy.entropy_bits};
  j["per_axis_schmidt_number"] = {sx.schmidt_number, sy.schmidt_number};
  emit(out_path, j.dump(2) + "\n");
  return kExitOk;
}

int run_verify(const std::string& grid, double tolerance, int max_index) {
  if (grid != "default")
    throw DomainError("verify: the only available grid is 'default', got '" + grid + "'");
  const VerifyReport report = verify_default_grid(tolerance, max_index);
  for (const VerifyCase& vc : report.cases) {
    std::printf("n=%d w/delta=%-8.6g sigma=%-9s rel_dev=%.3e parity=%.3e\n", vc.pump_order,
                vc.w_over_delta, to_string(vc.sigma_mode), vc.max_rel_deviation,
                vc.parity_violation);
  }
  std::printf("max relative deviation: %.6e\n", report.max_rel_deviation);
  std::printf("max parity violation:   %.6e\n", report.max_parity_violation);
  std::printf("tolerance:              %.6e\n", report.tolerance);
  std::printf("%s\n", report.passed ? "PASS" : "FAIL");
  return report.passed ? kExitOk : kExitNumeric;
}

int run_figure(int which, const std::string& out_dir, int max_index, int pixels) {
  HeatmapStyle style;
  style.width_px = pixels;
  style.height_px = pixels;
  const std::vector<std::string> written = render_figure_set(which, out_dir, max_index, style);
  for (const std::string& path : written) std::cout << path << "\n";
  return kExitOk;
}

int run_delta(double crystal_length, double pump_wavenumber) {
  std::cout << format_double(gaussian_approx_delta(crystal_length, pump_wavenumber))
            << "\n";
  return kExitOk;
}

}  // namespace

int run_command(std::vector<std::string> argv) {
  CLI::App app{"Hermite-Gauss mode decomposition of the SPDC two-photon state"};
  app.require_subcommand(1);

  PhysicsFlags coeffs_flags;
  std::string coeffs_format = "csv";
  std::string coeffs_out;
  bool coeffs_raw = false;
  CLI::App* coeffs = app.add_subcommand(
      "coeffs", "compute the detection-mode coefficient matrix for the x-axis pump order");
  add_physics_flags(coeffs, coeffs_flags);
  coeffs->add_option("--format", coeffs_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  coeffs->add_option("--out", coeffs_out, "output file (default: stdout)");
  coeffs->add_flag("--raw", coeffs_raw, "skip unit-Frobenius normalization");

  PhysicsFlags schmidt_flags;
  std::string schmidt_out;
  CLI::App* schmidt = app.add_subcommand(
      "schmidt", "Schmidt spectrum, entanglement entropy, and Schmidt number");
  add_physics_flags(schmidt, schmidt_flags);
  schmidt->add_option("--out", schmidt_out, "output file (default: stdout)");

  std::string verify_grid = "default";
  double verify_tol = -1.0;  // resolved after parsing (flag > env > default)
  int verify_max_index = 12;
  CLI::App* verify = app.add_subcommand(
      "verify", "cross-check the analytic coefficients against the quadrature oracle");
  verify->add_option("--grid", verify_grid, "verification grid")->capture_default_str();
  verify->add_option("--tol", verify_tol,
                     "max allowed relative deviation (default " +
                         format_double(kDefaultVerifyTolerance) + ", or " +
                         kVerifyToleranceEnvVar + ")");
  verify->add_option("--max-index", verify_max_index, "largest detection-mode index A")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  int figure_which = 0;
  std::string figure_out;
  int figure_max_index = 17;
  int figure_px = 360;
  CLI::App* figure =
      app.add_subcommand("figure", "regenerate a coefficient-heatmap figure set");
  figure->add_option("--which", figure_which, "figure set number (1-4)")->required();
  figure->add_option("--out", figure_out, "output directory")->required();
  figure->add_option("--max-index", figure_max_index, "largest detection-mode index A")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  figure->add_option("--px", figure_px, "image width and height in pixels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  double delta_length = 0.0;
  double delta_wavenumber = 0.0;
  CLI::App* delta = app.add_subcommand(
      "delta", "Gaussian-matching phase-matching width from crystal parameters");
  delta->add_option("--crystal-length", delta_length, "crystal length L")->required();
  delta->add_option("--pump-wavenumber", delta_wavenumber, "pump wavenumber K")->required();

  std::vector<const char*> raw_args;
  raw_args.reserve(argv.size());
  for (const std::string& arg : argv) raw_args.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(raw_args.size()), raw_args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (coeffs->parsed()) {
      coeffs_flags.m_given = coeffs->count("--m") > 0;
      return run_coeffs(coeffs_flags, coeffs_format, coeffs_out, coeffs_raw);
    }
    if (schmidt->parsed()) {
      schmidt_flags.m_given = schmidt->count("--m") > 0;
      return run_schmidt(schmidt_flags, schmidt_out);
    }
    if (verify->parsed()) {
      const double tol = verify->count("--tol") > 0 ? verify_tol : verify_tolerance_default();
      return run_verify(verify_grid, tol, verify_max_index);
    }
    if (figure->parsed()) return run_figure(figure_which, figure_out, figure_max_index, figure_px);
    if (delta->parsed()) return run_delta(delta_length, delta_wavenumber);
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace spdchg
