#include "spdchg/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "spdchg/compensated.hpp"

namespace spdchg {

namespace {

// Above this order H_n(x) is reconstructed from its log form; the raw
// recurrence value would still be representable for many x, but the log path
// is uniformly safe and the crossover keeps the direct path simple.
constexpr int kDirectRecurrenceMax = 150;

constexpr int kLogTableSize = 16384;

// Rescale margin for the log-form recurrence: far below DBL_MAX so one
// recurrence step after a rescale can never overflow.
constexpr double kRescaleThreshold = 1e280;

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogTableSize);
    CompensatedSum acc;
    t[0] = 0.0;
    for (int k = 1; k < kLogTableSize; ++k) {
      acc.add(std::log(static_cast<double>(k)));
      t[k] = acc.value();
    }
    return t;
  }();
  return table;
}

// Entry k holds ln Gamma(k + 1/2), accumulated from Gamma(1/2) = sqrt(pi).
const std::vector<double>& log_gamma_half_odd_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogTableSize);
    CompensatedSum acc;
    acc.add(0.5 * std::log(std::numbers::pi));
    t[0] = acc.value();
    for (int k = 1; k < kLogTableSize; ++k) {
      acc.add(std::log(k - 0.5));
      t[k] = acc.value();
    }
    return t;
  }();
  return table;
}

void check_hermite_args(const char* fn, int order, double x, int max_order) {
  if (order < 0)
    throw DomainError(std::string(fn) + ": negative order " + std::to_string(order));
  if (max_order < 0)
    throw DomainError(std::string(fn) + ": negative order cap " + std::to_string(max_order));
  if (order > max_order)
    throw CapabilityError(std::string(fn) + ": order " + std::to_string(order) +
                          " exceeds the configured cap " + std::to_string(max_order));
  if (!std::isfinite(x))
    throw DomainError(std::string(fn) + ": nonfinite argument");
}

}  // namespace

double log_factorial(int n) {
  if (n < 0)
    throw DomainError("log_factorial: negative argument " + std::to_string(n));
  if (n < kLogTableSize) return log_factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_gamma_half_integer(int two_z) {
  if (two_z <= 0)
    throw DomainError("log_gamma_half_integer: argument 2z = " + std::to_string(two_z) +
                      " must be positive");
  if (two_z % 2 == 0) return log_factorial(two_z / 2 - 1);
  const int k = (two_z - 1) / 2;
  if (k < kLogTableSize) return log_gamma_half_odd_table()[k];
  return std::lgamma(0.5 * two_z);
}

LogSigned hermite_eval_log(int order, double x, int max_order) {
  check_hermite_args("hermite_eval_log", order, x, max_order);
  if (order == 0) return {0.0, 1};

  double prev = 1.0;      // H_0
  double cur = 2.0 * x;   // H_1
  double log_scale = 0.0;
  for (int k = 1; k < order; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
    if (std::max(std::abs(prev), std::abs(cur)) > kRescaleThreshold) {
      prev /= kRescaleThreshold;
      cur /= kRescaleThreshold;
      log_scale += std::log(kRescaleThreshold);
    }
  }
  if (cur == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {log_scale + std::log(std::abs(cur)), cur > 0.0 ? 1 : -1};
}

double hermite_eval(int order, double x, int max_order) {
  check_hermite_args("hermite_eval", order, x, max_order);
  if (order <= kDirectRecurrenceMax) {
    if (order == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * x;
    for (int k = 1; k < order; ++k) {
      const double next = 2.0 * x * cur - 2.0 * k * prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  const LogSigned ls = hermite_eval_log(order, x, max_order);
  if (ls.sign == 0) return 0.0;
  return ls.sign * std::exp(ls.log_abs);  // overflows to +/-inf if the value does
}

void hermite_functions(int max_order, double x, std::span<double> out) {
  if (max_order < 0)
    throw DomainError("hermite_functions: negative order " + std::to_string(max_order));
  if (out.size() < static_cast<size_t>(max_order) + 1)
    throw PreconditionError("hermite_functions: output span holds " +
                            std::to_string(out.size()) + " values, need " +
                            std::to_string(max_order + 1));
  if (!std::isfinite(x))
    throw DomainError("hermite_functions: nonfinite argument");

  const double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  out[0] = h0;
  if (max_order == 0) return;
  out[1] = std::numbers::sqrt2 * x * h0;
  for (int k = 1; k < max_order; ++k)
    out[k + 1] = x * std::sqrt(2.0 / (k + 1)) * out[k] - std::sqrt(k / (k + 1.0)) * out[k - 1];
}

double hermite_function(int order, double x) {
  if (order < 0)
    throw DomainError("hermite_function: negative order " + std::to_string(order));
  std::vector<double> buf(static_cast<size_t>(order) + 1);
  hermite_functions(order, x, buf);
  return buf[static_cast<size_t>(order)];
}

namespace {

void check_mode_args(const char* fn, int order, double q, double width) {
  if (order < 0)
    throw DomainError(std::string(fn) + ": negative order " + std::to_string(order));
  if (!(width > 0.0) || !std::isfinite(width))
    throw DomainError(std::string(fn) + ": width must be positive and finite");
  if (!std::isfinite(q))
    throw DomainError(std::string(fn) + ": nonfinite coordinate");
}

}  // namespace

double hg_mode_eval(int order, double q, double width, const ModeConvention& conv) {
  check_mode_args("hg_mode_eval", order, q, width);
  double value = std::sqrt(width) * hermite_function(order, width * q);
  if (conv.normalization == ModeNormalization::PaperDn)
    value /= std::numbers::sqrt2;
  return value;
}

std::complex<double> hg_mode_eval_complex(int order, double q, double width,
                                          const ModeConvention& conv) {
  const double real_value = hg_mode_eval(order, q, width, conv);
  if (conv.phase == ModePhase::RealPositiveLeading) return {real_value, 0.0};
  return real_value * mode_phase_constant(order, conv.reading);
}

std::complex<double> mode_phase_constant(int order, PhaseReading reading) {
  if (order < 0)
    throw DomainError("mode_phase_constant: negative order " + std::to_string(order));
  const std::complex<double> i_unit(0.0, 1.0);
  // The two readings agree at odd orders and differ by a sign at even ones.
  switch (order % 4) {
    case 0: return reading == PhaseReading::MinusIPowN ? -1.0 : 1.0;
    case 1: return -i_unit;
    case 2: return reading == PhaseReading::MinusIPowN ? 1.0 : -1.0;
    default: return i_unit;
  }
}

double paper_phase_sign(int pump_order, int total_detection_order) {
  if (pump_order < 0 || total_detection_order < 0)
    throw DomainError("paper_phase_sign: negative order");
  const int diff = pump_order - total_detection_order;
  if (diff % 2 != 0) return 1.0;  // parity-forbidden; coefficient is zero anyway
  return (diff / 2) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace spdchg
