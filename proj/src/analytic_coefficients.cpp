#include "spdchg/analytic_coefficients.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "spdchg/compensated.hpp"
#include "spdchg/oracle_quadrature.hpp"

namespace spdchg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Cancellation level past which an alternating-series value computed in
// doubles carries no trustworthy digits at all.
constexpr double kSeriesConditionCap = 1e12;

// Error budget for a single overlap integral.  Both scales matter: an
// absolute floor alone would reject accurate unit-scale values whose error
// estimate is a few 1e-12, while a relative gate alone would reject genuine
// orthogonality near-zeros (which cancel to machine noise by design).  A
// result fails only when its estimated error breaches the absolute floor and
// is also a non-negligible fraction of the value.
constexpr double kOverlapAbsErrGate = 3e-12;
constexpr double kOverlapRelErrGate = 1e-9;

// Propagated absolute-error budget for one assembled coefficient; entries
// over budget are recomputed by the quadrature oracle.
constexpr double kCoeffErrGate = 1e-10;

// Largest diagonal-mode order for which the binomial convolution stays inside
// the exact range of 128-bit integer arithmetic (the alternating sum is
// bounded by C(n+m, k) <= C(124, 62) ~ 3.2e36).
constexpr int kMaxDiagOrder = 62;

// ln of the unit-norm mode constant 1/sqrt(2^n n! sqrt(pi)).
double log_dn(int n) {
  return -0.5 * (n * std::numbers::ln2 + log_factorial(n) +
                 0.5 * std::log(std::numbers::pi));
}

// C(n, k) exactly; inputs are pre-capped so the result fits in 64 bits and
// every intermediate product fits in 128 bits.
std::int64_t binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;  // divides exactly at every step
  }
  return static_cast<std::int64_t>(acc);
}

}  // namespace

double diag_hg_coefficient(int n, int m, int k) {
  if (n < 0 || m < 0 || k < 0)
    throw DomainError("diag_hg_coefficient: negative index");
  if (k > n + m)
    throw DomainError("diag_hg_coefficient: k = " + std::to_string(k) +
                      " exceeds n + m = " + std::to_string(n + m));
  if (n > kMaxDiagOrder || m > kMaxDiagOrder)
    throw CapabilityError("diag_hg_coefficient: order above " +
                          std::to_string(kMaxDiagOrder) +
                          " exceeds the exact-arithmetic range of the binomial convolution");

  // S = sum_j (-1)^j C(n,j) C(m,k-j): the t^k coefficient of (1-t)^n (1+t)^m.
  __int128 s = 0;
  const int j_lo = std::max(0, k - m);
  const int j_hi = std::min(n, k);
  for (int j = j_lo; j <= j_hi; ++j) {
    const __int128 term =
        static_cast<__int128>(binomial_exact(n, j)) * binomial_exact(m, k - j);
    s += (j % 2 == 0) ? term : -term;
  }
  if (s == 0) return 0.0;

  const bool negative = s < 0;
  const double abs_s = static_cast<double>(negative ? -s : s);
  const double log_mag =
      0.5 * (log_factorial(n + m - k) + log_factorial(k) -
             (n + m) * std::numbers::ln2 - log_factorial(n) - log_factorial(m)) +
      std::log(abs_s);
  const double value = std::exp(log_mag);
  return negative ? -value : value;
}

namespace detail {

OverlapResult overlap_t0_closed(double gamma, double sigma_sq, int s) {
  if (s % 2 != 0) return {0.0, 0.0, 1.0};  // odd integrand
  const double c = gamma * gamma + 0.5 * sigma_sq;
  const int p = s / 2;

  // base = sigma^2/c - 1 computed from the squared width so that matched
  // widths (sigma^2 = 2 gamma^2) give base == 0 and hence exact zeros.
  const double base = (0.5 * sigma_sq - gamma * gamma) / c;
  if (base == 0.0 && p > 0) return {0.0, 0.0, 1.0};

  double log_mag = 0.5 * std::log(gamma) + 0.25 * std::log(sigma_sq) +
                   log_dn(0) + log_dn(s) + log_factorial(s) - log_factorial(p) +
                   0.5 * (std::log(std::numbers::pi) - std::log(c));
  if (p > 0) log_mag += p * std::log(std::abs(base));
  const int sign = (base < 0.0 && p % 2 == 1) ? -1 : 1;

  OverlapResult r;
  r.value = sign * std::exp(log_mag);
  r.abs_error = 16.0 * kEps * std::abs(r.value);  // no cancellation in this path
  r.condition = 1.0;
  return r;
}

OverlapResult overlap_series(double gamma, double sigma_sq, int t, int s) {
  if ((t + s) % 2 != 0) return {0.0, 0.0, 1.0};  // odd integrand

  const double c = gamma * gamma + 0.5 * sigma_sq;
  const double log_c = std::log(c);
  // ln(2 sqrt(2) gamma / sqrt(c)) and ln(2 sigma / sqrt(c)): both bases are
  // positive, so all sign structure lives in the (-1)^{l+j} prefactor.
  const double lx = 1.5 * std::numbers::ln2 + std::log(gamma) - 0.5 * log_c;
  const double ly = std::numbers::ln2 + 0.5 * std::log(sigma_sq) - 0.5 * log_c;
  const double pref = 0.5 * std::log(gamma) + 0.25 * std::log(sigma_sq) -
                      0.5 * log_c + log_dn(t) + log_dn(s) + log_factorial(t) +
                      log_factorial(s);

  const auto term_log = [&](int l, int j) {
    // Gamma(1/2 + (t+s)/2 - l - j); the doubled argument 1 + t + s - 2(l+j)
    // stays >= 1 because l <= t/2 and j <= s/2.
    return (t - 2 * l) * lx + (s - 2 * j) * ly - log_factorial(l) -
           log_factorial(t - 2 * l) - log_factorial(j) - log_factorial(s - 2 * j) +
           log_gamma_half_integer(1 + t + s - 2 * (l + j));
  };

  double max_log = -std::numeric_limits<double>::infinity();
  for (int l = 0; l <= t / 2; ++l)
    for (int j = 0; j <= s / 2; ++j) max_log = std::max(max_log, term_log(l, j));

  CompensatedSum acc;
  for (int l = 0; l <= t / 2; ++l)
    for (int j = 0; j <= s / 2; ++j) {
      const double magnitude = std::exp(term_log(l, j) - max_log);
      acc.add((l + j) % 2 == 0 ? magnitude : -magnitude);
    }

  const double scale = std::exp(pref + max_log);
  OverlapResult r;
  r.value = scale * acc.value();
  r.abs_error = scale * acc.abs_sum * static_cast<double>(acc.count) * kEps;
  r.condition = acc.condition();
  return r;
}

OverlapResult overlap_eval(double gamma, double sigma_sq, int t, int s) {
  // Matched widths: substituting u = sqrt(2) gamma q turns the overlap into
  // a mode orthonormality integral, so I = 2^{-1/4} delta_ts exactly.  The
  // exact branch keeps the matched-width support rules free of series noise.
  if (0.5 * sigma_sq == gamma * gamma) {
    if (t != s) return {0.0, 0.0, 1.0};
    OverlapResult r;
    r.value = std::exp(-0.25 * std::numbers::ln2);
    r.abs_error = 4.0 * kEps * r.value;
    r.condition = 1.0;
    return r;
  }
  if (t == 0) return overlap_t0_closed(gamma, sigma_sq, s);
  return overlap_series(gamma, sigma_sq, t, s);
}

}  // namespace detail

double overlap_integral(double gamma, double sigma, int t, int s) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw DomainError("overlap_integral: gamma must be positive and finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DomainError("overlap_integral: sigma must be positive and finite");
  if (t < 0 || s < 0) throw DomainError("overlap_integral: negative order");

  const detail::OverlapResult r = detail::overlap_eval(gamma, sigma * sigma, t, s);
  // A result is rejected only when it is unreliable on both scales: the
  // estimated rounding error must breach the absolute floor AND be a
  // non-negligible fraction of the value itself.  A unit-scale value carrying
  // a few 1e-12 of noise is fine; a tiny value with tiny noise is a genuine
  // near-zero, also fine.  The condition cap is enforced on top for values
  // large enough that extreme cancellation can only mean lost digits.
  if ((r.abs_error > kOverlapAbsErrGate && r.abs_error > kOverlapRelErrGate * std::abs(r.value)) ||
      (r.condition > kSeriesConditionCap && std::abs(r.value) > kOverlapAbsErrGate)) {
    throw NumericError(
        "overlap_integral: series cancellation exceeded the accuracy budget at t=" +
            std::to_string(t) + ", s=" + std::to_string(s),
        r.value, r.abs_error);
  }
  return r.value;
}

namespace {

struct CoefficientTerm {
  double value = 0.0;
  double abs_error = 0.0;
};

// Assembles C_ab from precomputed per-axis overlap results:
//   C_ab = sqrt(2) P(n, a+b) sum_{k even} B(a,b,k) I_pump[a+b-k] I_delta[k].
CoefficientTerm assemble_entry(int n, int a, int b,
                               const std::vector<detail::OverlapResult>& pump,
                               const std::vector<detail::OverlapResult>& delta) {
  const int total = a + b;
  CompensatedSum acc;
  double err = 0.0;
  for (int k = 0; k <= total; k += 2) {  // odd k: the delta-axis factor vanishes
    const double bk = diag_hg_coefficient(a, b, k);
    if (bk == 0.0) continue;
    const detail::OverlapResult& iw = pump[static_cast<size_t>(total - k)];
    const detail::OverlapResult& id = delta[static_cast<size_t>(k)];
    acc.add(bk * iw.value * id.value);
    err += std::abs(bk) * (iw.abs_error * std::abs(id.value) +
                           std::abs(iw.value) * id.abs_error +
                           iw.abs_error * id.abs_error);
  }
  CoefficientTerm out;
  const double phase = paper_phase_sign(n, total);
  out.value = kPairAmplitudeNorm * phase * acc.value();
  out.abs_error = kPairAmplitudeNorm *
                  (err + acc.abs_sum * static_cast<double>(acc.count) * kEps);
  return out;
}

double quadrature_fallback(int n, int a, int b, const PhysicalParams& params) {
  const double sigma = params.sigma();
  return coefficient_quadrature(n, a, b, params, sigma, sigma, QuadratureSpec{});
}

}  // namespace

double coefficient_1d(int n, int a, int b, const PhysicalParams& params) {
  if (n < 0 || a < 0 || b < 0) throw DomainError("coefficient_1d: negative index");
  params.validate();
  if ((a + b + n) % 2 != 0) return 0.0;  // parity selection rule, exact

  const double sigma_sq = params.sigma_squared();
  const int total = a + b;
  std::vector<detail::OverlapResult> pump(static_cast<size_t>(total) + 1);
  std::vector<detail::OverlapResult> delta(static_cast<size_t>(total) + 1);
  for (int k = 0; k <= total; k += 2) {
    pump[static_cast<size_t>(total - k)] =
        detail::overlap_eval(params.pump_waist, sigma_sq, n, total - k);
    delta[static_cast<size_t>(k)] =
        detail::overlap_eval(params.pm_width, sigma_sq, 0, k);
  }

  const CoefficientTerm entry = assemble_entry(n, a, b, pump, delta);
  if (entry.abs_error > kCoeffErrGate) return quadrature_fallback(n, a, b, params);
  return entry.value;
}

double CoefficientMatrix::truncation_tail() const {
  if (entries.size() == 0) return 1.0;
  return std::max(0.0, 1.0 - raw_frobenius_norm);
}

CoefficientMatrix coefficient_matrix(int n, const PhysicalParams& params, int max_index,
                                     bool normalize) {
  if (n < 0) throw DomainError("coefficient_matrix: negative pump order");
  if (max_index < 0) throw DomainError("coefficient_matrix: negative max index");
  params.validate();
  if (max_index < n)
    std::cerr << "coefficient_matrix: max index " << max_index
              << " is below the pump order " << n
              << "; the grid may capture very little of the state\n";

  CoefficientMatrix out;
  out.pump_index_1d = n;
  out.params = params;
  out.max_index = max_index;
  out.entries = Eigen::MatrixXd::Zero(max_index + 1, max_index + 1);

  const double sigma_sq = params.sigma_squared();
  const int max_total = 2 * max_index;
  std::vector<detail::OverlapResult> pump(static_cast<size_t>(max_total) + 1);
  std::vector<detail::OverlapResult> delta(static_cast<size_t>(max_total) + 1);
  for (int c = 0; c <= max_total; ++c) {
    pump[static_cast<size_t>(c)] =
        detail::overlap_eval(params.pump_waist, sigma_sq, n, c);
    delta[static_cast<size_t>(c)] =
        detail::overlap_eval(params.pm_width, sigma_sq, 0, c);
  }

  // Fill b >= a and mirror: B(a,b,k) = B(b,a,k) for the even k that
  // contribute, so mirroring keeps exchange symmetry bit-exact.
  std::vector<std::pair<int, int>> over_budget;
  for (int a = 0; a <= max_index; ++a) {
    for (int b = a; b <= max_index; ++b) {
      if ((a + b + n) % 2 != 0) continue;  // stays exactly zero
      const CoefficientTerm entry = assemble_entry(n, a, b, pump, delta);
      if (entry.abs_error > kCoeffErrGate) over_budget.emplace_back(a, b);
      out.entries(a, b) = entry.value;
      out.entries(b, a) = entry.value;
    }
  }

  // Entries whose series evaluation exceeded the error budget are recomputed
  // by the quadrature oracle.  One coarse and one doubled-node grid serve all
  // of them; per-entry re-integration would repeat the same node sweep.
  if (!over_budget.empty()) {
    const double sigma = params.sigma();
    QuadratureSpec spec;
    const Eigen::MatrixXd coarse =
        coefficient_matrix_quadrature(n, params, max_index, sigma, sigma, spec);
    spec.nodes_per_axis *= 2;
    const Eigen::MatrixXd fine =
        coefficient_matrix_quadrature(n, params, max_index, sigma, sigma, spec);
    for (const auto& [a, b] : over_budget) {
      const double diff = std::abs(fine(a, b) - coarse(a, b));
      if (diff >= kCoeffErrGate)
        throw NumericError("coefficient_matrix: quadrature fallback did not converge at (" +
                               std::to_string(a) + ", " + std::to_string(b) + ")",
                           fine(a, b), diff);
      out.entries(a, b) = fine(a, b);
      out.entries(b, a) = fine(a, b);
    }
  }

  out.raw_frobenius_norm = out.entries.norm();
  if (normalize) {
    if (out.raw_frobenius_norm > 0.0) {
      out.entries /= out.raw_frobenius_norm;
      out.normalized = true;
    } else {
      std::cerr << "coefficient_matrix: raw Frobenius norm is zero; "
                   "leaving the matrix unnormalized\n";
    }
  }
  return out;
}

double coefficient_4d(int n, int m, int j, int k, int s, int t,
                      const PhysicalParams& params) {
  return coefficient_1d(n, j, s, params) * coefficient_1d(m, k, t, params);
}

double closed_form_reference(ClosedFormCase which, int index_a, int index_b,
                             const PhysicalParams& params, bool paper_verbatim) {
  if (index_a < 0 || index_b < 0)
    throw DomainError("closed_form_reference: negative index");
  params.validate();
  if (params.sigma_mode != SigmaMode::Geometric)
    throw DomainError("closed_form_reference: both closed forms require the geometric "
                      "detection width");

  const double w = params.pump_waist;
  const double d = params.pm_width;

  switch (which) {
    case ClosedFormCase::GaussianPumpDiagonal: {
      if (params.pump_order_n != 0)
        throw DomainError("closed_form_reference: the diagonal form holds only for a "
                          "Gaussian (order 0) pump");
      if (index_a != index_b) return 0.0;
      const int j = index_a;
      if (paper_verbatim)
        return 0.5 * w * d * std::pow(w - d, j) / std::pow(w + d, j + 1);
      const double mu = (w - d) / (w + d);
      return std::sqrt(1.0 - mu * mu) * std::pow(mu, j);  // pow(0, 0) == 1
    }
    case ClosedFormCase::ConfocalBinomial: {
      if (std::abs(w - d) > 1e-12 * std::max(w, d))
        throw DomainError("closed_form_reference: the binomial form requires matched "
                          "pump and phase-matching widths");
      const int n = params.pump_order_n;
      if (index_a + index_b != n)
        throw DomainError("closed_form_reference: the binomial form is defined on "
                          "a + b = n only");
      return std::exp(0.5 * (log_factorial(n) - n * std::numbers::ln2 -
                             log_factorial(index_a) - log_factorial(index_b)));
    }
  }
  throw DomainError("closed_form_reference: unknown case");
}

}  // namespace spdchg
