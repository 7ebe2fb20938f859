#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "reference_oracles.hpp"
#include "spdchg/analytic_coefficients.hpp"
#include "spdchg/oracle_quadrature.hpp"

using namespace spdchg;

namespace {

PhysicalParams make_params(double w, double delta, SigmaMode mode = SigmaMode::Geometric,
                           int n = 0, double explicit_sigma = 0.0) {
  PhysicalParams p;
  p.pump_waist = w;
  p.pm_width = delta;
  p.sigma_mode = mode;
  p.explicit_sigma = explicit_sigma;
  p.pump_order_n = n;
  return p;
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

// ---------------------------------------------------------------------------
// Diagonal-basis change coefficients B(n, m, k)
// ---------------------------------------------------------------------------

TEST_CASE("diagonal-basis coefficients match hand-computed values") {
  CHECK(diag_hg_coefficient(0, 0, 0) == 1.0);
  CHECK(std::fabs(diag_hg_coefficient(1, 0, 0) - kInvSqrt2) <= 1e-15);
  CHECK(std::fabs(diag_hg_coefficient(1, 0, 1) + kInvSqrt2) <= 1e-15);
  CHECK(diag_hg_coefficient(1, 1, 1) == 0.0);  // the convolution cancels exactly

  const double sqrt38 = std::sqrt(3.0 / 8.0);
  const double sqrt2q = std::numbers::sqrt2 / 4.0;
  CHECK(std::fabs(diag_hg_coefficient(2, 1, 0) - sqrt38) <= 1e-15);
  CHECK(std::fabs(diag_hg_coefficient(2, 1, 1) + sqrt2q) <= 1e-15);
  CHECK(std::fabs(diag_hg_coefficient(2, 1, 2) + sqrt2q) <= 1e-15);
  CHECK(std::fabs(diag_hg_coefficient(2, 1, 3) - sqrt38) <= 1e-15);

  double sum_sq = 0.0;
  for (int k = 0; k <= 3; ++k) sum_sq += diag_hg_coefficient(2, 1, k) * diag_hg_coefficient(2, 1, k);
  CHECK(std::fabs(sum_sq - 1.0) <= 1e-14);
}

TEST_CASE("basis-change rows are orthonormal within a fixed total order") {
  const int total = 6;
  for (int n1 = 0; n1 <= total; ++n1) {
    for (int n2 = 0; n2 <= total; ++n2) {
      double dot = 0.0;
      for (int k = 0; k <= total; ++k)
        dot += diag_hg_coefficient(n1, total - n1, k) * diag_hg_coefficient(n2, total - n2, k);
      const double expected = (n1 == n2) ? 1.0 : 0.0;
      CHECK(std::fabs(dot - expected) <= 1e-13);
    }
  }
}

TEST_CASE("basis-change swap symmetry alternates with k") {
  for (int n = 0; n <= 5; ++n) {
    for (int m = 0; m <= 5; ++m) {
      for (int k = 0; k <= n + m; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::fabs(diag_hg_coefficient(m, n, k) - sign * diag_hg_coefficient(n, m, k)) <=
              1e-14);
      }
    }
  }
}

TEST_CASE("basis-change argument and capability limits") {
  CHECK_THROWS_AS(diag_hg_coefficient(2, 1, 4), DomainError);  // k > n + m
  CHECK_THROWS_AS(diag_hg_coefficient(-1, 0, 0), DomainError);
  CHECK_THROWS_AS(diag_hg_coefficient(0, -2, 0), DomainError);
  CHECK_THROWS_AS(diag_hg_coefficient(0, 0, -1), DomainError);
  CHECK_NOTHROW(diag_hg_coefficient(62, 62, 62));  // per-index cap, still exact
  CHECK_THROWS_AS(diag_hg_coefficient(63, 0, 0), CapabilityError);
  CHECK_THROWS_AS(diag_hg_coefficient(0, 63, 5), CapabilityError);
}

// ---------------------------------------------------------------------------
// Overlap integrals I(gamma, sigma, t, s)
// ---------------------------------------------------------------------------

TEST_CASE("overlap vanishes exactly for odd total order") {
  for (int t = 0; t <= 5; ++t)
    for (int s = 0; s <= 5; ++s)
      if ((t + s) % 2 == 1) CHECK(overlap_integral(1.3, 0.8, t, s) == 0.0);
}

TEST_CASE("matched widths reduce the overlap to an exact orthonormality integral") {
  const double gamma = 0.8;
  // Through the public interface sigma = sqrt(2)*gamma is rounded, so the
  // match is only near-exact ...
  const double sigma = std::numbers::sqrt2 * gamma;
  for (int t = 0; t <= 6; ++t) {
    for (int s = 0; s <= 6; ++s) {
      const double got = overlap_integral(gamma, sigma, t, s);
      if (t == s)
        CHECK(std::fabs(got - testref::kTwoToMinusQuarter) <= 1e-14);
      else
        CHECK(std::fabs(got) <= 1e-14);
    }
  }
  // ... while handing the dispatcher the squared width exactly makes the
  // orthonormality exact, which is what the matched-width matrix cases rely on.
  for (int t = 0; t <= 6; ++t) {
    for (int s = 0; s <= 6; ++s) {
      const auto r = detail::overlap_eval(gamma, 2.0 * gamma * gamma, t, s);
      if (t == s)
        CHECK(std::fabs(r.value - testref::kTwoToMinusQuarter) <= 1e-15);
      else
        CHECK(r.value == 0.0);
    }
  }
}

TEST_CASE("overlap agrees with frozen arbitrary-precision values") {
  CHECK(std::fabs(overlap_integral(1.0, 0.7, 3, 5) - testref::kOverlap_1_07_3_5) <= 1e-13);
  CHECK(std::fabs(overlap_integral(2.0, 1.3, 0, 4) - testref::kOverlap_2_13_0_4) <= 1e-13);
  CHECK(std::fabs(overlap_integral(0.5, 2.0, 6, 2) - testref::kOverlap_05_2_6_2) <= 1e-13);
}

TEST_CASE("overlap agrees with the independent single-sum reference") {
  for (double gamma : {0.5, 1.0, 2.0}) {
    for (double sigma : {0.7, 1.3, 2.6}) {
      for (int t = 0; t <= 8; ++t) {
        for (int s = 0; s <= 8; ++s) {
          if ((t + s) % 2 != 0) continue;
          const double got = overlap_integral(gamma, sigma, t, s);
          const double want = static_cast<double>(testref::overlap_single_sum(gamma, sigma, t, s));
          CHECK(std::fabs(got - want) <= 1e-12 + 1e-11 * std::fabs(want));
        }
      }
    }
  }
}

TEST_CASE("the closed form for t=0 matches the general series") {
  for (double gamma : {0.6, 1.1}) {
    for (double sigma : {0.9, 2.2}) {
      for (int s = 0; s <= 20; s += 2) {
        const auto closed = detail::overlap_t0_closed(gamma, sigma * sigma, s);
        const auto series = detail::overlap_series(gamma, sigma * sigma, 0, s);
        // The general series legitimately carries more rounding noise than
        // the closed product at high s; its own error estimate sets the bar.
        CHECK(std::fabs(closed.value - series.value) <=
              1e-13 + 4.0 * (closed.abs_error + series.abs_error));
      }
    }
  }
}

TEST_CASE("catastrophic cancellation raises a numeric error carrying diagnostics") {
  CHECK_THROWS_AS(overlap_integral(5.0, 0.3, 60, 60), NumericError);
  try {
    overlap_integral(5.0, 0.3, 60, 60);
  } catch (const NumericError& e) {
    CHECK(std::isfinite(e.partial_sum));
    CHECK(e.error_bound > 0.0);
  }
  // Near-matched widths cancel to a genuinely tiny value; that is not an
  // error, the result simply is small.
  CHECK_NOTHROW(overlap_integral(1.0, 1.41421356, 2, 8));
  CHECK(std::fabs(overlap_integral(1.0, 1.41421356, 2, 8)) < 1e-6);
}

TEST_CASE("overlap argument validation") {
  CHECK_THROWS_AS(overlap_integral(0.0, 1.0, 0, 0), DomainError);
  CHECK_THROWS_AS(overlap_integral(1.0, -0.5, 0, 0), DomainError);
  CHECK_THROWS_AS(overlap_integral(1.0, 1.0, -1, 0), DomainError);
  CHECK_THROWS_AS(overlap_integral(1.0, 1.0, 0, -3), DomainError);
}

// ---------------------------------------------------------------------------
// 1D coefficients
// ---------------------------------------------------------------------------

TEST_CASE("parity-forbidden 1D coefficients are exactly zero") {
  const std::vector<PhysicalParams> cases = {
      make_params(1.0, 1.0), make_params(2.5, 0.7, SigmaMode::PumpMatched),
      make_params(0.4, 1.9, SigmaMode::PhaseMatched),
      make_params(1.2, 0.9, SigmaMode::Explicit, 0, 0.6)};
  for (const auto& p : cases) {
    CHECK(coefficient_1d(0, 0, 1, p) == 0.0);
    CHECK(coefficient_1d(1, 1, 1, p) == 0.0);
    CHECK(coefficient_1d(2, 2, 1, p) == 0.0);
    CHECK(coefficient_1d(3, 0, 0, p) == 0.0);
  }
}

TEST_CASE("confocal coefficient C_11 for a second-order pump is 1/sqrt(2)") {
  const PhysicalParams p = make_params(1.7, 1.7);
  CHECK(std::fabs(coefficient_1d(2, 1, 1, p) - kInvSqrt2) <= 1e-12);
}

TEST_CASE("Gaussian-pump diagonal decays geometrically in the waist ratio") {
  const PhysicalParams p = make_params(2.0, 1.0);
  const double c00 = coefficient_1d(0, 0, 0, p);
  CHECK(c00 > 0.0);
  for (int j = 1; j <= 8; ++j) {
    const double ratio = coefficient_1d(0, j, j, p) / c00;
    CHECK(std::fabs(ratio - std::pow(3.0, -j)) <= 1e-10);
  }
}

TEST_CASE("diagonal signs alternate when the pump is narrower than the phase matching") {
  const PhysicalParams p = make_params(0.5, 1.0);
  for (int j = 0; j <= 10; ++j) {
    const double cjj = coefficient_1d(0, j, j, p);
    CHECK(cjj != 0.0);
    CHECK((j % 2 == 0 ? cjj > 0.0 : cjj < 0.0));
  }
}

TEST_CASE("1D coefficients are invariant under a common rescaling of all widths") {
  for (double c : {0.1, 10.0}) {
    const PhysicalParams base = make_params(1.5, 0.9, SigmaMode::Geometric, 2);
    const PhysicalParams scaled = make_params(c * 1.5, c * 0.9, SigmaMode::Geometric, 2);
    CHECK(std::fabs(coefficient_1d(2, 3, 1, base) - coefficient_1d(2, 3, 1, scaled)) <= 1e-12);

    const PhysicalParams base_e = make_params(1.5, 0.9, SigmaMode::Explicit, 1, 0.7);
    const PhysicalParams scaled_e = make_params(c * 1.5, c * 0.9, SigmaMode::Explicit, 1, c * 0.7);
    CHECK(std::fabs(coefficient_1d(1, 2, 1, base_e) - coefficient_1d(1, 2, 1, scaled_e)) <=
          1e-12);
  }
}

TEST_CASE("1D coefficients agree with the quadrature oracle at a high-order spot") {
  const PhysicalParams p = make_params(3.0, 1.0, SigmaMode::Geometric, 5);
  const QuadratureSpec spec;
  const double sigma = p.sigma();
  for (auto [a, b] : {std::pair{14, 13}, std::pair{9, 2}}) {
    const double analytic = coefficient_1d(5, a, b, p);
    const double quad = coefficient_quadrature(5, a, b, p, sigma, sigma, spec);
    CHECK(std::fabs(analytic - quad) <= 1e-9);
  }
}

// ---------------------------------------------------------------------------
// Coefficient matrices
// ---------------------------------------------------------------------------

TEST_CASE("a confocal Gaussian pump produces a separable matrix") {
  const auto m = coefficient_matrix(0, make_params(1.0, 1.0), 5);
  CHECK(std::fabs(m.entries(0, 0) - 1.0) <= 1e-14);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b)
      if (a != 0 || b != 0) CHECK(m.entries(a, b) == 0.0);
  CHECK(std::fabs(m.raw_frobenius_norm - 1.0) <= 1e-14);
  CHECK(m.normalized);
  CHECK(m.truncation_tail() <= 1e-14);
}

TEST_CASE("a confocal first-order pump splits evenly across the antidiagonal") {
  const auto m = coefficient_matrix(1, make_params(0.8, 0.8, SigmaMode::Geometric, 1), 3);
  CHECK(std::fabs(m.entries(0, 1) - kInvSqrt2) <= 1e-14);
  CHECK(std::fabs(m.entries(1, 0) - kInvSqrt2) <= 1e-14);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      if (!((a == 0 && b == 1) || (a == 1 && b == 0))) CHECK(m.entries(a, b) == 0.0);
}

TEST_CASE("pump-matched collection removes all entries below the pump order") {
  const auto m = coefficient_matrix(2, make_params(2.0, 1.0, SigmaMode::PumpMatched, 2), 6);
  CHECK(m.entries(0, 0) == 0.0);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      if (a + b < 2) CHECK(std::fabs(m.entries(a, b)) <= 1e-15);
  // The matrix itself is far from empty.
  CHECK(m.entries.cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("matrices are exchange-symmetric and respect parity exactly") {
  const std::vector<std::pair<int, PhysicalParams>> cases = {
      {5, make_params(1.0, 1.0, SigmaMode::Geometric, 5)},
      {0, make_params(2.0, 1.0, SigmaMode::Geometric, 0)},
      {3, make_params(0.7, 1.0, SigmaMode::PhaseMatched, 3)},
      {2, make_params(1.4, 0.6, SigmaMode::PumpMatched, 2)},
  };
  for (const auto& [n, p] : cases) {
    const auto m = coefficient_matrix(n, p, 12);
    for (int a = 0; a <= 12; ++a) {
      for (int b = 0; b <= 12; ++b) {
        CHECK(m.entries(a, b) == m.entries(b, a));  // mirrored fill is bit-exact
        if ((a + b + n) % 2 != 0) CHECK(m.entries(a, b) == 0.0);
      }
    }
    CHECK(std::fabs(m.entries.norm() - 1.0) <= 1e-12);  // normalized Frobenius
    CHECK(m.raw_frobenius_norm > 0.0);
    CHECK(m.truncation_tail() >= 0.0);
  }
}

TEST_CASE("the raw Frobenius norm approaches 1 as the grid grows") {
  const auto geo = coefficient_matrix(2, make_params(1.3, 0.8, SigmaMode::Geometric, 2), 30, false);
  CHECK(std::fabs(geo.raw_frobenius_norm - 1.0) <= 1e-9);
  const auto pm = coefficient_matrix(1, make_params(2.0, 1.0, SigmaMode::PhaseMatched, 1), 34, false);
  CHECK(std::fabs(pm.raw_frobenius_norm - 1.0) <= 1e-6);
  // Larger grids capture no less weight.
  const auto pm_small = coefficient_matrix(1, make_params(2.0, 1.0, SigmaMode::PhaseMatched, 1), 20, false);
  CHECK(pm.raw_frobenius_norm >= pm_small.raw_frobenius_norm - 1e-14);
}

TEST_CASE("matrix entries are invariant under a common rescaling of all widths") {
  const auto base = coefficient_matrix(1, make_params(1.7, 0.9, SigmaMode::Geometric, 1), 8, false);
  for (double c : {0.1, 10.0}) {
    const auto scaled =
        coefficient_matrix(1, make_params(c * 1.7, c * 0.9, SigmaMode::Geometric, 1), 8, false);
    CHECK((base.entries - scaled.entries).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("matrix parameter validation") {
  CHECK_THROWS_AS(coefficient_matrix(0, make_params(0.0, 1.0), 4), DomainError);
  CHECK_THROWS_AS(coefficient_matrix(0, make_params(1.0, -2.0), 4), DomainError);
  CHECK_THROWS_AS(coefficient_matrix(-1, make_params(1.0, 1.0), 4), DomainError);
  CHECK_THROWS_AS(coefficient_matrix(0, make_params(1.0, 1.0), -1), DomainError);
  CHECK_THROWS_AS(coefficient_matrix(0, make_params(1.0, 1.0, SigmaMode::Explicit, 0, 0.0), 4),
                  DomainError);
}

// ---------------------------------------------------------------------------
// Separable 4D coefficients
// ---------------------------------------------------------------------------

TEST_CASE("4D coefficients factor into per-axis 1D coefficients") {
  const PhysicalParams any = make_params(1.6, 0.7);
  CHECK(coefficient_4d(0, 0, 0, 1, 0, 0, any) == 0.0);  // parity in the y factor

  const PhysicalParams confocal = make_params(1.0, 1.0, SigmaMode::Geometric, 1);
  CHECK(std::fabs(coefficient_4d(1, 1, 0, 0, 1, 1, confocal) - 0.5) <= 1e-12);
  CHECK(std::fabs(coefficient_4d(0, 0, 0, 0, 0, 0, confocal) - 1.0) <= 1e-12);

  // Generic separability: the 4D value is always the product of its axes.
  const PhysicalParams p = make_params(2.0, 0.9, SigmaMode::Geometric, 2);
  const double lhs = coefficient_4d(2, 1, 3, 2, 1, 1, p);
  const double rhs = coefficient_1d(2, 3, 1, p) * coefficient_1d(1, 2, 1, p);
  CHECK(std::fabs(lhs - rhs) <= 1e-15 * std::max(1.0, std::fabs(rhs)));
}

// ---------------------------------------------------------------------------
// Closed-form references
// ---------------------------------------------------------------------------

TEST_CASE("confocal binomial closed form") {
  const PhysicalParams p = make_params(1.3, 1.3, SigmaMode::Geometric, 2);
  CHECK(std::fabs(closed_form_reference(ClosedFormCase::ConfocalBinomial, 0, 2, p) - 0.5) <=
        1e-14);
  CHECK(std::fabs(closed_form_reference(ClosedFormCase::ConfocalBinomial, 1, 1, p) - kInvSqrt2) <=
        1e-14);
  // Off the confocal shell or off the a+b=n diagonal the formula is undefined.
  CHECK_THROWS_AS(closed_form_reference(ClosedFormCase::ConfocalBinomial, 0, 1, p), DomainError);
  CHECK_THROWS_AS(
      closed_form_reference(ClosedFormCase::ConfocalBinomial, 0, 2, make_params(1.3, 1.2, SigmaMode::Geometric, 2)),
      DomainError);
}

TEST_CASE("Gaussian-pump diagonal closed form in both normalizations") {
  CHECK(closed_form_reference(ClosedFormCase::GaussianPumpDiagonal, 0, 0,
                              make_params(1.0, 1.0)) == 1.0);
  const PhysicalParams two = make_params(2.0, 1.0);
  CHECK(std::fabs(closed_form_reference(ClosedFormCase::GaussianPumpDiagonal, 1, 1, two) -
                  std::sqrt(1.0 - 1.0 / 9.0) / 3.0) <= 1e-15);
  CHECK(closed_form_reference(ClosedFormCase::GaussianPumpDiagonal, 0, 1, two) == 0.0);

  // The historically published prefactor (kept as a diagnostic) is w*delta/2
  // times the same geometric decay over (w+delta)^{j+1}; it is not
  // unit-normalized.
  const double verbatim0 =
      closed_form_reference(ClosedFormCase::GaussianPumpDiagonal, 0, 0, two, true);
  const double verbatim1 =
      closed_form_reference(ClosedFormCase::GaussianPumpDiagonal, 1, 1, two, true);
  CHECK(std::fabs(verbatim0 - 1.0 / 3.0) <= 1e-15);
  CHECK(std::fabs(verbatim1 - 1.0 / 9.0) <= 1e-15);

  CHECK_THROWS_AS(closed_form_reference(ClosedFormCase::GaussianPumpDiagonal, 0, 0,
                                        make_params(1.0, 1.0, SigmaMode::Geometric, 1)),
                  DomainError);
  CHECK_THROWS_AS(closed_form_reference(ClosedFormCase::GaussianPumpDiagonal, 0, 0,
                                        make_params(1.0, 1.0, SigmaMode::PumpMatched)),
                  DomainError);
}

TEST_CASE("closed forms match the production pipeline") {
  // Gaussian pump, w/delta = 2: the normalized diagonal follows the
  // unit-norm geometric form.
  const PhysicalParams two = make_params(2.0, 1.0);
  const auto g = coefficient_matrix(0, two, 25);
  for (int j = 0; j <= 10; ++j) {
    const double want = closed_form_reference(ClosedFormCase::GaussianPumpDiagonal, j, j, two);
    CHECK(std::fabs(g.entries(j, j) - want) <= 1e-10);
  }
  // Confocal n = 4: normalized entries on a+b=4 follow the binomial form.
  const PhysicalParams conf = make_params(1.0, 1.0, SigmaMode::Geometric, 4);
  const auto c = coefficient_matrix(4, conf, 8);
  for (int a = 0; a <= 4; ++a) {
    const double want = closed_form_reference(ClosedFormCase::ConfocalBinomial, a, 4 - a, conf);
    CHECK(std::fabs(c.entries(a, 4 - a) - want) <= 1e-12);
  }
}
