#pragma once

#include <numbers>
#include <string>

#include "spdchg/errors.hpp"

namespace spdchg {

// Detection-mode width rule.  Widths are wavevector-space scales; only the
// dimensionless ratios matter for the coefficients.
enum class SigmaMode {
  Geometric,     // sigma = sqrt(2 w_p delta)
  PumpMatched,   // sigma = sqrt(2) w_p
  PhaseMatched,  // sigma = sqrt(2) delta
  Explicit,      // sigma supplied by the caller
};

const char* to_string(SigmaMode mode);

// Pump/phase-matching geometry plus the detection-mode width rule.
struct PhysicalParams {
  double pump_waist = 1.0;  // w_p: pump angular-spectrum width
  double pm_width = 1.0;    // delta: phase-matching (sinc -> Gaussian) width
  SigmaMode sigma_mode = SigmaMode::Geometric;
  double explicit_sigma = 0.0;  // used only when sigma_mode == Explicit
  int pump_order_n = 0;         // pump transverse order, x axis
  int pump_order_m = 0;         // pump transverse order, y axis

  // sigma^2 resolved from the mode rule.  The analytic path works with the
  // squared width directly: forming sqrt(2 w delta) and squaring it back
  // would wreck the exact cancellations of the matched-width special cases.
  double sigma_squared() const;
  double sigma() const;

  void validate() const;  // throws DomainError on unusable values
};

// The 1D pair amplitude is sqrt(2) v_n(q1+q2; w_p) v_0(q1-q2; delta): the
// sqrt(2) gives it unit L2 norm under unit-norm modes, so the full coefficient
// grid obeys sum |C_ab|^2 = 1 and the closed-form special cases come out in
// their normalized form.
inline constexpr double kPairAmplitudeNorm = std::numbers::sqrt2;

}  // namespace spdchg
