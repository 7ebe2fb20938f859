#include "spdchg/params.hpp"

#include <cmath>
#include <string>

namespace spdchg {

const char* to_string(SigmaMode mode) {
  switch (mode) {
    case SigmaMode::Geometric: return "geometric";
    case SigmaMode::PumpMatched: return "pump";
    case SigmaMode::PhaseMatched: return "pm";
    case SigmaMode::Explicit: return "explicit";
  }
  throw DomainError("to_string: unknown SigmaMode");
}

double PhysicalParams::sigma_squared() const {
  validate();
  switch (sigma_mode) {
    case SigmaMode::Geometric: return 2.0 * pump_waist * pm_width;
    case SigmaMode::PumpMatched: return 2.0 * pump_waist * pump_waist;
    case SigmaMode::PhaseMatched: return 2.0 * pm_width * pm_width;
    case SigmaMode::Explicit: return explicit_sigma * explicit_sigma;
  }
  throw DomainError("sigma_squared: unknown SigmaMode");
}

double PhysicalParams::sigma() const { return std::sqrt(sigma_squared()); }

void PhysicalParams::validate() const {
  if (!(pump_waist > 0.0) || !std::isfinite(pump_waist))
    throw DomainError("PhysicalParams: pump waist must be positive and finite, got " +
                      std::to_string(pump_waist));
  if (!(pm_width > 0.0) || !std::isfinite(pm_width))
    throw DomainError("PhysicalParams: phase-matching width must be positive and finite, got " +
                      std::to_string(pm_width));
  if (sigma_mode == SigmaMode::Explicit &&
      (!(explicit_sigma > 0.0) || !std::isfinite(explicit_sigma)))
    throw DomainError("PhysicalParams: explicit detection width must be positive and finite, got " +
                      std::to_string(explicit_sigma));
  if (pump_order_n < 0 || pump_order_m < 0)
    throw DomainError("PhysicalParams: pump orders must be nonnegative");
}

}  // namespace spdchg
