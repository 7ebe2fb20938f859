#pragma once

#include <complex>
#include <span>

#include "spdchg/errors.hpp"

namespace spdchg {

// Order cap for the raw-polynomial evaluator.  Callers that need more can pass
// an explicit limit; the default keeps accidental runaway recurrences visible.
inline constexpr int kDefaultMaxHermiteOrder = 200;

// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
// H_{k+1} = 2x H_k - 2k H_{k-1}.  Above the direct-recurrence range the value
// is reconstructed from the log-magnitude form below (and may overflow to
// infinity if the true value does).
double hermite_eval(int order, double x, int max_order = kDefaultMaxHermiteOrder);

struct LogSigned {
  double log_abs;  // natural log of |value|; -inf when the value is zero
  int sign;        // -1, 0, +1
};

// (log|H_n(x)|, sign): usable far beyond the overflow range of hermite_eval.
LogSigned hermite_eval_log(int order, double x, int max_order = kDefaultMaxHermiteOrder);

// ln(n!), exact to better than 1e-13 relative.
double log_factorial(int n);

// ln Gamma(two_z / 2) for positive integer two_z, built from Gamma(1/2) =
// sqrt(pi) and the recurrence Gamma(z+1) = z Gamma(z).  The series code never
// needs a nonpositive argument, but the guard reports if one ever appears.
double log_gamma_half_integer(int two_z);

// Gauss-damped orthonormal Hermite functions
//   h_k(x) = H_k(x) exp(-x^2/2) / sqrt(2^k k! sqrt(pi)),
// evaluated for k = 0..max_order by a recurrence whose values stay O(1) at
// every order.  This is the workhorse behind mode evaluation and quadrature.
void hermite_functions(int max_order, double x, std::span<double> out);
double hermite_function(int order, double x);

enum class ModeNormalization {
  UnitNorm,  // |D_n|^2 = 1/(2^n n! sqrt(pi)): modes integrate to 1
  PaperDn,   // |D_n|^2 = 1/(2^{n+1} n! sqrt(pi)): modes integrate to 1/2
};

enum class ModePhase {
  RealPositiveLeading,  // real mode constants, positive leading coefficient
  PaperPhase,           // retain the -i^n constant phase
};

// "-i^n" admits two readings; the pair-coefficient phase product is identical
// under both, which the complex oracle path verifies explicitly.
enum class PhaseReading {
  MinusIPowN,  // -(i^n)
  PowMinusI,   // (-i)^n
};

struct ModeConvention {
  ModeNormalization normalization = ModeNormalization::UnitNorm;
  ModePhase phase = ModePhase::RealPositiveLeading;
  PhaseReading reading = PhaseReading::MinusIPowN;
};

// Transverse-mode function v_n(q; w) = sqrt(w) D_n H_n(w q) exp(-w^2 q^2 / 2),
// real-valued part (any constant phase stripped; see hg_mode_eval_complex).
double hg_mode_eval(int order, double q, double width, const ModeConvention& conv = {});

// Full complex mode value, including the constant -i^n phase when
// conv.phase == PaperPhase.
std::complex<double> hg_mode_eval_complex(int order, double q, double width,
                                          const ModeConvention& conv);

// Constant phase attached to a mode of the given order under PaperPhase.
std::complex<double> mode_phase_constant(int order, PhaseReading reading);

// Sign contributed by the four mode constants' -i^order phases to a projected
// pair coefficient with pump order n and total detection order a+b.  Real
// (+/-1) whenever the parity selection rule holds; +1 on parity-forbidden
// combinations (where the coefficient is exactly zero anyway).
double paper_phase_sign(int pump_order, int total_detection_order);

}  // namespace spdchg
