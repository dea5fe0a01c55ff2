// Continuum spectral-density models with exponential, sinc^2 and Gaussian
// cutoffs; incomplete-Gamma closed forms for the exponential cutoff; the
// leading asymptotics in the intermediate and long time ranges; and an
// adaptive-quadrature oracle used to cross-validate all of them.

#pragma once

#include <stdexcept>

#include "dephasure/exactsum.hpp"

namespace dephasure::bath {

enum class CutoffShape { Exponential, SincSq, Gaussian };

// pi sum_i lambda_i^2 f(omega_i) delta(omega - omega_i)
//   ~= correction * C omega^s f(omega) cutoff(omega)  [+ boundary term]
//
// C is in SI units seconds^(s+1), so that C omega^s d omega is dimensionless.
// boundary_weight adds weight * C * f(omega_1), the first-order discrete-sum
// correction for IR-dominated sums; continuum_correction rescales the integral
// (calibration of the continuum approximation against the discrete sum).
struct SpectralModel {
  int s = 1;                        // spectral exponent, in {1, 0, -1}
  double coupling_c = 0.0;          // C, seconds^(s+1)
  double omega_1 = 0.0;             // rad/s, lower cutoff
  double omega_u = 0.0;             // rad/s, upper cutoff
  CutoffShape cutoff_shape = CutoffShape::Exponential;
  double boundary_weight = 0.0;
  double continuum_correction = 1.0;

  void validate() const;
  double cutoff_value(double omega) const;

  // SI dimension of C as a power of seconds; the dimensionless strip model
  // (s = -1) carries 0, the membrane model (s = 0) carries 1.
  int si_seconds_power() const { return s + 1; }
};

// Raised when an operation needs a cutoff shape it has no closed form for.
class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class WeightKind { InvOmega, Oscillation, DephasingFullCoth, DephasingHighT };

// The frequency weight f(omega) of each exponent term.
struct WeightFunction {
  WeightKind tag = WeightKind::InvOmega;
  double t = 0.0;
  double beta_hbar = 0.0;

  static WeightFunction inv_omega();
  static WeightFunction oscillation(double t);
  static WeightFunction dephasing_full(double t, double beta_hbar);
  static WeightFunction dephasing_high_t(double t, double beta_hbar);

  double operator()(double omega) const;
  void validate() const;
};

// Numerical estimate of pi sum_i lambda_i^2 f(omega_i):
//   correction * C int_{omega_1}^inf omega^s f(omega) cutoff d omega
//   + boundary_weight * C * f(omega_1).
// Relative accuracy ~1e-10 (floor-guarded near zeros of oscillatory weights).
// Throws quad::AccuracyError carrying the best estimate if it cannot converge.
double spectral_integral_quadrature(const SpectralModel& model,
                                    const WeightFunction& weight,
                                    double rel_tol = 1e-10);

struct PhasePair {
  double kerr_phase = 0.0;  // rad
  double osc_phase = 0.0;   // rad
};

// Closed forms for the two induced phase terms (exponential cutoff only).
PhasePair phase_closed(const SpectralModel& model, const CavityParams& cavity,
                       int n, int n_prime, double t);

// Closed form for the dephasing exponent in the high temperature limit
// t >> beta hbar (exponential cutoff only); always <= 0.
double dephase_closed_highT(const SpectralModel& model,
                            const CavityParams& cavity,
                            const ThermalParams& thermal, int n, int n_prime,
                            double t);

enum class TimeRegime { Intermediate, Long };

struct AsymptoticExponent {
  double net_phase = 0.0;  // rad, kerr + oscillatory combined
  double dephase = 0.0;    // <= 0
};

// Leading-order expressions in the omega_1/omega_u expansion for the net
// induced phase and the dephasing exponent.  The caller is responsible for
// choosing a regime consistent with t.
AsymptoticExponent asymptotic_exponent(const SpectralModel& model,
                                       const CavityParams& cavity,
                                       const ThermalParams& thermal, int n,
                                       int n_prime, double t,
                                       TimeRegime regime);

// Sub-leading long-time oscillation of the dephasing exponent.  Explicit form
// for s = 1; for s = 0, -1 the numerically computed residual
// (quadrature - long-time asymptote) is returned instead.
double subleading_oscillation(const SpectralModel& model,
                              const CavityParams& cavity,
                              const ThermalParams& thermal, int n, int n_prime,
                              double t);

// Full exponent assembled from the quadrature oracle (free phase included).
ExponentBreakdown exponent_continuum(const SpectralModel& model,
                                     const CavityParams& cavity,
                                     const ThermalParams& thermal, int n,
                                     int n_prime, double t,
                                     bool full_coth = true);

// Harmonic discretization omega_i = i omega_1 of a continuum model, with
// lambda_i^2 = (C/pi) omega_i^s cutoff(omega_i) * omega_1.  Modes up to
// mode_cutoff_factor * omega_u are kept.
ModeBath discretize(const SpectralModel& model, double mode_cutoff_factor = 40.0);

}  // namespace dephasure::bath
