// Device builders: map physical parameters of the two concrete realizations
// (LC circuit + elastic strip, optical cavity + square membrane) onto the
// discrete ModeBath and continuum SpectralModel descriptions, with validity
// checks and the headline dephasing estimates derived from the formula chain.

#pragma once

#include <string>
#include <variant>

#include "dephasure/bathmodel.hpp"
#include "dephasure/exactsum.hpp"

namespace dephasure::devices {

// Boundary-term weight of the strip spectral model.  1.0 is the analytic
// first-order discrete-sum correction (net factor 2 in the intermediate-time
// dephasing); 1.5 matches the higher-order refinement (net factor 2.5).
inline constexpr double kStripBoundaryWeightFirstOrder = 1.0;
inline constexpr double kStripBoundaryWeightRefined = 1.5;

// Calibration of the membrane continuum integral against the discrete double
// sum over the intermediate time range.
inline constexpr double kMembraneContinuumCorrection = 1.3;

struct StripParams {
  double rho_m = 0.0;          // kg/m^3
  double tension_f = 0.0;      // N
  double width_w = 0.0;        // m
  double thickness_t = 0.0;    // m
  double length_l = 0.0;       // m
  double metallized_dl = 0.0;  // m
  double gap_d = 0.0;          // m
  double circuit_omega = 0.0;  // rad/s
  double temperature = 0.0;    // K

  void validate() const;
  double effective_mass() const;  // rho_m W T L / 2
  double wave_speed() const;      // sqrt(F / (rho_m W T))
};

struct MembraneParams {
  double rho_m = 0.0;               // kg/m^3
  double tension_per_length = 0.0;  // N/m
  double thickness_t = 0.0;         // m
  double side_l = 0.0;              // m
  double cavity_length = 0.0;       // m
  double wavelength = 0.0;          // m, lambda_sigma
  double rayleigh_range = 0.0;      // m
  double z0 = 0.0;                  // m, membrane position on the cavity axis
  double refractive_n = 0.0;
  double temperature = 0.0;         // K

  void validate() const;
  double effective_mass() const;  // rho_m L^2 T / 4
  int sigma_index() const;        // longitudinal index from the wavelength
  double beam_waist() const;      // sqrt(2 f c / Omega_sigma)
};

struct Mode {
  double omega = 0.0;   // rad/s
  double lambda = 0.0;  // dimensionless
};

struct StripCutoffs {
  double omega_u = 0.0;
  double omega_1 = 0.0;
  double coupling_c = 0.0;  // dimensionless for s = -1
};

Mode strip_mode(int i, const StripParams& p);
StripCutoffs strip_cutoffs(const StripParams& p);
bath::SpectralModel strip_spectral_model(
    const StripParams& p, double boundary_weight = kStripBoundaryWeightRefined);

struct ValidityCheck {
  double lhs = 0.0;        // thermal frequency-fluctuation sum, must be << 1
  double max_length = 0.0; // m, 16 beta d^2 F
  bool ok = false;         // lhs <= 0.1
};
ValidityCheck strip_validity(const StripParams& p);

// Discrete bath of odd strip modes with omega_i <= mode_cutoff_factor omega_u;
// even modes decouple and are omitted.
ModeBath strip_bath(const StripParams& p, double mode_cutoff_factor = 40.0);
CavityParams strip_cavity(const StripParams& p);

Mode membrane_mode(int ix, int iy, const MembraneParams& p);
double membrane_cavity_frequency(int sigma, const MembraneParams& p);
bath::SpectralModel membrane_spectral_model(
    const MembraneParams& p,
    double continuum_correction = kMembraneContinuumCorrection);

// Discrete bath of odd-odd membrane modes with omega <= mode_cutoff_factor
// omega_u, sorted ascending.
ModeBath membrane_bath(const MembraneParams& p, double mode_cutoff_factor = 3.0);
CavityParams membrane_cavity(const MembraneParams& p);

using DeviceSpec = std::variant<StripParams, MembraneParams>;

struct DephasingReport {
  std::string device_kind;  // "strip" or "membrane"
  int n = 1;
  int n_prime = 0;
  double omega_u = 0.0;
  double omega_1 = 0.0;
  double coupling_c = 0.0;
  double omega_cavity = 0.0;
  double cavity_to_cutoff_ratio = 0.0;  // Omega / omega_u
  double window_lo = 0.0;               // s, 1/omega_u
  double window_hi = 0.0;               // s, 1/omega_1
  double requested_t_lo = 0.0;
  double requested_t_hi = 0.0;
  double kerr_constant = 0.0;           // rad/s, continuum estimate
  double long_time_plateau = 0.0;       // dephasing exponent, <= 0

  // strip: dephase ~= -(n-n')^2 coeff t^2 over the intermediate window
  double strip_coeff_first_order = 0.0;  // s^-2
  double strip_coeff_refined = 0.0;      // s^-2
  double rephasing_time = 0.0;           // s, 2 pi / omega_1 (strip only)
  ValidityCheck validity;                // strip only

  // membrane: dephase ~= -(n-n')^2 P [3/2 - gamma - ln(omega_1 t)] t^2
  double membrane_prefactor = 0.0;           // s^-2 at the device temperature
  double membrane_prefactor_per_kelvin = 0.0;  // s^-2 K^-1
  bool rephasing_expected = false;
};

// Every reported value is computed from the parameter formula chain.  The
// trailing arguments select the discrete-sum corrections of the underlying
// spectral model (strip boundary weight, membrane continuum calibration).
DephasingReport device_dephasing_report(
    const DeviceSpec& device, double t_lo, double t_hi, int n, int n_prime,
    double boundary_weight = kStripBoundaryWeightRefined,
    double continuum_correction = kMembraneContinuumCorrection);

}  // namespace dephasure::devices
