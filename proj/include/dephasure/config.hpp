// Run configuration: a small sectioned key-value format with unit suffixes,
// strict validation (unknown keys are errors) and a canonical serializer so
// configs round-trip exactly.

#pragma once

#include <string>
#include <vector>

#include "dephasure/bathmodel.hpp"
#include "dephasure/devices.hpp"

namespace dephasure::io {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_number(line) {}
  int line_number;
};

enum class RunMode { GenericBath, Strip, Membrane };
enum class Evaluation { DiscreteExact, ClosedForm, Quadrature, Asymptotic };
enum class GridSpacing { Log, Linear };

struct TimeGrid {
  double t_min = 0.0;
  double t_max = 0.0;
  int points = 0;
  GridSpacing spacing = GridSpacing::Log;

  void validate() const;
  std::vector<double> times() const;
};

struct FockPair {
  int n = 0;
  int n_prime = 1;
};

struct InitialState {
  enum class Kind { Superposition, Diagonal };
  Kind kind = Kind::Superposition;
  int sup_n = 0;
  int sup_n_prime = 1;
  std::vector<double> diagonal_weights;
};

struct GenericBathConfig {
  bath::SpectralModel model;
  double omega_cavity = 0.0;  // rad/s
  double temperature = 0.0;   // K; exactly one of temperature / beta_hbar set
  double beta_hbar = 0.0;     // s
  double mode_cutoff_factor = 40.0;
};

struct StripConfig {
  devices::StripParams params;
  double mode_cutoff_factor = 15.0;
  double boundary_weight = devices::kStripBoundaryWeightRefined;
};

struct MembraneConfig {
  devices::MembraneParams params;
  double mode_cutoff_factor = 3.0;
  double continuum_correction = devices::kMembraneContinuumCorrection;
};

struct SweepSpec {
  std::string parameter;  // "section.key"; empty when no sweep is configured
  std::vector<double> values;
};

struct RunConfig {
  RunMode mode = RunMode::GenericBath;
  Evaluation evaluation = Evaluation::DiscreteExact;
  TimeGrid time_grid;
  std::vector<FockPair> fock_pairs;
  int fock_dim = 0;  // 0: derived from the pairs / initial state
  InitialState initial_state;
  std::string output_prefix;

  GenericBathConfig generic;
  StripConfig strip;
  MembraneConfig membrane;
  SweepSpec sweep;

  void validate() const;

  // resolved views of the active mode
  bath::SpectralModel spectral_model() const;
  CavityParams cavity() const;
  ThermalParams thermal() const;
  ModeBath build_bath() const;
  double mode_cutoff_factor() const;
  int resolved_dim() const;
  FockDensityMatrix initial_density_matrix() const;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical form: SI base units, full precision; parse(emit(c)) == c.
std::string emit_config(const RunConfig& config);

// Apply a sweep override "<section>.<key>" = value (SI units) and revalidate.
RunConfig with_override(const RunConfig& base, const std::string& parameter,
                        double value);

}  // namespace dephasure::io
