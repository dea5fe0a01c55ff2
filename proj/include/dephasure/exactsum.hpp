// Exact evaluation of the dephasing exponent from an explicit, discrete bath
// mode list, and evolution of a truncated Fock-basis density matrix under it.
// All sums use compensated (Neumaier) accumulation; everything here is pure.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace dephasure {

// Explicit bath: angular frequencies omega_i (rad/s, ascending) and the
// dimensionless optomechanical couplings lambda_i.
struct ModeBath {
  std::vector<double> omega;
  std::vector<double> lambda;

  std::size_t size() const { return omega.size(); }
  void validate() const;  // throws std::invalid_argument
};

struct CavityParams {
  double omega_cavity = 0.0;  // rad/s
  void validate() const;
};

struct ThermalParams {
  double temperature = 0.0;  // K
  double beta_hbar = 0.0;    // s, = hbar / (k_B T)

  static ThermalParams from_temperature(double kelvin);
  static ThermalParams from_beta_hbar(double seconds);
  void validate() const;
};

// The four terms in the exponent of the off-diagonal evolution factor for a
// Fock pair (n, n'): c_{nn'}(t) = c_{nn'}(0) exp(i (free + kerr + osc) + dephase).
struct ExponentBreakdown {
  double free_phase = 0.0;  // rad, -Omega (n-n') t
  double kerr_phase = 0.0;  // rad
  double osc_phase = 0.0;   // rad
  double dephase = 0.0;     // dimensionless, <= 0

  double total_phase() const { return free_phase + kerr_phase + osc_phase; }
};

// Bath-only pieces of the exponent, independent of the Fock pair.  Computing
// these once per time point lets callers evaluate many (n, n') pairs or states
// without re-summing the bath.
struct BathSums {
  double kerr = 0.0;  // sum (Omega lambda_i)^2 / omega_i
  double osc = 0.0;   // sum (Omega lambda_i / omega_i)^2 sin(omega_i t)
  double deph = 0.0;  // sum (Omega lambda_i / omega_i)^2 coth(beta hbar omega_i / 2) sin^2(omega_i t / 2)
};

BathSums bath_sums(const ModeBath& bath, const CavityParams& cavity,
                   const ThermalParams& thermal, double t);

ExponentBreakdown exponent_from_sums(const BathSums& sums,
                                     const CavityParams& cavity, int n,
                                     int n_prime, double t);

ExponentBreakdown exponent_discrete(const ModeBath& bath,
                                    const CavityParams& cavity,
                                    const ThermalParams& thermal, int n,
                                    int n_prime, double t);

// Induced Kerr constant Lambda_kerr = -sum (Omega lambda_i)^2 / omega_i (rad/s,
// <= 0); the renormalized cavity frequency is Omega + Lambda_kerr.
double kerr_constant_discrete(const ModeBath& bath, const CavityParams& cavity);

// Complex Hermitian density matrix on the truncated Fock basis {|0>,...,|dim-1>}.
class FockDensityMatrix {
 public:
  explicit FockDensityMatrix(Eigen::MatrixXcd entries);

  static FockDensityMatrix diagonal(const std::vector<double>& weights);
  // (|n> + |n'>)/sqrt(2) embedded in a dim-dimensional space
  static FockDensityMatrix equal_superposition(int dim, int n, int n_prime);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::complex<double> entry(int n, int n_prime) const;

  double trace_real() const { return entries_.trace().real(); }
  double hermiticity_defect() const;  // max |c - c^dagger|
  double min_eigenvalue() const;

 private:
  void validate() const;
  Eigen::MatrixXcd entries_;
};

FockDensityMatrix evolve_density_matrix(const FockDensityMatrix& rho0,
                                        const ModeBath& bath,
                                        const CavityParams& cavity,
                                        const ThermalParams& thermal, double t);

// Same evolution from precomputed bath sums (one bath pass shared by callers).
FockDensityMatrix evolve_from_sums(const FockDensityMatrix& rho0,
                                   const BathSums& sums,
                                   const CavityParams& cavity, double t);

double coherence_magnitude(const FockDensityMatrix& rho, int n, int n_prime);

}  // namespace dephasure
