#include "dephasure/exactsum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dephasure/constants.hpp"
#include "dephasure/specfun.hpp"

namespace dephasure {

namespace {

// Neumaier-compensated accumulator; terms span many orders of magnitude
// (omega^-3 weighting for subohmic baths).
struct Compensated {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double get() const { return sum + comp; }
};

}  // namespace

void ModeBath::validate() const {
  if (omega.size() != lambda.size()) {
    throw std::invalid_argument("ModeBath: omega/lambda size mismatch");
  }
  if (omega.empty()) throw std::invalid_argument("ModeBath: needs N >= 1 modes");
  double prev = 0.0;
  for (double w : omega) {
    if (!(w > 0.0)) throw std::invalid_argument("ModeBath: omega_i must be > 0");
    if (w < prev) throw std::invalid_argument("ModeBath: omega not ascending");
    prev = w;
  }
}

void CavityParams::validate() const {
  if (!(omega_cavity > 0.0)) {
    throw std::invalid_argument("CavityParams: omega_cavity must be > 0");
  }
}

ThermalParams ThermalParams::from_temperature(double kelvin) {
  if (!(kelvin > 0.0)) {
    throw std::invalid_argument("ThermalParams: temperature must be > 0");
  }
  return {kelvin, constants::hbar / (constants::boltzmann * kelvin)};
}

ThermalParams ThermalParams::from_beta_hbar(double seconds) {
  if (!(seconds > 0.0)) {
    throw std::invalid_argument("ThermalParams: beta_hbar must be > 0");
  }
  return {constants::hbar / (constants::boltzmann * seconds), seconds};
}

void ThermalParams::validate() const {
  if (!(temperature > 0.0) || !(beta_hbar > 0.0)) {
    throw std::invalid_argument("ThermalParams: not initialized");
  }
}

BathSums bath_sums(const ModeBath& bath, const CavityParams& cavity,
                   const ThermalParams& thermal, double t) {
  if (t < 0.0) throw std::domain_error("bath_sums: t must be >= 0");
  const double omega_c = cavity.omega_cavity;
  Compensated kerr, osc, deph;
  const std::size_t n = bath.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = bath.omega[i];
    const double g = omega_c * bath.lambda[i];
    const double g_over_w_sq = (g / w) * (g / w);
    kerr.add(g * g / w);
    osc.add(g_over_w_sq * std::sin(w * t));
    const double s_half = std::sin(0.5 * w * t);
    deph.add(g_over_w_sq * specfun::coth_half(thermal.beta_hbar * w) * s_half *
             s_half);
  }
  return {kerr.get(), osc.get(), deph.get()};
}

ExponentBreakdown exponent_from_sums(const BathSums& sums,
                                     const CavityParams& cavity, int n,
                                     int n_prime, double t) {
  if (n < 0 || n_prime < 0) {
    throw std::domain_error("exponent: Fock indices must be >= 0");
  }
  if (t < 0.0) throw std::domain_error("exponent: t must be >= 0");
  const double diff = static_cast<double>(n - n_prime);
  const double symm = static_cast<double>(n + n_prime + 1);
  ExponentBreakdown e;
  e.free_phase = -cavity.omega_cavity * diff * t;
  e.kerr_phase = t * symm * diff * sums.kerr;
  e.osc_phase = -symm * diff * sums.osc;
  e.dephase = -2.0 * diff * diff * sums.deph;
  return e;
}

ExponentBreakdown exponent_discrete(const ModeBath& bath,
                                    const CavityParams& cavity,
                                    const ThermalParams& thermal, int n,
                                    int n_prime, double t) {
  if (n == n_prime) {
    // every term carries a factor (n - n'); skip the bath pass
    ExponentBreakdown e;
    if (t < 0.0) throw std::domain_error("exponent: t must be >= 0");
    return e;
  }
  return exponent_from_sums(bath_sums(bath, cavity, thermal, t), cavity, n,
                            n_prime, t);
}

double kerr_constant_discrete(const ModeBath& bath, const CavityParams& cavity) {
  Compensated acc;
  for (std::size_t i = 0; i < bath.size(); ++i) {
    const double g = cavity.omega_cavity * bath.lambda[i];
    acc.add(g * g / bath.omega[i]);
  }
  return -acc.get();
}

FockDensityMatrix::FockDensityMatrix(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
  validate();
}

void FockDensityMatrix::validate() const {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("FockDensityMatrix: must be square, dim >= 1");
  }
  if (hermiticity_defect() > 1e-12) {
    throw std::invalid_argument("FockDensityMatrix: not Hermitian");
  }
  if (std::abs(trace_real() - 1.0) > 1e-12 ||
      std::abs(entries_.trace().imag()) > 1e-12) {
    throw std::invalid_argument("FockDensityMatrix: trace must be 1");
  }
  if (min_eigenvalue() < -1e-10) {
    throw std::invalid_argument("FockDensityMatrix: not positive semidefinite");
  }
}

FockDensityMatrix FockDensityMatrix::diagonal(const std::vector<double>& weights) {
  if (weights.empty()) {
    throw std::invalid_argument("FockDensityMatrix: empty weight list");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("FockDensityMatrix: negative weight");
    sum += w;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("FockDensityMatrix: zero weights");
  const int d = static_cast<int>(weights.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = weights[static_cast<std::size_t>(i)] / sum;
  return FockDensityMatrix(std::move(m));
}

FockDensityMatrix FockDensityMatrix::equal_superposition(int dim, int n,
                                                         int n_prime) {
  if (n < 0 || n_prime < 0 || n >= dim || n_prime >= dim || n == n_prime) {
    throw std::invalid_argument("equal_superposition: bad indices");
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(n, n) = m(n_prime, n_prime) = 0.5;
  m(n, n_prime) = m(n_prime, n) = 0.5;
  return FockDensityMatrix(std::move(m));
}

std::complex<double> FockDensityMatrix::entry(int n, int n_prime) const {
  if (n < 0 || n_prime < 0 || n >= dim() || n_prime >= dim()) {
    throw std::out_of_range("FockDensityMatrix: index outside dim");
  }
  return entries_(n, n_prime);
}

double FockDensityMatrix::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double FockDensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

FockDensityMatrix evolve_from_sums(const FockDensityMatrix& rho0,
                                   const BathSums& sums,
                                   const CavityParams& cavity, double t) {
  const int d = rho0.dim();
  Eigen::MatrixXcd out = rho0.entries();
  for (int n = 0; n < d; ++n) {
    for (int np = 0; np < n; ++np) {
      const ExponentBreakdown e = exponent_from_sums(sums, cavity, n, np, t);
      const std::complex<double> factor =
          std::exp(std::complex<double>(e.dephase, e.total_phase()));
      out(n, np) *= factor;
      out(np, n) = std::conj(out(n, np));
    }
  }
  return FockDensityMatrix(std::move(out));
}

FockDensityMatrix evolve_density_matrix(const FockDensityMatrix& rho0,
                                        const ModeBath& bath,
                                        const CavityParams& cavity,
                                        const ThermalParams& thermal, double t) {
  return evolve_from_sums(rho0, bath_sums(bath, cavity, thermal, t), cavity, t);
}

double coherence_magnitude(const FockDensityMatrix& rho, int n, int n_prime) {
  return std::abs(rho.entry(n, n_prime));
}

}  // namespace dephasure
