#include "dephasure/devices.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dephasure/constants.hpp"
#include "dephasure/specfun.hpp"

namespace dephasure::devices {

namespace {

constexpr double kPi = constants::pi;
constexpr double kHbar = constants::hbar;

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

double odd_parity_sign(int i) {
  // sin(pi i / 2): 0 for even i, (-1)^((i-1)/2) for odd i
  if (i % 2 == 0) return 0.0;
  return ((i - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

void StripParams::validate() const {
  require_positive(rho_m, "rho_m");
  require_positive(tension_f, "tension_f");
  require_positive(width_w, "width_w");
  require_positive(thickness_t, "thickness_t");
  require_positive(length_l, "length_l");
  require_positive(metallized_dl, "metallized_dl");
  require_positive(gap_d, "gap_d");
  require_positive(circuit_omega, "circuit_omega");
  require_positive(temperature, "temperature");
  if (thickness_t > 0.1 * width_w) {
    throw std::invalid_argument("strip: requires thickness_t <= 0.1 width_w");
  }
  if (width_w > 0.1 * length_l) {
    throw std::invalid_argument("strip: requires width_w <= 0.1 length_l");
  }
  if (gap_d > 0.1 * std::min(width_w, metallized_dl)) {
    throw std::invalid_argument(
        "strip: requires gap_d <= 0.1 min(width_w, metallized_dl)");
  }
}

double StripParams::effective_mass() const {
  return 0.5 * rho_m * width_w * thickness_t * length_l;
}

double StripParams::wave_speed() const {
  return std::sqrt(tension_f / (rho_m * width_w * thickness_t));
}

Mode strip_mode(int i, const StripParams& p) {
  if (i < 1) throw std::invalid_argument("strip_mode: index must be >= 1");
  p.validate();
  const double m = p.effective_mass();
  const double omega = kPi * i * std::sqrt(p.tension_f / (2.0 * m * p.length_l));
  const double omega_u = strip_cutoffs(p).omega_u;
  const double lambda = -0.5 / p.gap_d * std::sqrt(kHbar / (2.0 * m * omega)) *
                        odd_parity_sign(i) * specfun::sinc(omega / omega_u);
  return {omega, lambda};
}

StripCutoffs strip_cutoffs(const StripParams& p) {
  p.validate();
  const double v = p.wave_speed();  // = sqrt(F L / (2 m))
  StripCutoffs out;
  out.omega_u = 2.0 * v / p.metallized_dl;
  out.omega_1 = kPi * v / p.length_l;
  out.coupling_c =
      kHbar / (8.0 * p.gap_d * p.gap_d *
               std::sqrt(p.tension_f * p.rho_m * p.width_w * p.thickness_t));
  return out;
}

bath::SpectralModel strip_spectral_model(const StripParams& p,
                                         double boundary_weight) {
  const StripCutoffs c = strip_cutoffs(p);
  bath::SpectralModel m;
  m.s = -1;
  m.coupling_c = c.coupling_c;
  m.omega_1 = c.omega_1;
  m.omega_u = c.omega_u;
  m.cutoff_shape = bath::CutoffShape::SincSq;
  m.boundary_weight = boundary_weight;
  m.validate();
  return m;
}

ValidityCheck strip_validity(const StripParams& p) {
  p.validate();
  const StripCutoffs c = strip_cutoffs(p);
  const double m = p.effective_mass();
  const double beta_hbar = kHbar / (constants::boltzmann * p.temperature);
  const double beta = 1.0 / (constants::boltzmann * p.temperature);

  // Sum over odd modes until the 1/i^2-type tail is negligible; the bound
  // sum_{odd j > i} t_j <= t_i * i / 2 holds for the monotone tail.
  double sum = 0.0, comp = 0.0, term = 0.0;
  for (long i = 1; i < (1L << 40); i += 2) {
    const double w = static_cast<double>(i) * c.omega_1;
    const double sc = specfun::sinc(w / c.omega_u);
    term = kHbar / (8.0 * m * w * p.gap_d * p.gap_d) * sc * sc *
           specfun::coth_half(beta_hbar * w);
    const double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if ((i & 2047L) == 2047L && term * static_cast<double>(i) < 2e-6 * sum) break;
  }
  ValidityCheck out;
  out.lhs = sum + comp;
  out.max_length = 16.0 * beta * p.gap_d * p.gap_d * p.tension_f;
  out.ok = out.lhs <= 0.1;
  return out;
}

ModeBath strip_bath(const StripParams& p, double mode_cutoff_factor) {
  p.validate();
  if (!(mode_cutoff_factor > 0.0)) {
    throw std::invalid_argument("strip_bath: mode_cutoff_factor must be > 0");
  }
  const StripCutoffs c = strip_cutoffs(p);
  const double m = p.effective_mass();
  const double i_max_real = std::floor(mode_cutoff_factor * c.omega_u / c.omega_1);
  if (i_max_real < 1.0) {
    throw std::invalid_argument("strip_bath: no modes below cutoff");
  }
  if (i_max_real > 1e8) {
    throw std::invalid_argument(
        "strip_bath: mode count too large; reduce mode_cutoff_factor");
  }
  const long i_max = std::lround(i_max_real);

  ModeBath bath;
  bath.omega.reserve(static_cast<std::size_t>(i_max / 2 + 1));
  bath.lambda.reserve(static_cast<std::size_t>(i_max / 2 + 1));
  const double coef = -0.5 / p.gap_d * std::sqrt(kHbar / (2.0 * m));
  for (long i = 1; i <= i_max; i += 2) {
    const double w = static_cast<double>(i) * c.omega_1;
    bath.omega.push_back(w);
    bath.lambda.push_back(coef / std::sqrt(w) * odd_parity_sign(static_cast<int>(i % 4)) *
                          specfun::sinc(w / c.omega_u));
  }
  return bath;
}

CavityParams strip_cavity(const StripParams& p) { return {p.circuit_omega}; }

void MembraneParams::validate() const {
  require_positive(rho_m, "rho_m");
  require_positive(tension_per_length, "tension_per_length");
  require_positive(thickness_t, "thickness_t");
  require_positive(side_l, "side_l");
  require_positive(cavity_length, "cavity_length");
  require_positive(wavelength, "wavelength");
  require_positive(rayleigh_range, "rayleigh_range");
  require_positive(z0, "z0");
  require_positive(temperature, "temperature");
  if (!(refractive_n > 1.0)) {
    throw std::invalid_argument("membrane: requires refractive_n > 1");
  }
  if (beam_waist() > 0.1 * side_l) {
    throw std::invalid_argument("membrane: requires beam_waist <= 0.1 side_l");
  }
}

double MembraneParams::effective_mass() const {
  return 0.25 * rho_m * side_l * side_l * thickness_t;
}

int MembraneParams::sigma_index() const {
  return static_cast<int>(std::lround(2.0 * cavity_length / wavelength));
}

double MembraneParams::beam_waist() const {
  const double omega_sigma = membrane_cavity_frequency(sigma_index(), *this);
  return std::sqrt(2.0 * rayleigh_range * constants::speed_of_light / omega_sigma);
}

double membrane_cavity_frequency(int sigma, const MembraneParams& p) {
  if (sigma < 1) {
    throw std::invalid_argument("membrane_cavity_frequency: sigma must be >= 1");
  }
  const double c = constants::speed_of_light;
  return sigma * kPi * c / p.cavity_length +
         2.0 * c / p.cavity_length *
             std::atan(p.cavity_length / (2.0 * p.rayleigh_range));
}

namespace {

struct MembraneDerived {
  double mass;
  double omega_sigma;
  double omega_u;
  double omega_1;
  double sin_factor;   // sin(2 Omega_sigma z0 / c)
  double amp;          // (n^2-1) T Omega_sigma / (l c)
};

MembraneDerived membrane_derived(const MembraneParams& p) {
  MembraneDerived d;
  d.mass = p.effective_mass();
  d.omega_sigma = membrane_cavity_frequency(p.sigma_index(), p);
  const double w = p.beam_waist();
  d.omega_u = std::sqrt(8.0 * p.tension_per_length / (p.rho_m * p.thickness_t * w * w));
  d.omega_1 = kPi * std::sqrt(p.tension_per_length / (2.0 * d.mass));
  d.sin_factor =
      std::sin(2.0 * d.omega_sigma * p.z0 / constants::speed_of_light);
  d.amp = (p.refractive_n * p.refractive_n - 1.0) * p.thickness_t *
          d.omega_sigma / (p.cavity_length * constants::speed_of_light);
  return d;
}

}  // namespace

Mode membrane_mode(int ix, int iy, const MembraneParams& p) {
  if (ix < 1 || iy < 1) {
    throw std::invalid_argument("membrane_mode: indices must be >= 1");
  }
  p.validate();
  const MembraneDerived d = membrane_derived(p);
  const double omega =
      kPi * std::sqrt(p.tension_per_length / (4.0 * d.mass) *
                      (static_cast<double>(ix) * ix + static_cast<double>(iy) * iy));
  const double sigma_sign = (p.sigma_index() % 2 == 0) ? 1.0 : -1.0;
  const double lambda = sigma_sign * std::sqrt(kHbar / (2.0 * d.mass * omega)) *
                        d.amp * d.sin_factor *
                        std::exp(-omega * omega / (d.omega_u * d.omega_u)) *
                        odd_parity_sign(ix) * odd_parity_sign(iy);
  return {omega, lambda};
}

bath::SpectralModel membrane_spectral_model(const MembraneParams& p,
                                            double continuum_correction) {
  p.validate();
  const MembraneDerived d = membrane_derived(p);
  bath::SpectralModel m;
  m.s = 0;
  m.coupling_c = kHbar / p.tension_per_length *
                 std::pow(d.amp * d.sin_factor / 2.0, 2);
  m.omega_1 = d.omega_1;
  m.omega_u = d.omega_u;
  m.cutoff_shape = bath::CutoffShape::Gaussian;
  m.continuum_correction = continuum_correction;
  m.validate();
  return m;
}

ModeBath membrane_bath(const MembraneParams& p, double mode_cutoff_factor) {
  p.validate();
  if (!(mode_cutoff_factor > 0.0)) {
    throw std::invalid_argument("membrane_bath: mode_cutoff_factor must be > 0");
  }
  const MembraneDerived d = membrane_derived(p);
  const double unit = kPi * std::sqrt(p.tension_per_length / (4.0 * d.mass));
  // omega = unit * sqrt(ix^2 + iy^2) <= factor * omega_u
  const double r_max_sq = std::pow(mode_cutoff_factor * d.omega_u / unit, 2);
  const long ix_max = static_cast<long>(std::floor(std::sqrt(
      std::max(0.0, r_max_sq - 1.0))));
  if (ix_max < 1) {
    throw std::invalid_argument("membrane_bath: no modes below cutoff");
  }

  const double sigma_sign = (p.sigma_index() % 2 == 0) ? 1.0 : -1.0;
  const double coef = sigma_sign * std::sqrt(kHbar / (2.0 * d.mass)) * d.amp *
                      d.sin_factor;

  struct Entry {
    double omega;
    double lambda;
  };
  std::vector<Entry> entries;
  for (long ix = 1; ix <= ix_max; ix += 2) {
    const double rem = r_max_sq - static_cast<double>(ix) * ix;
    if (rem < 1.0) break;
    const long iy_max = static_cast<long>(std::floor(std::sqrt(rem)));
    for (long iy = 1; iy <= iy_max; iy += 2) {
      const double omega = unit * std::sqrt(static_cast<double>(ix) * ix +
                                            static_cast<double>(iy) * iy);
      const double parity = odd_parity_sign(static_cast<int>(ix % 4)) *
                            odd_parity_sign(static_cast<int>(iy % 4));
      const double lambda = coef / std::sqrt(omega) * parity *
                            std::exp(-omega * omega / (d.omega_u * d.omega_u));
      entries.push_back({omega, lambda});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.omega < b.omega; });
  ModeBath bath;
  bath.omega.reserve(entries.size());
  bath.lambda.reserve(entries.size());
  for (const Entry& e : entries) {
    bath.omega.push_back(e.omega);
    bath.lambda.push_back(e.lambda);
  }
  return bath;
}

CavityParams membrane_cavity(const MembraneParams& p) {
  return {membrane_cavity_frequency(p.sigma_index(), p)};
}

DephasingReport device_dephasing_report(const DeviceSpec& device, double t_lo,
                                        double t_hi, int n, int n_prime,
                                        double boundary_weight,
                                        double continuum_correction) {
  if (!(t_lo >= 0.0) || !(t_hi > t_lo)) {
    throw std::invalid_argument("device_dephasing_report: bad time window");
  }
  DephasingReport r;
  r.n = n;
  r.n_prime = n_prime;
  r.requested_t_lo = t_lo;
  r.requested_t_hi = t_hi;

  if (std::holds_alternative<StripParams>(device)) {
    const StripParams& p = std::get<StripParams>(device);
    const auto model = strip_spectral_model(p, boundary_weight);
    const auto cav = strip_cavity(p);
    const auto th = ThermalParams::from_temperature(p.temperature);
    const double om2 = cav.omega_cavity * cav.omega_cavity;

    r.device_kind = "strip";
    r.omega_u = model.omega_u;
    r.omega_1 = model.omega_1;
    r.coupling_c = model.coupling_c;
    r.omega_cavity = cav.omega_cavity;
    r.cavity_to_cutoff_ratio = cav.omega_cavity / model.omega_u;
    r.window_lo = 1.0 / model.omega_u;
    r.window_hi = 1.0 / model.omega_1;
    const double base =
        model.coupling_c * om2 / (kPi * model.omega_1 * th.beta_hbar);
    r.strip_coeff_first_order = (1.0 + kStripBoundaryWeightFirstOrder) * base;
    r.strip_coeff_refined = (1.0 + model.boundary_weight) * base;
    r.rephasing_time = 2.0 * kPi / model.omega_1;
    r.rephasing_expected = true;
    r.validity = strip_validity(p);
    r.long_time_plateau =
        bath::asymptotic_exponent(model, cav, th, n, n_prime, t_hi,
                                  bath::TimeRegime::Long)
            .dephase;
    r.kerr_constant =
        -om2 / kPi *
        bath::spectral_integral_quadrature(model, bath::WeightFunction::inv_omega());
    return r;
  }

  const MembraneParams& p = std::get<MembraneParams>(device);
  const auto model = membrane_spectral_model(p, continuum_correction);
  const auto cav = membrane_cavity(p);
  const auto th = ThermalParams::from_temperature(p.temperature);
  const double om2 = cav.omega_cavity * cav.omega_cavity;

  r.device_kind = "membrane";
  r.omega_u = model.omega_u;
  r.omega_1 = model.omega_1;
  r.coupling_c = model.coupling_c;
  r.omega_cavity = cav.omega_cavity;
  r.cavity_to_cutoff_ratio = cav.omega_cavity / model.omega_u;
  r.window_lo = 1.0 / model.omega_u;
  r.window_hi = 1.0 / model.omega_1;
  r.membrane_prefactor =
      model.continuum_correction * model.coupling_c * om2 / (kPi * th.beta_hbar);
  r.membrane_prefactor_per_kelvin = r.membrane_prefactor * th.beta_hbar *
                                    constants::boltzmann / constants::hbar;
  r.rephasing_expected = false;
  r.rephasing_time = 0.0;
  r.long_time_plateau =
      bath::asymptotic_exponent(model, cav, th, n, n_prime, t_hi,
                                bath::TimeRegime::Long)
          .dephase;
  r.kerr_constant =
      -om2 / kPi *
      bath::spectral_integral_quadrature(model, bath::WeightFunction::inv_omega());
  return r;
}

}  // namespace dephasure::devices
