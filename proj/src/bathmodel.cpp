#include "dephasure/bathmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dephasure/constants.hpp"
#include "dephasure/quadrature.hpp"
#include "dephasure/specfun.hpp"

namespace dephasure::bath {

using specfun::Complex;
using specfun::detail::ipow;

namespace {

constexpr double kPi = constants::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Oscillatory content of the integrand, as coef * {1, sin, cos}(freq * omega).
struct Component {
  double coef;
  double freq;  // 0 for the DC part
  quad::Trig kind;
  bool dc;
};

void push_component(std::vector<Component>& v, double coef, double freq,
                    quad::Trig kind, bool dc) {
  if (coef == 0.0) return;
  if (!dc) {
    if (kind == quad::Trig::Sin) {
      if (freq == 0.0) return;  // sin(0) = 0
      if (freq < 0.0) {
        coef = -coef;
        freq = -freq;
      }
    } else {
      if (freq < 0.0) freq = -freq;
      if (freq == 0.0) dc = true;  // cos(0) = 1
    }
  }
  for (auto& c : v) {
    if (c.dc == dc && (dc || (c.kind == kind && c.freq == freq))) {
      c.coef += coef;
      return;
    }
  }
  v.push_back({coef, dc ? 0.0 : freq, kind, dc});
}

std::vector<Component> multiply_components(const std::vector<Component>& a,
                                           const std::vector<Component>& b) {
  std::vector<Component> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      const double c = x.coef * y.coef;
      if (x.dc && y.dc) {
        push_component(out, c, 0.0, quad::Trig::Cos, true);
      } else if (x.dc) {
        push_component(out, c, y.freq, y.kind, false);
      } else if (y.dc) {
        push_component(out, c, x.freq, x.kind, false);
      } else if (x.kind == quad::Trig::Cos && y.kind == quad::Trig::Cos) {
        push_component(out, 0.5 * c, x.freq - y.freq, quad::Trig::Cos, false);
        push_component(out, 0.5 * c, x.freq + y.freq, quad::Trig::Cos, false);
      } else if (x.kind == quad::Trig::Sin && y.kind == quad::Trig::Sin) {
        push_component(out, 0.5 * c, x.freq - y.freq, quad::Trig::Cos, false);
        push_component(out, -0.5 * c, x.freq + y.freq, quad::Trig::Cos, false);
      } else {
        // sin(a) cos(b) = [sin(a+b) + sin(a-b)] / 2
        const double sf = (x.kind == quad::Trig::Sin) ? x.freq : y.freq;
        const double cf = (x.kind == quad::Trig::Sin) ? y.freq : x.freq;
        push_component(out, 0.5 * c, sf + cf, quad::Trig::Sin, false);
        push_component(out, 0.5 * c, sf - cf, quad::Trig::Sin, false);
      }
    }
  }
  return out;
}

struct IntegrandPlan {
  quad::Fn envelope;         // smooth, positive, eventually decreasing
  quad::Fn full;             // envelope * sum of components
  std::vector<Component> components;
  double upper;              // finite effective upper limit, or +inf
  double decay_power;        // envelope ~ omega^-p at large omega
  double osc_freq_max;       // largest component frequency
};

IntegrandPlan build_plan(const SpectralModel& model, const WeightFunction& w) {
  IntegrandPlan plan;
  const double wu = model.omega_u;
  const int s = model.s;
  const double c0 = model.coupling_c;
  const double bh = w.beta_hbar;
  const double t = w.t;

  // weight = smooth_w(omega) * components_w
  std::vector<Component> comps_w;
  double weight_decay = 0.0;
  std::function<double(double)> smooth_w;
  switch (w.tag) {
    case WeightKind::InvOmega:
      smooth_w = [](double x) { return 1.0 / x; };
      push_component(comps_w, 1.0, 0.0, quad::Trig::Cos, true);
      weight_decay = 1.0;
      break;
    case WeightKind::Oscillation:
      smooth_w = [](double x) { return 1.0 / (x * x); };
      push_component(comps_w, 1.0, t, quad::Trig::Sin, false);
      weight_decay = 2.0;
      break;
    case WeightKind::DephasingFullCoth:
      smooth_w = [bh](double x) {
        return specfun::coth_half(bh * x) / (2.0 * x * x);
      };
      push_component(comps_w, 1.0, 0.0, quad::Trig::Cos, true);
      push_component(comps_w, -1.0, t, quad::Trig::Cos, false);
      weight_decay = 2.0;
      break;
    case WeightKind::DephasingHighT:
      smooth_w = [bh](double x) { return 1.0 / (bh * x * x * x); };
      push_component(comps_w, 1.0, 0.0, quad::Trig::Cos, true);
      push_component(comps_w, -1.0, t, quad::Trig::Cos, false);
      weight_decay = 3.0;
      break;
  }

  std::vector<Component> comps_c;
  std::function<double(double)> smooth_c;
  double cutoff_decay = 0.0;
  switch (model.cutoff_shape) {
    case CutoffShape::Exponential:
      smooth_c = [wu](double x) { return std::exp(-x / wu); };
      push_component(comps_c, 1.0, 0.0, quad::Trig::Cos, true);
      plan.upper = std::max(48.0 * wu, 4.0 * model.omega_1);
      break;
    case CutoffShape::Gaussian:
      smooth_c = [wu](double x) { return std::exp(-2.0 * x * x / (wu * wu)); };
      push_component(comps_c, 1.0, 0.0, quad::Trig::Cos, true);
      plan.upper = std::max(5.5 * wu, 4.0 * model.omega_1);
      break;
    case CutoffShape::SincSq:
      // sinc^2(x/wu) = (wu/x)^2 (1 - cos(2x/wu)) / 2
      smooth_c = [wu](double x) { return 0.5 * (wu / x) * (wu / x); };
      push_component(comps_c, 1.0, 0.0, quad::Trig::Cos, true);
      push_component(comps_c, -1.0, 2.0 / wu, quad::Trig::Cos, false);
      plan.upper = kInf;
      cutoff_decay = 2.0;
      break;
  }

  plan.components = multiply_components(comps_w, comps_c);
  plan.decay_power = -static_cast<double>(s) + weight_decay + cutoff_decay;
  plan.osc_freq_max = 0.0;
  for (const auto& c : plan.components) {
    if (!c.dc) plan.osc_freq_max = std::max(plan.osc_freq_max, c.freq);
  }
  plan.envelope = [c0, s, smooth_w, smooth_c](double x) {
    return c0 * std::pow(x, s) * smooth_w(x) * smooth_c(x);
  };
  const WeightFunction wf = w;
  const SpectralModel m = model;
  plan.full = [m, wf](double x) {
    return m.coupling_c * std::pow(x, m.s) * wf(x) * m.cutoff_value(x);
  };
  return plan;
}

// One oscillatory/DC component of the plan.
double integrate_component(const IntegrandPlan& plan, const Component& c,
                           double a, quad::Tolerance tol) {
  quad::Fn env = plan.envelope;
  if (c.dc) {
    return c.coef * quad::integrate_decaying(env, a, plan.upper, tol,
                                             plan.decay_power).value;
  }
  return c.coef * quad::integrate_oscillatory(env, a, plan.upper, c.freq, c.kind,
                                              tol, plan.decay_power).value;
}

double evaluate_components(const IntegrandPlan& plan, double a,
                           quad::Tolerance per_comp, double* abs_sum) {
  double net = 0.0;
  double asum = 0.0;
  for (const auto& c : plan.components) {
    if (c.coef == 0.0) continue;  // cancelled exactly during expansion
    const double v = integrate_component(plan, c, a, per_comp);
    net += v;
    asum += std::abs(v);
  }
  if (abs_sum != nullptr) *abs_sum = asum;
  return net;
}

}  // namespace

void SpectralModel::validate() const {
  if (s != 1 && s != 0 && s != -1) {
    throw std::invalid_argument("SpectralModel: s must be in {1, 0, -1}");
  }
  if (!(coupling_c > 0.0)) {
    throw std::invalid_argument("SpectralModel: coupling_c must be > 0");
  }
  if (!(omega_1 > 0.0) || !(omega_u > 0.0)) {
    throw std::invalid_argument("SpectralModel: cutoffs must be > 0");
  }
  if (omega_1 > 0.1 * omega_u) {
    throw std::invalid_argument("SpectralModel: requires omega_1 <= 0.1 omega_u");
  }
  if (boundary_weight < 0.0) {
    throw std::invalid_argument("SpectralModel: boundary_weight must be >= 0");
  }
  if (!(continuum_correction > 0.0)) {
    throw std::invalid_argument("SpectralModel: continuum_correction must be > 0");
  }
}

double SpectralModel::cutoff_value(double omega) const {
  switch (cutoff_shape) {
    case CutoffShape::Exponential:
      return std::exp(-omega / omega_u);
    case CutoffShape::SincSq: {
      const double sc = specfun::sinc(omega / omega_u);
      return sc * sc;
    }
    case CutoffShape::Gaussian:
      return std::exp(-2.0 * omega * omega / (omega_u * omega_u));
  }
  return 0.0;
}

WeightFunction WeightFunction::inv_omega() { return {WeightKind::InvOmega, 0.0, 0.0}; }

WeightFunction WeightFunction::oscillation(double t) {
  return {WeightKind::Oscillation, t, 0.0};
}

WeightFunction WeightFunction::dephasing_full(double t, double beta_hbar) {
  return {WeightKind::DephasingFullCoth, t, beta_hbar};
}

WeightFunction WeightFunction::dephasing_high_t(double t, double beta_hbar) {
  return {WeightKind::DephasingHighT, t, beta_hbar};
}

void WeightFunction::validate() const {
  if (t < 0.0) throw std::invalid_argument("WeightFunction: t must be >= 0");
  if ((tag == WeightKind::DephasingFullCoth || tag == WeightKind::DephasingHighT) &&
      !(beta_hbar > 0.0)) {
    throw std::invalid_argument("WeightFunction: beta_hbar must be > 0");
  }
}

double WeightFunction::operator()(double omega) const {
  switch (tag) {
    case WeightKind::InvOmega:
      return 1.0 / omega;
    case WeightKind::Oscillation:
      return std::sin(omega * t) / (omega * omega);
    case WeightKind::DephasingFullCoth: {
      const double sh = std::sin(0.5 * omega * t);
      return specfun::coth_half(beta_hbar * omega) * sh * sh / (omega * omega);
    }
    case WeightKind::DephasingHighT: {
      const double sh = std::sin(0.5 * omega * t);
      return (2.0 / (beta_hbar * omega)) * sh * sh / (omega * omega);
    }
  }
  return 0.0;
}

double spectral_integral_quadrature(const SpectralModel& model,
                                    const WeightFunction& weight,
                                    double rel_tol) {
  model.validate();
  weight.validate();
  const double a = model.omega_1;
  IntegrandPlan plan = build_plan(model, weight);

  double integral = 0.0;
  if (!plan.components.empty()) {
    // Pilot pass fixes the absolute scale, the final pass hits the target.
    double abs_sum = 0.0;
    const double net_pilot =
        evaluate_components(plan, a, quad::Tolerance{0.0, 1e-5}, &abs_sum);

    const double abs_target =
        rel_tol * (std::abs(net_pilot) + 1e-3 * abs_sum) + 1e-300;
    const std::size_t ncomp = plan.components.size();

    const bool finite = std::isfinite(plan.upper);
    const double span = finite ? (plan.upper - a) : kInf;
    if (finite && plan.osc_freq_max * span <= 64.0 * kPi) {
      // Few oscillations over the support: integrate the full product
      // directly (no cancellation between components).
      std::vector<double> bk;
      for (double p = 2.0 * a; p < plan.upper; p *= 2.0) bk.push_back(p);
      if (plan.osc_freq_max > 0.0) {
        const double step = kPi / (4.0 * plan.osc_freq_max);
        for (double p = a + step; p < plan.upper && bk.size() < 600; p += step) {
          bk.push_back(p);
        }
      }
      integral = quad::integrate_adaptive(plan.full, a, plan.upper,
                                          quad::Tolerance{abs_target, rel_tol},
                                          bk).value;
    } else {
      const quad::Tolerance per_comp{abs_target / (2.0 * static_cast<double>(ncomp)),
                                     1e-12};
      integral = evaluate_components(plan, a, per_comp, nullptr);
    }
  }

  double result = model.continuum_correction * integral;
  if (model.boundary_weight != 0.0) {
    result += model.boundary_weight * model.coupling_c * weight(model.omega_1);
  }
  return result;
}

PhasePair phase_closed(const SpectralModel& model, const CavityParams& cavity,
                       int n, int n_prime, double t) {
  model.validate();
  cavity.validate();
  if (model.cutoff_shape != CutoffShape::Exponential) {
    throw UnsupportedModelError(
        "phase_closed: closed forms hold for the exponential cutoff only");
  }
  if (t < 0.0) throw std::domain_error("phase_closed: t must be >= 0");
  if (n == n_prime) return {};

  const double diff = static_cast<double>(n - n_prime);
  const double symm = static_cast<double>(n + n_prime + 1);
  const double om2 = cavity.omega_cavity * cavity.omega_cavity;
  const double eps = model.omega_1 / model.omega_u;
  const int s = model.s;

  PhasePair out;
  const Complex gamma_s = specfun::upper_incomplete_gamma(s, Complex(eps, 0.0));
  out.kerr_phase = t * symm * diff * model.coupling_c * om2 *
                   std::pow(model.omega_u, s) / kPi * gamma_s.real();

  const Complex shift(1.0, -model.omega_u * t);
  const Complex gamma_s1 = specfun::upper_incomplete_gamma(s - 1, eps * shift);
  out.osc_phase = -symm * diff * model.coupling_c * om2 *
                  std::pow(model.omega_u, s - 1) / kPi *
                  (ipow(shift, 1 - s) * gamma_s1).imag();
  return out;
}

double dephase_closed_highT(const SpectralModel& model,
                            const CavityParams& cavity,
                            const ThermalParams& thermal, int n, int n_prime,
                            double t) {
  model.validate();
  cavity.validate();
  thermal.validate();
  if (model.cutoff_shape != CutoffShape::Exponential) {
    throw UnsupportedModelError(
        "dephase_closed_highT: closed form holds for the exponential cutoff only");
  }
  if (t < 0.0) throw std::domain_error("dephase_closed_highT: t must be >= 0");
  if (n == n_prime) return 0.0;

  const double diff = static_cast<double>(n - n_prime);
  const double om2 = cavity.omega_cavity * cavity.omega_cavity;
  const double eps = model.omega_1 / model.omega_u;
  const int s = model.s;

  const Complex shift(1.0, -model.omega_u * t);
  const Complex g_real = specfun::upper_incomplete_gamma(s - 2, Complex(eps, 0.0));
  const Complex g_shift = specfun::upper_incomplete_gamma(s - 2, eps * shift);
  const double braces = g_real.real() - (ipow(shift, 2 - s) * g_shift).real();
  const double value = -2.0 * model.coupling_c * om2 / kPi * diff * diff *
                       std::pow(model.omega_u, s - 2) / thermal.beta_hbar * braces;
  return std::min(value, 0.0);  // clamp rounding residue at t ~ 0
}

AsymptoticExponent asymptotic_exponent(const SpectralModel& model,
                                       const CavityParams& cavity,
                                       const ThermalParams& thermal, int n,
                                       int n_prime, double t,
                                       TimeRegime regime) {
  model.validate();
  cavity.validate();
  thermal.validate();
  const double diff = static_cast<double>(n - n_prime);
  const double symm = static_cast<double>(n + n_prime + 1);
  const double c = model.coupling_c;
  const double om2 = cavity.omega_cavity * cavity.omega_cavity;
  const double w1 = model.omega_1;
  const double wu = model.omega_u;
  const double bh = thermal.beta_hbar;
  const double gamma_e = constants::euler_gamma;

  AsymptoticExponent out;
  if (diff == 0.0) return out;
  const bool longtime = (regime == TimeRegime::Long);

  switch (model.s) {
    case 1:
      out.net_phase = t * symm * diff * c * om2 * wu / kPi;
      out.dephase = longtime
                        ? -diff * diff * 2.0 * c * om2 / (kPi * bh * w1)
                        : -diff * diff * c * om2 *
                              (std::log(bh * wu / (2.0 * kPi)) / kPi + t / bh);
      break;
    case 0:
      out.net_phase = longtime
                          ? -t * symm * diff * c * om2 / kPi *
                                (std::log(w1 / wu) + gamma_e)
                          : t * symm * diff * c * om2 / kPi *
                                (std::log(wu * t) - 1.0);
      out.dephase = longtime
                        ? -diff * diff * c * om2 / (kPi * bh * w1 * w1)
                        : -diff * diff * c * om2 / (kPi * bh) *
                              (1.5 - gamma_e - std::log(w1 * t)) * t * t;
      break;
    case -1:
      out.net_phase = longtime ? t * symm * diff * c * om2 / (kPi * w1)
                               : t * t * symm * diff * c * om2 / 4.0;
      out.dephase = longtime
                        ? -diff * diff * 2.0 * c * om2 / (3.0 * kPi * bh * w1 * w1 * w1)
                        : -diff * diff * c * om2 / (kPi * w1 * bh) * t * t;
      break;
    default:
      break;
  }
  return out;
}

double subleading_oscillation(const SpectralModel& model,
                              const CavityParams& cavity,
                              const ThermalParams& thermal, int n, int n_prime,
                              double t) {
  model.validate();
  cavity.validate();
  thermal.validate();
  const double diff = static_cast<double>(n - n_prime);
  if (diff == 0.0) return 0.0;
  if (model.s == 1) {
    const double x = model.omega_1 * t;
    return -diff * diff * 2.0 * model.coupling_c * cavity.omega_cavity *
           cavity.omega_cavity / (kPi * thermal.beta_hbar * model.omega_1) *
           specfun::sinc(x);
  }
  const double quad_deph =
      -2.0 * diff * diff * cavity.omega_cavity * cavity.omega_cavity / kPi *
      spectral_integral_quadrature(
          model, WeightFunction::dephasing_high_t(t, thermal.beta_hbar));
  const double asym =
      asymptotic_exponent(model, cavity, thermal, n, n_prime, t, TimeRegime::Long)
          .dephase;
  return quad_deph - asym;
}

ExponentBreakdown exponent_continuum(const SpectralModel& model,
                                     const CavityParams& cavity,
                                     const ThermalParams& thermal, int n,
                                     int n_prime, double t, bool full_coth) {
  cavity.validate();
  thermal.validate();
  ExponentBreakdown e;
  const double diff = static_cast<double>(n - n_prime);
  const double symm = static_cast<double>(n + n_prime + 1);
  e.free_phase = -cavity.omega_cavity * diff * t;
  if (diff == 0.0) return e;
  const double om2 = cavity.omega_cavity * cavity.omega_cavity;
  const double q_kerr =
      spectral_integral_quadrature(model, WeightFunction::inv_omega());
  const double q_osc =
      spectral_integral_quadrature(model, WeightFunction::oscillation(t));
  const WeightFunction wf =
      full_coth ? WeightFunction::dephasing_full(t, thermal.beta_hbar)
                : WeightFunction::dephasing_high_t(t, thermal.beta_hbar);
  const double q_deph = spectral_integral_quadrature(model, wf);
  e.kerr_phase = t * symm * diff * om2 * q_kerr / kPi;
  e.osc_phase = -symm * diff * om2 * q_osc / kPi;
  e.dephase = -2.0 * diff * diff * om2 * q_deph / kPi;
  return e;
}

ModeBath discretize(const SpectralModel& model, double mode_cutoff_factor) {
  model.validate();
  if (!(mode_cutoff_factor > 0.0)) {
    throw std::invalid_argument("discretize: mode_cutoff_factor must be > 0");
  }
  const double w_max = mode_cutoff_factor * model.omega_u;
  const std::size_t count =
      static_cast<std::size_t>(std::floor(w_max / model.omega_1));
  if (count < 1) throw std::invalid_argument("discretize: no modes below cutoff");
  if (count > 50'000'000) {
    throw std::invalid_argument("discretize: mode count too large");
  }
  ModeBath bath;
  bath.omega.reserve(count);
  bath.lambda.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    const double w = static_cast<double>(i) * model.omega_1;
    const double lam_sq = model.coupling_c / kPi * std::pow(w, model.s) *
                          model.cutoff_value(w) * model.omega_1;
    bath.omega.push_back(w);
    bath.lambda.push_back(std::sqrt(lam_sq));
  }
  return bath;
}

}  // namespace dephasure::bath
