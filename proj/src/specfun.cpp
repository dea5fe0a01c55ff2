#include "dephasure/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dephasure/constants.hpp"

namespace dephasure::specfun {

namespace {

constexpr double kSeriesCfSwitch = 4.0;  // both routes reach >=12 digits here
constexpr int kMaxIter = 200000;

void check_domain(Complex z) {
  if (z == Complex(0.0, 0.0)) {
    throw std::domain_error("specfun: z = 0 (logarithmic singularity)");
  }
  if (z.real() < 0.0) {
    throw std::domain_error("specfun: Re(z) < 0 unsupported");
  }
}

}  // namespace

namespace detail {

Complex ipow(Complex z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  Complex r(1.0, 0.0);
  Complex base = z;
  unsigned e = static_cast<unsigned>(n);
  while (e != 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

Complex e1_power_series(Complex z) {
  // E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!)
  Complex sum(0.0, 0.0);
  Complex term(1.0, 0.0);  // (-z)^k / k!
  for (int k = 1; k <= kMaxIter; ++k) {
    term *= -z / static_cast<double>(k);
    const Complex add = term / static_cast<double>(k);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return -constants::euler_gamma - std::log(z) - sum;
}

// z^a / (z+1-a - 1(1-a)/(z+3-a - 2(2-a)/(z+5-a - ...))) = e^z Gamma(a, z),
// evaluated with the modified Lentz algorithm.
static Complex gamma_cf_scaled(int order, Complex z) {
  const double a = static_cast<double>(order);
  const double tiny = 1e-300;
  Complex b = z + (1.0 - a);
  Complex c(1.0 / tiny, 0.0);
  Complex d = (std::abs(b) < tiny) ? Complex(1.0 / tiny, 0.0) : 1.0 / b;
  Complex h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = Complex(tiny, 0.0);
    c = b + an / c;
    if (std::abs(c) < tiny) c = Complex(tiny, 0.0);
    d = 1.0 / d;
    const Complex del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return ipow(z, order) * h;
  }
  throw std::runtime_error("specfun: continued fraction failed to converge");
}

Complex gamma_continued_fraction(int order, Complex z) {
  return std::exp(-z) * gamma_cf_scaled(order, z);
}

Complex e1_continued_fraction(Complex z) { return gamma_continued_fraction(0, z); }

Complex upper_incomplete_gamma_scaled(int order, Complex z) {
  if (order < -3 || order > 1) {
    throw std::invalid_argument("upper_incomplete_gamma_scaled: unsupported order");
  }
  if (order == 1) return Complex(1.0, 0.0);
  check_domain(z);
  if (std::abs(z) <= kSeriesCfSwitch) {
    return std::exp(z) * upper_incomplete_gamma(order, z);
  }
  return gamma_cf_scaled(order, z);
}

Complex e1_asymptotic(Complex z) {
  // e^-z/z (1 - 1/z + 2/z^2 - 6/z^3 + ...), truncated at the smallest term.
  Complex sum(1.0, 0.0);
  Complex term(1.0, 0.0);
  double prev = 1.0;
  for (int k = 1; k <= 400; ++k) {
    term *= -static_cast<double>(k) / z;
    const double mag = std::abs(term);
    if (mag > prev) break;
    sum += term;
    prev = mag;
    if (mag < 1e-18) break;
  }
  return std::exp(-z) / z * sum;
}

}  // namespace detail

Complex exp_integral_e1(Complex z) {
  check_domain(z);
  if (std::abs(z) <= kSeriesCfSwitch) return detail::e1_power_series(z);
  return detail::e1_continued_fraction(z);
}

Complex upper_incomplete_gamma(int order, Complex z) {
  if (order < -3 || order > 1) {
    throw std::invalid_argument("upper_incomplete_gamma: order " +
                                std::to_string(order) + " outside {-3,...,1}");
  }
  if (order == 1) return std::exp(-z);  // Gamma(1,z) = e^-z, any z
  check_domain(z);
  if (order == 0) return exp_integral_e1(z);
  if (std::abs(z) > kSeriesCfSwitch) {
    return detail::gamma_continued_fraction(order, z);
  }
  // Small |z|: downward recurrence Gamma(s-1,z) = (Gamma(s,z) - z^(s-1) e^-z)/(s-1)
  // starting from Gamma(0,z); cancellation is mild in this range.
  const Complex em = std::exp(-z);
  Complex g = detail::e1_power_series(z);
  Complex zpow = 1.0 / z;  // z^(s-1) for s = 0
  for (int s = 0; s > order; --s) {
    g = (g - zpow * em) / static_cast<double>(s - 1);
    zpow /= z;
  }
  return g;
}

double coth_half(double x) {
  if (!(x > 0.0)) throw std::domain_error("coth_half: requires x > 0");
  if (x < 1e-6) return 2.0 / x + x / 6.0;
  if (x > 700.0) return 1.0;
  return 1.0 + 2.0 / std::expm1(x);
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace dephasure::specfun
