// Special functions needed by the continuum bath closed forms: the complex
// exponential integral E1 and the upper incomplete Gamma function of integer
// order in {-3,...,1}, plus coth/sinc helpers.
//
// Supported domain: Re(z) > 0, or Re(z) = 0 with Im(z) != 0.  All routines are
// pure and thread-safe.

#pragma once

#include <complex>

namespace dephasure::specfun {

using Complex = std::complex<double>;

// E1(z) = int_1^inf exp(-z t)/t dt = Gamma(0, z).
// Power series for |z| <= 4, modified Lentz continued fraction above.
// Throws std::domain_error for z = 0 or Re(z) < 0.
Complex exp_integral_e1(Complex z);

// Gamma(order, z) = int_z^inf x^(order-1) exp(-x) dx for order in {-3,...,1}.
// Throws std::invalid_argument for an unsupported order, std::domain_error for
// z = 0 with order <= 0 or Re(z) < 0.
Complex upper_incomplete_gamma(int order, Complex z);

// coth(x/2) for x > 0; series 2/x + x/6 below x = 1e-6.  Throws on x <= 0.
double coth_half(double x);

// sin(x)/x with the removable singularity filled in.
double sinc(double x);

namespace detail {

// The two evaluation routes behind exp_integral_e1, exposed so accuracy tests
// can cross-check them against each other in their overlap region.
Complex e1_power_series(Complex z);
Complex e1_continued_fraction(Complex z);

// Optimally truncated asymptotic series e^-z/z * sum (-1)^k k!/z^k; usable as
// an independent route for |z| >= 35.
Complex e1_asymptotic(Complex z);

// Lentz continued fraction for Gamma(order, z); the large-|z| path for
// negative orders (cancellation-free, unlike the downward recurrence).
Complex gamma_continued_fraction(int order, Complex z);

// e^z Gamma(order, z), computed without the e^-z prefactor on the large-|z|
// path.  Gamma itself underflows to 0 beyond Re(z) ~ 700 where the double
// format cannot represent it; the scaled form keeps the recurrence
// Gamma(s+1,z) = s Gamma(s,z) + z^s e^-z testable at full precision across
// the whole supported domain.
Complex upper_incomplete_gamma_scaled(int order, Complex z);

// z^n for integer n (single-valued; no branch cut involved).
Complex ipow(Complex z, int n);

}  // namespace detail

}  // namespace dephasure::specfun
