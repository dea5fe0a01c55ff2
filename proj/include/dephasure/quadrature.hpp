// Adaptive Gauss-Kronrod quadrature with support for oscillatory integrands on
// semi-infinite intervals: integrals are partitioned at the zeros of the
// trigonometric factor and the alternating panel series is accelerated
// (Cohen-Villegas-Zagier) so slowly decaying envelopes converge in ~100 panels.

#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dephasure::quad {

using Fn = std::function<double(double)>;

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error bound
  long evaluations = 0;
};

// Raised when the requested tolerance could not be met; carries the best
// available estimate and its error bound.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best, double bound)
      : std::runtime_error(what), best_estimate(best), error_bound(bound) {}
  double best_estimate;
  double error_bound;
};

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
};

// Globally adaptive GK15 on a finite interval.  Optional breakpoints seed the
// initial subdivision (they must lie inside (a, b)).  Throws AccuracyError if
// the panel budget is exhausted before the tolerance is met.
Result integrate_adaptive(const Fn& f, double a, double b, Tolerance tol,
                          const std::vector<double>& breakpoints = {},
                          std::size_t max_panels = 8000);

// int_a^b env(x) dx for an eventually monotone envelope decaying like
// x^(-decay_power); b may be infinity, in which case the tail beyond a finite
// split point is handled by the substitution x -> split/u.
Result integrate_decaying(const Fn& env, double a, double b, Tolerance tol,
                          double decay_power);

enum class Trig { Sin, Cos };

// int_a^b env(x) * trig(freq x) dx for env >= 0 eventually decreasing.
// b may be infinity when decay_power > 1.  Panels between consecutive zeros of
// the trig factor are integrated adaptively (sub-panel width <= quarter of a
// half-period) and the alternating tail is series-accelerated.
Result integrate_oscillatory(const Fn& env, double a, double b, double freq,
                             Trig kind, Tolerance tol, double decay_power);

namespace detail {
// sum_{k>=0} (-1)^k a_k for positive, (near) totally monotone a_k.
double cvz_alternating_sum(const std::vector<double>& a);
}  // namespace detail

}  // namespace dephasure::quad
