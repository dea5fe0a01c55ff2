#include "dephasure/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace dephasure::quad {

namespace {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK qk15 abscissae and weights).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828112900776070530};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEval {
  double value;
  double error;
};

PanelEval gk15(const Fn& f, double a, double b, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  evals += 15;

  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = std::abs(resk);
  double fv[7][2];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j][0] = f(center - dx);
    fv[j][1] = f(center + dx);
    const double fsum = fv[j][0] + fv[j][1];
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resabs += kWgk[j] * (std::abs(fv[j][0]) + std::abs(fv[j][1]));
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv[j][0] - mean) + std::abs(fv[j][1] - mean));
  }
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  double err = std::abs((resk - resg) * half) * 200.0;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * resabs);
  }
  return {resk * half, err};
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

Result integrate_adaptive(const Fn& f, double a, double b, Tolerance tol,
                          const std::vector<double>& breakpoints,
                          std::size_t max_panels) {
  Result res;
  if (a == b) return res;

  std::vector<double> pts;
  pts.push_back(a);
  for (double p : breakpoints) {
    if (p > a && p < b) pts.push_back(p);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());

  std::priority_queue<Panel> heap;
  double total = 0.0, toterr = 0.0, stuck_err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const PanelEval pe = gk15(f, pts[i], pts[i + 1], res.evaluations);
    heap.push({pts[i], pts[i + 1], pe.value, pe.error});
    total += pe.value;
    toterr += pe.error;
  }

  auto target = [&] { return std::max(tol.abs_tol, tol.rel_tol * std::abs(total)); };
  while (toterr > target() && !heap.empty() && heap.size() < max_panels) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at double resolution
      toterr -= worst.error;
      stuck_err += worst.error;
      continue;
    }
    const PanelEval le = gk15(f, worst.a, mid, res.evaluations);
    const PanelEval re = gk15(f, mid, worst.b, res.evaluations);
    total += le.value + re.value - worst.value;
    toterr += le.error + re.error - worst.error;
    heap.push({worst.a, mid, le.value, le.error});
    heap.push({mid, worst.b, re.value, re.error});
  }
  res.value = total;
  res.error = toterr + stuck_err;
  if (res.error > target() * 4.0) {
    throw AccuracyError("integrate_adaptive: panel budget exhausted", total, res.error);
  }
  return res;
}

Result integrate_decaying(const Fn& env, double a, double b, Tolerance tol,
                          double decay_power) {
  if (std::isfinite(b)) {
    std::vector<double> bk;
    for (double p = 2.0 * a; p < b; p *= 2.0) bk.push_back(p);
    return integrate_adaptive(env, a, b, tol, bk);
  }
  if (decay_power <= 1.0) {
    throw std::invalid_argument("integrate_decaying: non-integrable tail");
  }
  // Split at a point well into the power-law regime, then map the tail
  // int_U^inf env = int_0^1 env(U/u) U/u^2 du.
  const double split = 16.0 * a;
  std::vector<double> bk;
  for (double p = 2.0 * a; p < split; p *= 2.0) bk.push_back(p);
  Tolerance half_tol{0.5 * tol.abs_tol, 0.5 * tol.rel_tol};
  Result head = integrate_adaptive(env, a, split, half_tol, bk);
  Fn tail_f = [&env, split](double u) {
    if (u <= 0.0) return 0.0;
    const double x = split / u;
    return env(x) * split / (u * u);
  };
  Result tail = integrate_adaptive(tail_f, 0.0, 1.0, half_tol);
  head.value += tail.value;
  head.error += tail.error;
  head.evaluations += tail.evaluations;
  return head;
}

namespace detail {

double cvz_alternating_sum(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 0.0;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d, s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * a[k];
    b *= static_cast<double>(k + n) * static_cast<double>(k - n) /
         ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

}  // namespace detail

Result integrate_oscillatory(const Fn& env, double a, double b, double freq,
                             Trig kind, Tolerance tol, double decay_power) {
  if (!(freq > 0.0)) {
    throw std::invalid_argument("integrate_oscillatory: freq must be > 0");
  }
  if (!std::isfinite(b) && !(decay_power > 0.0)) {
    throw std::invalid_argument(
        "integrate_oscillatory: infinite interval needs a decaying envelope");
  }
  Fn full = [&env, freq, kind](double x) {
    const double ph = freq * x;
    return env(x) * (kind == Trig::Sin ? std::sin(ph) : std::cos(ph));
  };

  const double pi = 3.14159265358979323846;
  const double offset = (kind == Trig::Cos) ? 0.5 : 0.0;
  // zeros at x_k = (k + offset) * pi / freq
  double k0 = std::ceil(a * freq / pi - offset + 1e-12);
  auto zero = [&](double k) { return (k + offset) * pi / freq; };
  while (zero(k0) <= a) k0 += 1.0;

  Result res;
  const bool finite = std::isfinite(b);
  if (finite && zero(k0) >= b) {
    return integrate_adaptive(full, a, b, tol);
  }

  const Tolerance panel_tol{tol.abs_tol / 256.0, 1e-13};
  double head_end = zero(k0);
  Result head = integrate_adaptive(full, a, head_end, panel_tol);
  res.evaluations += head.evaluations;
  double total = head.value;
  double toterr = head.error;

  std::size_t max_direct = 64;
  const std::size_t n_accel = 40;
  for (int attempt = 0; attempt < 3; ++attempt) {
    double x_lo = head_end;
    double k = k0;
    double running = total;
    double err = toterr;
    double prev_mag = std::numeric_limits<double>::infinity();
    bool done = false;
    long evals = 0;

    // Direct phase: sum half-period panels until they are negligible or the
    // acceleration threshold is reached.
    std::size_t j = 0;
    for (; j < max_direct; ++j) {
      const double x_hi = zero(k + 1.0);
      if (finite && x_hi >= b) {
        Result last = integrate_adaptive(full, x_lo, b, panel_tol);
        running += last.value;
        err += last.error;
        evals += last.evaluations;
        done = true;
        break;
      }
      Result p = integrate_adaptive(full, x_lo, x_hi, panel_tol,
                                    {x_lo + 0.25 * (x_hi - x_lo),
                                     x_lo + 0.5 * (x_hi - x_lo),
                                     x_lo + 0.75 * (x_hi - x_lo)});
      evals += p.evaluations;
      running += p.value;
      err += p.error;
      const double mag = std::abs(p.value);
      const double tgt = std::max(tol.abs_tol, tol.rel_tol * std::abs(running));
      // geometric tail bound once the panels decay fast
      if (mag < 0.25 * tgt && mag < 0.5 * prev_mag) {
        err += mag;
        done = true;
        break;
      }
      prev_mag = mag;
      x_lo = x_hi;
      k += 1.0;
    }

    if (!done) {
      // Acceleration phase: treat subsequent half-period panels as an
      // alternating series.
      std::vector<double> mags;
      mags.reserve(n_accel);
      double first_sign = 0.0;
      bool alternating = true;
      bool hit_end = false;
      for (std::size_t m = 0; m < n_accel; ++m) {
        const double x_hi = zero(k + 1.0);
        if (finite && x_hi >= b) {
          hit_end = true;
          break;
        }
        Result p = integrate_adaptive(full, x_lo, x_hi, panel_tol,
                                      {x_lo + 0.5 * (x_hi - x_lo)});
        evals += p.evaluations;
        const double sign = (p.value >= 0.0) ? 1.0 : -1.0;
        if (m == 0) {
          first_sign = sign;
        } else if (sign == ((mags.size() % 2 == 0) ? -first_sign : first_sign)) {
          // not alternating where expected; fall back to direct summation
          alternating = false;
        }
        mags.push_back(std::abs(p.value));
        err += p.error;
        x_lo = x_hi;
        k += 1.0;
      }
      if (hit_end) {
        // the interval ran out mid-collection: sum the signed panels directly
        // and close with the final partial panel instead of extrapolating
        for (std::size_t j = 0; j < mags.size(); ++j) {
          running += first_sign * ((j % 2 == 0) ? mags[j] : -mags[j]);
        }
        Result last = integrate_adaptive(full, x_lo, b, panel_tol);
        running += last.value;
        err += last.error;
        evals += last.evaluations;
        done = true;
      } else if (alternating && mags.size() >= 16) {
        const double s_full = detail::cvz_alternating_sum(mags);
        std::vector<double> shorter(mags.begin(), mags.end() - 8);
        const double s_short = detail::cvz_alternating_sum(shorter);
        const double accel_err = std::abs(s_full - s_short);
        running += first_sign * s_full;
        err += accel_err;
        done = accel_err < std::max(tol.abs_tol, tol.rel_tol * std::abs(running));
      }
      // otherwise retry from scratch with a longer direct phase
    }

    res.evaluations += evals;
    if (done) {
      res.value = running;
      res.error = err;
      return res;
    }
    max_direct *= 4;  // retry with a longer direct phase
  }
  throw AccuracyError("integrate_oscillatory: failed to converge", total, toterr);
}

}  // namespace dephasure::quad
