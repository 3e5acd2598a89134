#include "dimer/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace dimer {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kCdfPoints = 8193;
}  // namespace

double planck_window(double x, double alpha) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  if (alpha <= 0.0) return 1.0;
  auto rise = [alpha](double z) {
    // z in (0, alpha): 0 -> 1 with all derivatives flat at both ends
    const double s = z / alpha;
    const double arg = 1.0 / s - 1.0 / (1.0 - s);
    if (arg > 700.0) return 0.0;
    if (arg < -700.0) return 1.0;
    return 1.0 / (1.0 + std::exp(arg));
  };
  if (x < alpha) return rise(x);
  if (x > 1.0 - alpha) return rise(1.0 - x);
  return 1.0;
}

void RampSchedule::build_planck_cdf() {
  auto cdf = std::make_shared<std::vector<double>>(kCdfPoints);
  const double h = 1.0 / (kCdfPoints - 1);
  double acc = 0.0;
  (*cdf)[0] = 0.0;
  for (int i = 1; i < kCdfPoints; ++i) {
    const double a = (i - 1) * h, b = i * h;
    acc += h / 6.0 * (planck_window(a, planck_alpha) +
                      4.0 * planck_window(0.5 * (a + b), planck_alpha) +
                      planck_window(b, planck_alpha));
    (*cdf)[i] = acc;
  }
  for (auto& v : *cdf) v /= acc;
  planck_area_ = acc;
  planck_cdf_ = std::move(cdf);
}

namespace {

// integral of the half-Blackman rise 0.42 - 0.5 cos(pi u) + 0.08 cos(2 pi u)
double blackman_rise_integral(double u) {
  constexpr double kPi = 3.1415926535897932384626433832795;
  return 0.42 * u - 0.5 * std::sin(kPi * u) / kPi + 0.08 * std::sin(2.0 * kPi * u) / (2.0 * kPi);
}

}  // namespace

double RampSchedule::sweep_progress(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  switch (easing) {
    case Easing::Linear:
      return x;
    case Easing::Hann:
      // integral of 1 - cos(2 pi x)
      return x - std::sin(kTwoPi * x) / kTwoPi;
    case Easing::SmoothFlat: {
      // flat rate with half-Blackman flanks of width a; total area 1 - 1.16 a
      const double a = taper_fraction;
      if (a <= 0.0) return x;
      const double area = 1.0 - 1.16 * a;
      double raw;
      if (x < a)
        raw = a * blackman_rise_integral(x / a);
      else if (x <= 1.0 - a)
        raw = 0.42 * a + (x - a);
      else
        raw = 0.42 * a + (1.0 - 2.0 * a) + a * (0.42 - blackman_rise_integral((1.0 - x) / a));
      return raw / area;
    }
    case Easing::Trapezoid: {
      const double r = taper_fraction;
      if (r <= 0.0) return x;
      double raw;
      if (x < r)
        raw = 0.5 * x * x / r;
      else if (x <= 1.0 - r)
        raw = 0.5 * r + (x - r);
      else
        raw = (1.0 - r) - 0.5 * (1.0 - x) * (1.0 - x) / r;
      return raw / (1.0 - r);
    }
    case Easing::Planck: {
      const auto& cdf = *planck_cdf_;
      const double h = 1.0 / (kCdfPoints - 1);
      const double pos = x * (kCdfPoints - 1);
      const int i = std::min(static_cast<int>(pos), kCdfPoints - 2);
      const double f = pos - i;
      // Hermite cubic; the normalised progress has derivative window/area
      const double y0 = cdf[i], y1 = cdf[i + 1];
      const double d0 = planck_window(i * h, planck_alpha) * h / planck_area_;
      const double d1 = planck_window((i + 1) * h, planck_alpha) * h / planck_area_;
      const double f2 = f * f, f3 = f2 * f;
      return (2 * f3 - 3 * f2 + 1) * y0 + (f3 - 2 * f2 + f) * d0 +
             (-2 * f3 + 3 * f2) * y1 + (f3 - f2) * d1;
    }
  }
  return x;
}

HubbardParams RampSchedule::sample(double tau) const {
  if (!std::isfinite(tau)) throw std::invalid_argument("schedule sample: non-finite tau");
  double x = duration > 0.0 ? std::clamp(tau / duration, 0.0, 1.0) : 0.0;
  if (reverse) x = 1.0 - x;

  switch (kind) {
    case Kind::LinearBiasSweep: {
      const double theta = theta_start + (theta_end - theta_start) * sweep_progress(x);
      const double s = std::sin(0.5 * theta), c = std::cos(0.5 * theta);
      const double t = std::max(t_max * std::abs(s), t_min);
      double delta;
      if (std::abs(s) < 1e-12) {
        delta = c >= 0.0 ? -delta_max : delta_max;
      } else {
        delta = std::clamp(-t * c / s, -delta_max, delta_max);
      }
      return {t, delta, u};
    }
    case Kind::BlackmanBarrier: {
      const double w = 0.42 - 0.5 * std::cos(kTwoPi * x) + 0.08 * std::cos(2.0 * kTwoPi * x);
      return {t_min + (t_max - t_min) * w, 0.0, u};
    }
    case Kind::PiecewiseTable: {
      const double tt = x * duration;
      if (taus.empty()) throw std::logic_error("piecewise schedule has no knots");
      if (tt <= taus.front()) return knots.front();
      if (tt >= taus.back()) return knots.back();
      const auto it = std::upper_bound(taus.begin(), taus.end(), tt);
      const size_t j = static_cast<size_t>(it - taus.begin());
      const double f = (tt - taus[j - 1]) / (taus[j] - taus[j - 1]);
      const HubbardParams &a = knots[j - 1], &b = knots[j];
      return {a.t + f * (b.t - a.t), a.delta + f * (b.delta - a.delta),
              a.u + f * (b.u - a.u)};
    }
  }
  throw std::logic_error("unreachable schedule kind");
}

RampSchedule RampSchedule::reversed() const {
  RampSchedule r = *this;
  r.reverse = !r.reverse;
  return r;
}

RampSchedule RampSchedule::linear_bias_sweep(double duration, double t_max, double t_min,
                                             double delta_max, double u, Easing easing,
                                             double theta_start, double theta_end) {
  if (duration < 0.0 || t_max <= 0.0 || t_min < 0.0 || delta_max < 0.0)
    throw std::invalid_argument("linear_bias_sweep: bad parameters");
  RampSchedule s;
  s.kind = Kind::LinearBiasSweep;
  s.duration = duration;
  s.t_max = t_max;
  s.t_min = t_min;
  s.delta_max = delta_max;
  s.u = u;
  s.easing = easing;
  s.theta_start = theta_start;
  s.theta_end = theta_end;
  if (easing == Easing::Planck) s.build_planck_cdf();
  return s;
}

RampSchedule RampSchedule::blackman_barrier(double duration, double t_min, double t_max,
                                            double u) {
  if (duration < 0.0 || t_min < 0.0 || t_max < t_min)
    throw std::invalid_argument("blackman_barrier: bad parameters");
  RampSchedule s;
  s.kind = Kind::BlackmanBarrier;
  s.duration = duration;
  s.t_min = t_min;
  s.t_max = t_max;
  s.u = u;
  return s;
}

RampSchedule RampSchedule::piecewise(std::vector<double> taus,
                                     std::vector<HubbardParams> knots) {
  if (taus.size() != knots.size() || taus.size() < 2)
    throw std::invalid_argument("piecewise: need >= 2 knots");
  if (!std::is_sorted(taus.begin(), taus.end()))
    throw std::invalid_argument("piecewise: taus must ascend");
  for (const auto& k : knots) k.validate();
  RampSchedule s;
  s.kind = Kind::PiecewiseTable;
  s.duration = taus.back() - taus.front();
  s.taus = std::move(taus);
  s.knots = std::move(knots);
  const double t0 = s.taus.front();
  for (auto& t : s.taus) t -= t0;
  s.u = s.knots.front().u;
  return s;
}

}  // namespace dimer
