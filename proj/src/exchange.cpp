#include "dimer/exchange.hpp"

#include <cmath>

#include "dimer/util.hpp"

namespace dimer {

namespace {

struct Eig3 {
  Eigen::Vector3d values;
  Eigen::Matrix3d vectors;
};

Eig3 eig(const HubbardParams& p, double tscale = 1.0) {
  Eigen::Matrix3d h;
  const double t = p.t * tscale;
  h << p.u, 2.0 * p.delta, -2.0 * t,
       2.0 * p.delta, p.u, 0.0,
       -2.0 * t, 0.0, 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  es.computeDirect(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

// one overlap-continuation step; returns tracked column index
int continue_track(const Eigen::Vector3d& track, const Eig3& cur, double where) {
  int best = 0;
  double w = -1.0;
  for (int j = 0; j < 3; ++j) {
    const double ov = std::abs(track.dot(cur.vectors.col(j)));
    if (ov > w) {
      w = ov;
      best = j;
    }
  }
  if (w * w < 0.5)
    throw std::runtime_error("exchange tracking ambiguity at " + std::to_string(where));
  return best;
}

int s_index(const Eig3& e) {
  int best = 0;
  double w = -1.0;
  for (int j = 0; j < 3; ++j) {
    const double a = std::abs(e.vectors(2, j));
    if (a > w) {
      w = a;
      best = j;
    }
  }
  return best;
}

// tracked eigenvalue samples along a schedule with scaled tunnelling;
// npts must be odd for the Simpson users
std::vector<double> tracked_energies(const RampSchedule& schedule, int npts,
                                     double tscale) {
  std::vector<double> e(npts);
  const double h = schedule.duration / (npts - 1);
  Eig3 cur = eig(schedule.sample(0.0), tscale);
  int j = s_index(cur);
  Eigen::Vector3d track = cur.vectors.col(j);
  e[0] = cur.values(j);
  for (int k = 1; k < npts; ++k) {
    cur = eig(schedule.sample(k * h), tscale);
    j = continue_track(track, cur, k * h);
    track = cur.vectors.col(j) * (track.dot(cur.vectors.col(j)) >= 0 ? 1.0 : -1.0);
    e[k] = cur.values(j);
  }
  return e;
}

double simpson(const std::vector<double>& y, double h) {
  double s = 0.0;
  for (size_t k = 0; k + 2 < y.size(); k += 2)
    s += h / 3.0 * (y[k] + 4.0 * y[k + 1] + y[k + 2]);
  return s;
}

}  // namespace

double exact_e_psi(const HubbardParams& p) {
  p.validate();
  if (p.t == 0.0 && p.delta == 0.0 && p.u == 0.0) return 0.0;
  const double scale = std::max({p.t, std::abs(p.delta), std::abs(p.u), 1e-300});
  const double delta_far = -50.0 * scale - 10.0 * p.t;

  // In the deep-superexchange regime the singlet branch meets a doublon
  // combination at 2 delta = +-U through an avoided crossing of width ~t.
  // The singlet character passes straight through, so those windows are
  // leapt diabatically; a target inside one has no unambiguous branch.
  const bool thin = p.t > 0.0 && std::abs(p.u) > 6.0 * p.t;
  const double win = thin ? std::min(30.0 * p.t, 0.25 * std::abs(p.u)) : 0.0;
  auto in_window = [&](double d) {
    return thin && (std::abs(d - 0.5 * std::abs(p.u)) < win ||
                    std::abs(d + 0.5 * std::abs(p.u)) < win);
  };
  if (in_window(p.delta))
    throw std::runtime_error("exchange tracking ambiguity at delta = " +
                             std::to_string(p.delta));

  const int steps = 2000;
  HubbardParams q{p.t, delta_far, p.u};
  Eig3 cur = eig(q);
  int j = s_index(cur);
  Eigen::Vector3d track = cur.vectors.col(j);
  double lam = cur.values(j);
  for (int k = 1; k <= steps; ++k) {
    q.delta = delta_far + (p.delta - delta_far) * k / steps;
    if (k < steps && in_window(q.delta)) continue;
    cur = eig(q);
    j = continue_track(track, cur, q.delta);
    track = cur.vectors.col(j) * (track.dot(cur.vectors.col(j)) >= 0 ? 1.0 : -1.0);
    lam = cur.values(j);
  }
  return -lam;  // triplet reference sits at zero
}

double j_direct(const HubbardParams& p) {
  p.validate();
  if (p.t == 0.0) throw std::domain_error("j_direct: t = 0");
  const double r = p.delta / p.t;
  const double den = r * r - 1.0;
  if (std::abs(den) < 1e-12)
    throw std::domain_error("j_direct: singular denominator (delta/t)^2 - 1 = 0");
  return p.u / den;
}

double j_superexchange(const HubbardParams& p) {
  p.validate();
  if (p.u == 0.0) throw std::domain_error("j_superexchange: U = 0");
  const double r = 2.0 * p.delta / p.u;
  const double den = 1.0 - r * r;
  if (std::abs(den) < 1e-12)
    throw std::domain_error("j_superexchange: singular denominator 1 - (2 delta/U)^2 = 0");
  return 4.0 * p.t * p.t / (p.u * den);
}

ExchangeCurve exchange_curve(const RampSchedule& schedule, int samples) {
  if (samples % 2 != 0) ++samples;
  const int npts = samples + 1;
  ExchangeCurve c;
  c.taus.resize(npts);
  c.delta_over_t.resize(npts);
  c.e_psi = tracked_energies(schedule, npts, 1.0);
  const double h = schedule.duration / samples;
  double t_peak = 0.0;
  for (int k = 0; k < npts; ++k) {
    c.taus[k] = k * h;
    const HubbardParams p = schedule.sample(k * h);
    c.delta_over_t[k] = p.t > 0.0 ? p.delta / p.t : std::numeric_limits<double>::infinity();
    t_peak = std::max(t_peak, p.t);
  }
  c.regime = std::abs(schedule.u) <= t_peak ? ExchangeCurve::Regime::Direct
                                            : ExchangeCurve::Regime::Superexchange;
  std::vector<double> neg(c.e_psi.size());
  for (size_t k = 0; k < neg.size(); ++k) neg[k] = -c.e_psi[k];
  c.integrated_phase = two_pi * simpson(neg, h);
  return c;
}

std::vector<double> sensitivity_scan(const RampSchedule& schedule,
                                     const std::vector<double>& scale_factors,
                                     int samples) {
  if (samples % 2 != 0) ++samples;
  const int npts = samples + 1;
  const double h = schedule.duration / samples;
  const double nominal = simpson(tracked_energies(schedule, npts, 1.0), h);
  if (nominal == 0.0)
    throw std::domain_error("sensitivity_scan: nominal exchange integral vanishes");
  std::vector<double> out;
  out.reserve(scale_factors.size());
  for (double s : scale_factors) {
    const double scaled = simpson(tracked_energies(schedule, npts, s), h);
    out.push_back(100.0 * (scaled - nominal) / std::abs(nominal));
  }
  return out;
}

double calibrate_superexchange_duration(double t_min, double t_max, double u,
                                        double target_phase) {
  // the Blackman shape is duration-invariant, so the phase rate per second
  // comes from a unit-duration quadrature
  const RampSchedule unit = RampSchedule::blackman_barrier(1.0, t_min, t_max, u);
  const auto e = tracked_energies(unit, 4097, 1.0);
  const double rate = -two_pi * simpson(e, 1.0 / 4096.0);  // rad per second of pulse
  if (rate == 0.0) throw std::domain_error("calibrate_superexchange_duration: zero rate");
  const double tau = target_phase / rate;
  if (tau <= 0.0)
    throw std::domain_error("calibrate_superexchange_duration: wrong phase sign for this U");
  return tau;
}

double calibrate_direct_u(const RampSchedule& proto, double target_alpha) {
  // singlet phase phi = pi + delta_dyn(U) with delta_dyn = -2pi int E_psi;
  // solve wrap(phi)/pi = target_alpha by bisection in U > 0
  const double target_delta = (target_alpha - 1.0) * pi;  // negative for alpha < 1
  auto delta_of = [&proto](double u) {
    RampSchedule s = proto;
    s.u = u;
    return exchange_curve(s, 2048).integrated_phase;
  };
  double lo = 0.0, hi = proto.t_max;
  double dlo = 0.0, dhi = delta_of(hi);
  for (int grow = 0; dhi > target_delta && grow < 8; ++grow) {
    hi *= 2.0;
    dhi = delta_of(hi);
  }
  if (dhi > target_delta)
    throw std::runtime_error("calibrate_direct_u: bracket failed");
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double dm = delta_of(mid);
    if (dm > target_delta) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
      dhi = dm;
    }
  }
  (void)dlo;
  return 0.5 * (lo + hi);
}

}  // namespace dimer
