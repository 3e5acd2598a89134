#include "dimer/evolve.hpp"

#include <cmath>

#include "dimer/util.hpp"

namespace dimer {

namespace {

Eigen::Matrix3d singlet_matrix(const HubbardParams& p, double tmul) {
  const double t = p.t * tmul;
  Eigen::Matrix3d h;
  h << p.u, 2.0 * p.delta, -2.0 * t,
       2.0 * p.delta, p.u, 0.0,
       -2.0 * t, 0.0, 0.0;
  return h;
}

Eigen::Matrix3cd step_exponential(const Eigen::Matrix3d& h, double dtau) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  es.computeDirect(h);
  const Eigen::Vector3d lam = es.eigenvalues();
  const Eigen::Matrix3d v = es.eigenvectors();
  Eigen::Vector3cd ph;
  for (int i = 0; i < 3; ++i) ph(i) = std::polar(1.0, -two_pi * lam(i) * dtau);
  return v.cast<complexd>() * ph.asDiagonal() * v.transpose().cast<complexd>();
}

HermitianMatrix hamiltonian_for(const RampSchedule& schedule, BasisTag basis, double tau) {
  const HubbardParams p = schedule.sample(tau);
  switch (basis) {
    case BasisTag::SpinFermionic6: return build_h_spin6(p);
    case BasisTag::SiteFermionic6: return build_h_full(p);
    case BasisTag::SingletOnly3: return build_h_singlet(p);
    case BasisTag::BosonicFock4:
    case BasisTag::BosonicSpin4: return build_h_bosonic(p, basis);
  }
  throw std::invalid_argument("propagate: unknown basis");
}

// instantaneous singlet eigensystem, eigenvalues ascending
struct Eig3 {
  Eigen::Vector3d values;
  Eigen::Matrix3d vectors;
};

Eig3 singlet_eig(const HubbardParams& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  es.computeDirect(singlet_matrix(p, 1.0));
  return {es.eigenvalues(), es.eigenvectors()};
}

int s_dominant_index(const Eigen::Matrix3d& vectors) {
  int best = 0;
  double w = -1.0;
  for (int j = 0; j < 3; ++j) {
    const double a = std::abs(vectors(2, j));  // |<s|v_j>|
    if (a > w) {
      w = a;
      best = j;
    }
  }
  return best;
}

}  // namespace

PropagationResult propagate(const RampSchedule& schedule, const StateVector& initial,
                            int steps) {
  if (steps < 2) throw std::invalid_argument("propagate: steps must be >= 2");
  const int n = basis_dim(initial.basis);
  if (initial.amplitudes.size() != n)
    throw std::invalid_argument("propagate: state dimension does not match basis");

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  double defect = 0.0;
  if (schedule.duration > 0.0) {
    const double dtau = schedule.duration / steps;
    for (int k = 0; k < steps; ++k) {
      const double mid = (k + 0.5) * dtau;
      const HermitianMatrix h = hamiltonian_for(schedule, initial.basis, mid);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.entries);
      Eigen::VectorXcd ph(n);
      for (int i = 0; i < n; ++i)
        ph(i) = std::polar(1.0, -two_pi * es.eigenvalues()(i) * dtau);
      const Eigen::MatrixXcd ustep =
          es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
      defect = std::max(defect, (ustep.adjoint() * ustep -
                                 Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff());
      u = ustep * u;
    }
  }
  StateVector out{u * initial.amplitudes, initial.basis};
  return {std::move(out), Propagator{std::move(u), initial.basis, defect}};
}

Eigen::Matrix3cd propagate_singlet(const RampSchedule& schedule, int steps,
                                   const TunnellingModulation* mod) {
  if (steps < 2) throw std::invalid_argument("propagate_singlet: steps must be >= 2");
  Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity();
  if (schedule.duration <= 0.0) return u;
  const double dtau = schedule.duration / steps;
  for (int k = 0; k < steps; ++k) {
    const double mid = (k + 0.5) * dtau;
    const HubbardParams p = schedule.sample(mid);
    if (!(std::isfinite(p.t) && std::isfinite(p.delta) && std::isfinite(p.u)))
      throw std::invalid_argument("propagate_singlet: non-finite schedule sample");
    const double tmul = mod ? (*mod)(mid) : 1.0;
    u = step_exponential(singlet_matrix(p, tmul), dtau) * u;
  }
  return u;
}

void propagate_singlet_trace(const RampSchedule& schedule, const Eigen::Vector3cd& psi0,
                             int steps, const TunnellingModulation* mod,
                             const std::function<void(double, const Eigen::Vector3cd&)>& visit) {
  if (steps < 2) throw std::invalid_argument("propagate_singlet_trace: steps must be >= 2");
  Eigen::Vector3cd psi = psi0;
  visit(0.0, psi);
  if (schedule.duration <= 0.0) return;
  const double dtau = schedule.duration / steps;
  for (int k = 0; k < steps; ++k) {
    const double mid = (k + 0.5) * dtau;
    const HubbardParams p = schedule.sample(mid);
    const double tmul = mod ? (*mod)(mid) : 1.0;
    psi = step_exponential(singlet_matrix(p, tmul), dtau) * psi;
    visit((k + 1) * dtau, psi);
  }
}

Eigen::Matrix4cd u_alpha(double alpha) {
  const complexd e = std::polar(1.0, pi * alpha);
  const complexd a = 0.5 * (1.0 + e), b = 0.5 * (1.0 - e);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;
  u(3, 3) = 1.0;
  u(1, 1) = a;
  u(2, 2) = a;
  u(1, 2) = b;
  u(2, 1) = b;
  return u;
}

double process_fidelity(const Eigen::Matrix4cd& target, const Eigen::Matrix4cd& actual) {
  const complexd tr = (target.adjoint() * actual).trace() / 4.0;
  return std::norm(tr);
}

GateReport run_gate(const RampSchedule& schedule, int steps,
                    std::optional<double> target_alpha) {
  GateReport rep;
  const HubbardParams p0 = schedule.start(), p1 = schedule.end();
  rep.endpoint_staggered_warning =
      (std::abs(p0.delta) < 10.0 * p0.t) || (std::abs(p1.delta) < 10.0 * p1.t);

  const Eigen::Matrix3cd u3 = propagate_singlet(schedule, steps);
  const complexd uss = u3(idx::sing_s, idx::sing_s);
  rep.singlet_amplitude = uss;

  // t+ is the exactly decoupled zero-energy reference; its amplitude is 1
  // so the global phase is already fixed.
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;
  u(3, 3) = 1.0;
  u(1, 1) = 0.5 * (1.0 + uss);
  u(2, 2) = 0.5 * (1.0 + uss);
  u(1, 2) = 0.5 * (1.0 - uss);
  u(2, 1) = 0.5 * (1.0 - uss);
  rep.u_computational = u;

  double phi = std::arg(uss);  // principal, (-pi, pi]
  // alpha branch: the +-arccos ambiguity follows the sign of U; at U >= 0 the
  // geometric point phi = -pi + 0 is the same gate as +pi, reported as +1
  if (schedule.u >= 0.0 && phi < -pi + 1e-6) phi += two_pi;
  rep.alpha = phi / pi;
  rep.leakage = 0.5 * (1.0 - std::norm(uss));
  rep.delta_sign = schedule.u > 0.0 ? 1 : (schedule.u < 0.0 ? -1 : 0);

  rep.gamma = geometric_phase(schedule, std::max(steps, 512));
  const Eig3 e0 = singlet_eig(p0);
  rep.delta = -dynamical_phase(schedule, s_dominant_index(e0.vectors));

  rep.target_alpha = target_alpha.value_or(std::abs(schedule.u) < 1e-9 ? 1.0 : rep.alpha);
  rep.process_fidelity = process_fidelity(u_alpha(rep.target_alpha), u);
  return rep;
}

double dynamical_phase(const RampSchedule& schedule, int track_index) {
  if (track_index < 0 || track_index > 2)
    throw std::invalid_argument("dynamical_phase: track index out of range");
  if (schedule.duration <= 0.0) return 0.0;

  auto integrate = [&](int segments) {
    // track along 2*segments+1 uniform points, Simpson on pairs of cells
    const int npts = 2 * segments + 1;
    const double h = schedule.duration / (npts - 1);
    std::vector<double> energy(npts);
    Eig3 prev = singlet_eig(schedule.sample(0.0));
    Eigen::Vector3d track = prev.vectors.col(track_index);
    energy[0] = prev.values(track_index);
    for (int k = 1; k < npts; ++k) {
      const Eig3 cur = singlet_eig(schedule.sample(k * h));
      int best = 0;
      double w = -1.0;
      for (int j = 0; j < 3; ++j) {
        const double ov = std::abs(track.dot(cur.vectors.col(j)));
        if (ov > w) {
          w = ov;
          best = j;
        }
      }
      if (w * w < 0.5) throw std::runtime_error("non-adiabatic track");
      track = cur.vectors.col(best) * (track.dot(cur.vectors.col(best)) >= 0 ? 1.0 : -1.0);
      energy[k] = cur.values(best);
    }
    double s = 0.0;
    for (int k = 0; k + 2 < npts; k += 2)
      s += h / 3.0 * (energy[k] + 4.0 * energy[k + 1] + energy[k + 2]);
    return s;
  };

  double prev = integrate(64);
  for (int segments = 128; segments <= 16384; segments *= 2) {
    const double cur = integrate(segments);
    if (std::abs(two_pi * (cur - prev)) <= 1e-8) return two_pi * cur;
    prev = cur;
  }
  return two_pi * prev;
}

double geometric_phase(const RampSchedule& schedule, int points) {
  if (points < 2) throw std::invalid_argument("geometric_phase: points must be >= 2");
  const double h = schedule.duration / points;

  Eig3 e = singlet_eig(schedule.sample(0.0));
  const int start = s_dominant_index(e.vectors);
  Eigen::Vector3d first = e.vectors.col(start);
  Eigen::Vector3d prev = first;

  double wilson = 1.0;
  for (int k = 1; k <= points; ++k) {
    const Eig3 cur = singlet_eig(schedule.sample(schedule.duration > 0 ? k * h : 0.0));
    int best = 0;
    double w = -1.0;
    for (int j = 0; j < 3; ++j) {
      const double ov = std::abs(prev.dot(cur.vectors.col(j)));
      if (ov > w) {
        w = ov;
        best = j;
      }
    }
    if (w * w < 0.5) throw std::runtime_error("geometric_phase: non-adiabatic track");
    wilson *= prev.dot(cur.vectors.col(best));
    prev = cur.vectors.col(best);
  }
  const double closure = prev.dot(first);
  if (std::abs(closure) < 0.999)
    throw std::runtime_error("geometric_phase: open loop (endpoint overlap " +
                             std::to_string(std::abs(closure)) + ")");
  wilson *= closure;
  // gamma = -Im log W; real Hamiltonian path makes W real and the result
  // exactly quantised to {0, pi}
  return wrap_2pi(-std::arg(complexd(wilson, 0.0)));
}

double solid_angle(const RampSchedule& schedule, int points, double synthetic_tunnelling_phase) {
  if (std::abs(schedule.sample(0.0).u) > 1e-12 || std::abs(schedule.u) > 1e-12)
    throw std::domain_error("solid_angle: defined for U = 0 trajectories");
  const double h = points > 0 ? schedule.duration / points : 0.0;

  std::vector<Eigen::Vector3d> n;
  n.reserve(points + 1);
  for (int k = 0; k <= points; ++k) {
    const HubbardParams p = schedule.sample(k * h);
    const HermitianMatrix hm = build_h_singlet_phased(p, synthetic_tunnelling_phase);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(hm.entries);
    int dark = 0;
    for (int j = 1; j < 3; ++j)
      if (std::abs(es.eigenvalues()(j)) < std::abs(es.eigenvalues()(dark))) dark = j;
    const Eigen::Vector3cd v = es.eigenvectors().col(dark);
    const complexd cs = v(idx::sing_s), cdm = v(idx::sing_dm), cdp = v(idx::sing_dp);
    if (std::abs(cdp) > 1e-6)
      throw std::domain_error("solid_angle: trajectory leaves the {s, D-} sphere");
    const complexd cross = std::conj(cs) * cdm;
    Eigen::Vector3d b(2.0 * cross.real(), 2.0 * cross.imag(),
                      std::norm(cs) - std::norm(cdm));
    if (std::abs(b.y()) > 1e-3)
      throw std::domain_error(
          "solid_angle: trajectory leaves great circle (time-reversal violated)");
    n.push_back(b);
  }
  if ((n.back() - n.front()).norm() > 2e-3 &&
      std::abs(n.back().dot(n.front())) < 0.999)
    throw std::runtime_error("solid_angle: open trajectory");

  // fan of signed spherical triangles against a reference pole off the
  // great circle (the y pole; valid inputs never reach it); orientation
  // fixed so the nominal 0 -> 2pi sweep encloses +2pi
  const Eigen::Vector3d ref(0.0, -1.0, 0.0);
  double omega = 0.0;
  auto add_triangle = [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    const double triple = ref.dot(a.cross(b));
    const double denom = 1.0 + ref.dot(a) + a.dot(b) + b.dot(ref);
    omega += 2.0 * std::atan2(triple, denom);
  };
  for (size_t k = 0; k + 1 < n.size(); ++k) add_triangle(n[k], n[k + 1]);
  add_triangle(n.back(), n.front());

  if (synthetic_tunnelling_phase == 0.0 && schedule.duration > 0.0) {
    const double gamma = geometric_phase(schedule, points);
    const double resid = std::abs(wrap_pi(gamma + 0.5 * omega));
    if (resid > 1e-3)
      throw std::runtime_error("solid_angle: gamma != -omega/2 (residual " +
                               std::to_string(resid) + " rad)");
  }
  return omega;
}

double adiabaticity_margin(const RampSchedule& schedule, int steps) {
  if (steps < 2) throw std::invalid_argument("adiabaticity_margin: steps must be >= 2");
  if (schedule.duration <= 0.0) return 0.0;
  const double h = schedule.duration / steps;
  std::vector<double> theta(steps + 1);
  double gap_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= steps; ++k) {
    const HubbardParams p = schedule.sample(k * h);
    if (p.t <= 0.0)
      throw std::invalid_argument("adiabaticity_margin: requires t > 0 along the path");
    theta[k] = mixing_angle(p);
    gap_min = std::min(gap_min, 2.0 * std::hypot(p.t, p.delta));
  }
  double rate_max = 0.0;
  for (int k = 0; k <= steps; ++k) {
    double d;
    if (k == 0)
      d = (theta[1] - theta[0]) / h;
    else if (k == steps)
      d = (theta[steps] - theta[steps - 1]) / h;
    else
      d = (theta[k + 1] - theta[k - 1]) / (2.0 * h);
    rate_max = std::max(rate_max, std::abs(d));
  }
  // sweep rate in turns/s against the angular gap
  return (rate_max / two_pi) / (two_pi * gap_min);
}

}  // namespace dimer
