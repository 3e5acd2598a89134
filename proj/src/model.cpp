#include "dimer/model.hpp"

#include <cmath>

namespace dimer {

void HubbardParams::validate() const {
  if (!(std::isfinite(t) && std::isfinite(delta) && std::isfinite(u)))
    throw std::invalid_argument("HubbardParams: non-finite entry");
  if (t < 0.0) throw std::invalid_argument("HubbardParams: t must be >= 0");
}

double HermitianMatrix::hermiticity_defect() const {
  const double scale = entries.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff() / scale;
}

HermitianMatrix build_h_full(const HubbardParams& p) {
  p.validate();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(6, 6);
  const double t = p.t, d = p.delta, u = p.u;
  h(idx::site_dl, idx::site_dl) = u + 2.0 * d;
  h(idx::site_dr, idx::site_dr) = u - 2.0 * d;
  h(idx::site_dl, idx::site_ud) = -t;
  h(idx::site_dl, idx::site_du) = t;
  h(idx::site_ud, idx::site_dl) = -t;
  h(idx::site_du, idx::site_dl) = t;
  h(idx::site_dr, idx::site_ud) = -t;
  h(idx::site_dr, idx::site_du) = t;
  h(idx::site_ud, idx::site_dr) = -t;
  h(idx::site_du, idx::site_dr) = t;
  return {h, BasisTag::SiteFermionic6};
}

HermitianMatrix build_h_singlet(const HubbardParams& p) {
  p.validate();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
  h(idx::sing_dp, idx::sing_dp) = p.u;
  h(idx::sing_dm, idx::sing_dm) = p.u;
  h(idx::sing_dp, idx::sing_dm) = 2.0 * p.delta;
  h(idx::sing_dm, idx::sing_dp) = 2.0 * p.delta;
  h(idx::sing_dp, idx::sing_s) = -2.0 * p.t;
  h(idx::sing_s, idx::sing_dp) = -2.0 * p.t;
  return {h, BasisTag::SingletOnly3};
}

HermitianMatrix build_h_spin6(const HubbardParams& p) {
  const HermitianMatrix hs = build_h_singlet(p);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(6, 6);
  h.block(3, 3, 3, 3) = hs.entries;  // {D+, D-, s} block after the triplets
  return {h, BasisTag::SpinFermionic6};
}

HermitianMatrix build_h_bosonic(const HubbardParams& p, BasisTag basis) {
  p.validate();
  const double t = p.t, d = p.delta, u = p.u;
  if (basis == BasisTag::BosonicFock4) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    h(0, 0) = u + 2.0 * d;
    h(3, 3) = u - 2.0 * d;
    h(0, 1) = h(1, 0) = -t;
    h(0, 2) = h(2, 0) = -t;
    h(1, 3) = h(3, 1) = -t;
    h(2, 3) = h(3, 2) = -t;
    return {h, BasisTag::BosonicFock4};
  }
  if (basis == BasisTag::BosonicSpin4) {
    // ordering {t0, D+, D-, s}; the singlet row/column is identically zero
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    h(0, 1) = h(1, 0) = -2.0 * t;
    h(1, 1) = u;
    h(2, 2) = u;
    h(1, 2) = h(2, 1) = 2.0 * d;
    return {h, BasisTag::BosonicSpin4};
  }
  throw std::invalid_argument("build_h_bosonic: basis must be BosonicFock4 or BosonicSpin4");
}

HermitianMatrix build_h_singlet_phased(const HubbardParams& p, double tunnelling_phase) {
  HermitianMatrix h = build_h_singlet(p);
  const complexd c = std::polar(1.0, tunnelling_phase);
  h.entries(idx::sing_dp, idx::sing_s) *= c;
  h.entries(idx::sing_s, idx::sing_dp) *= std::conj(c);
  return h;
}

double mixing_angle(const HubbardParams& p) {
  p.validate();
  if (p.t == 0.0 && p.delta == 0.0)
    throw std::domain_error("undefined mixing angle");
  // cot(theta/2) = -delta/t with theta/2 in (0, pi); atan2 picks the branch
  // continuously (theta -> 0 for delta -> -inf, pi at delta = 0).
  return 2.0 * std::atan2(p.t, -p.delta);
}

DarkState dark_state(const HubbardParams& p) {
  p.validate();
  if (p.u != 0.0) throw std::domain_error("dark state exact only at U=0");
  if (p.t == 0.0 && p.delta == 0.0)
    throw std::domain_error("undefined mixing angle");
  // Null vector of build_h_singlet is delta*|s> + t*|D->; written in the
  // cos/sin form this is the 2pi - mixing_angle branch.
  const double theta = 2.0 * std::atan2(p.t, p.delta);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(6);
  amp(idx::spin_s) = std::cos(0.5 * theta);
  amp(idx::spin_dm) = std::sin(0.5 * theta);

  const HermitianMatrix h = build_h_spin6(p);
  const double hnorm = h.entries.cwiseAbs().maxCoeff();
  const double resid = (h.entries * amp).norm();
  if (resid > 1e-12 * std::max(hnorm, 1.0))
    throw std::logic_error("dark_state: null-vector residual " + std::to_string(resid));
  return {theta, StateVector{amp, BasisTag::SpinFermionic6}};
}

void fix_phase(Eigen::VectorXcd& v) {
  int imax = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best + 1e-15) {
      best = a;
      imax = i;
    }
  }
  if (best <= 0.0) return;
  v *= std::conj(v(imax)) / std::abs(v(imax));
}

Spectrum spectrum(const HermitianMatrix& h) {
  if (h.hermiticity_defect() > 1e-12)
    throw std::invalid_argument("spectrum: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.entries);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigensolver failed");
  Spectrum s{es.eigenvalues(), es.eigenvectors()};
  for (int k = 0; k < s.vectors.cols(); ++k) {
    Eigen::VectorXcd col = s.vectors.col(k);
    fix_phase(col);
    s.vectors.col(k) = col;
  }
  return s;
}

}  // namespace dimer
