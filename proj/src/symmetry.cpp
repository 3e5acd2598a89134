#include "dimer/symmetry.hpp"

#include <cmath>

namespace dimer {

SymmetryOperator chiral_operator() {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(6, 6);
  g.diagonal() << 1, 1, 1, 1, -1, -1;  // {t+,t0,t-} +1, {D+} +1, {D-,s} -1
  return {SymmetryOperator::Kind::Chiral, g, false};
}

SymmetryOperator time_reversal_operator() {
  // T = -(I_3 x sigma_z) K
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
  m.diagonal() << -1, 1, -1, 1, -1, 1;
  return {SymmetryOperator::Kind::TimeReversal, m, true};
}

double check_chiral(const HermitianMatrix& h, const SymmetryOperator& gamma) {
  if (gamma.matrix.rows() != h.dim())
    throw std::invalid_argument("check_chiral: dimension mismatch");
  const Eigen::MatrixXd& g = gamma.matrix;
  const Eigen::MatrixXcd anti = g * h.entries * g.inverse() + h.entries;
  return anti.cwiseAbs().maxCoeff();
}

TimeReversalCheck check_time_reversal(const HermitianMatrix& h) {
  const double scale = std::max(h.entries.cwiseAbs().maxCoeff(), 1.0);
  const double imag_part = h.entries.imag().cwiseAbs().maxCoeff();
  const double asym = (h.entries - h.entries.transpose()).cwiseAbs().maxCoeff();
  const bool real_sym = imag_part <= 1e-12 * scale && asym <= 1e-12 * scale;

  const Spectrum s = spectrum(h);
  double max_imag = 0.0;
  for (int j = 0; j < s.vectors.cols(); ++j)
    max_imag = std::max(max_imag, s.vectors.col(j).imag().cwiseAbs().maxCoeff());
  return {real_sym, max_imag};
}

int zero_mode_count(const HermitianMatrix& h, double tol) {
  const Spectrum s = spectrum(h);
  const double radius = s.values.cwiseAbs().maxCoeff();
  if (tol <= 0.0) tol = 1e-9 * std::max(radius, 1.0);
  int n = 0;
  for (int i = 0; i < s.values.size(); ++i)
    if (std::abs(s.values(i)) < tol) ++n;
  return n;
}

double dark_space_leakage(const RampSchedule& schedule, int steps,
                          const TunnellingModulation* noise) {
  Eigen::Vector3cd psi = Eigen::Vector3cd::Zero();
  psi(idx::sing_s) = 1.0;
  double peak = 0.0;
  propagate_singlet_trace(schedule, psi, steps, noise,
                          [&peak](double, const Eigen::Vector3cd& v) {
                            peak = std::max(peak, std::norm(v(idx::sing_dp)));
                          });
  return peak;
}

}  // namespace dimer
