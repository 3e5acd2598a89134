#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dimer {

using complexd = std::complex<double>;

// Fixed basis orderings used throughout.
//
// SiteFermionic6:  { |up,up>, |updown,0>, |up,down>, |down,up>, |0,updown>, |down,down> }
// SpinFermionic6:  { |t+>, |t0>, |t->, |D+>, |D->, |s> }
// SingletOnly3:    { |D+>, |D->, |s> }
// BosonicFock4:    { |updown,0>, |up,down>, |down,up>, |0,updown> }
// BosonicSpin4:    { |t0>, |D+>, |D->, |s> }
enum class BasisTag {
  SiteFermionic6,
  SpinFermionic6,
  SingletOnly3,
  BosonicFock4,
  BosonicSpin4,
};

inline int basis_dim(BasisTag b) {
  switch (b) {
    case BasisTag::SiteFermionic6:
    case BasisTag::SpinFermionic6: return 6;
    case BasisTag::SingletOnly3: return 3;
    case BasisTag::BosonicFock4:
    case BasisTag::BosonicSpin4: return 4;
  }
  throw std::invalid_argument("unknown basis tag");
}

inline std::string basis_name(BasisTag b) {
  switch (b) {
    case BasisTag::SiteFermionic6: return "SiteFermionic6";
    case BasisTag::SpinFermionic6: return "SpinFermionic6";
    case BasisTag::SingletOnly3: return "SingletOnly3";
    case BasisTag::BosonicFock4: return "BosonicFock4";
    case BasisTag::BosonicSpin4: return "BosonicSpin4";
  }
  return "?";
}

// Index aliases within the fixed orderings.
namespace idx {
// SiteFermionic6
constexpr int site_upup = 0;
constexpr int site_dl = 1;  // |updown,0>
constexpr int site_ud = 2;  // |up,down>
constexpr int site_du = 3;  // |down,up>
constexpr int site_dr = 4;  // |0,updown>
constexpr int site_dndn = 5;
// SpinFermionic6
constexpr int spin_tp = 0;
constexpr int spin_t0 = 1;
constexpr int spin_tm = 2;
constexpr int spin_dp = 3;
constexpr int spin_dm = 4;
constexpr int spin_s = 5;
// SingletOnly3
constexpr int sing_dp = 0;
constexpr int sing_dm = 1;
constexpr int sing_s = 2;
}  // namespace idx

// Basis change SpinFermionic6 <- SiteFermionic6, rows are the spin states
// expanded over site states:
//   t+ = |up,up>            t0 = (|up,down>+|down,up>)/sqrt2   t- = |down,down>
//   D+ = (|updown,0>+|0,updown>)/sqrt2
//   D- = (|updown,0>-|0,updown>)/sqrt2
//   s  = (|up,down>-|down,up>)/sqrt2
// Signs are fixed once here; spectra and fractions are insensitive but phases
// are not, so the constant must never be rederived ad hoc elsewhere.
inline const Eigen::Matrix<double, 6, 6>& spin_from_site() {
  static const Eigen::Matrix<double, 6, 6> q = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
    m(idx::spin_tp, idx::site_upup) = 1.0;
    m(idx::spin_t0, idx::site_ud) = r;
    m(idx::spin_t0, idx::site_du) = r;
    m(idx::spin_tm, idx::site_dndn) = 1.0;
    m(idx::spin_dp, idx::site_dl) = r;
    m(idx::spin_dp, idx::site_dr) = r;
    m(idx::spin_dm, idx::site_dl) = r;
    m(idx::spin_dm, idx::site_dr) = -r;
    m(idx::spin_s, idx::site_ud) = r;
    m(idx::spin_s, idx::site_du) = -r;
    return m;
  }();
  return q;
}

// State vector over one of the fixed bases. Amplitudes are stored in the
// declared ordering; norm preservation is the caller's contract.
struct StateVector {
  Eigen::VectorXcd amplitudes;
  BasisTag basis;

  double norm() const { return amplitudes.norm(); }
};

inline StateVector to_spin_basis(const StateVector& psi) {
  if (psi.basis == BasisTag::SpinFermionic6) return psi;
  if (psi.basis != BasisTag::SiteFermionic6)
    throw std::invalid_argument("to_spin_basis: expected a fermionic 6-dim state");
  return {spin_from_site() * psi.amplitudes, BasisTag::SpinFermionic6};
}

inline StateVector to_site_basis(const StateVector& psi) {
  if (psi.basis == BasisTag::SiteFermionic6) return psi;
  if (psi.basis != BasisTag::SpinFermionic6)
    throw std::invalid_argument("to_site_basis: expected a fermionic 6-dim state");
  return {spin_from_site().transpose() * psi.amplitudes, BasisTag::SiteFermionic6};
}

}  // namespace dimer
