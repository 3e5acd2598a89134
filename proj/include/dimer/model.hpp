#pragma once

#include <optional>

#include "dimer/basis.hpp"

namespace dimer {

// Instantaneous dimer parameters. All energies are plain frequencies in Hz
// (hbar = 1 convention, so a phase is 2*pi * integral E dt).
struct HubbardParams {
  double t = 0.0;      // tunnelling, >= 0
  double delta = 0.0;  // site bias, signed
  double u = 0.0;      // on-site interaction, signed

  void validate() const;
};

struct HermitianMatrix {
  Eigen::MatrixXcd entries;  // Hz
  BasisTag basis;

  int dim() const { return static_cast<int>(entries.rows()); }
  // max |H - H^dagger| relative to max |H|
  double hermiticity_defect() const;
};

// Dark state cos(theta/2)|s> + sin(theta/2)|D->, annihilated by the singlet
// Hamiltonian at U = 0.
struct DarkState {
  double theta;       // rad, in [0, 2pi]
  StateVector vector; // SpinFermionic6
};

struct Spectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns, orthonormal, phase-fixed
};

// Full two-particle Hamiltonian on SiteFermionic6, with the signed +-t
// pattern and U +- 2*delta doublon diagonal.
HermitianMatrix build_h_full(const HubbardParams& p);

// Singlet-sector 3x3 on {D+, D-, s}: diag(U, U, 0), couplings 2*delta
// between the doublon combinations and -2t between D+ and s.
HermitianMatrix build_h_singlet(const HubbardParams& p);

// 6x6 on SpinFermionic6: zero triplet block, singlet block as above. Equals
// the conjugation of build_h_full by the fixed spin_from_site() transform.
HermitianMatrix build_h_spin6(const HubbardParams& p);

// Two-boson Hamiltonian in the reduced Fock basis or its spin-basis form,
// where |s> decouples instead of the triplets. basis must be BosonicFock4 or
// BosonicSpin4.
HermitianMatrix build_h_bosonic(const HubbardParams& p, BasisTag basis);

// Singlet 3x3 with a synthetic complex tunnelling phase t -> t*exp(i*phi).
// Breaks time reversal; used by validity probes only.
HermitianMatrix build_h_singlet_phased(const HubbardParams& p, double tunnelling_phase);

// Mixing angle theta in [0, 2pi] with cot(theta/2) = -delta/t, continuous
// along a bias sweep: theta -> 0 as delta/t -> -inf, pi at delta = 0,
// -> 2pi as delta/t -> +inf. Throws for t = delta = 0.
double mixing_angle(const HubbardParams& p);

// Exact zero mode of the singlet sector, valid only at U = 0. The returned
// angle is the branch conjugate to mixing_angle (equal at delta = 0); with
// the sign conventions of build_h_singlet this is the branch annihilated by
// the Hamiltonian, and H*psi = 0 is verified to 1e-12 * ||H||.
DarkState dark_state(const HubbardParams& p);

// Dense Hermitian diagonalisation; eigenvalues ascending, each eigenvector's
// largest-magnitude component made real positive. Throws on non-Hermitian
// input.
Spectrum spectrum(const HermitianMatrix& h);

// Phase-fix a single eigenvector in place (largest component real positive).
void fix_phase(Eigen::VectorXcd& v);

}  // namespace dimer
