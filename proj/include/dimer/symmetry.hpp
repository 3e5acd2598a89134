#pragma once

#include "dimer/evolve.hpp"

namespace dimer {

// Chiral unitary and anti-unitary time-reversal operators on SpinFermionic6.
// The triplet block signs of Gamma are fixed to +1 (both choices commute
// trivially with the zero triplet block).
struct SymmetryOperator {
  enum class Kind { Chiral, TimeReversal };
  Kind kind;
  Eigen::MatrixXd matrix;  // unitary part; TimeReversal composes with conjugation
  bool antiunitary;
};

SymmetryOperator chiral_operator();
SymmetryOperator time_reversal_operator();

// max |Gamma H Gamma^-1 + H|; zero iff H anticommutes with Gamma
double check_chiral(const HermitianMatrix& h, const SymmetryOperator& gamma);

struct TimeReversalCheck {
  bool real_symmetric;          // H real symmetric within 1e-12
  double max_imaginary_part;    // over phase-fixed eigenvector entries
};

// Time reversal holds iff H is real symmetric, in which case the eigenbasis
// can be chosen real; the report carries the realisability residual.
TimeReversalCheck check_time_reversal(const HermitianMatrix& h);

// number of eigenvalues with |E| < tol; tol <= 0 selects 1e-9 * spectral radius
int zero_mode_count(const HermitianMatrix& h, double tol = -1.0);

// Peak |<D+|psi>|^2 along the path for an initial |s> under the schedule,
// optionally with a time-reversal-respecting multiplicative tunnelling
// perturbation. D+ stays dark up to diabatic corrections.
double dark_space_leakage(const RampSchedule& schedule, int steps,
                          const TunnellingModulation* noise = nullptr);

}  // namespace dimer
