#pragma once

#include <optional>

#include "dimer/fit.hpp"
#include "dimer/model.hpp"
#include "dimer/rng.hpp"

namespace dimer {

// Magnetic-gradient singlet-triplet coupling. The splitting sets the STO
// frequency directly: f_STO = splitting_hz (about 140 Hz in the experiment).
struct StoConfig {
  double splitting_hz = 140.0;
};

struct StateFractions {
  double p_singlet = 0.0;
  double p_triplet0 = 0.0;
  double p_doublon = 0.0;  // |D+|^2 + |D-|^2
  double p_tplus = 0.0;
  double p_tminus = 0.0;

  double sum() const { return p_singlet + p_triplet0 + p_doublon + p_tplus + p_tminus; }
};

struct StoTrace {
  std::vector<double> times;
  std::vector<double> singlet_fraction;
  std::vector<double> sigmas;  // synthetic standard error per point
};

struct FidelityReport {
  double n_e = 0.0, o_e = 0.0;      // decay constants (amplitude, offset)
  double f_raw = 0.0, f_surv = 0.0, f_corr = 0.0;
  double err_f_raw = 0.0, err_f_surv = 0.0, err_f_corr = 0.0;
  bool reliable = true;
};

// Projector expectation values on the spin basis; throws on unnormalised
// input. Accepts Site or Spin fermionic states.
StateFractions state_fractions(const StateVector& psi);

// Project out the doublon population (the experiment removes atoms on
// doubly-occupied sites before STO detection); returns the renormalised
// state and reports the survival probability.
StateVector remove_doublons(const StateVector& psi, double* survival = nullptr);

// Coherent singlet-triplet rotation for the given duration. A quarter
// period takes |s> to the equatorial |i-> state; components outside
// span{|s>, |t0>} must stay below 1e-6 and are left frozen.
StateVector apply_sto(const StateVector& psi, const StoConfig& config, double duration);

// Singlet fraction sampled on a time grid, with optional Gaussian
// measurement noise of standard deviation sigma per point. Doublons are
// projected out before the STO, as in the measurement chain.
StoTrace simulate_sto_trace(const StateVector& psi, const StoConfig& config,
                            const std::vector<double>& times, double sigma = 0.0,
                            Rng* rng = nullptr);

FitResult fit_sto(const StoTrace& trace);

// Exponential-decay fidelity extraction: fits A1 exp(-N/Ne) to the STO
// amplitudes and offsets vs gate count, then F_raw = exp(-1/Ne),
// F_surv = exp(-1/Oe), F_corr = F_raw / F_surv.
FidelityReport fidelity_from_decay(const std::vector<double>& counts,
                                   const std::vector<double>& amplitudes,
                                   const std::vector<double>& offsets);

// kappa_ij^z = <(S_i x S_j)^z>, site indexing fixed so that |i-> gives +0.5
// and |i+> gives -0.5; zero on all of {ud, du, s, t0} and on doublons.
double spin_chirality(const StateVector& psi);

// alpha(kappa) = (sign) * arccos(-2 kappa) / pi; the branch sign comes from
// the sign of the dynamical phase (the Hubbard U).
double alpha_from_chirality(double kappa, int sign_branch);

}  // namespace dimer
