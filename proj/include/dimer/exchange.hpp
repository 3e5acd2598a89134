#pragma once

#include <vector>

#include "dimer/schedule.hpp"

namespace dimer {

// Exchange energy of the dark-state branch along a schedule. e_psi holds the
// tracked singlet-sector eigenvalues; integrated_phase is the
// triplet-relative dynamical phase 2*pi * integral (0 - E_psi) dtau.
struct ExchangeCurve {
  enum class Regime { Direct, Superexchange };
  std::vector<double> taus;
  std::vector<double> delta_over_t;
  std::vector<double> e_psi;  // Hz, tracked eigenvalue
  Regime regime;
  double integrated_phase;  // rad
};

// Exchange energy at a parameter point, defined triplet-relative:
// E_triplet - E_psi where E_psi is the eigenvalue of the singlet-sector
// state continued by overlap from |s> in the staggered limit (delta -> -inf
// at fixed t, U). Zero exactly at U = 0; -U at delta = 0 for |U| << t and
// 4t^2/U for |U| >> t. Throws on tracking ambiguity at exact degeneracies.
double exact_e_psi(const HubbardParams& p);

// First-order (direct) exchange formula U/((delta/t)^2 - 1); pole at
// |delta/t| = 1.
double j_direct(const HubbardParams& p);

// Second-order superexchange formula 4t^2/(U(1-(2 delta/U)^2)); requires
// U != 0 and |2 delta/U| != 1.
double j_superexchange(const HubbardParams& p);

// Track the dark branch along a schedule and integrate its energy.
ExchangeCurve exchange_curve(const RampSchedule& schedule, int samples = 2048);

// Integral of the tracked exchange energy under globally scaled tunnelling
// t(tau) -> scale * t(tau); reports percentage variation per scale factor
// relative to the unscaled integral.
std::vector<double> sensitivity_scan(const RampSchedule& schedule,
                                     const std::vector<double>& scale_factors,
                                     int samples = 2048);

// Duration making the Blackman superexchange pulse acquire the target
// singlet phase (default pi/2, i.e. sqrt(SWAP)).
double calibrate_superexchange_duration(double t_min, double t_max, double u,
                                        double target_phase = 1.5707963267948966);

// Hubbard U making the bias-sweep gate realise (SWAP)^alpha at the given
// target alpha (default 1/2). Solved on the dynamical-phase quadrature.
double calibrate_direct_u(const RampSchedule& proto, double target_alpha = 0.5);

}  // namespace dimer
