#pragma once

#include <functional>
#include <optional>

#include "dimer/schedule.hpp"

namespace dimer {

struct Propagator {
  Eigen::MatrixXcd unitary;
  BasisTag basis;
  double max_unitarity_defect = 0.0;  // max over steps of ||U'U - 1||_max
};

struct PropagationResult {
  StateVector state;
  Propagator propagator;
};

// Realised gate on the computational space C = {uu, ud, du, dd} plus the
// phase decomposition. gamma and delta are computed independently (Wilson
// loop and eigenvalue quadrature); their sum equals arg of the singlet
// amplitude only in the adiabatic limit, which is the physics check.
struct GateReport {
  Eigen::Matrix4cd u_computational;
  double gamma = 0.0;             // geometric phase, rad in [0, 2pi)
  double delta = 0.0;             // triplet-relative dynamical phase, rad
  double alpha = 0.0;             // phi/pi with phi the principal singlet phase
  double leakage = 0.0;           // worst-case probability outside C
  double process_fidelity = 0.0;  // vs U_alpha(target_alpha)
  double target_alpha = 1.0;
  complexd singlet_amplitude{0.0, 0.0};
  bool endpoint_staggered_warning = false;
  int delta_sign = 0;  // sign of U, records the +-arccos branch
};

// multiplicative factor applied to t(tau), used for noise injection
using TunnellingModulation = std::function<double(double)>;

// Midpoint-exponential propagation (2nd-order Magnus; unitary by
// construction). The Hamiltonian builder is chosen by initial.basis.
PropagationResult propagate(const RampSchedule& schedule, const StateVector& initial,
                            int steps);

// Singlet-sector 3x3 propagator on {D+, D-, s}; the triplets are exact zero
// rows of the fermionic Hamiltonian and never evolve, so this carries the
// whole gate. Optional tunnelling modulation multiplies t(tau).
Eigen::Matrix3cd propagate_singlet(const RampSchedule& schedule, int steps,
                                   const TunnellingModulation* mod = nullptr);

// As above but visiting the state after every step (for leakage probes).
void propagate_singlet_trace(const RampSchedule& schedule, const Eigen::Vector3cd& psi0,
                             int steps, const TunnellingModulation* mod,
                             const std::function<void(double, const Eigen::Vector3cd&)>& visit);

// Propagate all four computational basis states and extract phases,
// exponent and fidelity. Global phase is fixed so <uu|U|uu> is real
// positive (the triplets are the zero-energy reference).
GateReport run_gate(const RampSchedule& schedule, int steps = 4096,
                    std::optional<double> target_alpha = std::nullopt);

// 2*pi * integral of the tracked eigenvalue (Hz) over the schedule, by
// composite Simpson refined to 1e-8 rad. track_index refers to the
// ascending singlet-sector spectrum at tau = 0; the track follows by
// overlap continuation and throws "non-adiabatic track" on a crossing.
double dynamical_phase(const RampSchedule& schedule, int track_index);

// Aharonov-Anandan phase of the dark-state trajectory from the discrete
// Berry (Wilson-loop) product of instantaneous eigenstates, reported in
// [0, 2pi). Throws if the trajectory does not close as a ray.
double geometric_phase(const RampSchedule& schedule, int points = 4096);

// Oriented solid angle enclosed by the dark-state trajectory on the
// {|s>, |D->} Bloch sphere (U = 0 only). Verifies gamma = -omega/2 mod 2pi.
// A nonzero synthetic tunnelling phase breaks time reversal and must be
// detected as a great-circle violation.
double solid_angle(const RampSchedule& schedule, int points = 4096,
                   double synthetic_tunnelling_phase = 0.0);

// Worst-case ratio of the mixing-angle sweep rate (turns/s) to the minimal
// dark-bright gap 2*sqrt(t^2+delta^2) in angular units. The acceptance
// threshold for the nominal 750 us gate is 0.05.
double adiabaticity_margin(const RampSchedule& schedule, int steps);

// (SWAP)^alpha on C; alpha = 1 is the SWAP matrix.
Eigen::Matrix4cd u_alpha(double alpha);
inline Eigen::Matrix4cd u_swap() { return u_alpha(1.0); }

// |Tr(U_target^dagger U) / 4|^2
double process_fidelity(const Eigen::Matrix4cd& target, const Eigen::Matrix4cd& actual);

}  // namespace dimer
