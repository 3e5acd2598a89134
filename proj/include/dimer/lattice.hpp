#pragma once

#include <vector>

#include "dimer/schedule.hpp"

namespace dimer {

// Recoil energy h / (2 m lambda^2) for potassium-40 at 1064 nm, in Hz.
double recoil_hz();

// Superlattice beam depths in recoil units plus the two optical phases.
// theta_beam is the cos^2(kx + theta/2) offset of the X beam relative to
// X_int; pi aligns the X nodes with the interference antinodes, which is
// the configuration whose phi_SL = 0 point is the unbiased dimer.
struct LatticeDepths {
  double vx = 0.0, vxint = 0.0, vy = 0.0, vz = 0.0;  // E_rec
  double i_xz = 1.0;       // imbalance of the two interference terms
  double phi_sl = 0.0;     // superlattice phase, rad
  double theta_beam = 3.1415926535897932384626433832795;

  void validate() const;
};

struct TightBinding {
  double delta = 0.0;    // Hz, Hubbard sign convention (site energies +-delta)
  double t = 0.0;        // Hz, intra-dimer
  double t_prime = 0.0;  // Hz, inter-dimer, diagnostics only
};

struct ExtractOptions {
  int points_per_period = 1024;
  int periods = 8;
};

// x-dependent part of the potential along the 1D slice (y = 0, cos(kz) = +1
// branch), on a grid of kx values in radians; result in E_rec.
std::vector<double> potential_slice(const LatticeDepths& d, const std::vector<double>& kx);

// Lowest eigenvalues (E_rec) of the finite-difference supercell problem
// with periodic boundary; exposed for convergence and free-particle checks.
std::vector<double> lowest_band_energies(const LatticeDepths& d, const ExtractOptions& opts,
                                         int count);

// Tight-binding parameters from the two lowest supercell bands: the band
// splittings give sqrt(delta^2 + t^2 + t'^2 + 2 t t' cos q) and the
// sublattice weight asymmetry of the lower band separates delta.
TightBinding extract_tight_binding(const LatticeDepths& d, const ExtractOptions& opts = {});

// Tabulated (delta, t)(tau) for a linear superlattice-phase ramp, as a
// PiecewiseTable schedule with the given Hubbard U held fixed.
RampSchedule schedule_from_phase_ramp(const LatticeDepths& d, double phi_start,
                                      double phi_end, double duration, int samples,
                                      double u_hz, const ExtractOptions& opts = {});

}  // namespace dimer
