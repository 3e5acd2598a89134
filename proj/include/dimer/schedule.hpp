#pragma once

#include <memory>
#include <vector>

#include "dimer/model.hpp"

namespace dimer {

// Time-parametrised protocol tau in [0, duration] -> HubbardParams.
//
// LinearBiasSweep ramps the mixing angle theta between theta_start and
// theta_end with t(theta) = t_max*sin(theta/2) and delta = -t*cot(theta/2),
// so cot(theta/2) = -delta/t holds along the sweep; t is floored at t_min
// and delta clipped at +-delta_max, which produces the staggered endpoints.
// The (t, delta) path is then a circle of radius t_max away from the clips,
// keeping the dark-bright gap at 2*t_max through the dimerised point.
//
// The easing maps wall time to sweep progress; the final dark-bright
// leakage is the sweep-rate spectrum evaluated at the gap frequency, which
// the shape-normalised path holds constant at 2*t_max. Linear starts with a
// rate step. SmoothFlat holds a flat rate with half-Blackman flanks of
// width taper_fraction. Trapezoid (the default for gates) ramps the rate
// linearly over taper_fraction; with the rise time set to one full gap
// period the rate spectrum has an exact null at the gap, so the sweep
// leaves no bright population behind while the peak rate stays under 1.3x
// the mean.
//
// BlackmanBarrier holds delta = 0 and runs t between t_min and t_max under a
// Blackman window (superexchange pulse).
struct RampSchedule {
  enum class Kind { LinearBiasSweep, BlackmanBarrier, PiecewiseTable };
  enum class Easing { Linear, Hann, SmoothFlat, Trapezoid, Planck };

  Kind kind = Kind::LinearBiasSweep;
  double duration = 0.0;  // s

  // LinearBiasSweep
  double t_max = 0.0, t_min = 0.0, delta_max = 0.0, u = 0.0;  // Hz
  double theta_start = 0.0, theta_end = 0.0;                   // rad
  Easing easing = Easing::SmoothFlat;
  double taper_fraction = 0.24;  // SmoothFlat flank width
  double planck_alpha = 0.25;

  // PiecewiseTable (taus ascending, linear interpolation)
  std::vector<double> taus;
  std::vector<HubbardParams> knots;

  bool reverse = false;

  HubbardParams sample(double tau) const;
  RampSchedule reversed() const;
  HubbardParams start() const { return sample(0.0); }
  HubbardParams end() const { return sample(duration); }

  static RampSchedule linear_bias_sweep(double duration, double t_max, double t_min,
                                        double delta_max, double u,
                                        Easing easing = Easing::SmoothFlat,
                                        double theta_start = 0.0,
                                        double theta_end = 6.283185307179586476925286766559);
  static RampSchedule blackman_barrier(double duration, double t_min, double t_max, double u);
  static RampSchedule piecewise(std::vector<double> taus, std::vector<HubbardParams> knots);

 private:
  // cumulative Planck-taper progress, shared between copies
  std::shared_ptr<const std::vector<double>> planck_cdf_;
  double planck_area_ = 1.0;
  double sweep_progress(double x) const;
  void build_planck_cdf();
};

// Planck-taper flat-top window with taper fraction alpha at each edge;
// C-infinity, zero at the edges, peak 1.
double planck_window(double x, double alpha);

}  // namespace dimer
