#pragma once

#include "dimer/schedule.hpp"

namespace dimer {

// Nominal bias-sweep gate: 750 us, dimerised t of 3 kHz, staggered clip at
// 4 kHz with a 20 Hz tunnelling floor. The trapezoidal sweep-rate rise is
// one full dark-bright gap period (1/(2 t_max)), which nulls the rate
// spectrum at the gap. U = 0 realises the geometric SWAP.
inline RampSchedule nominal_swap_schedule(double u_hz = 0.0, double duration_s = 750e-6) {
  const double t_max = 3000.0;
  RampSchedule s = RampSchedule::linear_bias_sweep(duration_s, t_max, 20.0, 4000.0, u_hz,
                                                   RampSchedule::Easing::Trapezoid);
  s.taper_fraction = std::min(1.0 / (2.0 * t_max * duration_s), 0.45);
  return s;
}

// Superexchange sqrt(SWAP) pulse shape: Blackman barrier ramp at U = 9.6 kHz
// between a 5 Hz background and the dimerised 2.23 kHz (U/t about 4.3 at the
// peak). The duration realising alpha = 1/2 comes from
// calibrate_superexchange_duration.
inline RampSchedule superexchange_pulse(double duration_s, double u_hz = 9600.0,
                                        double t_peak_hz = 2230.0, double t_min_hz = 5.0) {
  return RampSchedule::blackman_barrier(duration_s, t_min_hz, t_peak_hz, u_hz);
}

}  // namespace dimer
