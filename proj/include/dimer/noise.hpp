#pragma once

#include <cstdint>
#include <vector>

#include "dimer/evolve.hpp"

namespace dimer {

// Band-limited stochastic intensity noise entering multiplicatively on the
// tunnelling amplitude only; delta and U stay nominal.
struct NoiseModel {
  enum class Hold { ZeroOrder, LowPass };
  double amplitude_rms = 0.0;   // fraction of nominal t
  double bandwidth_hz = 2000.0;
  uint64_t seed = 0;
  double chi0 = 0.0;            // baseline floor from the other beams
  Hold hold = Hold::ZeroOrder;
};

// Piecewise-constant multiplicative trace xi(tau); t(tau) * (1 + xi(tau)).
struct NoiseRealization {
  double sample_rate;           // 2 x bandwidth
  double offset;                // randomised trace phase
  std::vector<double> samples;

  double value(double tau) const {
    if (samples.empty()) return 0.0;
    const auto k = static_cast<size_t>((tau + offset) * sample_rate);
    return samples[k < samples.size() ? k : samples.size() - 1];
  }
  double rms() const;
  double mean() const;
};

// Gaussian samples at twice the bandwidth with zero-order hold (or a
// one-pole low pass re-normalised to the requested rms); deterministic for
// a given seed.
NoiseRealization generate_noise(const NoiseModel& model, double duration);

struct NoisyFidelity {
  double mean_per_gate_fidelity;
  double standard_error;
  std::vector<double> per_trial;
};

// Monte Carlo per-gate fidelity: each trial runs n_gates back-to-back gates
// with alternating sweep direction under an independent noise trace, takes
// the overlap amplitude with the ideal returned state and reports the
// geometric-mean per-gate value. Trial streams derive from
// stream_seed(model.seed, trial).
NoisyFidelity noisy_gate_fidelity(const RampSchedule& schedule, const NoiseModel& model,
                                  int n_gates, int n_trials, int steps = 2048,
                                  int threads = 1);

struct NoiseBudget {
  double vx_pct = 0.0;
  double vxint_pct = 0.0;
  double vz_pct = 0.0;
  double inhomogeneity_pct = 0.0;
  double u_pct = 0.0;
};

struct NoiseBudgetReport {
  double tunnelling_quadrature_pct;  // quadrature sum of the t-equivalent rows
  double sensitivity_direct;         // |dI/I| per unit dt/t, direct protocol
  double sensitivity_superexchange;
  double exchange_total_pct;
  double superexchange_total_pct;
};

// Combine the tunnelling-equivalent errors in quadrature, fold in the U
// fluctuation, and propagate through the two protocols' integral
// sensitivities (the superexchange total scales from the exchange one by
// the sensitivity ratio).
NoiseBudgetReport noise_budget_report(const NoiseBudget& budget,
                                      const RampSchedule& direct_protocol,
                                      const RampSchedule& superexchange_protocol);

// chi0 default: quadrature of the Table M2 tunnelling rows
double default_chi0(const NoiseBudget& budget);

}  // namespace dimer
