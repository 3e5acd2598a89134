#include "dimer/noise.hpp"

#include <cmath>
#include <thread>

#include "dimer/exchange.hpp"
#include "dimer/rng.hpp"
#include "dimer/util.hpp"

namespace dimer {

double NoiseRealization::rms() const {
  if (samples.empty()) return 0.0;
  double s = 0.0;
  for (double v : samples) s += v * v;
  return std::sqrt(s / samples.size());
}

double NoiseRealization::mean() const {
  if (samples.empty()) return 0.0;
  double s = 0.0;
  for (double v : samples) s += v;
  return s / samples.size();
}

NoiseRealization generate_noise(const NoiseModel& model, double duration) {
  if (duration <= 0.0) throw std::invalid_argument("generate_noise: duration must be > 0");
  if (model.bandwidth_hz <= 0.0)
    throw std::invalid_argument("generate_noise: bandwidth must be > 0");
  NoiseRealization r;
  r.sample_rate = 2.0 * model.bandwidth_hz;
  Rng rng(model.seed);
  r.offset = rng.uniform() / r.sample_rate;
  const auto n = static_cast<size_t>(std::ceil((duration + r.offset) * r.sample_rate)) + 1;
  r.samples.resize(n);
  if (model.amplitude_rms == 0.0) {
    std::fill(r.samples.begin(), r.samples.end(), 0.0);
    return r;
  }
  for (auto& v : r.samples) v = model.amplitude_rms * rng.gaussian();
  if (model.hold == NoiseModel::Hold::LowPass) {
    // one-pole at the bandwidth; stationary variance of the filter is
    // (1-a)/(1+a) of the input, so rescale back to the requested rms
    const double a = std::exp(-two_pi * model.bandwidth_hz / r.sample_rate);
    const double restore = std::sqrt((1.0 + a) / (1.0 - a));
    double y = 0.0;
    for (auto& v : r.samples) {
      y = a * y + (1.0 - a) * v;
      v = y * restore;
    }
  }
  return r;
}

namespace {

complexd product_singlet_amplitude(const RampSchedule& schedule, int n_gates, int steps,
                                   const NoiseRealization* trace) {
  complexd prod = 1.0;
  const double tau_gate = schedule.duration;
  for (int g = 0; g < n_gates; ++g) {
    const RampSchedule sched = (g % 2 == 0) ? schedule : schedule.reversed();
    complexd uss;
    if (trace) {
      const double t0 = g * tau_gate;
      TunnellingModulation mod = [trace, t0](double tau) {
        return 1.0 + trace->value(t0 + tau);
      };
      uss = propagate_singlet(sched, steps, &mod)(idx::sing_s, idx::sing_s);
    } else {
      uss = propagate_singlet(sched, steps, nullptr)(idx::sing_s, idx::sing_s);
    }
    prod *= uss;
  }
  return prod;
}

}  // namespace

NoisyFidelity noisy_gate_fidelity(const RampSchedule& schedule, const NoiseModel& model,
                                  int n_gates, int n_trials, int steps, int threads) {
  if (n_gates < 1 || n_trials < 1)
    throw std::invalid_argument("noisy_gate_fidelity: need n_gates >= 1 and n_trials >= 1");

  // ideal per-gate phase from the noiseless run with identical stepping
  const complexd u0 = propagate_singlet(schedule, steps, nullptr)(idx::sing_s, idx::sing_s);
  const double phi0 = std::arg(u0);

  std::vector<double> per_trial(n_trials);
  auto run_range = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      complexd prod;
      if (model.amplitude_rms == 0.0) {
        prod = product_singlet_amplitude(schedule, n_gates, steps, nullptr);
      } else {
        NoiseModel m = model;
        m.seed = stream_seed(model.seed, static_cast<uint64_t>(i));
        const NoiseRealization trace = generate_noise(m, n_gates * schedule.duration);
        prod = product_singlet_amplitude(schedule, n_gates, steps, &trace);
      }
      // overlap of (|t0> - i prod |s>)/sqrt2 with the ideal returned state
      const complexd ideal = std::polar(1.0, n_gates * phi0);
      const double amp = std::abs(0.5 * (1.0 + prod * std::conj(ideal)));
      per_trial[i] = std::pow(amp, 1.0 / n_gates);
    }
  };

  threads = std::max(1, threads);
  if (threads == 1 || n_trials < 2 * threads) {
    run_range(0, n_trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n_trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int lo = w * chunk, hi = std::min(n_trials, (w + 1) * chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  double mean = 0.0;
  for (double f : per_trial) mean += f;
  mean /= n_trials;
  double var = 0.0;
  for (double f : per_trial) var += (f - mean) * (f - mean);
  const double stderr_ = n_trials > 1 ? std::sqrt(var / (n_trials - 1.0) / n_trials) : 0.0;
  return {mean, stderr_, std::move(per_trial)};
}

double default_chi0(const NoiseBudget& b) {
  return 0.01 * std::sqrt(b.vx_pct * b.vx_pct + b.vxint_pct * b.vxint_pct +
                          b.vz_pct * b.vz_pct +
                          b.inhomogeneity_pct * b.inhomogeneity_pct);
}

NoiseBudgetReport noise_budget_report(const NoiseBudget& budget,
                                      const RampSchedule& direct_protocol,
                                      const RampSchedule& superexchange_protocol) {
  NoiseBudgetReport rep;
  rep.tunnelling_quadrature_pct = 100.0 * default_chi0(budget);

  // integral sensitivity per unit dt/t from the +-10% scan
  auto sensitivity = [](const RampSchedule& s) {
    const auto var = sensitivity_scan(s, {0.9, 1.1});
    return 0.5 * (std::abs(var[0]) + std::abs(var[1])) / 10.0;
  };
  rep.sensitivity_direct = sensitivity(direct_protocol);
  rep.sensitivity_superexchange = sensitivity(superexchange_protocol);
  if (rep.sensitivity_direct == 0.0)
    throw std::domain_error("noise_budget_report: direct protocol has zero sensitivity");

  rep.exchange_total_pct =
      std::hypot(rep.tunnelling_quadrature_pct * rep.sensitivity_direct, budget.u_pct);
  rep.superexchange_total_pct =
      rep.exchange_total_pct * rep.sensitivity_superexchange / rep.sensitivity_direct;
  return rep;
}

}  // namespace dimer
