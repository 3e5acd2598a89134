#include "doctest.h"

#include <cmath>

#include "dimer/exchange.hpp"
#include "dimer/noise.hpp"
#include "dimer/presets.hpp"

using namespace dimer;

TEST_CASE("noise traces") {
  NoiseModel m;
  m.amplitude_rms = 0.05;
  m.bandwidth_hz = 2000.0;
  m.seed = 42;

  SUBCASE("zero amplitude gives the zero trace") {
    NoiseModel z = m;
    z.amplitude_rms = 0.0;
    const NoiseRealization r = generate_noise(z, 0.1);
    CHECK(r.rms() == 0.0);
    CHECK(r.value(0.05) == 0.0);
  }
  SUBCASE("rms matches the request over one second") {
    const NoiseRealization r = generate_noise(m, 1.0);
    CHECK(std::abs(r.rms() - 0.05) < 0.001);
    CHECK(std::abs(r.mean()) < 4.0 * 0.05 / std::sqrt(4000.0));
  }
  SUBCASE("same seed reproduces the trace exactly") {
    const NoiseRealization a = generate_noise(m, 0.2);
    const NoiseRealization b = generate_noise(m, 0.2);
    REQUIRE(a.samples.size() == b.samples.size());
    for (size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i] == b.samples[i]);
    CHECK(a.offset == b.offset);
  }
  SUBCASE("zero-order hold is piecewise constant at twice the bandwidth") {
    const NoiseRealization r = generate_noise(m, 0.01);
    const double dt = 1.0 / r.sample_rate;
    const double tau = 2.3 * dt - r.offset;
    CHECK(r.value(tau) == r.value(tau + 0.2 * dt));
  }
  SUBCASE("low-pass variant keeps the requested rms") {
    NoiseModel lp = m;
    lp.hold = NoiseModel::Hold::LowPass;
    const NoiseRealization r = generate_noise(lp, 2.0);
    CHECK(std::abs(r.rms() - 0.05) < 0.004);
  }
  SUBCASE("bad inputs") {
    CHECK_THROWS_AS(generate_noise(m, 0.0), std::invalid_argument);
    NoiseModel bad = m;
    bad.bandwidth_hz = 0.0;
    CHECK_THROWS_AS(generate_noise(bad, 1.0), std::invalid_argument);
  }
}

TEST_CASE("noisy gate fidelity") {
  const RampSchedule swap = nominal_swap_schedule();
  NoiseModel m;
  m.bandwidth_hz = 2000.0;
  m.seed = 7;

  SUBCASE("noiseless per-gate fidelity is essentially one") {
    m.amplitude_rms = 0.0;
    const NoisyFidelity f = noisy_gate_fidelity(swap, m, 4, 3, 1024);
    CHECK(f.mean_per_gate_fidelity >= 0.9999);
  }
  SUBCASE("seed reproducibility is bit-exact") {
    m.amplitude_rms = 0.03;
    const NoisyFidelity a = noisy_gate_fidelity(swap, m, 4, 8, 512);
    const NoisyFidelity b = noisy_gate_fidelity(swap, m, 4, 8, 512);
    CHECK(a.mean_per_gate_fidelity == b.mean_per_gate_fidelity);
    CHECK(a.standard_error == b.standard_error);
  }
  SUBCASE("geometric gate keeps its plateau at 5 percent noise") {
    m.amplitude_rms = 0.05;
    const NoisyFidelity noisy = noisy_gate_fidelity(swap, m, 8, 40, 1024);
    m.amplitude_rms = 0.0;
    const NoisyFidelity clean = noisy_gate_fidelity(swap, m, 8, 1, 1024);
    CHECK(clean.mean_per_gate_fidelity - noisy.mean_per_gate_fidelity < 0.005);
  }
  SUBCASE("standard error shrinks as 1/sqrt(trials)") {
    m.amplitude_rms = 0.04;
    const NoisyFidelity few = noisy_gate_fidelity(swap, m, 2, 40, 512);
    NoiseModel m2 = m;
    m2.seed = 7;
    const NoisyFidelity many = noisy_gate_fidelity(swap, m2, 2, 160, 512);
    const double ratio = few.standard_error / many.standard_error;
    CHECK(ratio > 2.0 / 1.5);
    CHECK(ratio < 2.0 * 1.5);
  }
}

TEST_CASE("noise budget report") {
  const NoiseBudget table_m2{1.3, 2.1, 0.2, 1.0, 0.8};
  const RampSchedule direct = nominal_swap_schedule(780.0);
  const double dur = calibrate_superexchange_duration(5.0, 2230.0, 9600.0);
  const RampSchedule sup = superexchange_pulse(dur);

  const NoiseBudgetReport rep = noise_budget_report(table_m2, direct, sup);
  CHECK(rep.tunnelling_quadrature_pct == doctest::Approx(2.6721).epsilon(1e-3));
  CHECK(std::abs(rep.exchange_total_pct - 1.5) < 1.0);
  CHECK(std::abs(rep.superexchange_total_pct - 5.9) < 1.0);

  SUBCASE("all-zero budget propagates to zero") {
    const NoiseBudgetReport z = noise_budget_report({}, direct, sup);
    CHECK(z.exchange_total_pct == 0.0);
    CHECK(z.superexchange_total_pct == 0.0);
  }
  SUBCASE("doubling one source follows the quadrature rule") {
    NoiseBudget doubled = table_m2;
    doubled.vxint_pct *= 2.0;
    const NoiseBudgetReport d = noise_budget_report(doubled, direct, sup);
    const double q = std::sqrt(1.3 * 1.3 + 4.2 * 4.2 + 0.2 * 0.2 + 1.0);
    CHECK(d.tunnelling_quadrature_pct == doctest::Approx(q).epsilon(1e-6));
    const double expect =
        std::hypot(q * rep.sensitivity_direct, table_m2.u_pct);
    CHECK(d.exchange_total_pct == doctest::Approx(expect).epsilon(1e-6));
    CHECK(d.superexchange_total_pct ==
          doctest::Approx(expect * rep.sensitivity_superexchange /
                          rep.sensitivity_direct).epsilon(1e-6));
  }
}

TEST_CASE("chi0 default is the Table M2 quadrature") {
  const NoiseBudget table_m2{1.3, 2.1, 0.2, 1.0, 0.8};
  CHECK(default_chi0(table_m2) == doctest::Approx(0.026721).epsilon(1e-4));
}
