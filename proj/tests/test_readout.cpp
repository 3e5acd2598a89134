#include "doctest.h"

#include <cmath>

#include "dimer/evolve.hpp"
#include "dimer/presets.hpp"
#include "dimer/readout.hpp"
#include "dimer/util.hpp"

using namespace dimer;

namespace {

StateVector spin_state(std::initializer_list<std::pair<int, complexd>> amps) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(6);
  for (const auto& [i, c] : amps) a(i) = c;
  return {a, BasisTag::SpinFermionic6};
}

const complexd I{0.0, 1.0};

StateVector i_minus() {
  return spin_state({{idx::spin_t0, 1.0 / std::sqrt(2.0)}, {idx::spin_s, -I / std::sqrt(2.0)}});
}
StateVector i_plus() {
  return spin_state({{idx::spin_t0, 1.0 / std::sqrt(2.0)}, {idx::spin_s, I / std::sqrt(2.0)}});
}

std::vector<double> grid(double step, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = i * step;
  return t;
}

}  // namespace

TEST_CASE("state fractions") {
  const StateFractions dm = state_fractions(spin_state({{idx::spin_dm, 1.0}}));
  CHECK(dm.p_doublon == doctest::Approx(1.0));
  CHECK(dm.sum() == doctest::Approx(1.0).epsilon(1e-10));

  const DarkState mid = dark_state({1.0, 0.0, 0.0});
  const StateFractions f0 = state_fractions(mid.vector);
  CHECK(f0.p_doublon == doctest::Approx(1.0));
  CHECK(f0.p_singlet == doctest::Approx(0.0));

  // theta = pi/2 point: equal singlet and doublon weight
  const DarkState half = dark_state({1.0, 1.0, 0.0});
  CHECK(half.theta == doctest::Approx(pi / 2));
  const StateFractions fh = state_fractions(half.vector);
  CHECK(fh.p_singlet == doctest::Approx(0.5));
  CHECK(fh.p_doublon == doctest::Approx(0.5));

  CHECK_THROWS_AS(state_fractions(spin_state({{idx::spin_s, 0.5}})), std::invalid_argument);
}

TEST_CASE("sto rotation") {
  const StoConfig cfg{140.0};
  const StateVector s = spin_state({{idx::spin_s, 1.0}});

  SUBCASE("zero duration is the identity") {
    const StateVector out = apply_sto(s, cfg, 0.0);
    CHECK(std::abs(out.amplitudes(idx::spin_s) - 1.0) < 1e-15);
  }
  SUBCASE("quarter period reaches |i->") {
    const double quarter = 1.0 / (4.0 * cfg.splitting_hz);  // about 1.8 ms
    CHECK(quarter == doctest::Approx(1.79e-3).epsilon(0.01));
    const StateVector out = apply_sto(s, cfg, quarter);
    const complexd ov = i_minus().amplitudes.dot(out.amplitudes);
    CHECK(std::abs(ov) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("half period reaches |t0| up to phase") {
    const double half = 1.0 / (2.0 * cfg.splitting_hz);  // about 3.5 ms
    const StateVector out = apply_sto(s, cfg, half);
    CHECK(std::norm(out.amplitudes(idx::spin_t0)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("support outside the two-level space is rejected") {
    StateVector bad = spin_state({{idx::spin_s, std::sqrt(1.0 - 1e-4)},
                                  {idx::spin_dm, 1e-2}});
    CHECK_THROWS_AS(apply_sto(bad, cfg, 1e-3), std::domain_error);
  }
}

TEST_CASE("sto traces") {
  const StoConfig cfg{140.0};
  const auto times = grid(0.25e-3, 64);

  SUBCASE("i- and i+ oscillate out of phase by pi with equal amplitude") {
    const FitResult fm = fit_sto(simulate_sto_trace(i_minus(), cfg, times));
    const FitResult fp = fit_sto(simulate_sto_trace(i_plus(), cfg, times));
    CHECK(fm.frequency == doctest::Approx(140.0).epsilon(1e-6));
    CHECK(fm.amplitude == doctest::Approx(fp.amplitude).epsilon(1e-6));
    CHECK(std::abs(wrap_pi(fm.phase - fp.phase - pi)) < 1e-6);
  }
  SUBCASE("a pure triplet starts at the minimum, in antiphase with a singlet") {
    const StoTrace tr = simulate_sto_trace(spin_state({{idx::spin_t0, 1.0}}), cfg, times);
    CHECK(tr.singlet_fraction.front() < 1e-12);
    const FitResult ft = fit_sto(tr);
    const FitResult fs = fit_sto(simulate_sto_trace(spin_state({{idx::spin_s, 1.0}}), cfg, times));
    CHECK(std::abs(wrap_pi(ft.phase - fs.phase - pi)) < 1e-6);
  }
  SUBCASE("a flat trace fits to zero amplitude with a degenerate phase") {
    StoTrace flat;
    flat.times = times;
    flat.singlet_fraction.assign(times.size(), 0.37);
    flat.sigmas.assign(times.size(), 0.0);
    const FitResult f = fit_sto(flat);
    CHECK(f.amplitude < 1e-9);
    CHECK(f.degenerate_phase);
  }
  SUBCASE("a singlet starts at the maximum") {
    const StoTrace tr =
        simulate_sto_trace(spin_state({{idx::spin_s, 1.0}}), cfg, times);
    CHECK(tr.singlet_fraction.front() == doctest::Approx(1.0));
    for (double v : tr.singlet_fraction) CHECK(v <= 1.0 + 1e-12);
  }
  SUBCASE("doublon content is projected out before the rotation") {
    StateVector mixed = spin_state({{idx::spin_s, std::sqrt(0.8)},
                                    {idx::spin_dm, std::sqrt(0.2)}});
    double survival = 0.0;
    remove_doublons(mixed, &survival);
    CHECK(survival == doctest::Approx(0.8));
    const StoTrace tr = simulate_sto_trace(mixed, cfg, times);
    CHECK(tr.singlet_fraction.front() == doctest::Approx(1.0));
  }
}

TEST_CASE("sinusoid fitting") {
  SUBCASE("noiseless synthetic parameters are recovered exactly") {
    const auto times = grid(0.2e-3, 80);
    std::vector<double> y;
    for (double T : times) y.push_back(0.3 * std::sin(two_pi * 140.0 * T + 0.4) + 0.5);
    const FitResult f = fit_sinusoid(times, y);
    CHECK(f.amplitude == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(f.frequency == doctest::Approx(140.0).epsilon(1e-8));
    CHECK(f.phase == doctest::Approx(0.4).epsilon(1e-8));
    CHECK(f.offset == doctest::Approx(0.5).epsilon(1e-8));
    CHECK_FALSE(f.degenerate_phase);
  }
  SUBCASE("noisy-fit uncertainties match the Monte Carlo scatter") {
    const auto times = grid(0.35e-3, 100);
    Rng rng(99);
    const int reps = 200;
    std::vector<double> freq_hat, freq_err, amp_hat, amp_err;
    for (int r = 0; r < reps; ++r) {
      std::vector<double> y;
      std::vector<double> sig(times.size(), 0.02);
      for (double T : times)
        y.push_back(0.3 * std::sin(two_pi * 140.0 * T + 0.4) + 0.5 + 0.02 * rng.gaussian());
      const FitResult f = fit_sinusoid(times, y, sig);
      freq_hat.push_back(f.frequency);
      freq_err.push_back(f.err_frequency);
      amp_hat.push_back(f.amplitude);
      amp_err.push_back(f.err_amplitude);
    }
    auto scatter = [](const std::vector<double>& v) {
      double m = 0.0;
      for (double x : v) m += x;
      m /= v.size();
      double s = 0.0;
      for (double x : v) s += (x - m) * (x - m);
      return std::sqrt(s / (v.size() - 1.0));
    };
    auto mean = [](const std::vector<double>& v) {
      double m = 0.0;
      for (double x : v) m += x;
      return m / v.size();
    };
    CHECK(scatter(freq_hat) / mean(freq_err) > 0.5);
    CHECK(scatter(freq_hat) / mean(freq_err) < 2.0);
    CHECK(scatter(amp_hat) / mean(amp_err) > 0.5);
    CHECK(scatter(amp_hat) / mean(amp_err) < 2.0);
  }
}

TEST_CASE("fidelity from decay") {
  SUBCASE("inverts synthetic exponentials exactly") {
    std::vector<double> n, a, o;
    for (double count : {2.0, 4.0, 8.0, 16.0, 32.0}) {
      n.push_back(count);
      a.push_back(std::exp(-count / 200.0));
      o.push_back(0.5);
    }
    const FidelityReport rep = fidelity_from_decay(n, a, o);
    CHECK(rep.f_raw == doctest::Approx(std::exp(-1.0 / 200.0)).epsilon(1e-9));
    CHECK(rep.f_raw == doctest::Approx(0.99501).epsilon(1e-4));
    CHECK(rep.f_surv == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.f_corr == doctest::Approx(rep.f_raw).epsilon(1e-6));
    CHECK(rep.reliable);
  }
  SUBCASE("paper-scale resolution") {
    // a 0.995 per-gate fidelity must be resolvable well below 0.1 percent
    std::vector<double> n, a, o;
    for (double count : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
      n.push_back(count);
      a.push_back(std::pow(0.995, count));
      o.push_back(1.0);
    }
    const FidelityReport rep = fidelity_from_decay(n, a, o);
    CHECK(std::abs(rep.f_raw - 0.995) < 1e-6);
  }
  SUBCASE("non-monotone amplitudes are flagged") {
    const FidelityReport rep = fidelity_from_decay({1.0, 2.0, 4.0}, {0.9, 0.95, 0.8},
                                                   {1.0, 1.0, 1.0});
    CHECK_FALSE(rep.reliable);
  }
}

TEST_CASE("spin chirality") {
  CHECK(spin_chirality(i_minus()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spin_chirality(i_plus()) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(spin_chirality(spin_state({{idx::spin_s, 1.0}})) == doctest::Approx(0.0));
  CHECK(spin_chirality(spin_state({{idx::spin_t0, 1.0}})) == doctest::Approx(0.0));
  CHECK(spin_chirality(spin_state({{idx::spin_tp, 1.0}})) == doctest::Approx(0.0));

  StateVector ud{Eigen::VectorXcd::Zero(6), BasisTag::SiteFermionic6};
  ud.amplitudes(idx::site_ud) = 1.0;
  CHECK(spin_chirality(ud) == doctest::Approx(0.0));
  StateVector du{Eigen::VectorXcd::Zero(6), BasisTag::SiteFermionic6};
  du.amplitudes(idx::site_du) = 1.0;
  CHECK(spin_chirality(du) == doctest::Approx(0.0));

  CHECK_THROWS_AS(spin_chirality(spin_state({{idx::spin_s, 0.2}})), std::invalid_argument);
}

TEST_CASE("alpha from chirality") {
  CHECK(alpha_from_chirality(0.5, +1) == doctest::Approx(1.0));
  CHECK(alpha_from_chirality(0.0, +1) == doctest::Approx(0.5));
  CHECK(alpha_from_chirality(0.0, -1) == doctest::Approx(-0.5));
  CHECK(alpha_from_chirality(-0.5, +1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(alpha_from_chirality(0.7, +1), std::domain_error);
}

TEST_CASE("gate round trip flips the chirality") {
  const Eigen::Matrix3cd u3 = propagate_singlet(nominal_swap_schedule(), 4096);
  const complexd uss = u3(idx::sing_s, idx::sing_s);
  StateVector out = i_minus();
  out.amplitudes(idx::spin_s) *= uss;
  out.amplitudes /= out.norm();
  CHECK(spin_chirality(out) == doctest::Approx(-spin_chirality(i_minus())).epsilon(2e-3));
}
