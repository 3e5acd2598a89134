#include "doctest.h"

#include <cmath>

#include "dimer/evolve.hpp"
#include "dimer/exchange.hpp"
#include "dimer/presets.hpp"
#include "dimer/rng.hpp"
#include "dimer/util.hpp"

using namespace dimer;

TEST_CASE("exact exchange energy: anchors") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const HubbardParams p{3.0 * rng.uniform() + 0.1, 8.0 * (rng.uniform() - 0.5), 0.0};
    CHECK(std::abs(exact_e_psi(p)) < 1e-9 * (p.t + std::abs(p.delta)));
  }
  // delta = 0: D- decouples, so the direct-exchange value -U is exact
  CHECK(exact_e_psi({1.0, 0.0, 0.05}) == doctest::Approx(-0.05).epsilon(1e-9));
  CHECK(exact_e_psi({1.0, 0.0, -0.08}) == doctest::Approx(0.08).epsilon(1e-9));
  // superexchange regime
  CHECK(exact_e_psi({1.0, 0.0, 50.0}) ==
        doctest::Approx(4.0 / 50.0).epsilon(2e-3));
}

TEST_CASE("perturbative formulas") {
  CHECK(j_direct({1.0, 0.0, 0.5}) == doctest::Approx(-0.5));
  CHECK(j_direct({1.0, 2.0, 3.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(j_direct({1.0, 1.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(j_direct({0.0, 1.0, 0.5}), std::domain_error);

  CHECK(j_superexchange({1.0, 0.0, 10.0}) == doctest::Approx(0.4));
  CHECK_THROWS_AS(j_superexchange({1.0, 5.0, 10.0}), std::domain_error);
  CHECK_THROWS_AS(j_superexchange({1.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("perturbative agreement in the appropriate limits") {
  // superexchange: relative error falls quadratically in t/U
  double prev_rel = 1.0;
  for (double u : {20.0, 40.0, 80.0}) {
    const HubbardParams p{1.0, 0.0, u};
    const double rel =
        std::abs(exact_e_psi(p) - j_superexchange(p)) / j_superexchange(p);
    CHECK(rel < prev_rel * 0.5);
    prev_rel = rel;
  }
  // direct exchange at delta = 0: exact equality for small U
  for (double u : {0.2, 0.05, 0.01}) {
    const HubbardParams p{1.0, 0.0, u};
    CHECK(std::abs(exact_e_psi(p) - j_direct(p)) / u < 1e-9);
  }
}

TEST_CASE("sign tunability across U = 0") {
  CHECK(exact_e_psi({1.0, 0.5, 0.3}) < 0.0);
  CHECK(exact_e_psi({1.0, 0.5, -0.3}) > 0.0);
}

TEST_CASE("tunnelling sensitivity exponents at delta = 0") {
  // deep superexchange scales as t^2 (the exact eigenvalue bends the
  // exponent down by 8 t^2/U^2, so stay at U >> t)
  const RampSchedule sup = RampSchedule::piecewise(
      {0.0, 1e-3}, {{200.0, 0.0, 9600.0}, {200.0, 0.0, 9600.0}});
  const auto vs = sensitivity_scan(sup, {1.001}, 256);
  CHECK(std::abs(vs[0]) / 0.1 == doctest::Approx(2.0).epsilon(0.01));

  // direct exchange at delta = 0 is exactly -U, independent of t
  const double j0 = exact_e_psi({3000.0, 0.0, 780.0});
  const double j1 = exact_e_psi({3003.0, 0.0, 780.0});
  CHECK(j0 == doctest::Approx(-780.0).epsilon(1e-9));
  CHECK(std::abs(j1 - j0) / std::abs(j0) < 1e-9);
}

TEST_CASE("protocol sensitivity integrals") {
  const RampSchedule direct = nominal_swap_schedule(780.0);
  const auto var_d = sensitivity_scan(direct, {0.9, 1.0, 1.1});
  CHECK(var_d[1] == doctest::Approx(0.0));
  CHECK(std::abs(std::abs(var_d[2]) - 4.4) < 1.5);
  CHECK(std::abs(std::abs(var_d[0]) - 4.4) < 1.5);

  const double dur = calibrate_superexchange_duration(5.0, 2230.0, 9600.0);
  const RampSchedule sup = superexchange_pulse(dur);
  const auto var_s = sensitivity_scan(sup, {0.9, 1.1});
  CHECK(std::abs(std::abs(var_s[1]) - 17.6) < 3.0);
  CHECK(std::abs(std::abs(var_s[0]) - 17.6) < 3.0);
}

TEST_CASE("exchange curve integrates the triplet-relative phase") {
  const RampSchedule sched = nominal_swap_schedule(0.27 * 3000.0);
  const ExchangeCurve c = exchange_curve(sched, 2048);
  CHECK(c.regime == ExchangeCurve::Regime::Direct);
  // staggered start: U (t/delta)^2 of the tracked branch, nearly zero
  CHECK(std::abs(c.e_psi.front()) < 0.05);
  // tracked eigenvalue is positive mid-sweep for U > 0 and the phase is
  // its negative integral
  const double mid = c.e_psi[c.e_psi.size() / 2];
  CHECK(mid > 0.0);
  CHECK(c.integrated_phase < 0.0);
}

TEST_CASE("gate calibrations") {
  const RampSchedule proto = nominal_swap_schedule();
  const double ustar = calibrate_direct_u(proto, 0.5);
  CHECK(ustar > 100.0);
  CHECK(ustar < 1500.0);
  const GateReport rep = run_gate(nominal_swap_schedule(ustar), 4096, 0.5);
  CHECK(rep.alpha == doctest::Approx(0.5).epsilon(0.02));

  const double dur = calibrate_superexchange_duration(5.0, 2230.0, 9600.0);
  CHECK(dur > 1e-4);
  CHECK(dur < 1e-1);
  const GateReport sup = run_gate(superexchange_pulse(dur), 8192, 0.5);
  CHECK(sup.alpha == doctest::Approx(0.5).epsilon(0.05));
  CHECK(sup.endpoint_staggered_warning);  // dimerised endpoints, t -> 0 instead
}

TEST_CASE("a target inside a thin crossing window is ambiguous") {
  // deep superexchange with 2 delta right at U: the singlet branch and a
  // doublon combination are not separable there
  CHECK_THROWS_AS(exact_e_psi({1.0, 25.0, 50.0}), std::runtime_error);
  CHECK_NOTHROW(exact_e_psi({1.0, 10.0, 50.0}));
}

TEST_CASE("tracking rejects a non-adiabatic jump") {
  // a discontinuous parameter jump breaks overlap continuation; the shared
  // tracking mechanism reports it rather than silently switching branches
  const RampSchedule jump = RampSchedule::piecewise(
      {0.0, 0.499e-3, 0.501e-3, 1e-3},
      {{1.0, -3000.0, 0.0}, {1.0, -3000.0, 0.0}, {1.0, 3000.0, 0.0}, {1.0, 3000.0, 0.0}});
  CHECK_THROWS_AS(dynamical_phase(jump, 0), std::runtime_error);
}
