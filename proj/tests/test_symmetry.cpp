#include "doctest.h"

#include <cmath>

#include "dimer/presets.hpp"
#include "dimer/rng.hpp"
#include "dimer/symmetry.hpp"
#include "dimer/util.hpp"

using namespace dimer;

TEST_CASE("chiral anticommutation") {
  const SymmetryOperator gamma = chiral_operator();
  CHECK((gamma.matrix * gamma.matrix -
         Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-15);

  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const HubbardParams p{4.0 * rng.uniform() + 0.1, 8.0 * (rng.uniform() - 0.5), 0.0};
    CHECK(check_chiral(build_h_spin6(p), gamma) <= 1e-12);
  }
  // finite U breaks it with residual exactly 2|U| on the doublon diagonal
  CHECK(check_chiral(build_h_spin6({1.0, 0.5, 1.0}), gamma) == doctest::Approx(2.0));
  CHECK(check_chiral(build_h_spin6({1.0, 0.5, -3.0}), gamma) == doctest::Approx(6.0));
  CHECK(check_chiral(build_h_spin6({0.0, 0.0, 0.0}), gamma) == 0.0);
}

TEST_CASE("time reversal holds for real couplings only") {
  const TimeReversalCheck ok = check_time_reversal(build_h_spin6({2.0, -1.0, 3.0}));
  CHECK(ok.real_symmetric);
  CHECK(ok.max_imaginary_part < 1e-10);

  HermitianMatrix h = build_h_spin6({2.0, -1.0, 0.0});
  h.entries(idx::spin_dp, idx::spin_s) *= complexd(0.0, 1.0);
  h.entries(idx::spin_s, idx::spin_dp) *= complexd(0.0, -1.0);
  CHECK_FALSE(check_time_reversal(h).real_symmetric);

  Eigen::MatrixXcd one = Eigen::MatrixXcd::Constant(1, 1, 2.5);
  CHECK(check_time_reversal(HermitianMatrix{one, BasisTag::SingletOnly3}).real_symmetric);
}

TEST_CASE("zero mode count") {
  CHECK(zero_mode_count(build_h_spin6({1.0, 7.0, 0.0})) == 4);
  CHECK(zero_mode_count(build_h_spin6({1.0, 0.0, 5.0})) == 3);
  CHECK(zero_mode_count(build_h_spin6({0.0, 0.0, 0.0})) == 6);
}

TEST_CASE("spectral pairing at U = 0") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const HubbardParams p{4.0 * rng.uniform() + 0.1, 8.0 * (rng.uniform() - 0.5), 0.0};
    const Spectrum s = spectrum(build_h_spin6(p));
    const double scale = std::hypot(p.t, p.delta);
    std::vector<double> nonzero;
    for (int i = 0; i < 6; ++i)
      if (std::abs(s.values(i)) > 1e-9 * scale) nonzero.push_back(s.values(i));
    REQUIRE(nonzero.size() == 2);
    CHECK(nonzero[0] + nonzero[1] == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("dark space leakage") {
  // at the nominal gate time the established dressing circulates through
  // D+ at the gap frequency; the peak obeys the (rate / gap)^2 bound and
  // falls quadratically with the sweep time
  const double fast = dark_space_leakage(nominal_swap_schedule(), 8192);
  const double rate_bound = std::pow(8378.0 * 1.29 / (two_pi * 2.0 * 3000.0), 2);
  CHECK(fast <= rate_bound);
  const double slow = dark_space_leakage(nominal_swap_schedule(0.0, 7.5e-3), 16384);
  CHECK(slow < 1e-3);
  CHECK(slow < fast / 30.0);

  // static t = 0: the singlet never reaches the doublons
  const RampSchedule frozen =
      RampSchedule::piecewise({0.0, 1e-3}, {{0.0, 2000.0, 0.0}, {0.0, 2000.0, 0.0}});
  CHECK(dark_space_leakage(frozen, 256) == 0.0);

  // a time-reversal-respecting multiplicative perturbation keeps D+ dark
  // at the same order
  const TunnellingModulation wobble = [](double tau) {
    return 1.0 + 0.02 * std::sin(two_pi * 300.0 * tau);
  };
  const double wobbled = dark_space_leakage(nominal_swap_schedule(0.0, 7.5e-3), 16384, &wobble);
  CHECK(wobbled < 5e-3);
}

TEST_CASE("real trajectory in the adiabatic limit") {
  auto imag_after_phase_fix = [](const Eigen::Vector3cd& v) {
    int big = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(v(i)) > std::abs(v(big))) big = i;
    const Eigen::Vector3cd w = v * std::polar(1.0, -std::arg(v(big)));
    return w.imag().cwiseAbs().maxCoeff();
  };
  Eigen::Vector3cd psi = Eigen::Vector3cd::Zero();
  psi(idx::sing_s) = 1.0;

  double final_imag = 0.0;
  const RampSchedule nominal = nominal_swap_schedule();
  propagate_singlet_trace(nominal, psi, 8192, nullptr,
                          [&](double tau, const Eigen::Vector3cd& v) {
                            if (tau >= nominal.duration) final_imag = imag_after_phase_fix(v);
                          });
  CHECK(final_imag < 1e-2);

  double peak_imag = 0.0;
  propagate_singlet_trace(nominal_swap_schedule(0.0, 7.5e-3), psi, 16384, nullptr,
                          [&](double, const Eigen::Vector3cd& v) {
                            peak_imag = std::max(peak_imag, imag_after_phase_fix(v));
                          });
  CHECK(peak_imag < 3e-2);
}
