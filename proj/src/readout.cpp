#include "dimer/readout.hpp"

#include <cmath>

#include "dimer/util.hpp"

namespace dimer {

namespace {

void require_normalised(const StateVector& psi, const char* who) {
  if (std::abs(psi.norm() - 1.0) > 1e-6)
    throw std::invalid_argument(std::string(who) + ": unnormalised input state");
}

}  // namespace

StateFractions state_fractions(const StateVector& psi) {
  require_normalised(psi, "state_fractions");
  const StateVector spin = to_spin_basis(psi);
  const auto& a = spin.amplitudes;
  StateFractions f;
  f.p_tplus = std::norm(a(idx::spin_tp));
  f.p_triplet0 = std::norm(a(idx::spin_t0));
  f.p_tminus = std::norm(a(idx::spin_tm));
  f.p_doublon = std::norm(a(idx::spin_dp)) + std::norm(a(idx::spin_dm));
  f.p_singlet = std::norm(a(idx::spin_s));
  return f;
}

StateVector remove_doublons(const StateVector& psi, double* survival) {
  StateVector spin = to_spin_basis(psi);
  spin.amplitudes(idx::spin_dp) = 0.0;
  spin.amplitudes(idx::spin_dm) = 0.0;
  const double surv = spin.amplitudes.squaredNorm();
  if (survival) *survival = surv;
  if (surv <= 0.0)
    throw std::domain_error("remove_doublons: state is entirely doublon");
  spin.amplitudes /= std::sqrt(surv);
  return spin;
}

StateVector apply_sto(const StateVector& psi, const StoConfig& config, double duration) {
  const StateVector spin = to_spin_basis(psi);
  double outside = 0.0;
  for (int i = 0; i < 6; ++i)
    if (i != idx::spin_s && i != idx::spin_t0) outside += std::norm(spin.amplitudes(i));
  if (outside > 1e-6)
    throw std::domain_error("apply_sto: support outside the {s, t0} subspace");

  // generator -(splitting/2) sigma_x on (s, t0); a quarter period maps
  // |s> -> (|s> + i|t0>)/sqrt2 which is |i-> up to global phase
  const double half_angle = pi * config.splitting_hz * duration;
  const complexd c = std::cos(half_angle);
  const complexd is = complexd(0.0, 1.0) * std::sin(half_angle);
  StateVector out = spin;
  const complexd s0 = spin.amplitudes(idx::spin_s), t0 = spin.amplitudes(idx::spin_t0);
  out.amplitudes(idx::spin_s) = c * s0 + is * t0;
  out.amplitudes(idx::spin_t0) = is * s0 + c * t0;
  return out;
}

StoTrace simulate_sto_trace(const StateVector& psi, const StoConfig& config,
                            const std::vector<double>& times, double sigma, Rng* rng) {
  require_normalised(psi, "simulate_sto_trace");
  const StateVector clean = remove_doublons(psi);
  StoTrace tr;
  tr.times = times;
  tr.singlet_fraction.reserve(times.size());
  tr.sigmas.assign(times.size(), sigma);
  for (double T : times) {
    double p = state_fractions(apply_sto(clean, config, T)).p_singlet;
    if (sigma > 0.0 && rng) p += sigma * rng->gaussian();
    tr.singlet_fraction.push_back(p);
  }
  return tr;
}

FitResult fit_sto(const StoTrace& trace) {
  const bool weighted = !trace.sigmas.empty() && trace.sigmas.front() > 0.0;
  return fit_sinusoid(trace.times, trace.singlet_fraction,
                      weighted ? trace.sigmas : std::vector<double>{});
}

FidelityReport fidelity_from_decay(const std::vector<double>& counts,
                                   const std::vector<double>& amplitudes,
                                   const std::vector<double>& offsets) {
  if (counts.size() < 3)
    throw std::invalid_argument("fidelity_from_decay: need at least 3 gate counts");
  FidelityReport rep;
  const ExpFit fa = fit_exponential(counts, amplitudes);
  const ExpFit fo = fit_exponential(counts, offsets);
  rep.n_e = fa.ne;
  rep.o_e = fo.ne;
  rep.f_raw = std::exp(-1.0 / fa.ne);
  rep.f_surv = std::exp(-1.0 / fo.ne);
  rep.f_corr = rep.f_raw / rep.f_surv;
  rep.err_f_raw = rep.f_raw * fa.err_ne / (fa.ne * fa.ne);
  rep.err_f_surv = rep.f_surv * fo.err_ne / (fo.ne * fo.ne);
  rep.err_f_corr = rep.f_corr * std::hypot(fa.err_ne / (fa.ne * fa.ne),
                                           fo.err_ne / (fo.ne * fo.ne));
  rep.reliable = fa.reliable && fo.reliable;
  return rep;
}

double spin_chirality(const StateVector& psi) {
  require_normalised(psi, "spin_chirality");
  const StateVector site = to_site_basis(psi);
  const complexd a_ud = site.amplitudes(idx::site_ud);
  const complexd a_du = site.amplitudes(idx::site_du);
  return -std::imag(std::conj(a_du) * a_ud);
}

double alpha_from_chirality(double kappa, int sign_branch) {
  if (std::abs(kappa) > 0.5 + 1e-12)
    throw std::domain_error("alpha_from_chirality: |kappa| > 0.5");
  kappa = std::clamp(kappa, -0.5, 0.5);
  const double mag = std::acos(-2.0 * kappa) / pi;
  return sign_branch >= 0 ? mag : -mag;
}

}  // namespace dimer
