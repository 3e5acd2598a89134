#pragma once

#include <vector>

#include <Eigen/Dense>

namespace dimer {

// Weighted least-squares result for A*sin(2*pi*f*T + phi) + y0. Amplitude is
// normalised non-negative with the phase folded accordingly.
struct FitResult {
  double amplitude = 0.0, frequency = 0.0, phase = 0.0, offset = 0.0;
  double err_amplitude = 0.0, err_frequency = 0.0, err_phase = 0.0, err_offset = 0.0;
  double chi2 = 0.0;
  int iterations = 0;
  bool degenerate_phase = false;  // amplitude consistent with zero
};

// Levenberg-Marquardt with analytic Jacobian; frequency seeded from a DFT
// scan, offset from the weighted mean, amplitude/phase from quadratures.
// weights are 1/sigma^2 per point; pass empty sigmas for unit weights (the
// covariance is then scaled by the reduced chi^2). Throws on
// non-convergence, reporting the residual.
FitResult fit_sinusoid(const std::vector<double>& times, const std::vector<double>& values,
                       const std::vector<double>& sigmas = {});

struct ExpFit {
  double a1 = 0.0;      // amplitude at N = 0
  double ne = 0.0;      // decay constant in gate counts
  double err_a1 = 0.0, err_ne = 0.0;
  bool reliable = true;  // false for non-monotone or non-positive input
};

// A1 * exp(-N / Ne) on (counts, values) pairs.
ExpFit fit_exponential(const std::vector<double>& counts, const std::vector<double>& values,
                       const std::vector<double>& sigmas = {});

}  // namespace dimer
