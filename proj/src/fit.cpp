#include "dimer/fit.hpp"

#include <cmath>
#include <stdexcept>

#include "dimer/util.hpp"

namespace dimer {

namespace {

struct Problem {
  const std::vector<double>& t;
  const std::vector<double>& y;
  std::vector<double> w;  // 1/sigma^2
  bool unit_weights;
};

Problem make_problem(const std::vector<double>& t, const std::vector<double>& y,
                     const std::vector<double>& sigmas) {
  if (t.size() != y.size() || t.empty())
    throw std::invalid_argument("fit: times and values must match and be non-empty");
  Problem p{t, y, {}, sigmas.empty()};
  p.w.resize(t.size(), 1.0);
  if (!sigmas.empty()) {
    if (sigmas.size() != t.size())
      throw std::invalid_argument("fit: sigmas size mismatch");
    for (size_t i = 0; i < t.size(); ++i) {
      if (sigmas[i] <= 0.0) throw std::invalid_argument("fit: sigma must be > 0");
      p.w[i] = 1.0 / (sigmas[i] * sigmas[i]);
    }
  }
  return p;
}

// generic LM on a residual/Jacobian functor over k parameters
template <int K, typename Model>
Eigen::Matrix<double, K, K> levenberg_marquardt(const Problem& prob, Model&& model,
                                                Eigen::Matrix<double, K, 1>& p, double& chi2,
                                                int& iters, double tol = 1e-14,
                                                int max_iter = 400) {
  const size_t n = prob.t.size();
  auto chi_of = [&](const Eigen::Matrix<double, K, 1>& q) {
    double c = 0.0;
    Eigen::Matrix<double, K, 1> g;
    for (size_t i = 0; i < n; ++i) {
      const double r = prob.y[i] - model(prob.t[i], q, nullptr);
      c += prob.w[i] * r * r;
    }
    return c;
  };

  double lambda = 1e-3;
  chi2 = chi_of(p);
  Eigen::Matrix<double, K, K> jtj;
  for (iters = 0; iters < max_iter; ++iters) {
    jtj.setZero();
    Eigen::Matrix<double, K, 1> jtr = Eigen::Matrix<double, K, 1>::Zero();
    for (size_t i = 0; i < n; ++i) {
      Eigen::Matrix<double, K, 1> jac;
      const double f = model(prob.t[i], p, &jac);
      const double r = prob.y[i] - f;
      jtj.noalias() += prob.w[i] * jac * jac.transpose();
      jtr.noalias() += prob.w[i] * r * jac;
    }
    bool stepped = false;
    for (int inner = 0; inner < 24; ++inner) {
      Eigen::Matrix<double, K, K> a = jtj;
      for (int d = 0; d < K; ++d) a(d, d) += lambda * std::max(jtj(d, d), 1e-30);
      const Eigen::Matrix<double, K, 1> step = a.ldlt().solve(jtr);
      const Eigen::Matrix<double, K, 1> cand = p + step;
      const double c = chi_of(cand);
      if (std::isfinite(c) && c <= chi2) {
        const double drop = chi2 - c;
        p = cand;
        chi2 = c;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (drop <= tol * (chi2 + 1e-30) && step.norm() <= 1e-12 * (p.norm() + 1.0)) {
          iters = max_iter;  // converged; abuse loop exit
        }
        break;
      }
      lambda *= 8.0;
    }
    if (!stepped) break;  // no downhill step found: converged or stuck
  }
  // recompute JtWJ at the solution for the covariance
  jtj.setZero();
  for (size_t i = 0; i < n; ++i) {
    Eigen::Matrix<double, K, 1> jac;
    model(prob.t[i], p, &jac);
    jtj.noalias() += prob.w[i] * jac * jac.transpose();
  }
  return jtj;
}

}  // namespace

FitResult fit_sinusoid(const std::vector<double>& times, const std::vector<double>& values,
                       const std::vector<double>& sigmas) {
  Problem prob = make_problem(times, values, sigmas);
  const size_t n = times.size();
  if (n < 5) throw std::invalid_argument("fit_sinusoid: need at least 5 samples");

  double wsum = 0.0, ymean = 0.0;
  for (size_t i = 0; i < n; ++i) {
    wsum += prob.w[i];
    ymean += prob.w[i] * values[i];
  }
  ymean /= wsum;
  const double span = times.back() - times.front();
  if (span <= 0.0) throw std::invalid_argument("fit_sinusoid: zero time span");

  // frequency seed: dense DFT scan up to the mean Nyquist rate
  const double fny = 0.5 * (n - 1) / span;
  double best_f = 1.0 / span, best_mag = -1.0;
  const int grid = static_cast<int>(8 * n);
  for (int k = 1; k <= grid; ++k) {
    const double f = fny * k / grid;
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double a = two_pi * f * times[i];
      re += prob.w[i] * (values[i] - ymean) * std::cos(a);
      im += prob.w[i] * (values[i] - ymean) * std::sin(a);
    }
    const double mag = re * re + im * im;
    if (mag > best_mag) {
      best_mag = mag;
      best_f = f;
    }
  }
  double qs = 0.0, qc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double a = two_pi * best_f * times[i];
    qs += prob.w[i] * (values[i] - ymean) * std::sin(a);
    qc += prob.w[i] * (values[i] - ymean) * std::cos(a);
  }
  Eigen::Vector4d p;  // A, f, phi, y0
  p << 2.0 * std::hypot(qs, qc) / wsum, best_f, std::atan2(qc, qs), ymean;

  auto model = [](double t, const Eigen::Vector4d& q, Eigen::Vector4d* jac) {
    const double arg = two_pi * q(1) * t + q(2);
    const double s = std::sin(arg), c = std::cos(arg);
    if (jac) *jac << s, q(0) * c * two_pi * t, q(0) * c, 1.0;
    return q(0) * s + q(3);
  };

  double chi2 = 0.0;
  int iters = 0;
  Eigen::Matrix4d jtj = levenberg_marquardt<4>(prob, model, p, chi2, iters);

  FitResult out;
  out.amplitude = p(0);
  out.frequency = p(1);
  out.phase = p(2);
  out.offset = p(3);
  if (out.amplitude < 0.0) {
    out.amplitude = -out.amplitude;
    out.phase += pi;
  }
  if (out.frequency < 0.0) {
    out.frequency = -out.frequency;
    out.phase = pi - out.phase;
  }
  out.phase = wrap_pi(out.phase);
  out.chi2 = chi2;
  out.iterations = iters;

  Eigen::Matrix4d cov = jtj.completeOrthogonalDecomposition().pseudoInverse();
  if (prob.unit_weights && n > 4) cov *= chi2 / (static_cast<double>(n) - 4.0);
  out.err_amplitude = std::sqrt(std::max(cov(0, 0), 0.0));
  out.err_frequency = std::sqrt(std::max(cov(1, 1), 0.0));
  out.err_phase = std::sqrt(std::max(cov(2, 2), 0.0));
  out.err_offset = std::sqrt(std::max(cov(3, 3), 0.0));

  double yscale = std::abs(ymean);
  for (size_t i = 0; i < n; ++i) yscale = std::max(yscale, std::abs(values[i] - ymean));
  out.degenerate_phase =
      out.amplitude <= 1e-9 * std::max(yscale, 1e-300) ||
      out.amplitude <= 2.0 * out.err_amplitude || out.err_phase > 1.0;

  // convergence guard: residual must be stationary for well-posed input
  if (!std::isfinite(chi2))
    throw std::runtime_error("fit_sinusoid: did not converge, residual " +
                             std::to_string(chi2));
  return out;
}

ExpFit fit_exponential(const std::vector<double>& counts, const std::vector<double>& values,
                       const std::vector<double>& sigmas) {
  Problem prob = make_problem(counts, values, sigmas);
  const size_t n = counts.size();
  if (n < 3) throw std::invalid_argument("fit_exponential: need at least 3 points");

  ExpFit out;
  out.reliable = true;
  for (size_t i = 0; i < n; ++i)
    if (values[i] <= 0.0) out.reliable = false;
  for (size_t i = 1; i < n; ++i)
    if (values[i] > values[i - 1] + 1e-12 && counts[i] > counts[i - 1]) out.reliable = false;

  // log-linear seed over the positive samples
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  for (size_t i = 0; i < n; ++i) {
    if (values[i] <= 0.0) continue;
    const double ly = std::log(values[i]);
    sx += counts[i];
    sy += ly;
    sxx += counts[i] * counts[i];
    sxy += counts[i] * ly;
    m += 1.0;
  }
  if (m < 2.0) {
    out.reliable = false;
    out.a1 = values[0];
    out.ne = 1.0;
    return out;
  }
  const double slope = (m * sxy - sx * sy) / std::max(m * sxx - sx * sx, 1e-30);
  const double icept = (sy - slope * sx) / m;
  Eigen::Vector2d p;
  p << std::exp(icept), slope < -1e-300 ? -1.0 / slope : 1e6;

  auto model = [](double t, const Eigen::Vector2d& q, Eigen::Vector2d* jac) {
    const double e = std::exp(-t / q(1));
    if (jac) *jac << e, q(0) * e * t / (q(1) * q(1));
    return q(0) * e;
  };
  double chi2 = 0.0;
  int iters = 0;
  Eigen::Matrix2d jtj = levenberg_marquardt<2>(prob, model, p, chi2, iters);

  out.a1 = p(0);
  out.ne = p(1);
  Eigen::Matrix2d cov = jtj.completeOrthogonalDecomposition().pseudoInverse();
  if (prob.unit_weights && n > 2) cov *= chi2 / (static_cast<double>(n) - 2.0);
  out.err_a1 = std::sqrt(std::max(cov(0, 0), 0.0));
  out.err_ne = std::sqrt(std::max(cov(1, 1), 0.0));
  if (out.ne <= 0.0) out.reliable = false;
  return out;
}

}  // namespace dimer
