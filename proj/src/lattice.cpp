#include "dimer/lattice.hpp"

#include <cmath>
#include <numeric>

#include "dimer/rng.hpp"
#include "dimer/util.hpp"

namespace dimer {

double recoil_hz() {
  constexpr double h = 6.62607015e-34;          // J s
  constexpr double amu = 1.66053906660e-27;     // kg
  constexpr double m_k40 = 39.96399848 * amu;   // kg
  constexpr double lambda = 1.064e-6;           // m
  return h / (2.0 * m_k40 * lambda * lambda);
}

void LatticeDepths::validate() const {
  if (!(vx >= 0.0 && vxint >= 0.0 && vy >= 0.0 && vz >= 0.0))
    throw std::invalid_argument("LatticeDepths: depths must be >= 0");
  if (!(i_xz >= 0.0 && i_xz <= 1.0))
    throw std::invalid_argument("LatticeDepths: imbalance must be in [0, 1]");
  if (!(std::isfinite(phi_sl) && std::isfinite(theta_beam)))
    throw std::invalid_argument("LatticeDepths: non-finite phase");
}

std::vector<double> potential_slice(const LatticeDepths& d, const std::vector<double>& kx) {
  d.validate();
  const double amp = std::sqrt(d.vxint * d.vz);
  std::vector<double> v;
  v.reserve(kx.size());
  for (double u : kx) {
    const double cx = std::cos(u + 0.5 * d.theta_beam);
    const double ci = std::cos(u);
    double val = -d.vx * cx * cx - d.vxint * ci * ci;
    val -= amp * std::cos(u + d.phi_sl);
    val -= d.i_xz * amp * std::cos(u - d.phi_sl);
    v.push_back(val);
  }
  return v;
}

namespace {

// Finite-difference Hamiltonian -d^2/du^2 + V(u) on a periodic supercell,
// wavevector units (u = kx), energies in E_rec. The matrix is tridiagonal
// plus two corner entries; solves of (H - sigma) x = b go through a Thomas
// factorisation with a rank-2 Woodbury correction for the corners.
class SupercellSolver {
 public:
  SupercellSolver(std::vector<double> v_grid, double h)
      : v_(std::move(v_grid)), h2_(h * h), n_(static_cast<int>(v_.size())) {
    const double vmin = *std::min_element(v_.begin(), v_.end());
    sigma_ = vmin - 1.0;
    diag_.resize(n_);
    for (int j = 0; j < n_; ++j) diag_[j] = 2.0 / h2_ + v_[j] - sigma_;
    off_ = -1.0 / h2_;
    factorise();
  }

  // y = H x
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    for (int j = 0; j < n_; ++j) {
      const double left = x((j + n_ - 1) % n_), right = x((j + 1) % n_);
      y(j) = (2.0 * x(j) - left - right) / h2_ + v_[j] * x(j);
    }
  }

  // x = (H - sigma)^{-1} b
  void solve(const Eigen::VectorXd& b, Eigen::VectorXd& x) const {
    thomas(b, x);
    const double z0 = x(0), zn = x(n_ - 1);
    Eigen::Vector2d rhs(z0, zn);
    const Eigen::Vector2d y2 = cap_.solve(rhs);
    x -= y2(0) * p_ + y2(1) * q_;
  }

  double sigma() const { return sigma_; }
  int size() const { return n_; }

 private:
  void thomas(const Eigen::VectorXd& b, Eigen::VectorXd& x) const {
    x.resize(n_);
    scratch_.resize(n_);
    double beta = diag_[0];
    x(0) = b(0) / beta;
    for (int j = 1; j < n_; ++j) {
      scratch_(j) = off_ / beta;
      beta = diag_[j] - off_ * scratch_(j);
      x(j) = (b(j) - off_ * x(j - 1)) / beta;
    }
    for (int j = n_ - 2; j >= 0; --j) x(j) -= scratch_(j + 1) * x(j + 1);
  }

  void factorise() {
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n_), en = Eigen::VectorXd::Zero(n_);
    e0(0) = 1.0;
    en(n_ - 1) = 1.0;
    p_.resize(n_);
    q_.resize(n_);
    thomas(e0, p_);
    thomas(en, q_);
    Eigen::Matrix2d cap;
    cap << p_(0), q_(0) + 1.0 / off_, p_(n_ - 1) + 1.0 / off_, q_(n_ - 1);
    cap_ = cap.fullPivLu();
  }

  std::vector<double> v_;
  double h2_, off_, sigma_;
  int n_;
  std::vector<double> diag_;
  Eigen::VectorXd p_, q_;
  Eigen::FullPivLU<Eigen::Matrix2d> cap_;
  mutable Eigen::VectorXd scratch_;
};

struct EigenPairs {
  Eigen::VectorXd values;   // ascending, E_rec
  Eigen::MatrixXd vectors;  // columns, supercell grid
};

// block inverse iteration with Rayleigh-Ritz; nev converged lowest pairs.
// The block extends one full band past the request so a cluster straddling
// the cut cannot stall the iteration.
EigenPairs lowest_pairs(const SupercellSolver& solver, int nev, int band_size) {
  const int n = solver.size();
  const int block = nev + band_size + 4;
  Eigen::MatrixXd x(n, block);
  Rng rng(0x5CE11ull);
  for (int c = 0; c < block; ++c)
    for (int r = 0; r < n; ++r) x(r, c) = rng.gaussian();

  Eigen::VectorXd tmp(n), hy(n);
  Eigen::VectorXd ritz(block);
  double scale = 1.0;
  for (int iter = 0; iter < 500; ++iter) {
    for (int c = 0; c < block; ++c) {
      solver.solve(x.col(c), tmp);
      x.col(c) = tmp;
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    x = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
    Eigen::MatrixXd small(block, block);
    Eigen::MatrixXd hx(n, block);
    for (int c = 0; c < block; ++c) {
      Eigen::VectorXd col = x.col(c);
      solver.apply(col, hy);
      hx.col(c) = hy;
    }
    small = x.transpose() * hx;
    small = 0.5 * (small + small.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
    x = (x * es.eigenvectors()).eval();
    ritz = es.eigenvalues();
    scale = std::max(1.0, ritz.cwiseAbs().maxCoeff());

    // residual check on the wanted part
    double worst = 0.0;
    for (int c = 0; c < nev; ++c) {
      Eigen::VectorXd col = x.col(c);
      solver.apply(col, hy);
      worst = std::max(worst, (hy - ritz(c) * col).norm());
    }
    if (worst <= 1e-10 * scale) {
      EigenPairs out;
      out.values = ritz.head(nev);
      out.vectors = x.leftCols(nev);
      return out;
    }
  }
  throw std::runtime_error("lattice eigensolver did not converge");
}

std::vector<double> supercell_potential(const LatticeDepths& d, const ExtractOptions& opts) {
  if (opts.points_per_period < 256)
    throw std::invalid_argument("extract: need >= 256 points per period");
  if (opts.periods < 8) throw std::invalid_argument("extract: need >= 8 periods");
  const int m = opts.points_per_period;
  std::vector<double> grid(m);
  for (int j = 0; j < m; ++j) grid[j] = two_pi * j / m;
  const std::vector<double> cell = potential_slice(d, grid);
  std::vector<double> v;
  v.reserve(static_cast<size_t>(m) * opts.periods);
  for (int p = 0; p < opts.periods; ++p) v.insert(v.end(), cell.begin(), cell.end());
  return v;
}

}  // namespace

std::vector<double> lowest_band_energies(const LatticeDepths& d, const ExtractOptions& opts,
                                         int count) {
  const int m = opts.points_per_period;
  const std::vector<double> v = supercell_potential(d, opts);
  SupercellSolver solver(v, two_pi / m);
  const EigenPairs ep = lowest_pairs(solver, count, opts.periods);
  return {ep.values.data(), ep.values.data() + ep.values.size()};
}

TightBinding extract_tight_binding(const LatticeDepths& d, const ExtractOptions& opts) {
  const int m = opts.points_per_period;
  const int nper = opts.periods;
  std::vector<double> grid(m);
  for (int j = 0; j < m; ++j) grid[j] = two_pi * j / m;
  const std::vector<double> cell = potential_slice(d, grid);

  // locate the double-well structure within one period; refine positions by
  // a parabola through the three points around each extremum
  auto refine = [&](int j) {
    const double vm = cell[(j + m - 1) % m], v0 = cell[j], vp = cell[(j + 1) % m];
    const double den = vm - 2.0 * v0 + vp;
    const double frac = std::abs(den) > 0.0 ? 0.5 * (vm - vp) / den : 0.0;
    return j + frac;
  };
  std::vector<int> minima, maxima;
  for (int j = 0; j < m; ++j) {
    const double prev = cell[(j + m - 1) % m], next = cell[(j + 1) % m];
    if (cell[j] < prev && cell[j] <= next) minima.push_back(j);
    if (cell[j] > prev && cell[j] >= next) maxima.push_back(j);
  }
  if (minima.size() != 2 || maxima.size() != 2)
    throw std::runtime_error("not in two-level regime");
  const bool first_higher = cell[maxima[0]] >= cell[maxima[1]];
  const double b_intra = refine(first_higher ? maxima[1] : maxima[0]);  // lower barrier
  const double h = two_pi / m;
  // wells ordered by position in [0, m); this anchors the sign of delta
  double mins[2], curv[2];
  for (int w = 0; w < 2; ++w) {
    const int j = minima[w];
    mins[w] = refine(j);
    const double vm = cell[(j + m - 1) % m], v0 = cell[j], vp = cell[(j + 1) % m];
    curv[w] = std::max((vm - 2.0 * v0 + vp) / (h * h), 1.0);
  }
  if (mins[0] > mins[1]) {
    std::swap(mins[0], mins[1]);
    std::swap(curv[0], curv[1]);
  }

  const std::vector<double> v = supercell_potential(d, opts);
  SupercellSolver solver(v, h);
  const int nstate = 2 * nper;
  const EigenPairs ep = lowest_pairs(solver, nstate + 1, nper);

  // two-band window must be isolated from the third band
  const double span = ep.values(nstate - 1) - ep.values(0);
  const double gap3 = ep.values(nstate) - ep.values(nstate - 1);
  if (gap3 < span) throw std::runtime_error("not in two-level regime");

  // Gaussian seeds at every well, projected onto the two-band subspace and
  // Loewdin-orthonormalised; the effective Hamiltonian in that basis gives
  // the tight-binding parameters as direct matrix elements
  const int n = solver.size();
  Eigen::MatrixXd seeds(n, nstate);
  for (int p = 0; p < nper; ++p) {
    for (int w = 0; w < 2; ++w) {
      const double centre = mins[w] + p * m;
      const double sigma = std::pow(2.0 * curv[w], -0.25) / h;  // grid units
      Eigen::VectorXd g(n);
      for (int j = 0; j < n; ++j) {
        double dj = std::abs(j - centre);
        dj = std::min(dj, n - dj);
        g(j) = std::exp(-0.5 * dj * dj / (sigma * sigma));
      }
      seeds.col(2 * p + w) = g / g.norm();
    }
  }
  const Eigen::MatrixXd vt_g =
      ep.vectors.leftCols(nstate).transpose() * seeds;          // nstate x nstate
  const Eigen::MatrixXd overlap = vt_g.transpose() * vt_g;      // S = G' P G
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(overlap);
  if (es.eigenvalues().minCoeff() < 1e-8)
    throw std::runtime_error("not in two-level regime");
  const Eigen::MatrixXd s_invsqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();
  // coefficients of the Wannier orbitals over the band eigenstates
  const Eigen::MatrixXd coeff = vt_g * s_invsqrt;
  const Eigen::MatrixXd h_eff =
      coeff.transpose() * ep.values.head(nstate).asDiagonal() * coeff;

  // orbitals are position-ordered (2p + w at p*m + mins[w]); consecutive
  // neighbours alternate across the lower (intra-dimer) and higher barrier
  double onsite[2] = {0.0, 0.0};
  double hop_intra = 0.0, hop_inter = 0.0;
  int n_intra = 0, n_inter = 0;
  for (int p = 0; p < nper; ++p) {
    onsite[0] += h_eff(2 * p, 2 * p);
    onsite[1] += h_eff(2 * p + 1, 2 * p + 1);
    for (int w = 0; w < 2; ++w) {
      const int a = 2 * p + w;
      const int b = (a + 1) % nstate;
      const double lo = mins[w];
      const double hi = (w == 0) ? mins[1] : mins[0] + m;
      // which barrier sits between this neighbour pair
      const bool intra_between =
          (b_intra > lo && b_intra < hi) || (b_intra + m > lo && b_intra + m < hi);
      if (intra_between) {
        hop_intra += std::abs(h_eff(a, b));
        ++n_intra;
      } else {
        hop_inter += std::abs(h_eff(a, b));
        ++n_inter;
      }
    }
  }
  const double delta = 0.5 * (onsite[0] - onsite[1]) / nper;
  const double t = n_intra > 0 ? hop_intra / n_intra : 0.0;
  const double tp = n_inter > 0 ? hop_inter / n_inter : 0.0;

  const double er = recoil_hz();
  return {delta * er, t * er, tp * er};
}

RampSchedule schedule_from_phase_ramp(const LatticeDepths& d, double phi_start,
                                      double phi_end, double duration, int samples,
                                      double u_hz, const ExtractOptions& opts) {
  if (samples < 2) throw std::invalid_argument("schedule_from_phase_ramp: samples >= 2");
  if (std::abs(phi_start) > pi + 1e-12 || std::abs(phi_end) > pi + 1e-12)
    throw std::invalid_argument("schedule_from_phase_ramp: endpoints in [-pi, pi]");
  std::vector<double> taus(samples);
  std::vector<HubbardParams> knots(samples);
  for (int k = 0; k < samples; ++k) {
    const double x = static_cast<double>(k) / (samples - 1);
    LatticeDepths dk = d;
    dk.phi_sl = phi_start + (phi_end - phi_start) * x;
    const TightBinding tb = extract_tight_binding(dk, opts);
    taus[k] = duration * x;
    knots[k] = {tb.t, tb.delta, u_hz};
  }
  return RampSchedule::piecewise(std::move(taus), std::move(knots));
}

}  // namespace dimer
