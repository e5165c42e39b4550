#include "pairfluor/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "pairfluor/errors.hpp"
#include "pairfluor/hamiltonian.hpp"
#include "pairfluor/lineshape.hpp"

namespace pairfluor {

namespace {

constexpr double kKernelTol = 1e-14;
constexpr double kDiagCondMax = 1e8;
constexpr int kMaxSteps = 400000;

Mat16 kron(const Mat4& a, const Mat4& b) {
  Mat16 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

Mat16 dissipator(const JumpTerm& t) {
  const Mat4 id = Mat4::Identity();
  const Mat4 yx = t.y.adjoint() * t.x;
  return 0.5 * t.rate * (2.0 * kron(t.y.conjugate(), t.x) - kron(id, yx) - kron(yx.transpose(), id));
}

Mat4 emitter_lowering(Emitter e) { return e == Emitter::First ? lowering1() : lowering2(); }

// Row functional r with r . vec(X) = Tr[op X].
Eigen::Matrix<cplx, 1, 16> trace_functional(const Mat4& op) { return vectorize(op.transpose()).transpose(); }

double condition_of(const Mat16& v) {
  Eigen::JacobiSVD<Mat16> svd(v);
  const auto& s = svd.singularValues();
  return s(15) > 0 ? s(0) / s(15) : std::numeric_limits<double>::infinity();
}

struct Seed {
  Vec16 w;                             // vec(rho s+) minus its stationary part
  Eigen::Matrix<cplx, 1, 16> readout;  // Tr[s .]
  cplx offset = 0.0;                   // |<s>|^2
  double n = 0.0;                      // <s+ s>
  cplx mean = 0.0;                     // <s>
};

Seed make_seed(const DensityMatrix& ss, Emitter e) {
  const Mat4 s = emitter_lowering(e);
  Seed sd;
  sd.mean = ss.expectation(s);
  const cplx mean_dag = ss.expectation(s.adjoint());
  sd.w = vectorize(ss.rho * s.adjoint()) - mean_dag * vectorize(ss.rho);
  sd.readout = trace_functional(s);
  sd.offset = sd.mean * mean_dag;
  sd.n = ss.expectation(s.adjoint() * s).real();
  return sd;
}

// Integrals of s^k e^{i w s} over [0, H] for k = 0, 1, 2.
std::array<cplx, 3> filon_moments(double w, double H) {
  const double t = w * H;
  std::array<cplx, 3> m{};
  if (std::abs(t) < 0.05) {
    cplx zpow = 1.0;  // (i w)^n / n!
    for (int n = 0; n < 14; ++n) {
      const double hp = std::pow(H, n + 1);
      m[0] += zpow * hp / double(n + 1);
      m[1] += zpow * hp * H / double(n + 2);
      m[2] += zpow * hp * H * H / double(n + 3);
      zpow *= cplx(0.0, w) / double(n + 1);
    }
    return m;
  }
  const cplx z(0.0, w);
  const cplx e = std::exp(z * H);
  m[0] = (e - 1.0) / z;
  m[1] = (H * e - m[0]) / z;
  m[2] = (H * H * e - 2.0 * m[1]) / z;
  return m;
}

}  // namespace

Vec16 vectorize(const Mat4& m) {
  Vec16 v;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) v(4 * c + r) = m(r, c);
  return v;
}

Mat4 devectorize(const Vec16& v) {
  Mat4 m;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) m(r, c) = v(4 * c + r);
  return m;
}

Liouvillian build_liouvillian(const SystemParams& p) {
  p.validate();
  Liouvillian lv;
  lv.params = p;
  lv.hamiltonian = build_pair_hamiltonian(p).matrix;
  const Mat4 s1 = lowering1();
  const Mat4 s2 = lowering2();
  lv.jumps = {
      {s1, s1, cplx(p.gamma0, 0.0), "decay 1"},
      {s2, s2, cplx(p.gamma0, 0.0), "decay 2"},
      {s2, s1, p.gamma * std::polar(1.0, p.phi), "cross 2->1"},
      {s1, s2, p.gamma * std::polar(1.0, -p.phi), "cross 1->2"},
  };
  const Mat4 id = Mat4::Identity();
  const cplx i(0.0, 1.0);
  // i[rho, H]
  lv.matrix = i * (kron(lv.hamiltonian.transpose(), id) - kron(id, lv.hamiltonian));
  for (const auto& t : lv.jumps) lv.matrix += dissipator(t);
  return lv;
}

std::array<double, 4> DensityMatrix::populations() const {
  return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real()};
}

cplx DensityMatrix::expectation(const Mat4& op) const { return (op * rho).trace(); }

void DensityMatrix::check() const {
  if (!rho.allFinite()) throw NumericalError("density matrix has non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw NumericalError("density matrix not Hermitian (residual " + std::to_string(herm) + ")");
  const double tr = std::abs(rho.trace() - 1.0);
  if (tr > 1e-12) throw NumericalError("density matrix trace off by " + std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (rho + rho.adjoint()));
  if (es.eigenvalues()(0) < -1e-10) {
    throw NumericalError("density matrix not positive (eigenvalue " + std::to_string(es.eigenvalues()(0)) + ")");
  }
}

DensityMatrix ground_state() {
  DensityMatrix d;
  d.rho(0, 0) = 1.0;
  return d;
}

int kernel_dimension(const Liouvillian& lv) {
  Eigen::JacobiSVD<Mat16> svd(lv.matrix);
  const auto& s = svd.singularValues();
  const double tol = kKernelTol * std::max(1.0, s(0));
  int dim = 0;
  for (int k = 0; k < 16; ++k)
    if (s(k) <= tol) ++dim;
  return dim;
}

DensityMatrix steady_state_dm(const Liouvillian& lv) {
  const int dim = kernel_dimension(lv);
  if (dim > 1) {
    throw DegenerateSteadyStateError(
        "steady state not unique: Liouvillian kernel has dimension " + std::to_string(dim), dim);
  }
  // Trace preservation makes the rho00 row redundant; replace it by the trace condition.
  Mat16 a = lv.matrix;
  a.row(0) = trace_functional(Mat4::Identity());
  Vec16 b = Vec16::Zero();
  b(0) = 1.0;
  Eigen::PartialPivLU<Mat16> lu(a);
  Vec16 x = lu.solve(b);
  x += lu.solve(b - a * x);
  if (!x.allFinite()) throw NumericalError("steady-state solve produced non-finite values");

  DensityMatrix d;
  d.rho = devectorize(x);
  d.rho = 0.5 * (d.rho + d.rho.adjoint()).eval();
  d.rho /= d.rho.trace();
  d.check();
  return d;
}

DensityMatrix evolve_dm(const Liouvillian& lv, const DensityMatrix& rho0, double t) {
  if (!(t >= 0) || !std::isfinite(t)) throw ValidationError("evolution time must be finite and >= 0");
  if (t == 0.0) return rho0;
  const Mat16 prop = (lv.matrix * t).exp();
  if (!prop.allFinite()) throw NumericalError("matrix exponential failed at t=" + std::to_string(t));
  DensityMatrix out;
  out.rho = devectorize(prop * vectorize(rho0.rho));
  return out;
}

std::vector<cplx> liouvillian_eigenvalues(const Liouvillian& lv) {
  Eigen::ComplexEigenSolver<Mat16> es(lv.matrix, false);
  if (es.info() != Eigen::Success) throw NumericalError("Liouvillian eigendecomposition failed");
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + 16);
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

CorrelatorResult two_time_correlator(const Liouvillian& lv, std::span<const double> tau_grid, Emitter e) {
  for (double t : tau_grid)
    if (!(t >= 0) || !std::isfinite(t)) throw ValidationError("tau values must be finite and >= 0");
  const DensityMatrix ss = steady_state_dm(lv);
  const Seed sd = make_seed(ss, e);
  CorrelatorResult res;
  res.offset = sd.offset;
  res.values.reserve(tau_grid.size());

  Eigen::ComplexEigenSolver<Mat16> es(lv.matrix);
  const bool diag = es.info() == Eigen::Success && condition_of(es.eigenvectors()) < kDiagCondMax;
  res.used_diagonalization = diag;
  if (diag) {
    const Mat16& v = es.eigenvectors();
    const Vec16 a = v.partialPivLu().solve(sd.w);
    const Eigen::Matrix<cplx, 1, 16> rv = sd.readout * v;
    for (double t : tau_grid) {
      cplx c = 0.0;
      for (int k = 0; k < 16; ++k) c += rv(k) * a(k) * std::exp(es.eigenvalues()(k) * t);
      res.values.push_back(c + sd.offset);
    }
  } else {
    for (double t : tau_grid) {
      const Vec16 x = t == 0.0 ? sd.w : Vec16((lv.matrix * t).exp() * sd.w);
      res.values.push_back((sd.readout * x)(0) + sd.offset);
    }
  }
  if (!tau_grid.empty()) {
    const cplx c0 = sd.n;
    const cplx tail = res.values.back() - sd.offset;
    res.truncated = std::abs(tail) > 1e-6 * std::abs(c0 - sd.offset);
  }
  return res;
}

OracleSpectrum spectrum_fft(const Liouvillian& lv, std::span<const double> grid, Emitter e) {
  check_grid(grid);
  const DensityMatrix ss = steady_state_dm(lv);
  const Seed sd = make_seed(ss, e);
  if (!(sd.n > 1e-14)) throw UndefinedObservable("spectrum undefined: emitter population is zero");

  // Rates and frequencies of the modes the readout actually sees.
  Eigen::ComplexEigenSolver<Mat16> es(lv.matrix);
  if (es.info() != Eigen::Success) throw NumericalError("Liouvillian eigendecomposition failed");
  const auto& mu = es.eigenvalues();
  std::vector<int> modes;
  const bool diag = condition_of(es.eigenvectors()) < kDiagCondMax;
  if (diag) {
    const Vec16 a = es.eigenvectors().partialPivLu().solve(sd.w);
    const Eigen::Matrix<cplx, 1, 16> rv = sd.readout * es.eigenvectors();
    for (int k = 0; k < 16; ++k)
      if (std::abs(rv(k) * a(k)) > 1e-10 * sd.n && std::abs(mu(k)) > 1e-12) modes.push_back(k);
  } else {
    for (int k = 0; k < 16; ++k)
      if (std::abs(mu(k)) > 1e-12) modes.push_back(k);
  }
  double rate_min = std::numeric_limits<double>::infinity();
  double rate_max = 0.0;
  double freq_max = 0.0;
  for (int k : modes) {
    rate_min = std::min(rate_min, -mu(k).real());
    rate_max = std::max(rate_max, -mu(k).real());
    freq_max = std::max(freq_max, std::abs(mu(k).imag()));
  }
  OracleSpectrum out;
  out.delta_weight = std::norm(sd.mean) / sd.n;
  out.values.assign(grid.size(), 0.0);
  if (modes.empty()) return out;
  if (!(rate_min > 0)) throw NumericalError("non-decaying mode in the correlator");

  // Resolution: at least 8 grid points per full width of every in-window line.
  for (int k : modes) {
    const double w = -mu(k).imag();
    if (w < grid.front() || w > grid.back() || grid.size() < 2) continue;
    const auto it = std::upper_bound(grid.begin(), grid.end(), w);
    const size_t hi = std::min<size_t>(std::max<size_t>(size_t(it - grid.begin()), 1), grid.size() - 1);
    const double spacing = grid[hi] - grid[hi - 1];
    const double width = -2 * mu(k).real();
    if (spacing > width / 8) {
      std::ostringstream os;
      os << "grid spacing " << spacing << " too coarse for line of width " << width << " at " << w;
      throw ResolutionError(os.str());
    }
  }

  const double w_ext = std::max({std::abs(grid.front()), std::abs(grid.back()), freq_max});
  const double dt = 0.05 / (w_ext + rate_max);
  const double tau_max = std::log(1e12) / rate_min;
  long steps = static_cast<long>(std::ceil(tau_max / dt));
  if (steps % 2) ++steps;
  if (steps > kMaxSteps) {
    steps = kMaxSteps;
    out.truncated = true;
  }
  out.dt = dt;
  out.tau_max = dt * double(steps);

  // Offset-subtracted correlator on the uniform tau grid.
  const Mat16 step = (lv.matrix * dt).exp();
  if (!step.allFinite()) throw NumericalError("matrix exponential failed");
  std::vector<cplx> c(static_cast<size_t>(steps + 1));
  Vec16 x = sd.w;
  for (long k = 0; k <= steps; ++k) {
    c[size_t(k)] = (sd.readout * x)(0);
    x = step * x;
  }
  if (std::abs(c.back()) > 1e-6 * sd.n) out.truncated = true;

  // Piecewise-quadratic (Filon) quadrature of Re int e^{i w tau} c(tau) dtau.
  const long panels = steps / 2;
  const double h = dt;
  std::vector<cplx> f0(static_cast<size_t>(panels)), a1(f0.size()), b2(f0.size());
  for (long j = 0; j < panels; ++j) {
    const cplx y0 = c[size_t(2 * j)], y1 = c[size_t(2 * j + 1)], y2 = c[size_t(2 * j + 2)];
    f0[size_t(j)] = y0;
    a1[size_t(j)] = (-3.0 * y0 + 4.0 * y1 - y2) / (2 * h);
    b2[size_t(j)] = (y0 - 2.0 * y1 + y2) / (2 * h * h);
  }
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    const double w = grid[gi];
    const auto mom = filon_moments(w, 2 * h);
    const cplx rot = std::polar(1.0, w * 2 * h);
    cplx ph = 1.0, s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (long j = 0; j < panels; ++j) {
      s0 += ph * f0[size_t(j)];
      s1 += ph * a1[size_t(j)];
      s2 += ph * b2[size_t(j)];
      ph *= rot;
      if ((j & 1023) == 1023) ph = std::polar(1.0, w * 2 * h * double(j + 1));
    }
    const cplx integral = mom[0] * s0 + mom[1] * s1 + mom[2] * s2;
    out.values[gi] = integral.real() / (std::numbers::pi * sd.n);
  }
  return out;
}

}  // namespace pairfluor
