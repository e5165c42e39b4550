#include "pairfluor/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pairfluor/errors.hpp"
#include "pairfluor/moments.hpp"

namespace pairfluor {

namespace {

using MatX = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using VecX = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

constexpr int kContourPoints = 64;
constexpr double kNilpotentTol = 1e-8;

// Moments reachable from `start` through nonzero entries of m.
std::vector<int> reach_set(const Mat15& m, int start) {
  const double thr = 1e-13 * m.cwiseAbs().maxCoeff();
  std::vector<bool> in(kMoments, false);
  std::vector<int> stack = {start};
  in[size_t(start)] = true;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < kMoments; ++j) {
      if (!in[size_t(j)] && std::abs(m(i, j)) > thr) {
        in[size_t(j)] = true;
        stack.push_back(j);
      }
    }
  }
  std::vector<int> r;
  for (int j = 0; j < kMoments; ++j)
    if (in[size_t(j)]) r.push_back(j);
  return r;
}

// Single-linkage clusters of eigenvalues.
std::vector<std::vector<int>> cluster(const VecX& lam, double gap) {
  const int n = int(lam.size());
  std::vector<int> label(size_t(n), -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (label[size_t(i)] >= 0) continue;
    label[size_t(i)] = next;
    std::vector<int> stack = {i};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < n; ++b) {
        if (label[size_t(b)] < 0 && std::abs(lam(a) - lam(b)) < gap) {
          label[size_t(b)] = next;
          stack.push_back(b);
        }
      }
    }
    ++next;
  }
  std::vector<std::vector<int>> out(static_cast<size_t>(next));
  for (int i = 0; i < n; ++i) out[size_t(label[size_t(i)])].push_back(i);
  return out;
}

}  // namespace

double SpectralDecomposition::lorentz_sum() const {
  double s = 0.0;
  for (const auto& c : components) s += c.lorentz;
  return s;
}

SpectralDecomposition decompose_spectrum(const SystemParams& p, Emitter e) {
  p.validate();
  const MomentSystem sys = build_moment_system(p);
  const MomentState st = steady_state(sys);
  const DensityMatrix ss = steady_state_dm(build_liouvillian(p));

  const Mat4 s = e == Emitter::First ? lowering1() : lowering2();
  const Mat4 sd = s.adjoint();
  const double n = ss.expectation(sd * s).real();
  if (!(n > 1e-14)) throw UndefinedObservable("spectrum undefined: emitter population is zero");
  const cplx mean = ss.expectation(s);
  const cplx mean_dag = ss.expectation(sd);

  // tau = 0 values of <s+(0) O_i(tau)> minus their tau -> infinity limit.
  const Mat4 seed = ss.rho * sd;
  Vec15 w0;
  for (int i = 0; i < kMoments; ++i) w0(i) = (moment_operators()[size_t(i)] * seed).trace() - st.u(i) * mean_dag;

  const int row = e == Emitter::First ? moment::s1 : moment::s2;
  const std::vector<int> r = reach_set(sys.m, row);
  const int k = int(r.size());
  MatX a(k, k);
  VecX w(k);
  int pos = 0;
  for (int i = 0; i < k; ++i) {
    if (r[size_t(i)] == row) pos = i;
    w(i) = w0(r[size_t(i)]);
    for (int j = 0; j < k; ++j) a(i, j) = -sys.m(r[size_t(i)], r[size_t(j)]);
  }

  Eigen::ComplexEigenSolver<MatX> es(a, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition of the regression matrix failed");
  const VecX lam = es.eigenvalues();
  const auto groups = cluster(lam, kClusterGap * p.gamma0);

  SpectralDecomposition d;
  d.emitter = e;
  d.population = n;
  d.delta_weight = std::norm(mean) / n;
  d.reduced_dimension = k;

  const MatX id = MatX::Identity(k, k);
  for (const auto& g : groups) {
    cplx centre = 0.0;
    for (int i : g) centre += lam(i);
    centre /= double(g.size());
    double spread = 0.0;
    for (int i : g) spread = std::max(spread, std::abs(lam(i) - centre));
    double outside = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j)
      if (std::find(g.begin(), g.end(), j) == g.end()) outside = std::min(outside, std::abs(lam(j) - centre));
    double radius = std::isfinite(outside) ? 0.5 * outside : 1.0 + std::abs(centre);
    radius = std::max(radius, 4 * spread);

    // Riesz projection of w onto the cluster, read out at the emitter row.
    cplx c0 = 0.0, c1 = 0.0;
    for (int q = 0; q < kContourPoints; ++q) {
      const cplx u = std::polar(1.0, 2 * std::numbers::pi * q / kContourPoints);
      const cplx z = centre + radius * u;
      const VecX x = (z * id - a).partialPivLu().solve(w);
      c0 += radius * u * x(pos);
      c1 += radius * radius * u * u * x(pos);
    }
    c0 /= double(kContourPoints);
    c1 /= double(kContourPoints);

    if (g.size() > 1) {
      ++d.merged_clusters;
      if (std::abs(c1) / n > kNilpotentTol * p.gamma0) {
        std::ostringstream os;
        os.precision(12);
        os << "defective eigenvalue cluster contributes a non-Lorentzian term:";
        for (int i : g) os << ' ' << lam(i);
        throw DegenerateEigenError(os.str());
      }
    }
    const cplx coef = c0 / n;
    if (std::abs(coef.real()) < kPruneWeight && std::abs(coef.imag()) < kPruneWeight) continue;
    d.components.push_back({-centre.imag(), -2 * centre.real(), coef.real(), coef.imag()});
  }
  std::sort(d.components.begin(), d.components.end(),
            [](const SpectralComponent& x, const SpectralComponent& y) {
              if (x.omega != y.omega) return x.omega < y.omega;
              return x.gamma < y.gamma;
            });
  return d;
}

std::vector<double> evaluate_spectrum(const SpectralDecomposition& d, std::span<const double> grid) {
  return evaluate_components(d.components, grid);
}

std::vector<double> default_spectrum_grid(const SystemParams& p, int points) {
  p.validate();
  const double om = std::max(p.omega1, p.omega2);
  const double f = std::sqrt(p.g * p.g + 4 * om * om);
  const double half = 1.5 * (f + p.g + 3 * p.gamma0 + std::abs(p.delta));
  return linear_grid(-half, half, points);
}

std::vector<cplx> moment_eigenvalues(const SystemParams& p) {
  const MomentSystem sys = build_moment_system(p);
  Eigen::ComplexEigenSolver<Mat15> es(-sys.m, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition of the regression matrix failed");
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + kMoments);
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() < y.imag();
  });
  return ev;
}

}  // namespace pairfluor
