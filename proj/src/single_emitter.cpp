#include "pairfluor/single_emitter.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pairfluor/errors.hpp"

namespace pairfluor {

namespace {

constexpr double kCriticalBand = 1e-8;

void require_resonant(const SingleParams& p, const char* what) {
  if (p.delta != 0.0) {
    throw UnsupportedConfiguration(std::string(what) +
                                   " requires zero detuning; use regression_decomposition or the pair "
                                   "moment machinery for delta != 0");
  }
}

}  // namespace

void SingleParams::validate() const {
  if (!std::isfinite(delta) || !std::isfinite(gamma) || !std::isfinite(omega)) {
    throw ValidationError("single-emitter parameters must be finite");
  }
  if (!(gamma > 0)) throw ValidationError("gamma must be > 0 (got " + std::to_string(gamma) + ")");
  if (omega < 0) throw ValidationError("omega must be >= 0 (got " + std::to_string(omega) + ")");
}

PopulationCoherence steady_population_coherence(const SingleParams& p) {
  p.validate();
  const double den = 2 * p.omega * p.omega + p.delta * p.delta + 0.25 * p.gamma * p.gamma;
  PopulationCoherence r;
  r.n = p.omega * p.omega / den;
  r.c = -p.omega * std::complex<double>(p.delta, 0.5 * p.gamma) / den;
  return r;
}

double critical_drive(double gamma) {
  if (!(gamma > 0)) throw ValidationError("gamma must be > 0");
  return gamma / 8;
}

DressedState dressed_state(const SingleParams& p) {
  p.validate();
  DressedState d;
  d.splitting = std::sqrt(0.25 * p.delta * p.delta + p.omega * p.omega);
  d.omega_plus = 0.5 * p.delta + d.splitting;
  d.omega_minus = 0.5 * p.delta - d.splitting;
  const double ratio = d.splitting > 0 ? p.delta / (2 * d.splitting) : 0.0;
  d.sin_b = std::sqrt(0.5 * (1 - ratio));
  d.cos_b = std::sqrt(0.5 * (1 + ratio));
  return d;
}

Mat3 regression_matrix(const SingleParams& p) {
  p.validate();
  const std::complex<double> i(0.0, 1.0);
  Mat3 q;
  q << 0.5 * p.gamma + i * p.delta, 0.0, -2.0 * i * p.omega,
      0.0, 0.5 * p.gamma - i * p.delta, 2.0 * i * p.omega,
      -i * p.omega, i * p.omega, p.gamma;
  return q;
}

Vec3 drive_vector(const SingleParams& p) {
  p.validate();
  const std::complex<double> i(0.0, 1.0);
  return Vec3(-i * p.omega, i * p.omega, 0.0);
}

std::vector<SpectralComponent> MollowCoefficients::components() const {
  std::vector<SpectralComponent> out;
  for (const auto& pk : peaks) out.push_back({pk.omega, pk.gamma, pk.lorentz, pk.dispersive});
  return out;
}

MollowCoefficients mollow_coefficients(const SingleParams& p) {
  p.validate();
  require_resonant(p, "mollow_coefficients");
  const double ga = p.gamma;
  const double om = p.omega;
  const double oc = critical_drive(ga);
  const double ld = ga * ga / (ga * ga + 8 * om * om);
  const double amp = 8 * om * om / (ga * ga + 8 * om * om);

  MollowCoefficients m;
  m.delta_weight = ld;
  m.peaks[0] = {ga, 0.0, 0.5, 0.0};

  if (std::abs(om - oc) < kCriticalBand * ga) {
    m.critical = true;
    m.regime = om > oc ? MollowRegime::Supercritical : MollowRegime::Subcritical;
    const double half = 0.5 * (0.5 - ld);
    m.peaks[1] = {1.5 * ga, 0.0, half, 0.0};
    m.peaks[2] = {1.5 * ga, 0.0, half, 0.0};
    return m;
  }

  if (om > oc) {
    m.regime = MollowRegime::Supercritical;
    const double om_m = std::sqrt(4 * om * om - ga * ga / 16);
    m.mollow_splitting = om_m;
    const double s = 16 * om_m * om_m;
    const double lb = amp * (16 * om * om - 2 * ga * ga) / (s + ga * ga);
    const double kb = amp * ga / (4 * om_m) * (16 * om * om - ga * ga + s) / (s + ga * ga);
    m.peaks[1] = {1.5 * ga, om_m, lb, kb};
    m.peaks[2] = {1.5 * ga, -om_m, lb, -kb};
    return m;
  }

  m.regime = MollowRegime::Subcritical;
  const double gm = std::sqrt(ga * ga / 16 - 4 * om * om);
  m.mollow_rate = gm;
  const double s = 16 * gm * gm;
  const double lb = amp * (ga * ga - 16 * om * om + 4 * ga * gm) / (s - 4 * ga * gm);
  const double lc = amp * (ga * ga - 16 * om * om - 4 * ga * gm) / (s + 4 * ga * gm);
  m.peaks[1] = {1.5 * ga - 2 * gm, 0.0, lb, 0.0};
  m.peaks[2] = {1.5 * ga + 2 * gm, 0.0, lc, 0.0};
  return m;
}

double single_spectrum_value(double gamma, double omega, double x) {
  const double x2 = x * x;
  const double g2 = gamma * gamma;
  const double o2 = omega * omega;
  const double hw = 0.5 * gamma;
  const double first = hw / (2 * std::numbers::pi * (hw * hw + x2));
  const double num = x2 + g2 - 16 * o2;
  const double den = 4 * x2 * x2 + x2 * (5 * g2 - 32 * o2) + (g2 + 8 * o2) * (g2 + 8 * o2);
  return first - gamma / std::numbers::pi * num / den;
}

SingleSpectrum single_spectrum(const SingleParams& p, std::span<const double> grid) {
  p.validate();
  require_resonant(p, "single_spectrum");
  check_grid(grid);
  SingleSpectrum s;
  s.values.assign(grid.size(), 0.0);
  if (p.omega == 0.0) {
    s.delta_weight = 1.0;
    s.degenerate = true;
    return s;
  }
  s.delta_weight = p.gamma * p.gamma / (p.gamma * p.gamma + 8 * p.omega * p.omega);
  for (size_t k = 0; k < grid.size(); ++k) s.values[k] = single_spectrum_value(p.gamma, p.omega, grid[k]);
  return s;
}

SingleDecomposition regression_decomposition(const SingleParams& p) {
  const auto pc = steady_population_coherence(p);
  if (!(pc.n > 0)) throw UndefinedObservable("spectrum undefined for an undriven emitter");
  const Mat3 q = regression_matrix(p);
  Eigen::ComplexEigenSolver<Mat3> es(-q);
  if (es.info() != Eigen::Success) throw NumericalError("3x3 eigendecomposition failed");
  const auto& lam = es.eigenvalues();
  const Mat3& v = es.eigenvectors();

  const std::complex<double> cd = std::conj(pc.c);
  Vec3 w0(pc.n - pc.c * cd, -cd * cd, -pc.n * cd);
  const Vec3 a = v.partialPivLu().solve(w0);

  SingleDecomposition d;
  for (int k = 0; k < 3; ++k) {
    const std::complex<double> coef = v(0, k) * a(k) / pc.n;
    d.components.push_back({-lam(k).imag(), -2 * lam(k).real(), coef.real(), coef.imag()});
  }
  d.delta_weight = std::norm(pc.c) / pc.n;
  return d;
}

}  // namespace pairfluor
