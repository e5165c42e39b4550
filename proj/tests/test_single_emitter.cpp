#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pairfluor/errors.hpp"
#include "pairfluor/lineshape.hpp"
#include "pairfluor/single_emitter.hpp"

using namespace pairfluor;

namespace {

SingleParams sp(double gamma, double omega, double delta = 0.0) {
  SingleParams p;
  p.gamma = gamma;
  p.omega = omega;
  p.delta = delta;
  return p;
}

std::vector<cplx> sorted_by_imag(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  return v;
}

}  // namespace

TEST_CASE("steady population and coherence examples") {
  auto pc = steady_population_coherence(sp(1.0, 1e3));
  CHECK(std::abs(pc.n - 0.5) < 1e-6);
  pc = steady_population_coherence(sp(1.0, 0.0));
  CHECK(pc.n == 0.0);
  CHECK(pc.c == cplx(0.0));
  pc = steady_population_coherence(sp(1.0, 0.5));
  CHECK(std::abs(pc.n - 1.0 / 3) < 1e-15);
  CHECK(std::abs(pc.c - cplx(0, -1.0 / 3)) < 1e-15);
  CHECK_THROWS_AS(steady_population_coherence(sp(0.0, 1.0)), ValidationError);
  CHECK_THROWS_AS(steady_population_coherence(sp(1.0, -1.0)), ValidationError);
}

TEST_CASE("critical drive examples") {
  CHECK(critical_drive(1.0) == 0.125);
  CHECK(critical_drive(8.0) == 1.0);
  CHECK(critical_drive(2.0) == 0.25);
}

TEST_CASE("dressed state invariants") {
  oracle::Gen gen(31);
  for (int i = 0; i < 100; ++i) {
    const auto d = dressed_state(sp(gen.log_uniform(0.1, 10), gen.log_uniform(1e-2, 1e2), gen.uniform(-5, 5)));
    CHECK(std::abs(d.sin_b * d.sin_b + d.cos_b * d.cos_b - 1.0) < 1e-14);
    CHECK(std::abs(d.omega_plus - d.omega_minus - 2 * d.splitting) < 1e-12 * (1 + d.splitting));
  }
}

TEST_CASE("Mollow coefficients at omega = gamma") {
  const auto m = mollow_coefficients(sp(1.0, 1.0));
  CHECK(m.regime == MollowRegime::Supercritical);
  CHECK_FALSE(m.critical);
  CHECK(std::abs(m.mollow_splitting - std::sqrt(63.0) / 4) < 1e-14);
  CHECK(m.mollow_splitting == doctest::Approx(1.9843).epsilon(1e-4));
  CHECK(std::abs(m.delta_weight - 1.0 / 9) < 1e-15);
  CHECK(m.peaks[0].gamma == 1.0);
  CHECK(m.peaks[0].omega == 0.0);
  CHECK(m.peaks[0].lorentz == 0.5);
  CHECK(m.peaks[1].gamma == 1.5);
  CHECK(m.peaks[2].gamma == 1.5);
  CHECK(std::abs(m.peaks[1].omega + m.peaks[2].omega) < 1e-15);
  CHECK(std::abs(std::abs(m.peaks[1].omega) - m.mollow_splitting) < 1e-15);
}

TEST_CASE("Mollow coefficients at the critical drive") {
  const auto m = mollow_coefficients(sp(1.0, 0.125));
  CHECK(m.critical);
  CHECK(m.regime == MollowRegime::Subcritical);
  CHECK(m.mollow_rate == 0.0);
  double sum = m.delta_weight;
  for (const auto& pk : m.peaks) {
    CHECK(std::isfinite(pk.lorentz));
    CHECK(pk.gamma > 0);
    sum += pk.lorentz;
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
  const auto w = mollow_coefficients(sp(1.0, 0.5));
  CHECK(std::abs(w.peaks[0].lorentz + w.peaks[1].lorentz + w.peaks[2].lorentz + w.delta_weight - 1.0) < 1e-12);
}

TEST_CASE("Mollow coefficient invariants on random drives") {
  oracle::Gen gen(32);
  for (int i = 0; i < 100; ++i) {
    const double gamma = gen.log_uniform(0.1, 10);
    const double omega = gen.coin() ? gen.uniform(1e-3, 0.125) * gamma : gen.log_uniform(1e-2, 1e2) * gamma;
    const auto m = mollow_coefficients(sp(gamma, omega));
    double sum = m.delta_weight;
    for (const auto& pk : m.peaks) {
      CHECK(pk.gamma > 0);
      sum += pk.lorentz;
      if (m.regime == MollowRegime::Subcritical) {
        CHECK(pk.dispersive == 0.0);
        CHECK(pk.omega == 0.0);
      }
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(std::abs(m.delta_weight - gamma * gamma / (gamma * gamma + 8 * omega * omega)) < 1e-15);
  }
}

TEST_CASE("coefficient reconstruction matches the closed-form spectrum") {
  oracle::Gen gen(33);
  for (int i = 0; i < 60; ++i) {
    const double gamma = gen.log_uniform(0.1, 10);
    const double omega = (i % 2 ? gen.uniform(0.01, 0.12) : gen.log_uniform(0.13, 50)) * gamma;
    const auto m = mollow_coefficients(sp(gamma, omega));
    const auto comps = m.components();
    const auto grid = linear_grid(-6 * (omega + gamma), 6 * (omega + gamma), 301);
    const auto rec = evaluate_components(comps, grid);
    const auto closed = single_spectrum(sp(gamma, omega), grid);
    std::vector<double> pointwise(grid.size());
    for (size_t k = 0; k < grid.size(); ++k) pointwise[k] = single_spectrum_value(gamma, omega, grid[k]);
    const double scale = oracle::max_of(closed.values);
    CHECK(oracle::max_abs_diff(rec, closed.values) <= 1e-10 * scale);
    CHECK(oracle::max_abs_diff(pointwise, closed.values) <= 1e-14 * scale);
    CHECK(closed.delta_weight == m.delta_weight);
  }
}

TEST_CASE("regression eigenvalues") {
  oracle::Gen gen(34);
  for (int i = 0; i < 60; ++i) {
    const double gamma = gen.log_uniform(0.1, 10);
    const double omega = (i % 2 ? gen.uniform(0.01, 0.12) : gen.log_uniform(0.13, 50)) * gamma;
    const Eigen::ComplexEigenSolver<Mat3> es((-regression_matrix(sp(gamma, omega))).eval());
    std::vector<cplx> got(es.eigenvalues().data(), es.eigenvalues().data() + 3);
    const auto m = mollow_coefficients(sp(gamma, omega));
    std::vector<cplx> want;
    if (m.regime == MollowRegime::Supercritical) {
      const double om = std::sqrt(4 * omega * omega - gamma * gamma / 16);
      want = {-gamma / 2, cplx(-0.75 * gamma, om), cplx(-0.75 * gamma, -om)};
    } else {
      const double gm = std::sqrt(gamma * gamma / 16 - 4 * omega * omega);
      want = {-gamma / 2, -0.75 * gamma + gm, -0.75 * gamma - gm};
    }
    got = sorted_by_imag(got);
    want = sorted_by_imag(want);
    if (m.regime == MollowRegime::Subcritical) {
      std::sort(got.begin(), got.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
      std::sort(want.begin(), want.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    }
    for (int k = 0; k < 3; ++k) CHECK(std::abs(got[size_t(k)] - want[size_t(k)]) < 1e-12 * (gamma + omega));
  }
}

TEST_CASE("steady state equals the null-space solution of the regression system") {
  oracle::Gen gen(35);
  for (int i = 0; i < 100; ++i) {
    const SingleParams p = sp(gen.log_uniform(0.1, 10), gen.log_uniform(1e-2, 1e2), gen.uniform(-5, 5));
    const Vec3 u = regression_matrix(p).partialPivLu().solve(drive_vector(p));
    const auto pc = steady_population_coherence(p);
    CHECK(std::abs(u(0) - pc.c) < 1e-12);
    CHECK(std::abs(u(1) - std::conj(pc.c)) < 1e-12);
    CHECK(std::abs(u(2) - pc.n) < 1e-12);
    CHECK(pc.n >= 0.0);
    CHECK(pc.n < 0.5);
  }
}

TEST_CASE("spectrum continuity across the critical drive") {
  const auto grid = linear_grid(-3, 3, 241);
  for (double gamma : {0.5, 1.0, 4.0}) {
    const double wc = critical_drive(gamma);
    const auto lo = single_spectrum(sp(gamma, wc * (1 - 1e-6)), grid);
    const auto hi = single_spectrum(sp(gamma, wc * (1 + 1e-6)), grid);
    const auto at = single_spectrum(sp(gamma, wc), grid);
    for (size_t k = 0; k < grid.size(); ++k) {
      CHECK(std::abs(lo.values[k] - hi.values[k]) < 1e-4 * std::abs(hi.values[k]));
      CHECK(std::abs(at.values[k] - hi.values[k]) < 1e-4 * std::abs(hi.values[k]));
    }
    // Critical-point weights stay finite and normalized.
    const auto m = mollow_coefficients(sp(gamma, wc));
    CHECK(m.critical);
    double sum = m.delta_weight;
    for (const auto& pk : m.peaks) {
      CHECK(std::isfinite(pk.lorentz));
      sum += pk.lorentz;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("single spectrum examples") {
  const std::vector<double> zero = {0.0};
  const auto s = single_spectrum(sp(1.0, 1.0), zero);
  const auto dec = regression_decomposition(sp(1.0, 1.0));
  CHECK(std::abs(s.values[0] - evaluate_components(dec.components, 0.0)) < 1e-12);
  CHECK(std::abs(dec.delta_weight - 1.0 / 9) < 1e-12);

  const auto grid = linear_grid(-10, 10, 401);
  const auto sym = single_spectrum(sp(1.0, 2.0), grid);
  for (size_t k = 0; k < grid.size(); ++k) CHECK(sym.values[k] == doctest::Approx(sym.values[grid.size() - 1 - k]).epsilon(1e-14));

  const std::vector<double> wing = {0.0, 100.0};
  const auto w = single_spectrum(sp(1.0, 0.125), wing);
  CHECK(w.values[1] < 1e-4 * w.values[0]);

  const auto undriven = single_spectrum(sp(1.0, 0.0), grid);
  CHECK(undriven.degenerate);
  CHECK(undriven.delta_weight == 1.0);
  CHECK(std::all_of(undriven.values.begin(), undriven.values.end(), [](double v) { return v == 0.0; }));

  const std::vector<double> bad = {0.0, 0.0};
  CHECK_THROWS_AS(single_spectrum(sp(1.0, 1.0), bad), ValidationError);
}

TEST_CASE("detuned single emitter") {
  CHECK_THROWS_AS(mollow_coefficients(sp(1.0, 1.0, 0.5)), UnsupportedConfiguration);
  CHECK_THROWS_AS(single_spectrum(sp(1.0, 1.0, 0.5), std::vector<double>{0.0}), UnsupportedConfiguration);
  const auto d = regression_decomposition(sp(1.0, 1.0, 0.5));
  double sum = d.delta_weight;
  for (const auto& c : d.components) sum += c.lorentz;
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("regression decomposition agrees with the printed coefficients") {
  for (double omega : {0.05, 0.3, 1.0, 5.0}) {
    const auto m = mollow_coefficients(sp(1.0, omega));
    const auto d = regression_decomposition(sp(1.0, omega));
    const auto grid = linear_grid(-15, 15, 301);
    const auto a = evaluate_components(m.components(), grid);
    const auto b = evaluate_components(d.components, grid);
    CHECK(oracle::max_abs_diff(a, b) < 1e-12);
    CHECK(std::abs(m.delta_weight - d.delta_weight) < 1e-14);
  }
}
