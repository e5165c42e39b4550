#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "pairfluor/closed_forms.hpp"
#include "pairfluor/errors.hpp"
#include "pairfluor/hamiltonian.hpp"
#include "pairfluor/single_emitter.hpp"
#include "pairfluor/spectrum.hpp"

using namespace pairfluor;
namespace mo = pairfluor::moment;

namespace {

double mirror_gap(const std::vector<double>& s) {
  double m = 0;
  for (size_t i = 0; i < s.size(); ++i) m = std::max(m, std::abs(s[i] - s[s.size() - 1 - i]));
  return m;
}

size_t maxima(const SystemParams& p, Emitter e = Emitter::First) {
  const auto grid = default_spectrum_grid(p, 4001);
  return oracle::local_maxima(evaluate_spectrum(decompose_spectrum(p, e), grid)).size();
}

}  // namespace

TEST_CASE("lineshape examples") {
  const SpectralComponent lor{0.0, 1.0, 1.0, 0.0};
  CHECK(lineshape(lor, 0.0) == doctest::Approx(2 / std::numbers::pi).epsilon(1e-15));
  const SpectralComponent disp{0.0, 1.0, 0.0, 1.0};
  const auto grid = linear_grid(-1000, 1000, 400001);
  double integral = 0;
  const auto v = evaluate_components(std::span(&disp, 1), grid);
  for (size_t k = 1; k < grid.size(); ++k) integral += 0.5 * (v[k] + v[k - 1]) * (grid[k] - grid[k - 1]);
  CHECK(std::abs(integral) < 1e-3);
  CHECK(mirror_gap(evaluate_components(std::span(&lor, 1), grid)) == 0.0);
  CHECK_THROWS_AS(check_grid(std::vector<double>{0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(check_grid(std::vector<double>{0.0, NAN}), ValidationError);
}

TEST_CASE("unidirectional decomposition reproduces the single emitter coefficients") {
  const SystemParams p = unidirectional_pair(1.0, 1.0);
  const auto d = decompose_spectrum(p);
  SingleParams sp;
  sp.gamma = 1.0;
  sp.omega = 1.0;
  const auto m = mollow_coefficients(sp);
  CHECK(std::abs(d.delta_weight - 1.0 / 9) < 1e-12);
  CHECK(std::abs(d.delta_weight - m.delta_weight) < 1e-12);
  REQUIRE(d.components.size() == 3);
  for (const auto& pk : m.peaks) {
    const auto it = std::find_if(d.components.begin(), d.components.end(), [&](const SpectralComponent& c) {
      return std::abs(c.omega - pk.omega) < 1e-9 && std::abs(c.gamma - pk.gamma) < 1e-9;
    });
    REQUIRE(it != d.components.end());
    CHECK(std::abs(it->lorentz - pk.lorentz) < 1e-10);
    CHECK(std::abs(it->dispersive - pk.dispersive) < 1e-10);
  }
  const auto central = std::find_if(d.components.begin(), d.components.end(),
                                    [](const SpectralComponent& c) { return std::abs(c.omega) < 1e-9; });
  REQUIRE(central != d.components.end());
  CHECK(std::abs(central->gamma - 1.0) < 1e-10);
  CHECK(std::abs(central->lorentz - 0.5) < 1e-10);
}

TEST_CASE("coherent pole frequencies near the five dressed transitions") {
  const SystemParams p = coherent_pair(1.0, 10.0);
  const auto d = decompose_spectrum(p);
  const auto q = quintuplet_frequencies(1.0, 10.0);
  for (double want : q) {
    bool found = false;
    for (const auto& c : d.components) {
      if (want == 0.0 ? std::abs(c.omega) < 1e-9 : std::abs(c.omega - want) <= 0.02 * std::abs(want)) found = true;
    }
    CHECK_MESSAGE(found, "no pole near ", want);
  }
}

TEST_CASE("decomposition invariants on random parameters") {
  oracle::Gen gen(71);
  for (int i = 0; i < 100; ++i) {
    const SystemParams p = gen.any_params();
    const Emitter e = gen.coin() ? Emitter::First : Emitter::Second;
    const auto d = decompose_spectrum(p, e);
    CHECK(std::abs(d.lorentz_sum() + d.delta_weight - 1.0) < 1e-9);
    CHECK(d.delta_weight >= 0.0);
    CHECK(d.emitter == e);
    for (const auto& c : d.components) {
      CHECK(c.gamma > 0.0);
      CHECK((std::abs(c.lorentz) >= kPruneWeight || std::abs(c.dispersive) >= kPruneWeight));
    }
    // Every off-centre pole has a mirror partner at resonance.
    for (const auto& c : d.components) {
      if (p.delta != 0.0) break;
      if (std::abs(c.omega) < 1e-9) continue;
      const bool paired = std::any_of(d.components.begin(), d.components.end(), [&](const SpectralComponent& o) {
        return std::abs(o.omega + c.omega) < 1e-8 * (1 + std::abs(c.omega)) && std::abs(o.gamma - c.gamma) < 1e-8;
      });
      CHECK(paired);
    }

    // Poles are eigenvalues of -M.
    const auto ev = moment_eigenvalues(p);
    for (const auto& c : d.components) {
      const cplx pole(-c.gamma / 2, -c.omega);
      double best = INFINITY;
      for (const auto& z : ev) best = std::min(best, std::abs(z - pole));
      CHECK(best < 1e-10 * (1 + std::abs(pole)));
    }
  }
}

TEST_CASE("moment eigenvalues are sorted and stable") {
  oracle::Gen gen(72);
  for (int i = 0; i < 50; ++i) {
    const auto ev = moment_eigenvalues(gen.any_params());
    CHECK(ev.size() == size_t(kMoments));
    for (size_t k = 0; k < ev.size(); ++k) {
      CHECK(ev[k].real() < 0.0);
      if (k) CHECK(ev[k].real() <= ev[k - 1].real());
    }
  }
}

TEST_CASE("two-time boundary seeds follow the two-level identities") {
  oracle::Gen gen(73);
  for (int i = 0; i < 20; ++i) {
    const SystemParams p = gen.any_params();
    const DensityMatrix ss = steady_state_dm(build_liouvillian(p));
    const Mat4 seed = ss.rho * lowering1().adjoint();
    const auto& ops = moment_operators();
    const double n1 = ss.expectation(lowering1().adjoint() * lowering1()).real();
    // <s+ s>, <s+ s+> = 0, <s+ s+ s> = 0
    CHECK(std::abs((ops[mo::s1] * seed).trace() - n1) < 1e-14);
    CHECK(std::abs((ops[mo::s1d] * seed).trace()) < 1e-15);
    CHECK(std::abs((ops[mo::n1] * seed).trace()) < 1e-15);
    // s1 s2 seeded: <s1+ s1 s2>
    CHECK(std::abs((ops[mo::s1s2] * seed).trace() - ss.expectation(moment_operator(mo::n1s2))) < 1e-14);
  }
}

TEST_CASE("symmetric spectra in the symmetric regimes") {
  for (const SystemParams& p : {coherent_pair(1.0, 2.0), coherent_pair(0.5, 0.3), dissipative_pair(1.0, 1.0),
                                dissipative_pair(0.5, 0.25), unidirectional_pair(1.0, 2.0), unidirectional_pair(0.7, 0.4)}) {
    const auto grid = default_spectrum_grid(p, 2001);
    const auto s = evaluate_spectrum(decompose_spectrum(p), grid);
    CHECK(mirror_gap(s) < 1e-8 * oracle::max_of(s));
  }
}

TEST_CASE("asymmetric coupling skews the spectrum at zero relative phase") {
  const SystemParams p = asymmetric_pair(0.5, 1.0, 0.0, 1.0);
  const auto grid = default_spectrum_grid(p, 2001);
  const auto s = evaluate_spectrum(decompose_spectrum(p), grid);
  CHECK(mirror_gap(s) > 1e-3 * oracle::max_of(s));
}

TEST_CASE("asymmetric coupling skews the spectrum at a quarter-pi relative phase") {
  const SystemParams p = asymmetric_pair(0.5, 1.0, std::numbers::pi / 4, 1.0);
  const auto grid = default_spectrum_grid(p, 2001);
  const auto s = evaluate_spectrum(decompose_spectrum(p), grid);
  CHECK(mirror_gap(s) > 1e-3 * oracle::max_of(s));
}

TEST_CASE("peak-count fingerprints") {
  CHECK(maxima(unidirectional_pair(1.0, 2.0)) == 3);
  CHECK(maxima(coherent_pair(1.0, 5.0)) == 5);
  for (double w : {0.25, 0.5, 1.0, 2.0, 5.0}) CHECK(maxima(dissipative_pair(1.0, w)) == 3);
  CHECK(maxima(dissipative_pair(0.5, 0.25)) == 1);
}

TEST_CASE("engine matches the time-domain oracle") {
  for (const SystemParams& p : {coherent_pair(1.0, 2.0), dissipative_pair(0.5, 1.0), unidirectional_pair(1.0, 1.0),
                                asymmetric_pair(0.3, 0.6, 1.1, 0.8)}) {
    for (Emitter e : {Emitter::First, Emitter::Second}) {
      const auto grid = linear_grid(-10, 10, 801);
      const auto d = decompose_spectrum(p, e);
      const auto o = spectrum_fft(build_liouvillian(p), grid, e);
      CHECK(oracle::max_abs_diff(evaluate_spectrum(d, grid), o.values) < 1e-3);
      CHECK(std::abs(d.delta_weight - o.delta_weight) < 1e-10);
    }
  }
}

TEST_CASE("detuned and doubly driven pairs") {
  SystemParams p = asymmetric_pair(0.4, 0.3, 0.5, 1.0);
  p.delta = 0.8;
  p.omega2 = 0.6;
  const auto grid = linear_grid(-10, 10, 801);
  const auto d = decompose_spectrum(p);
  const auto o = spectrum_fft(build_liouvillian(p), grid);
  CHECK(oracle::max_abs_diff(evaluate_spectrum(d, grid), o.values) < 1e-3);
}

TEST_CASE("undriven and unexcited emitters are undefined") {
  CHECK_THROWS_AS(decompose_spectrum(coherent_pair(1.0, 0.0)), UndefinedObservable);
  CHECK_THROWS_AS(decompose_spectrum(coherent_pair(0.0, 1.0), Emitter::Second), UndefinedObservable);
  CHECK_NOTHROW(decompose_spectrum(coherent_pair(0.0, 1.0), Emitter::First));
}

TEST_CASE("defective regression matrix at the critical unidirectional drive") {
  const SystemParams p = unidirectional_pair(1.0, 1.0 / 8);
  CHECK_THROWS_AS(decompose_spectrum(p), DegenerateEigenError);
  const auto grid = linear_grid(-4, 4, 801);
  const auto o = spectrum_fft(build_liouvillian(p), grid);
  const auto ref = unidirectional_spectrum(grid, 1.0 / 8);
  CHECK(oracle::max_abs_diff(o.values, ref) < 1e-3);
}

TEST_CASE("default spectrum grid") {
  const SystemParams p = coherent_pair(1.0, 5.0);
  const auto grid = default_spectrum_grid(p);
  CHECK(grid.size() == 2001);
  CHECK(grid.front() == -grid.back());
  const double f = std::sqrt(1.0 + 100.0);
  CHECK(grid.back() >= 1.5 * (f + 1.0 + 3.0) - 1e-12);
  CHECK(grid.back() > f + 1.0);
  for (size_t k = 0; k < grid.size(); ++k) CHECK(grid[k] == -grid[grid.size() - 1 - k]);
}
