#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "pairfluor/errors.hpp"
#include "pairfluor/liouville.hpp"
#include "pairfluor/moments.hpp"

using namespace pairfluor;
namespace mo = pairfluor::moment;

TEST_CASE("moment operators follow the shared table") {
  const auto ref = oracle::moment_ops();
  for (int k = 0; k < kMoments; ++k) CHECK(moment_operator(k) == ref[size_t(k)]);
  CHECK(MomentSystem::ordering()[mo::nx] == "s1+s1s2+s2");
  CHECK(lowering1() == oracle::lower1());
  CHECK(lowering2() == oracle::lower2());
}

TEST_CASE("moment matrix matches the Heisenberg expansion") {
  oracle::Gen gen(41);
  for (int i = 0; i < 100; ++i) {
    const SystemParams p = gen.any_params();
    const MomentSystem sys = build_moment_system(p);
    const oracle::Moments ref = oracle::moment_system(p);
    const double scale = 1 + p.g + p.gamma + p.omega1 + p.omega2 + std::abs(p.delta);
    CHECK((sys.m - ref.m).cwiseAbs().maxCoeff() < 1e-12 * scale);
    CHECK((sys.p - ref.p).cwiseAbs().maxCoeff() < 1e-12 * scale);
  }
}

TEST_CASE("uncoupled undriven moment matrix is diagonal") {
  const MomentSystem sys = build_moment_system(SystemParams{});
  Mat15 off = sys.m;
  off.diagonal().setZero();
  CHECK(off == Mat15::Zero());
  const double want[15] = {0.5, 0.5, 0.5, 0.5, 1, 1, 1, 1, 1, 1, 1.5, 1.5, 1.5, 1.5, 2};
  for (int k = 0; k < 15; ++k) CHECK(sys.m(k, k) == cplx(want[k]));
  CHECK(sys.p == Vec15::Zero());
}

TEST_CASE("drive vector") {
  SystemParams p;
  p.omega1 = 0.3;
  p.omega2 = 0.7;
  const Vec15 v = build_moment_system(p).p;
  CHECK(v(0) == cplx(0, -0.3));
  CHECK(v(1) == cplx(0, -0.7));
  CHECK(v(2) == cplx(0, 0.3));
  CHECK(v(3) == cplx(0, 0.7));
  CHECK(v.tail(11) == Eigen::Matrix<cplx, 11, 1>::Zero());
}

TEST_CASE("dissipative cross terms couple the exchange moments to the joint excitation") {
  SystemParams p;
  p.gamma = 0.6;
  p.phi = 0.9;
  const Mat15 m = build_moment_system(p).m;
  CHECK(std::abs(m(mo::s1ds2, mo::nx) - (-2 * 0.6 * std::polar(1.0, -0.9))) < 1e-15);
  CHECK(std::abs(m(mo::s1s2d, mo::nx) - (-2 * 0.6 * std::polar(1.0, 0.9))) < 1e-15);
  for (int r = mo::n1; r <= mo::s1ds2d; ++r) CHECK(m(r, mo::nx) == cplx(0.0));
}

TEST_CASE("forward unidirectional coupling removes back-action on emitter 1") {
  oracle::Gen gen(42);
  for (int i = 0; i < 50; ++i) {
    const SystemParams p = apply_regime(gen.resonant_params(), Regime::UnidirectionalForward);
    const Mat15 m = build_moment_system(p).m;
    const int own[] = {mo::s1, mo::s1d, mo::n1};
    for (int r : own) {
      for (int c = 0; c < kMoments; ++c) {
        if (c == mo::s1 || c == mo::s1d || c == mo::n1) continue;
        CHECK(std::abs(m(r, c)) < 1e-15);
      }
    }
  }
}

TEST_CASE("steady state examples") {
  SystemParams p;
  p.g = 1.0;
  const MomentState undriven = steady_state(p);
  CHECK(undriven.u == Vec15::Zero());
  const Populations ground = populations(undriven);
  CHECK(ground.as_array() == std::array<double, 4>{1, 0, 0, 0});

  p.omega1 = 1e3;
  const Populations strong = populations(steady_state(p));
  CHECK(std::abs(strong.rho00 - 0.375) < 1e-5);
  CHECK(std::abs(strong.rho10 - 0.375) < 1e-5);
  CHECK(std::abs(strong.rho01 - 0.125) < 1e-5);
  CHECK(std::abs(strong.rho11 - 0.125) < 1e-5);

  const Populations trap = populations(steady_state(dissipative_pair(1.0, 1e-4)));
  CHECK(std::abs(trap.rho00 - 0.5) < 1e-3);
  CHECK(std::abs(trap.rho10 - 0.25) < 1e-3);
  CHECK(std::abs(trap.rho01 - 0.25) < 1e-3);
  CHECK(std::abs(trap.rho11) < 1e-3);

  const MomentState dark = steady_state(dissipative_pair(1.0, 0.0));
  CHECK(dark.non_unique);
  CHECK(populations(dark).non_unique);
}

TEST_CASE("g2 examples") {
  CHECK(g2_cross(steady_state(dissipative_pair(1.0, 1e-3))) < 1e-3);
  CHECK(std::abs(g2_cross(steady_state(coherent_pair(1.0, 1e-3))) - 6.25) < 1e-3);
  for (const SystemParams& p : {coherent_pair(1.0, 100), dissipative_pair(0.5, 100), unidirectional_pair(1.0, 100),
                                asymmetric_pair(0.5, 1.0, std::numbers::pi / 4, 100)}) {
    CHECK(std::abs(g2_cross(steady_state(p)) - 1.0) < 1e-3);
  }
  CHECK_THROWS_AS(g2_cross(steady_state(coherent_pair(1.0, 0.0))), UndefinedObservable);
  // Uncoupled: emitter 2 never excited.
  CHECK_THROWS_AS(g2_cross(steady_state(coherent_pair(0.0, 1.0))), UndefinedObservable);
}

TEST_CASE("moment state invariants and oracle equivalence") {
  oracle::Gen gen(43);
  for (int i = 0; i < 200; ++i) {
    const SystemParams p = gen.any_params();
    const MomentState st = steady_state(p);
    const Vec15& u = st.u;
    CHECK(std::abs(u(mo::s1d) - std::conj(u(mo::s1))) < 1e-12);
    CHECK(std::abs(u(mo::s2d) - std::conj(u(mo::s2))) < 1e-12);
    CHECK(std::abs(u(mo::s1ds2d) - std::conj(u(mo::s1s2))) < 1e-12);
    CHECK(std::abs(u(mo::s1s2d) - std::conj(u(mo::s1ds2))) < 1e-12);
    CHECK(std::abs(u(mo::n1s2d) - std::conj(u(mo::n1s2))) < 1e-12);
    CHECK(std::abs(u(mo::s1dn2) - std::conj(u(mo::s1n2))) < 1e-12);
    CHECK(std::abs(u(mo::n1).imag()) < 1e-12);
    CHECK(std::abs(u(mo::nx).imag()) < 1e-12);
    CHECK(st.nx >= -1e-15);
    CHECK(st.nx <= std::min(st.n1, st.n2) + 1e-15);
    CHECK(std::max(st.n1, st.n2) <= 1.0);
    CHECK(st.experimental == (p.delta != 0.0));
    CHECK_FALSE(st.ill_conditioned);

    const Populations pop = populations(st);
    CHECK(std::abs(pop.sum() - 1.0) < 1e-12);
    for (double v : pop.as_array()) {
      CHECK(v >= -1e-15);
      CHECK(v <= 1.0 + 1e-15);
    }

    const DensityMatrix dm = steady_state_dm(build_liouvillian(p));
    const auto dp = dm.populations();
    for (int k = 0; k < 4; ++k) CHECK(std::abs(dp[size_t(k)] - pop.as_array()[size_t(k)]) < 1e-9);
    const double n1 = dm.expectation(lowering1().adjoint() * lowering1()).real();
    const double n2 = dm.expectation(lowering2().adjoint() * lowering2()).real();
    const double nx = dp[3];
    CHECK(std::abs(nx / (n1 * n2) - g2_cross(st)) < 1e-9);
    CHECK(std::abs(dm.expectation(lowering1()) - st.s1) < 1e-9);
    CHECK(std::abs(dm.expectation(lowering2()) - st.s2) < 1e-9);
  }
}

TEST_CASE("singular systems are reported with their condition estimate") {
  MomentSystem sys = build_moment_system(coherent_pair(1.0, 1.0));
  sys.m.setZero();
  try {
    steady_state(sys);
    FAIL("expected SingularSystemError");
  } catch (const SingularSystemError& e) {
    CHECK(e.condition() > kConditionWarn);
  }
}
