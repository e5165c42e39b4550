#include "pairfluor/moments.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pairfluor/errors.hpp"

namespace pairfluor {

MomentSystem build_moment_system(const SystemParams& p) {
  p.validate();
  const auto [gp, gm] = generalized_couplings(p);
  const std::complex<double> i(0.0, 1.0);
  const double g0 = p.gamma0;
  const double dl = p.delta;
  const double o1 = p.omega1;
  const double o2 = p.omega2;
  const auto cgp = std::conj(gp);
  const auto cgm = std::conj(gm);

  MomentSystem s{Mat15::Zero(), Vec15::Zero(), p};
  Mat15& m = s.m;

  // u1 block: <s1>, <s2>, <s1+>, <s2+>
  m(0, 0) = g0 / 2 + i * dl;
  m(0, 1) = gp;
  m(1, 0) = cgm;
  m(1, 1) = g0 / 2 + i * dl;
  m(2, 2) = g0 / 2 - i * dl;
  m(2, 3) = cgp;
  m(3, 2) = gm;
  m(3, 3) = g0 / 2 - i * dl;

  // u1 <- u2
  m(0, 4) = -2.0 * i * o1;
  m(1, 5) = -2.0 * i * o2;
  m(2, 4) = 2.0 * i * o1;
  m(3, 5) = 2.0 * i * o2;

  // u1 <- u3
  m(0, 10) = -2.0 * gp;
  m(1, 11) = -2.0 * cgm;
  m(2, 12) = -2.0 * cgp;
  m(3, 13) = -2.0 * gm;

  // u2 <- u1
  m(4, 0) = -i * o1;
  m(4, 2) = i * o1;
  m(5, 1) = -i * o2;
  m(5, 3) = i * o2;
  m(6, 0) = i * o2;
  m(6, 1) = i * o1;
  m(7, 2) = -i * o2;
  m(7, 3) = -i * o1;
  m(8, 1) = -i * o1;
  m(8, 2) = i * o2;
  m(9, 0) = -i * o2;
  m(9, 3) = i * o1;

  // u2 block: n1, n2, s1s2, s1+s2+, s1+s2, s1s2+
  m(4, 4) = g0;
  m(4, 8) = gp;
  m(4, 9) = cgp;
  m(5, 5) = g0;
  m(5, 8) = gm;
  m(5, 9) = cgm;
  m(6, 6) = g0 + 2.0 * i * dl;
  m(7, 7) = g0 - 2.0 * i * dl;
  m(8, 4) = cgm;
  m(8, 5) = cgp;
  m(8, 8) = g0;
  m(9, 4) = gm;
  m(9, 5) = gp;
  m(9, 9) = g0;

  // u2 <- u3
  m(6, 10) = -2.0 * i * o1;
  m(6, 11) = -2.0 * i * o2;
  m(7, 12) = 2.0 * i * o1;
  m(7, 13) = 2.0 * i * o2;
  m(8, 10) = 2.0 * i * o1;
  m(8, 13) = -2.0 * i * o2;
  m(9, 11) = 2.0 * i * o2;
  m(9, 12) = -2.0 * i * o1;

  // u2 <- u4
  m(8, 14) = -2.0 * p.gamma * std::polar(1.0, -p.phi);
  m(9, 14) = -2.0 * p.gamma * std::polar(1.0, p.phi);

  // u3 <- u2
  m(10, 4) = i * o2;
  m(10, 6) = -i * o1;
  m(10, 8) = i * o1;
  m(11, 5) = i * o1;
  m(11, 6) = -i * o2;
  m(11, 9) = i * o2;
  m(12, 4) = -i * o2;
  m(12, 7) = i * o1;
  m(12, 9) = -i * o1;
  m(13, 5) = -i * o1;
  m(13, 7) = i * o2;
  m(13, 8) = -i * o2;

  // u3 block
  m(10, 10) = 1.5 * g0 + i * dl;
  m(10, 11) = cgp;
  m(11, 10) = gm;
  m(11, 11) = 1.5 * g0 + i * dl;
  m(12, 12) = 1.5 * g0 - i * dl;
  m(12, 13) = gp;
  m(13, 12) = cgm;
  m(13, 13) = 1.5 * g0 - i * dl;

  // u3 <- u4
  m(10, 14) = -2.0 * i * o2;
  m(11, 14) = -2.0 * i * o1;
  m(12, 14) = 2.0 * i * o2;
  m(13, 14) = 2.0 * i * o1;

  // u4 <- u3
  m(14, 10) = -i * o2;
  m(14, 11) = -i * o1;
  m(14, 12) = i * o2;
  m(14, 13) = i * o1;
  m(14, 14) = 2 * g0;

  s.p(0) = -i * o1;
  s.p(1) = -i * o2;
  s.p(2) = i * o1;
  s.p(3) = i * o2;
  return s;
}

namespace {

double real_part_checked(std::complex<double> v, const char* name) {
  if (std::abs(v.imag()) > kImagResidue) {
    std::ostringstream os;
    os << "imaginary residue " << v.imag() << " in " << name << " exceeds " << kImagResidue;
    throw NumericalError(os.str());
  }
  return v.real();
}

}  // namespace

MomentState steady_state(const MomentSystem& sys) {
  MomentState st;
  st.experimental = sys.params.delta != 0.0;
  Eigen::PartialPivLU<Mat15> lu(sys.m);
  const double rc = lu.rcond();
  st.condition = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  st.ill_conditioned = st.condition > kConditionWarn;

  if (sys.p.isZero(0.0)) {
    const auto sv = Eigen::JacobiSVD<Mat15>(sys.m).singularValues();
    st.non_unique = sv(kMoments - 1) <= 1e-12 * std::max(1.0, sv(0));
    return st;
  }
  if (!std::isfinite(st.condition) || rc < std::numeric_limits<double>::epsilon()) {
    throw SingularSystemError("moment matrix is singular to working precision", st.condition);
  }

  Vec15 u = lu.solve(sys.p);
  const Vec15 r = sys.p - sys.m * u;
  u += lu.solve(r);
  if (!u.allFinite()) throw SingularSystemError("moment solve produced non-finite values", st.condition);

  st.u = u;
  st.n1 = real_part_checked(u(moment::n1), "n1");
  st.n2 = real_part_checked(u(moment::n2), "n2");
  st.nx = real_part_checked(u(moment::nx), "nx");
  st.s1 = u(moment::s1);
  st.s2 = u(moment::s2);
  return st;
}

MomentState steady_state(const SystemParams& p) { return steady_state(build_moment_system(p)); }

Populations populations(const MomentState& s) {
  Populations r;
  r.rho10 = s.n1 - s.nx;
  r.rho01 = s.n2 - s.nx;
  r.rho00 = 1 + s.nx - s.n1 - s.n2;
  r.rho11 = s.nx;
  r.non_unique = s.non_unique;
  return r;
}

double g2_cross(const MomentState& s) {
  const double den = s.n1 * s.n2;
  if (!(den >= 1e-30)) throw UndefinedObservable("g2 undefined: n1*n2 below 1e-30");
  return s.nx / den;
}

}  // namespace pairfluor
