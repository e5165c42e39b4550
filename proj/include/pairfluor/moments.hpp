#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "pairfluor/basis.hpp"
#include "pairfluor/params.hpp"

namespace pairfluor {

// d/dt u = P - M u for the fifteen one-time moments (see basis.hpp for the order).
struct MomentSystem {
  Mat15 m;
  Vec15 p;
  SystemParams params;
  static const std::array<std::string_view, kMoments>& ordering() { return kMomentLabels; }
};

MomentSystem build_moment_system(const SystemParams& p);

struct MomentState {
  Vec15 u = Vec15::Zero();
  double n1 = 0.0;
  double n2 = 0.0;
  double nx = 0.0;
  std::complex<double> s1 = 0.0;
  std::complex<double> s2 = 0.0;

  double condition = 1.0;       // estimated condition number of M
  bool ill_conditioned = false;  // condition above kConditionWarn
  bool non_unique = false;       // undriven with a singular M: the ground state is one of several
  bool experimental = false;     // nonzero detuning
};

struct Populations {
  double rho00 = 1.0;
  double rho10 = 0.0;
  double rho01 = 0.0;
  double rho11 = 0.0;
  bool non_unique = false;

  double sum() const { return rho00 + rho10 + rho01 + rho11; }
  std::array<double, 4> as_array() const { return {rho00, rho10, rho01, rho11}; }
  bool operator==(const Populations&) const = default;
};

inline constexpr double kConditionWarn = 1e12;
inline constexpr double kImagResidue = 1e-12;

// Dense LU solve of M u = P with one refinement step.
MomentState steady_state(const MomentSystem& sys);
MomentState steady_state(const SystemParams& p);

Populations populations(const MomentState& s);

// <s1+ s1 s2+ s2> / (<s1+ s1> <s2+ s2>); throws UndefinedObservable when n1 n2 < 1e-30.
double g2_cross(const MomentState& s);

}  // namespace pairfluor
