#include "pairfluor/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pairfluor/errors.hpp"

namespace pairfluor {

PairHamiltonian build_pair_hamiltonian(const SystemParams& p) {
  p.validate();
  PairHamiltonian h;
  Mat4& m = h.matrix;
  m.setZero();
  m(1, 1) = p.delta;
  m(2, 2) = p.delta;
  m(3, 3) = 2 * p.delta;
  // exchange |10> <-> |01>
  m(1, 2) = p.g * std::polar(1.0, p.theta);
  m(2, 1) = std::conj(m(1, 2));
  // drive on emitter 1: |00><->|10>, |01><->|11>
  m(0, 1) = m(1, 0) = p.omega1;
  m(2, 3) = m(3, 2) = p.omega1;
  // drive on emitter 2: |00><->|01>, |10><->|11>
  m(0, 2) = m(2, 0) = p.omega2;
  m(1, 3) = m(3, 1) = p.omega2;
  return h;
}

std::array<double, 4> dressed_energies(double g, double omega) {
  if (g < 0 || omega < 0) throw ValidationError("g and omega must be >= 0");
  const double f = std::sqrt(g * g + 4 * omega * omega);
  std::array<double, 4> e = {(f + g) / 2, (f - g) / 2, -(f - g) / 2, -(f + g) / 2};
  std::sort(e.begin(), e.end(), std::greater<>());
  return e;
}

std::array<double, 5> quintuplet_frequencies(double g, double omega) {
  if (g < 0 || omega < 0) throw ValidationError("g and omega must be >= 0");
  const double f = std::sqrt(g * g + 4 * omega * omega);
  std::array<double, 5> w = {-(f + g), -(f - g), 0.0, f - g, f + g};
  std::sort(w.begin(), w.end());
  return w;
}

std::array<double, 4> numeric_energies(const SystemParams& p) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(build_pair_hamiltonian(p).matrix);
  const auto& ev = es.eigenvalues();
  std::array<double, 4> e = {ev(0), ev(1), ev(2), ev(3)};
  std::sort(e.begin(), e.end(), std::greater<>());
  return e;
}

}  // namespace pairfluor
