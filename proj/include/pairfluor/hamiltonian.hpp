#pragma once

#include <array>
#include <string_view>

#include "pairfluor/basis.hpp"
#include "pairfluor/params.hpp"

namespace pairfluor {

struct PairHamiltonian {
  Mat4 matrix;
  std::array<std::string_view, 4> basis_labels = kBasisLabels;
};

// Rotating-frame Hamiltonian of the driven pair in the bare basis.
PairHamiltonian build_pair_hamiltonian(const SystemParams& p);

// +-f/2 +- g/2 with f = sqrt(g^2 + 4 omega^2), sorted descending. Resonant drive only.
std::array<double, 4> dressed_energies(double g, double omega);

// {0, +-(f-g), +-(f+g)} relative to the emitter frequency, sorted ascending.
std::array<double, 5> quintuplet_frequencies(double g, double omega);

// Eigenvalues of the Hamiltonian from a dense solver, sorted descending. Valid for any detuning.
std::array<double, 4> numeric_energies(const SystemParams& p);

}  // namespace pairfluor
