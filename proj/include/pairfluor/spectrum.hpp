#pragma once

#include <span>
#include <vector>

#include "pairfluor/basis.hpp"
#include "pairfluor/lineshape.hpp"
#include "pairfluor/liouville.hpp"
#include "pairfluor/params.hpp"

namespace pairfluor {

struct SpectralDecomposition {
  std::vector<SpectralComponent> components;
  double delta_weight = 0.0;  // Rayleigh weight |<s>|^2 / n, never placed on a grid
  Emitter emitter = Emitter::First;
  double population = 0.0;     // n of the observed emitter
  int reduced_dimension = 0;   // moments coupled to the readout
  int merged_clusters = 0;     // eigenvalue clusters merged into one pole

  double lorentz_sum() const;
  bool operator==(const SpectralDecomposition&) const = default;
};

// Eigenvalues closer than this (times gamma0) form one cluster.
inline constexpr double kClusterGap = 1e-8;
// Components with |L| and |K| below this are dropped.
inline constexpr double kPruneWeight = 1e-12;

// Pole decomposition of the normalized emission spectrum of one emitter.
// Throws UndefinedObservable for an unexcited emitter and DegenerateEigenError
// when a clustered eigenvalue carries a non-Lorentzian (tau e^{lambda tau}) part.
SpectralDecomposition decompose_spectrum(const SystemParams& p, Emitter e = Emitter::First);

std::vector<double> evaluate_spectrum(const SpectralDecomposition& d, std::span<const double> grid);

// Symmetric grid of omega - omega0 values wide enough for every dressed transition.
std::vector<double> default_spectrum_grid(const SystemParams& p, int points = 2001);

// Eigenvalues of -M, sorted by descending real part.
std::vector<cplx> moment_eigenvalues(const SystemParams& p);

}  // namespace pairfluor
