#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>
#include <vector>

#include "pairfluor/lineshape.hpp"

namespace pairfluor {

struct SingleParams {
  double delta = 0.0;
  double gamma = 1.0;
  double omega = 0.0;

  void validate() const;
};

struct PopulationCoherence {
  double n = 0.0;                // <s+ s>
  std::complex<double> c = 0.0;  // <s>
};

PopulationCoherence steady_population_coherence(const SingleParams& p);

// Drive strength separating the Mollow singlet from the triplet.
double critical_drive(double gamma);

struct DressedState {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double splitting = 0.0;  // R; omega_plus - omega_minus = 2R
  double sin_b = 0.0;
  double cos_b = 0.0;
};

DressedState dressed_state(const SingleParams& p);

using Mat3 = Eigen::Matrix<std::complex<double>, 3, 3>;
using Vec3 = Eigen::Matrix<std::complex<double>, 3, 1>;

// d/dt u = P - Q u for u = (<s>, <s+>, <s+ s>).
Mat3 regression_matrix(const SingleParams& p);
Vec3 drive_vector(const SingleParams& p);

enum class MollowRegime { Subcritical, Supercritical };

struct MollowPeak {
  double gamma = 0.0;
  double omega = 0.0;
  double lorentz = 0.0;
  double dispersive = 0.0;
};

struct MollowCoefficients {
  MollowRegime regime = MollowRegime::Subcritical;
  // |omega - omega_c| < 1e-8 gamma. B and C then share the finite summed weight;
  // use single_spectrum for values at this point.
  bool critical = false;
  std::array<MollowPeak, 3> peaks{};  // A, B, C
  double delta_weight = 0.0;          // Rayleigh weight L_D

  double mollow_splitting = 0.0;  // Omega_M, supercritical only
  double mollow_rate = 0.0;       // gamma_M, subcritical only

  std::vector<SpectralComponent> components() const;
};

// Resonant drive only; throws UnsupportedConfiguration for nonzero detuning.
MollowCoefficients mollow_coefficients(const SingleParams& p);

struct SingleSpectrum {
  std::vector<double> values;
  double delta_weight = 0.0;
  bool degenerate = false;  // undriven: the whole spectrum is the delta peak
};

// Exact incoherent spectrum on a grid of omega - omega0 values, normalized with the delta weight.
SingleSpectrum single_spectrum(const SingleParams& p, std::span<const double> grid);

// The exact incoherent spectrum at one frequency offset x (resonant drive).
double single_spectrum_value(double gamma, double omega, double x);

// Decomposition from a numerical eigendecomposition of the 3x3 regression
// system. Works at any detuning.
struct SingleDecomposition {
  std::vector<SpectralComponent> components;
  double delta_weight = 0.0;
};

SingleDecomposition regression_decomposition(const SingleParams& p);

}  // namespace pairfluor
