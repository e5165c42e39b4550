#pragma once

#include <span>
#include <vector>

namespace pairfluor {

// One pole of a spectrum: a Lorentzian of full width `gamma` centred at `omega`
// with weight `lorentz`, plus a dispersive part with weight `dispersive`.
struct SpectralComponent {
  double omega = 0.0;
  double gamma = 0.0;
  double lorentz = 0.0;
  double dispersive = 0.0;
  bool operator==(const SpectralComponent&) const = default;
};

// (1/pi) (gamma/2 L - (w - omega) K) / ((gamma/2)^2 + (w - omega)^2)
double lineshape(const SpectralComponent& c, double w);

double evaluate_components(std::span<const SpectralComponent> comps, double w);
std::vector<double> evaluate_components(std::span<const SpectralComponent> comps,
                                        std::span<const double> grid);

// Throws ValidationError unless the grid is finite and strictly increasing.
void check_grid(std::span<const double> grid);

std::vector<double> linear_grid(double lo, double hi, int count);
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace pairfluor
