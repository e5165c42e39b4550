#include "pairfluor/lineshape.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pairfluor/errors.hpp"

namespace pairfluor {

double lineshape(const SpectralComponent& c, double w) {
  const double hw = 0.5 * c.gamma;
  const double x = w - c.omega;
  return (hw * c.lorentz - x * c.dispersive) / (std::numbers::pi * (hw * hw + x * x));
}

double evaluate_components(std::span<const SpectralComponent> comps, double w) {
  double s = 0.0;
  for (const auto& c : comps) s += lineshape(c, w);
  return s;
}

std::vector<double> evaluate_components(std::span<const SpectralComponent> comps,
                                        std::span<const double> grid) {
  check_grid(grid);
  std::vector<double> out(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) out[i] = evaluate_components(comps, grid[i]);
  return out;
}

void check_grid(std::span<const double> grid) {
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ValidationError("grid value " + std::to_string(i) + " is not finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ValidationError("grid must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 2) throw ValidationError("grid count must be >= 2");
  if (!(hi > lo)) throw ValidationError("grid max must exceed min");
  std::vector<double> g(static_cast<size_t>(count));
  const double step = (hi - lo) / (count - 1);
  // Filled from both ends so a symmetric window gives exactly mirrored points.
  for (int i = 0; i < count; ++i) {
    g[static_cast<size_t>(i)] = 2 * i < count - 1 ? lo + step * i : hi - step * (count - 1 - i);
  }
  return g;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0)) throw ValidationError("log grid requires min > 0");
  auto g = linear_grid(std::log(lo), std::log(hi), count);
  for (auto& v : g) v = std::exp(v);
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace pairfluor
