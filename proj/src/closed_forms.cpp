#include "pairfluor/closed_forms.hpp"

#include <cmath>
#include <string>

#include "pairfluor/errors.hpp"
#include "pairfluor/lineshape.hpp"
#include "pairfluor/single_emitter.hpp"

namespace pairfluor {

namespace {

void check_inputs(double coupling, double omega, double gamma0) {
  if (!(gamma0 > 0)) throw ValidationError("gamma0 must be > 0");
  if (coupling < 0) throw ValidationError("coupling must be >= 0");
  if (omega < 0) throw ValidationError("omega must be >= 0");
}

void check_gamma(double gamma, double gamma0) {
  if (gamma > gamma0) throw ValidationError("gamma must be <= gamma0");
}

}  // namespace

double n0(double omega, double gamma0) {
  check_inputs(0.0, omega, gamma0);
  return omega * omega / (2 * omega * omega + 0.25 * gamma0 * gamma0);
}

Populations coherent_populations(double g, double omega, double gamma0) {
  check_inputs(g, omega, gamma0);
  const double g2 = g * g, g4 = g2 * g2;
  const double y = gamma0, y2 = y * y, y3 = y2 * y, y4 = y2 * y2;
  const double o2 = omega * omega, o4 = o2 * o2, o6 = o4 * o2;
  const double a = 4 * g2 * y + y3;
  const double den = (4 * g2 + 9 * y2) * a * a + 4 * y2 * o2 * (16 * g4 + 48 * g2 * y2 + 27 * y4) +
                     64 * o4 * (4 * g4 + 11 * g2 * y2 + 5 * y4) + 256 * o6 * (g2 + y2);
  Populations r;
  r.rho00 = ((4 * g2 + 9 * y2) * (8 * y4 * o2 + a * a) + 16 * o4 * (4 * g4 + 13 * g2 * y2 + 11 * y4) +
             64 * o6 * (g2 + 2 * y2)) /
            den;
  r.rho10 = ((4 * g2 + 9 * y2) * (4 * y4 * o2 + 16 * o4 * (g2 + y2)) + 64 * o6 * (g2 + 2 * y2)) / den;
  r.rho01 = 16 * g2 * o2 * (9 * y4 + 9 * y2 * o2 + 4 * o4 + 4 * g2 * (y2 + o2)) / den;
  r.rho11 = 16 * g2 * o4 * (4 * g2 + 9 * y2 + 4 * o2) / den;
  return r;
}

double coherent_g2(double g, double omega, double gamma0) {
  check_inputs(g, omega, gamma0);
  const double g2 = g * g, g4 = g2 * g2;
  const double y2 = gamma0 * gamma0, y4 = y2 * y2, y6 = y4 * y2;
  const double o2 = omega * omega, o4 = o2 * o2;
  const double t1 = g2 * (4 * g2 + 3 * y2) * (4 * g2 + 9 * y2 + 4 * o2) /
                    (4 * g2 * y4 + 9 * y6 + 4 * o2 * (8 * g4 + 22 * g2 * y2 + 9 * y4) + 32 * o4 * (g2 + y2));
  const double t2 = (16 * g4 + 27 * y4 - 4 * y2 * o2 + 16 * g2 * (3 * y2 + o2)) /
                    (4 * (9 * y4 + 18 * y2 * o2 + 8 * o4 + 4 * g2 * (y2 + 2 * o2)));
  return 1 + t1 - t2;
}

Populations coherent_strong_drive_populations(double g, double gamma0) {
  check_inputs(g, 0.0, gamma0);
  const double g2 = g * g, y2 = gamma0 * gamma0;
  Populations r;
  r.rho00 = r.rho10 = 0.25 * (g2 + 2 * y2) / (g2 + y2);
  r.rho01 = r.rho11 = 0.25 * g2 / (g2 + y2);
  return r;
}

double coherent_g2_weak_drive(double g, double gamma0) {
  check_inputs(g, 0.0, gamma0);
  const double a = 4 * g * g + gamma0 * gamma0;
  return a * a / (4 * std::pow(gamma0, 4));
}

Populations dissipative_populations(double gamma, double omega, double gamma0) {
  check_inputs(gamma, omega, gamma0);
  check_gamma(gamma, gamma0);
  const double c2 = gamma * gamma, c4 = c2 * c2;
  const double y = gamma0, y2 = y * y, y3 = y2 * y, y4 = y2 * y2;
  const double o2 = omega * omega, o4 = o2 * o2, o6 = o4 * o2;
  const double a = y3 - y * c2;
  const double den = (9 * y2 - c2) * a * a + 4 * y2 * o2 * (3 * c4 + 2 * c2 * y2 + 27 * y4) -
                     32 * o4 * (c2 - 10 * y2) * (c2 + y2) + 64 * o6 * (c2 + 4 * y2);
  Populations r;
  if (omega == 0.0 && den == 0.0) {
    r.non_unique = true;
    return r;
  }
  r.rho00 = ((9 * y2 - c2) * a * a + 8 * y2 * o2 * (2 * c4 - 3 * c2 * y2 + 9 * y4) +
             4 * o4 * (44 * y4 + 29 * c2 * y2 - 5 * c4) + 16 * o6 * (8 * y2 + c2)) /
            den;
  r.rho10 = (4 * y4 * o2 * (9 * y2 - c2) + 4 * o4 * (36 * y4 + 25 * c2 * y2 - 3 * c4) +
             16 * o6 * (c2 + 8 * y2)) /
            den;
  r.rho01 = 4 * c2 * o2 * (9 * y4 + 9 * y2 * o2 + 4 * o4 + c2 * (o2 - y2)) / den;
  r.rho11 = 4 * c2 * o4 * (4 * o2 + 9 * y2 - c2) / den;
  return r;
}

double dissipative_g2(double gamma, double omega, double gamma0) {
  check_inputs(gamma, omega, gamma0);
  check_gamma(gamma, gamma0);
  const double c2 = gamma * gamma, c4 = c2 * c2;
  const double y2 = gamma0 * gamma0, y4 = y2 * y2;
  const double o2 = omega * omega, o4 = o2 * o2;
  const double t1 = 0.25 * c2 * (c4 - 11 * c2 * y2 + 18 * y4 - 2 * o2 * (c2 + 6 * y2)) /
                    (y4 * (c2 - 9 * y2) + 2 * o2 * (2 * c4 - 17 * c2 * y2 - 18 * y4) - 8 * o4 * (c2 + 4 * y2));
  const double t2 = 0.25 * (4 * y2 * o2 - 27 * y4 + c2 * (3 * y2 - 10 * o2)) /
                    (9 * y4 - c2 * y2 + 18 * y2 * o2 + 8 * o4);
  return 1 + t1 + t2;
}

Populations dissipative_strong_drive_populations(double gamma, double gamma0) {
  check_inputs(gamma, 0.0, gamma0);
  check_gamma(gamma, gamma0);
  const double h = 0.25 * gamma * gamma;
  const double ratio = h / (h + gamma0 * gamma0);
  Populations r;
  r.rho00 = r.rho10 = 0.5 * (1 - 0.5 * ratio);
  r.rho01 = r.rho11 = 0.25 * ratio;
  return r;
}

double dissipative_g2_weak_drive(double gamma, double gamma0) {
  check_inputs(gamma, 0.0, gamma0);
  check_gamma(gamma, gamma0);
  const double a = gamma * gamma - gamma0 * gamma0;
  return a * a / (4 * std::pow(gamma0, 4));
}

Populations unidirectional_populations(double gamma, double omega, double gamma0) {
  check_inputs(gamma, omega, gamma0);
  check_gamma(gamma, gamma0);
  const double c2 = gamma * gamma, c4 = c2 * c2;
  const double y2 = gamma0 * gamma0, y4 = y2 * y2, y6 = y4 * y2, y8 = y4 * y4;
  const double o2 = omega * omega, o4 = o2 * o2, o6 = o4 * o2;
  const double d = 9 * y6 + 4 * y2 * o2 * (28 * c2 + 9 * y2) + 32 * o4 * (c2 + y2);
  const double s = y2 + 8 * o2;
  Populations r;
  r.rho00 = (9 * y8 + 8 * y4 * o2 * (9 * y2 - 4 * c2) + 16 * o4 * (11 * y4 + 21 * c2 * y2 - 4 * c4) +
             64 * o6 * (2 * y2 + c2)) /
            d / s;
  r.rho10 = 4 * o2 / s * (1 - 4 * c2 * o2 * (9 * y2 + 4 * o2) / d);
  r.rho01 = 16 * c2 * o2 / s * (9 * y4 + 9 * y2 * o2 + 4 * o2 * (c2 + o2)) / d;
  r.rho11 = 16 * c2 * o4 / s * (9 * y2 + 4 * o2) / d;
  return r;
}

double unidirectional_g2(double gamma, double omega, double gamma0) {
  check_inputs(gamma, omega, gamma0);
  check_gamma(gamma, gamma0);
  const double c2 = gamma * gamma;
  const double y2 = gamma0 * gamma0;
  const double o2 = omega * omega;
  return (y2 + 8 * o2) * (9 * y2 + 4 * o2) / (36 * y2 * y2 + 8 * o2 * (2 * c2 + 9 * y2) + 32 * o2 * o2);
}

Populations unidirectional_strong_drive_populations(double gamma, double gamma0) {
  check_inputs(gamma, 0.0, gamma0);
  check_gamma(gamma, gamma0);
  const double c2 = gamma * gamma, y2 = gamma0 * gamma0;
  Populations r;
  r.rho00 = r.rho10 = 0.25 * (c2 + 2 * y2) / (c2 + y2);
  r.rho01 = r.rho11 = 0.25 * c2 / (c2 + y2);
  return r;
}

std::vector<double> unidirectional_spectrum(std::span<const double> grid, double omega, double gamma0) {
  check_inputs(0.0, omega, gamma0);
  check_grid(grid);
  std::vector<double> out(grid.size(), 0.0);
  if (omega == 0.0) return out;
  for (size_t k = 0; k < grid.size(); ++k) out[k] = single_spectrum_value(gamma0, omega, grid[k]);
  return out;
}

double unidirectional_delta_weight(double omega, double gamma0) {
  check_inputs(0.0, omega, gamma0);
  return gamma0 * gamma0 / (gamma0 * gamma0 + 8 * omega * omega);
}

bool has_closed_form(const SystemParams& p, double tol) {
  p.validate();
  if (p.delta != 0.0 || p.omega2 != 0.0) return false;
  const Regime r = classify_regime(p, tol);
  return r == Regime::Coherent || r == Regime::Dissipative || r == Regime::UnidirectionalForward;
}

namespace {

Regime require_closed_form(const SystemParams& p, double tol) {
  p.validate();
  if (p.delta != 0.0) throw UnsupportedConfiguration("closed forms require zero detuning");
  if (p.omega2 != 0.0) throw UnsupportedConfiguration("closed forms require omega2 = 0");
  const Regime r = classify_regime(p, tol);
  if (r != Regime::Coherent && r != Regime::Dissipative && r != Regime::UnidirectionalForward) {
    throw UnsupportedConfiguration("no closed form for the " + std::string(regime_name(r)) + " regime");
  }
  return r;
}

}  // namespace

Populations closed_form_populations(const SystemParams& p, double tol) {
  switch (require_closed_form(p, tol)) {
    case Regime::Coherent: return coherent_populations(p.g, p.omega1, p.gamma0);
    case Regime::Dissipative: return dissipative_populations(p.gamma, p.omega1, p.gamma0);
    default: return unidirectional_populations(p.gamma, p.omega1, p.gamma0);
  }
}

double closed_form_g2(const SystemParams& p, double tol) {
  const Regime r = require_closed_form(p, tol);
  if (p.omega1 == 0.0) throw UndefinedObservable("g2 undefined without drive");
  switch (r) {
    case Regime::Coherent: return coherent_g2(p.g, p.omega1, p.gamma0);
    case Regime::Dissipative: return dissipative_g2(p.gamma, p.omega1, p.gamma0);
    default: return unidirectional_g2(p.gamma, p.omega1, p.gamma0);
  }
}

}  // namespace pairfluor
