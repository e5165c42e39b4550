#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pairfluor/moments.hpp"
#include "pairfluor/params.hpp"

namespace pairfluor {

// Excited population of a lone resonantly driven emitter with decay rate gamma0.
double n0(double omega, double gamma0 = 1.0);

// Coherent coupling only (gamma = 0).
Populations coherent_populations(double g, double omega, double gamma0 = 1.0);
double coherent_g2(double g, double omega, double gamma0 = 1.0);
Populations coherent_strong_drive_populations(double g, double gamma0 = 1.0);
double coherent_g2_weak_drive(double g, double gamma0 = 1.0);

// Dissipative coupling only (g = 0). At gamma = gamma0 and omega = 0 the steady state
// is not unique; the ground state is returned with non_unique set.
Populations dissipative_populations(double gamma, double omega, double gamma0 = 1.0);
double dissipative_g2(double gamma, double omega, double gamma0 = 1.0);
Populations dissipative_strong_drive_populations(double gamma, double gamma0 = 1.0);
double dissipative_g2_weak_drive(double gamma, double gamma0 = 1.0);

// Forward unidirectional coupling (g = gamma/2, theta - phi = pi/2).
Populations unidirectional_populations(double gamma, double omega, double gamma0 = 1.0);
double unidirectional_g2(double gamma, double omega, double gamma0 = 1.0);
Populations unidirectional_strong_drive_populations(double gamma, double gamma0 = 1.0);
inline constexpr double kUnidirectionalG2WeakDrive = 0.25;

// Emitter-1 spectrum under forward unidirectional coupling; grid holds omega - omega0.
std::vector<double> unidirectional_spectrum(std::span<const double> grid, double omega,
                                            double gamma0 = 1.0);
double unidirectional_delta_weight(double omega, double gamma0 = 1.0);

// True when a closed form exists for p: coherent, dissipative or forward
// unidirectional regime, zero detuning, no drive on emitter 2.
bool has_closed_form(const SystemParams& p, double tol = kRegimeTol);

// Dispatch on the regime of p; throw UnsupportedConfiguration when has_closed_form is false.
Populations closed_form_populations(const SystemParams& p, double tol = kRegimeTol);
double closed_form_g2(const SystemParams& p, double tol = kRegimeTol);

}  // namespace pairfluor
