#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace pairfluor {

// Parameters of the driven pair. Frequencies are in units of gamma0.
struct SystemParams {
  double delta = 0.0;   // detuning of both emitters from the drive
  double g = 0.0;       // coherent coupling magnitude
  double theta = 0.0;   // coherent coupling phase
  double gamma = 0.0;   // dissipative coupling magnitude
  double phi = 0.0;     // dissipative coupling phase
  double gamma0 = 1.0;  // individual decay rate
  double omega1 = 0.0;  // drive on emitter 1
  double omega2 = 0.0;  // drive on emitter 2

  // Copy with phases wrapped to [0, 2pi).
  SystemParams normalized() const;
  // Throws ValidationError naming the first violated bound.
  void validate() const;
  bool operator==(const SystemParams&) const = default;
};


enum class Regime { Coherent, Dissipative, UnidirectionalForward, UnidirectionalBackward, Asymmetric };

std::string_view regime_name(Regime r);
Regime regime_from_name(std::string_view name);

inline constexpr double kRegimeTol = 1e-9;

// Wrap an angle into (-pi, pi].
double wrap_phase(double a);

Regime classify_regime(const SystemParams& p, double tol = kRegimeTol);

// (g+, g-) = (+i g e^{i theta} + gamma/2 e^{i phi}, -i g e^{i theta} + gamma/2 e^{i phi})
std::pair<std::complex<double>, std::complex<double>> generalized_couplings(const SystemParams& p);

// Presets for each coupling regime. Omega is the drive on emitter 1.
SystemParams coherent_pair(double g, double omega, double gamma0 = 1.0);
SystemParams dissipative_pair(double gamma, double omega, double gamma0 = 1.0);
SystemParams unidirectional_pair(double gamma, double omega, double gamma0 = 1.0, bool forward = true);
SystemParams asymmetric_pair(double g, double gamma, double relative_phase, double omega,
                             double gamma0 = 1.0);
// Impose the defining constraint of a regime on p: gamma=0, g=0, or
// g=gamma/2 with theta=phi+pi/2 (forward) or phi+3pi/2 (backward).
// Asymmetric leaves p unchanged but must classify as Asymmetric.
SystemParams apply_regime(SystemParams p, Regime r);

// Flat key=value config. Keys: delta g theta gamma phi gamma0 omega1 omega2.
// Blank lines and lines starting with '#' are ignored.
SystemParams parse_config(std::string_view text, SystemParams base = {});
SystemParams load_config(const std::string& path, SystemParams base = {});
std::string format_config(const SystemParams& p);

// Set one field by its config key; throws ValidationError for unknown keys.
void set_param(SystemParams& p, std::string_view key, double value);
double get_param(const SystemParams& p, std::string_view key);
bool is_param_key(std::string_view key);

std::map<std::string, double> to_map(const SystemParams& p);

}  // namespace pairfluor
