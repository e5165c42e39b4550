#include "pairfluor/params.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pairfluor/errors.hpp"

namespace pairfluor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_positive(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
  const std::string s(trim(text));
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("bad value for '" + std::string(key) + "': '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("bad value for '" + std::string(key) + "': '" + s + "'");
  return v;
}

}  // namespace

SystemParams SystemParams::normalized() const {
  SystemParams p = *this;
  p.theta = wrap_positive(theta);
  p.phi = wrap_positive(phi);
  return p;
}

void SystemParams::validate() const {
  const auto finite = [](const char* name, double v) {
    if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
  };
  finite("delta", delta);
  finite("g", g);
  finite("theta", theta);
  finite("gamma", gamma);
  finite("phi", phi);
  finite("gamma0", gamma0);
  finite("omega1", omega1);
  finite("omega2", omega2);
  if (!(gamma0 > 0)) throw ValidationError("gamma0 must be > 0 (got " + std::to_string(gamma0) + ")");
  if (gamma < 0) throw ValidationError("gamma must be >= 0 (got " + std::to_string(gamma) + ")");
  if (gamma > gamma0) {
    throw ValidationError("gamma must be <= gamma0 (got gamma=" + std::to_string(gamma) +
                          ", gamma0=" + std::to_string(gamma0) + ")");
  }
  if (g < 0) throw ValidationError("g must be >= 0 (got " + std::to_string(g) + ")");
  if (omega1 < 0) throw ValidationError("omega1 must be >= 0 (got " + std::to_string(omega1) + ")");
  if (omega2 < 0) throw ValidationError("omega2 must be >= 0 (got " + std::to_string(omega2) + ")");
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Coherent: return "coherent";
    case Regime::Dissipative: return "dissipative";
    case Regime::UnidirectionalForward: return "unidirectional";
    case Regime::UnidirectionalBackward: return "unidirectional-backward";
    case Regime::Asymmetric: return "asymmetric";
  }
  return "asymmetric";
}

Regime regime_from_name(std::string_view name) {
  if (name == "coherent") return Regime::Coherent;
  if (name == "dissipative") return Regime::Dissipative;
  if (name == "unidirectional" || name == "unidirectional-forward") return Regime::UnidirectionalForward;
  if (name == "unidirectional-backward") return Regime::UnidirectionalBackward;
  if (name == "asymmetric") return Regime::Asymmetric;
  throw ValidationError("unknown regime '" + std::string(name) + "'");
}

double wrap_phase(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

Regime classify_regime(const SystemParams& p, double tol) {
  p.validate();
  if (!(tol > 0)) throw ValidationError("tolerance must be > 0");
  if (p.gamma <= tol * p.gamma0) return Regime::Coherent;
  if (p.g <= tol * p.gamma0) return Regime::Dissipative;
  if (std::abs(p.g / p.gamma - 0.5) <= tol) {
    const double rel = p.theta - p.phi;
    if (std::abs(wrap_phase(rel - std::numbers::pi / 2)) <= tol) return Regime::UnidirectionalForward;
    if (std::abs(wrap_phase(rel - 3 * std::numbers::pi / 2)) <= tol) return Regime::UnidirectionalBackward;
  }
  return Regime::Asymmetric;
}

std::pair<std::complex<double>, std::complex<double>> generalized_couplings(const SystemParams& p) {
  p.validate();
  const std::complex<double> i(0.0, 1.0);
  const auto coh = i * p.g * std::polar(1.0, p.theta);
  const auto dis = 0.5 * p.gamma * std::polar(1.0, p.phi);
  return {coh + dis, -coh + dis};
}

SystemParams coherent_pair(double g, double omega, double gamma0) {
  SystemParams p;
  p.g = g;
  p.gamma0 = gamma0;
  p.omega1 = omega;
  p.validate();
  return p;
}

SystemParams dissipative_pair(double gamma, double omega, double gamma0) {
  SystemParams p;
  p.gamma = gamma;
  p.gamma0 = gamma0;
  p.omega1 = omega;
  p.validate();
  return p;
}

SystemParams unidirectional_pair(double gamma, double omega, double gamma0, bool forward) {
  SystemParams p;
  p.gamma = gamma;
  p.g = gamma / 2;
  p.theta = forward ? std::numbers::pi / 2 : 3 * std::numbers::pi / 2;
  p.gamma0 = gamma0;
  p.omega1 = omega;
  p.validate();
  return p;
}

SystemParams asymmetric_pair(double g, double gamma, double relative_phase, double omega, double gamma0) {
  SystemParams p;
  p.g = g;
  p.gamma = gamma;
  p.theta = wrap_positive(relative_phase);
  p.gamma0 = gamma0;
  p.omega1 = omega;
  p.validate();
  return p;
}

SystemParams apply_regime(SystemParams p, Regime r) {
  switch (r) {
    case Regime::Coherent:
      p.gamma = 0.0;
      break;
    case Regime::Dissipative:
      p.g = 0.0;
      break;
    case Regime::UnidirectionalForward:
      p.g = p.gamma / 2;
      p.theta = wrap_positive(p.phi + std::numbers::pi / 2);
      break;
    case Regime::UnidirectionalBackward:
      p.g = p.gamma / 2;
      p.theta = wrap_positive(p.phi + 3 * std::numbers::pi / 2);
      break;
    case Regime::Asymmetric:
      break;
  }
  p.validate();
  const Regime got = classify_regime(p);
  if (got != r) {
    throw ValidationError("parameters classify as " + std::string(regime_name(got)) + ", not " +
                          std::string(regime_name(r)));
  }
  return p;
}

bool is_param_key(std::string_view key) {
  return key == "delta" || key == "g" || key == "theta" || key == "gamma" || key == "phi" ||
         key == "gamma0" || key == "omega1" || key == "omega2";
}

void set_param(SystemParams& p, std::string_view key, double value) {
  if (key == "delta") p.delta = value;
  else if (key == "g") p.g = value;
  else if (key == "theta") p.theta = value;
  else if (key == "gamma") p.gamma = value;
  else if (key == "phi") p.phi = value;
  else if (key == "gamma0") p.gamma0 = value;
  else if (key == "omega1") p.omega1 = value;
  else if (key == "omega2") p.omega2 = value;
  else throw ValidationError("unknown parameter '" + std::string(key) + "'");
}

double get_param(const SystemParams& p, std::string_view key) {
  if (key == "delta") return p.delta;
  if (key == "g") return p.g;
  if (key == "theta") return p.theta;
  if (key == "gamma") return p.gamma;
  if (key == "phi") return p.phi;
  if (key == "gamma0") return p.gamma0;
  if (key == "omega1") return p.omega1;
  if (key == "omega2") return p.omega2;
  throw ValidationError("unknown parameter '" + std::string(key) + "'");
}

std::map<std::string, double> to_map(const SystemParams& p) {
  return {{"delta", p.delta}, {"g", p.g},           {"theta", p.theta},   {"gamma", p.gamma},
          {"phi", p.phi},     {"gamma0", p.gamma0}, {"omega1", p.omega1}, {"omega2", p.omega2}};
}

SystemParams parse_config(std::string_view text, SystemParams base) {
  size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    if (!is_param_key(key)) {
      throw ValidationError("config line " + std::to_string(lineno) + ": unknown key '" +
                            std::string(key) + "'");
    }
    set_param(base, key, parse_number(key, line.substr(eq + 1)));
  }
  base.validate();
  return base.normalized();
}

SystemParams load_config(const std::string& path, SystemParams base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

std::string format_config(const SystemParams& p) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [k, v] : to_map(p)) out << k << '=' << v << '\n';
  return out.str();
}

}  // namespace pairfluor
