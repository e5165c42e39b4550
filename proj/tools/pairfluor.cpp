// pairfluor: parameter sweeps for a driven pair of coupled two-level emitters.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pairfluor/errors.hpp"
#include "pairfluor/sweep.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

using namespace pairfluor;

double to_double(const std::string& what, const std::string& s) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("bad number in " + what + ": '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("bad number in " + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

// name:min:max:count[:lin|log]
void apply_sweep(SweepSpec& s, const std::string& text) {
  const auto f = split(text, ':');
  if (f.size() != 4 && f.size() != 5) throw ValidationError("--sweep expects name:min:max:count[:lin|log]");
  s.parameter = f[0];
  s.grid = GridSpec{};
  s.grid.min = to_double("--sweep", f[1]);
  s.grid.max = to_double("--sweep", f[2]);
  const double count = to_double("--sweep", f[3]);
  if (count != double(int(count))) throw ValidationError("--sweep count must be an integer");
  s.grid.count = int(count);
  if (f.size() == 5) {
    if (f[4] == "log") s.grid.log = true;
    else if (f[4] != "lin") throw ValidationError("--sweep scale must be lin or log");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Steady states, correlations and emission spectra of two coupled, driven two-level emitters"};
  app.set_version_flag("--version", std::string(kVersion));

  std::optional<std::string> preset, config, regime, sweep, spectrum_min, spectrum_max;
  std::string presets_path = default_presets_path();
  std::vector<std::string> params, observables;
  int emitter = 1;
  std::optional<int> spectrum_points, threads;
  std::string format = "csv";
  std::string out;
  bool no_fastpath = false, list = false;

  app.add_option("--preset", preset, "Named figure preset");
  app.add_option("--presets", presets_path, "Preset definition file")->capture_default_str();
  app.add_flag("--list-presets", list, "Print preset names and exit");
  app.add_option("--config", config, "key=value parameter file");
  app.add_option("--regime", regime, "coherent | dissipative | unidirectional | unidirectional-backward | asymmetric");
  app.add_option("--param", params, "Fixed parameter key=value (repeatable)");
  app.add_option("--sweep", sweep, "Swept parameter name:min:max:count[:lin|log]");
  app.add_option("--observable", observables, "populations | g2 | spectrum | decomposition | eigenvalues (repeatable)");
  app.add_option("--emitter", emitter, "Emitter whose spectrum is computed (1 or 2)")->check(CLI::IsMember({1, 2}));
  app.add_option("--spectrum-points", spectrum_points, "Spectrum grid size");
  app.add_option("--spectrum-min", spectrum_min, "Lower spectrum grid bound (omega - omega0)");
  app.add_option("--spectrum-max", spectrum_max, "Upper spectrum grid bound (omega - omega0)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out, "Output path (stdout when omitted)");
  app.add_flag("--no-fastpath", no_fastpath, "Solve numerically even where closed forms exist");
  app.add_option("--threads", threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  if (list) {
    for (const auto& n : preset_names(presets_path)) std::cout << n << '\n';
    return 0;
  }

  SweepSpec spec;
  const bool from_preset = preset.has_value();
  if (from_preset) spec = load_preset(*preset, presets_path);
  if (sweep) apply_sweep(spec, *sweep);
  else if (!from_preset) throw ValidationError("give --preset or --sweep");

  if (config) {
    for (const auto& [k, v] : to_map(load_config(*config))) spec.fixed[k] = v;
  }
  // Inherited values must not collide with the swept key; explicit --param may.
  spec.fixed.erase(spec.parameter);
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("--param expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    if (!is_param_key(key)) throw ValidationError("unknown parameter '" + key + "'");
    spec.fixed[key] = to_double("--param " + key, kv.substr(eq + 1));
  }
  if (regime) spec.regime = regime_from_name(*regime);
  if (!observables.empty()) {
    spec.observables.clear();
    for (const auto& o : observables) spec.observables.push_back(observable_from_name(o));
  } else if (!from_preset) {
    spec.observables = {Observable::Populations};
  }
  spec.emitter = emitter == 2 ? Emitter::Second : Emitter::First;
  if (spectrum_points) spec.spectrum_grid.points = *spectrum_points;
  if (spectrum_min) spec.spectrum_grid.min = to_double("--spectrum-min", *spectrum_min);
  if (spectrum_max) spec.spectrum_grid.max = to_double("--spectrum-max", *spectrum_max);
  spec.format = format == "json" ? Format::Json : Format::Csv;
  spec.out = out;
  spec.fastpath = !no_fastpath;
  if (threads) spec.threads = *threads;

  const SweepResult r = run_sweep(spec);
  emit_to_path(r, spec.format, spec.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pairfluor::IoError& e) {
    std::cerr << "pairfluor: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const pairfluor::ValidationError& e) {
    std::cerr << "pairfluor: invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const pairfluor::NumericalError& e) {
    std::cerr << "pairfluor: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "pairfluor: " << e.what() << '\n';
    return kExitNumerical;
  }
}
