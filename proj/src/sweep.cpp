#include "pairfluor/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include "json.hpp"
#include <sstream>
#include <thread>

#include "pairfluor/closed_forms.hpp"
#include "pairfluor/errors.hpp"
#include "pairfluor/lineshape.hpp"

namespace pairfluor {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool constrains(Regime r, const std::string& key) {
  switch (r) {
    case Regime::Coherent: return key == "gamma";
    case Regime::Dissipative: return key == "g";
    case Regime::UnidirectionalForward:
    case Regime::UnidirectionalBackward: return key == "g" || key == "theta";
    case Regime::Asymmetric: return false;
  }
  return false;
}

bool wants(const SweepSpec& s, Observable o) {
  return std::find(s.observables.begin(), s.observables.end(), o) != s.observables.end();
}

std::vector<double> spectrum_grid_for(const SweepSpec& spec, const SystemParams& p) {
  const auto& sg = spec.spectrum_grid;
  if (!sg.min && !sg.max) return default_spectrum_grid(p, sg.points);
  const auto def = default_spectrum_grid(p, 2);
  return linear_grid(sg.min.value_or(def.front()), sg.max.value_or(def.back()), sg.points);
}

SweepRow evaluate_point(const SweepSpec& spec, double value) {
  SweepRow row;
  row.value = value;
  SystemParams p = spec.base();
  set_param(p, spec.parameter, value);
  if (spec.regime) p = apply_regime(p, *spec.regime);
  p = p.normalized();
  p.validate();
  row.params = p;
  row.regime = classify_regime(p);

  const bool undriven = p.omega1 == 0.0 && p.omega2 == 0.0;
  const bool fast = spec.fastpath && has_closed_form(p);
  row.path = fast ? "closed-form" : "numeric";

  if (wants(spec, Observable::Populations) || wants(spec, Observable::G2)) {
    std::optional<MomentState> st;
    if (!fast) st = steady_state(p);
    if (wants(spec, Observable::Populations)) {
      const Populations pop = fast ? closed_form_populations(p) : populations(*st);
      if (std::abs(pop.sum() - 1.0) > 1e-9) {
        throw NumericalError("populations sum to " + fmt(pop.sum()) + " at " + spec.parameter + "=" + fmt(value));
      }
      row.populations = pop;
    }
    if (wants(spec, Observable::G2)) {
      if (undriven) {
        row.g2_status = "undriven";
      } else {
        try {
          row.g2 = fast ? closed_form_g2(p) : g2_cross(*st);
          row.g2_status = "ok";
        } catch (const UndefinedObservable&) {
          row.g2_status = "undefined";
        }
      }
    }
  }

  const bool want_spec = wants(spec, Observable::Spectrum);
  const bool want_dec = wants(spec, Observable::Decomposition);
  if (want_spec || want_dec) {
    std::optional<SpectralDecomposition> dec;
    std::string dec_status = "ok";
    const bool closed_spec = want_spec && fast && spec.emitter == Emitter::First &&
                             row.regime == Regime::UnidirectionalForward;
    if (undriven) {
      dec_status = "undriven";
    } else if (want_dec || !closed_spec) {
      try {
        dec = decompose_spectrum(p, spec.emitter);
      } catch (const DegenerateEigenError&) {
        dec_status = "degenerate";
      } catch (const UndefinedObservable&) {
        dec_status = "undefined";
      }
    }
    if (want_dec) {
      row.decomposition = dec;
      row.decomposition_status = dec_status;
    }
    if (want_spec) {
      if (undriven) {
        row.spectrum_status = "undriven";
      } else {
        SpectrumBlock b;
        b.omega = spectrum_grid_for(spec, p);
        if (closed_spec) {
          b.values = unidirectional_spectrum(b.omega, p.omega1, p.gamma0);
          b.delta_weight = unidirectional_delta_weight(p.omega1, p.gamma0);
          b.path = "closed-form";
        } else if (dec) {
          b.values = evaluate_spectrum(*dec, b.omega);
          b.delta_weight = dec->delta_weight;
          b.path = "numeric";
        } else if (dec_status == "degenerate") {
          const auto o = spectrum_fft(build_liouvillian(p), b.omega, spec.emitter);
          b.values = o.values;
          b.delta_weight = o.delta_weight;
          b.path = "oracle";
        }
        if (b.path.empty()) {
          row.spectrum_status = dec_status;
        } else {
          row.spectrum = std::move(b);
          row.spectrum_status = "ok";
        }
      }
    }
  }

  if (wants(spec, Observable::Eigenvalues)) row.eigenvalues = moment_eigenvalues(p);
  return row;
}

}  // namespace

std::string observable_name(Observable o) {
  switch (o) {
    case Observable::Populations: return "populations";
    case Observable::G2: return "g2";
    case Observable::Spectrum: return "spectrum";
    case Observable::Decomposition: return "decomposition";
    case Observable::Eigenvalues: return "eigenvalues";
  }
  return "populations";
}

Observable observable_from_name(const std::string& s) {
  if (s == "populations") return Observable::Populations;
  if (s == "g2") return Observable::G2;
  if (s == "spectrum") return Observable::Spectrum;
  if (s == "decomposition") return Observable::Decomposition;
  if (s == "eigenvalues") return Observable::Eigenvalues;
  throw ValidationError("unknown observable '" + s + "'");
}

bool is_block(Observable o) { return o != Observable::Populations && o != Observable::G2; }

std::vector<double> GridSpec::points() const {
  validate();
  if (!values.empty()) return values;
  return log ? log_grid(min, max, count) : linear_grid(min, max, count);
}

void GridSpec::validate() const {
  if (!values.empty()) {
    for (double v : values)
      if (!std::isfinite(v)) throw ValidationError("grid values must be finite");
    return;
  }
  if (count < 2) throw ValidationError("grid count must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max)) throw ValidationError("grid bounds must be finite");
  if (!(max > min)) throw ValidationError("grid max must exceed min");
  if (log && !(min > 0)) throw ValidationError("log grids require min > 0");
}

SystemParams SweepSpec::base() const {
  SystemParams p;
  for (const auto& [k, v] : fixed) set_param(p, k, v);
  return p;
}

void SweepSpec::validate() const {
  if (!is_param_key(parameter)) throw ValidationError("unknown sweep parameter '" + parameter + "'");
  for (const auto& [k, v] : fixed) {
    if (!is_param_key(k)) throw ValidationError("unknown fixed parameter '" + k + "'");
    if (!std::isfinite(v)) throw ValidationError("fixed parameter '" + k + "' must be finite");
  }
  if (fixed.count(parameter)) {
    throw ValidationError("swept parameter '" + parameter + "' also appears among the fixed parameters");
  }
  if (regime && constrains(*regime, parameter)) {
    throw ValidationError("parameter '" + parameter + "' is fixed by the " +
                          std::string(regime_name(*regime)) + " regime and cannot be swept");
  }
  if (regime) {
    const SystemParams imposed = apply_regime(base(), *regime);
    for (const auto& [k, v] : fixed) {
      const double got = get_param(imposed, k);
      const bool phase = k == "theta" || k == "phi";
      const double gap = phase ? std::abs(wrap_phase(got - v)) : std::abs(got - v);
      if (gap > 1e-12 * (1 + std::abs(v))) {
        throw ValidationError("fixed parameter '" + k + "'=" + fmt(v) + " contradicts the " +
                              std::string(regime_name(*regime)) + " regime (requires " + fmt(got) + ")");
      }
    }
  }
  grid.validate();
  if (spectrum_grid.points < 2) throw ValidationError("spectrum grid needs >= 2 points");
  if (threads < 0) throw ValidationError("threads must be >= 0");
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> pts = spec.grid.points();
  SweepResult res;
  res.spec = spec;
  res.rows.resize(pts.size());

  std::vector<std::exception_ptr> errors(pts.size());
  std::atomic<size_t> next{0};
  const auto work = [&] {
    for (size_t i = next++; i < pts.size(); i = next++) {
      try {
        res.rows[i] = evaluate_point(spec, pts[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned nthreads = spec.threads > 0 ? unsigned(spec.threads) : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, unsigned(std::max<size_t>(pts.size(), 1)));
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return res;
}

// ---------------------------------------------------------------- CSV

namespace {

void emit_csv(const SweepResult& r, std::ostream& out) {
  const auto& obs = r.spec.observables;
  std::vector<Observable> blocks;
  bool scalars = false;
  for (auto o : obs) {
    if (is_block(o)) blocks.push_back(o);
    else scalars = true;
  }
  if (blocks.size() > 1 || (!blocks.empty() && scalars)) {
    throw ValidationError("CSV output holds either scalar observables or a single block observable; use JSON");
  }
  const std::string& key = r.spec.parameter;

  if (obs.empty()) {
    out << key << '\n';
    return;
  }

  if (scalars) {
    const bool pop = wants(r.spec, Observable::Populations);
    const bool g2 = wants(r.spec, Observable::G2);
    out << key;
    if (pop) out << ",rho00,rho10,rho01,rho11";
    if (g2) out << ",g2,g2_status";
    out << '\n';
    for (const auto& row : r.rows) {
      out << fmt(row.value);
      if (pop) {
        const auto& q = *row.populations;
        out << ',' << fmt(q.rho00) << ',' << fmt(q.rho10) << ',' << fmt(q.rho01) << ',' << fmt(q.rho11);
      }
      if (g2) out << ',' << (row.g2 ? fmt(*row.g2) : std::string()) << ',' << row.g2_status;
      out << '\n';
    }
    return;
  }

  switch (blocks.front()) {
    case Observable::Spectrum:
      out << key << ",omega,S,delta_weight,status\n";
      for (const auto& row : r.rows) {
        if (!row.spectrum) {
          out << fmt(row.value) << ",,,," << row.spectrum_status << '\n';
          continue;
        }
        const auto& b = *row.spectrum;
        const std::string dw = fmt(b.delta_weight);
        for (size_t k = 0; k < b.omega.size(); ++k) {
          out << fmt(row.value) << ',' << fmt(b.omega[k]) << ',' << fmt(b.values[k]) << ',' << dw << ",ok\n";
        }
      }
      break;
    case Observable::Decomposition:
      out << key << ",omega_zeta,gamma_zeta,L,K,delta_weight,status\n";
      for (const auto& row : r.rows) {
        if (!row.decomposition) {
          out << fmt(row.value) << ",,,,,," << row.decomposition_status << '\n';
          continue;
        }
        const auto& d = *row.decomposition;
        for (const auto& c : d.components) {
          out << fmt(row.value) << ',' << fmt(c.omega) << ',' << fmt(c.gamma) << ',' << fmt(c.lorentz) << ','
              << fmt(c.dispersive) << ',' << fmt(d.delta_weight) << ",ok\n";
        }
      }
      break;
    default:
      out << key << ",index,re,im\n";
      for (const auto& row : r.rows) {
        const auto& ev = *row.eigenvalues;
        for (size_t k = 0; k < ev.size(); ++k) {
          out << fmt(row.value) << ',' << k << ',' << fmt(ev[k].real()) << ',' << fmt(ev[k].imag()) << '\n';
        }
      }
      break;
  }
}

// ---------------------------------------------------------------- JSON

json params_json(const SystemParams& p) {
  json j = json::object();
  for (const auto& [k, v] : to_map(p)) j[k] = v;
  return j;
}

SystemParams params_from(const json& j) {
  SystemParams p;
  for (const auto& [k, v] : j.items()) set_param(p, k, v.get<double>());
  return p;
}

json spec_json(const SweepSpec& s) {
  json j;
  j["preset"] = s.preset;
  j["parameter"] = s.parameter;
  j["grid"] = {{"min", s.grid.min},
               {"max", s.grid.max},
               {"count", s.grid.count},
               {"scale", s.grid.log ? "log" : "lin"},
               {"values", s.grid.values}};
  j["fixed"] = s.fixed;
  j["regime"] = s.regime ? json(std::string(regime_name(*s.regime))) : json(nullptr);
  json obs = json::array();
  for (auto o : s.observables) obs.push_back(observable_name(o));
  j["observables"] = obs;
  j["emitter"] = static_cast<int>(s.emitter);
  j["spectrum_grid"] = {{"min", s.spectrum_grid.min ? json(*s.spectrum_grid.min) : json(nullptr)},
                        {"max", s.spectrum_grid.max ? json(*s.spectrum_grid.max) : json(nullptr)},
                        {"points", s.spectrum_grid.points}};
  j["format"] = s.format == Format::Csv ? "csv" : "json";
  j["out"] = s.out;
  j["fastpath"] = s.fastpath;
  j["threads"] = s.threads;
  return j;
}

Emitter emitter_from(int e) {
  if (e == 1) return Emitter::First;
  if (e == 2) return Emitter::Second;
  throw ValidationError("emitter must be 1 or 2");
}

SweepSpec spec_from(const json& j) {
  SweepSpec s;
  s.preset = j.at("preset").get<std::string>();
  s.parameter = j.at("parameter").get<std::string>();
  const auto& g = j.at("grid");
  s.grid.min = g.at("min").get<double>();
  s.grid.max = g.at("max").get<double>();
  s.grid.count = g.at("count").get<int>();
  s.grid.log = g.at("scale").get<std::string>() == "log";
  s.grid.values = g.at("values").get<std::vector<double>>();
  s.fixed = j.at("fixed").get<std::map<std::string, double>>();
  if (!j.at("regime").is_null()) s.regime = regime_from_name(j.at("regime").get<std::string>());
  for (const auto& o : j.at("observables")) s.observables.push_back(observable_from_name(o.get<std::string>()));
  s.emitter = emitter_from(j.at("emitter").get<int>());
  const auto& sg = j.at("spectrum_grid");
  if (!sg.at("min").is_null()) s.spectrum_grid.min = sg.at("min").get<double>();
  if (!sg.at("max").is_null()) s.spectrum_grid.max = sg.at("max").get<double>();
  s.spectrum_grid.points = sg.at("points").get<int>();
  s.format = j.at("format").get<std::string>() == "json" ? Format::Json : Format::Csv;
  s.out = j.at("out").get<std::string>();
  s.fastpath = j.at("fastpath").get<bool>();
  s.threads = j.at("threads").get<int>();
  return s;
}

json row_json(const SweepRow& row) {
  json j;
  j["value"] = row.value;
  j["params"] = params_json(row.params);
  j["regime"] = std::string(regime_name(row.regime));
  j["path"] = row.path;
  if (row.populations) {
    const auto& q = *row.populations;
    j["populations"] = {{"rho00", q.rho00}, {"rho10", q.rho10}, {"rho01", q.rho01}, {"rho11", q.rho11},
                        {"non_unique", q.non_unique}};
  } else {
    j["populations"] = nullptr;
  }
  j["g2"] = row.g2 ? json(*row.g2) : json(nullptr);
  j["g2_status"] = row.g2_status;
  if (row.spectrum) {
    const auto& b = *row.spectrum;
    j["spectrum"] = {{"omega", b.omega}, {"values", b.values}, {"delta_weight", b.delta_weight}, {"path", b.path}};
  } else {
    j["spectrum"] = nullptr;
  }
  j["spectrum_status"] = row.spectrum_status;
  if (row.decomposition) {
    const auto& d = *row.decomposition;
    json comps = json::array();
    for (const auto& c : d.components) {
      comps.push_back({{"omega", c.omega}, {"gamma", c.gamma}, {"L", c.lorentz}, {"K", c.dispersive}});
    }
    j["decomposition"] = {{"components", comps},
                          {"delta_weight", d.delta_weight},
                          {"emitter", static_cast<int>(d.emitter)},
                          {"population", d.population},
                          {"reduced_dimension", d.reduced_dimension},
                          {"merged_clusters", d.merged_clusters}};
  } else {
    j["decomposition"] = nullptr;
  }
  j["decomposition_status"] = row.decomposition_status;
  if (row.eigenvalues) {
    json ev = json::array();
    for (const auto& z : *row.eigenvalues) ev.push_back({z.real(), z.imag()});
    j["eigenvalues"] = ev;
  } else {
    j["eigenvalues"] = nullptr;
  }
  return j;
}

SweepRow row_from(const json& j) {
  SweepRow row;
  row.value = j.at("value").get<double>();
  row.params = params_from(j.at("params"));
  row.regime = regime_from_name(j.at("regime").get<std::string>());
  row.path = j.at("path").get<std::string>();
  if (const auto& q = j.at("populations"); !q.is_null()) {
    Populations p;
    p.rho00 = q.at("rho00").get<double>();
    p.rho10 = q.at("rho10").get<double>();
    p.rho01 = q.at("rho01").get<double>();
    p.rho11 = q.at("rho11").get<double>();
    p.non_unique = q.at("non_unique").get<bool>();
    row.populations = p;
  }
  if (!j.at("g2").is_null()) row.g2 = j.at("g2").get<double>();
  row.g2_status = j.at("g2_status").get<std::string>();
  if (const auto& b = j.at("spectrum"); !b.is_null()) {
    SpectrumBlock s;
    s.omega = b.at("omega").get<std::vector<double>>();
    s.values = b.at("values").get<std::vector<double>>();
    s.delta_weight = b.at("delta_weight").get<double>();
    s.path = b.at("path").get<std::string>();
    row.spectrum = std::move(s);
  }
  row.spectrum_status = j.at("spectrum_status").get<std::string>();
  if (const auto& d = j.at("decomposition"); !d.is_null()) {
    SpectralDecomposition s;
    for (const auto& c : d.at("components")) {
      s.components.push_back(
          {c.at("omega").get<double>(), c.at("gamma").get<double>(), c.at("L").get<double>(), c.at("K").get<double>()});
    }
    s.delta_weight = d.at("delta_weight").get<double>();
    s.emitter = emitter_from(d.at("emitter").get<int>());
    s.population = d.at("population").get<double>();
    s.reduced_dimension = d.at("reduced_dimension").get<int>();
    s.merged_clusters = d.at("merged_clusters").get<int>();
    row.decomposition = std::move(s);
  }
  row.decomposition_status = j.at("decomposition_status").get<std::string>();
  if (const auto& ev = j.at("eigenvalues"); !ev.is_null()) {
    std::vector<std::complex<double>> v;
    for (const auto& z : ev) v.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    row.eigenvalues = std::move(v);
  }
  return row;
}

void emit_json(const SweepResult& r, std::ostream& out) {
  json j;
  j["schema"] = "pairfluor.sweep";
  j["schema_version"] = kSchemaVersion;
  j["metadata"] = {{"version", r.version}, {"spec", spec_json(r.spec)}, {"base_params", params_json(r.spec.base())}};
  json data = json::array();
  for (const auto& row : r.rows) data.push_back(row_json(row));
  j["data"] = data;
  out << j.dump(1) << '\n';
}

}  // namespace

void emit(const SweepResult& r, Format f, std::ostream& out) {
  if (f == Format::Csv) emit_csv(r, out);
  else emit_json(r, out);
}

std::string emit(const SweepResult& r, Format f) {
  std::ostringstream os;
  emit(r, f, os);
  return os.str();
}

void emit_to_path(const SweepResult& r, Format f, const std::string& path) {
  const std::string text = emit(r, f);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << text;
  out.close();
  if (!out) throw IoError("failed writing output file: " + path);
}

SweepResult parse_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed sweep JSON: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != "pairfluor.sweep") throw ValidationError("not a sweep document");
    const int ver = j.at("schema_version").get<int>();
    if (ver != kSchemaVersion) throw ValidationError("unsupported schema version " + std::to_string(ver));
    SweepResult r;
    r.version = j.at("metadata").at("version").get<std::string>();
    r.spec = spec_from(j.at("metadata").at("spec"));
    for (const auto& row : j.at("data")) r.rows.push_back(row_from(row));
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed sweep JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------- presets

std::string default_presets_path() {
  if (const char* env = std::getenv("PAIRFLUOR_PRESETS")) return env;
#ifdef PAIRFLUOR_PRESETS_PATH
  return PAIRFLUOR_PRESETS_PATH;
#else
  return "data/presets.json";
#endif
}

namespace {

json read_presets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read presets file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("malformed presets file " + path + ": " + e.what());
  }
  if (!j.contains("presets") || !j["presets"].is_object()) throw ValidationError("presets file lacks 'presets'");
  return j;
}

}  // namespace

std::vector<std::string> preset_names(const std::string& path) {
  const json j = read_presets(path);
  std::vector<std::string> names;
  for (const auto& [k, v] : j["presets"].items()) names.push_back(k);
  return names;
}

SweepSpec load_preset(const std::string& name, const std::string& path) {
  const json j = read_presets(path);
  const auto& all = j["presets"];
  if (!all.contains(name)) throw ValidationError("unknown preset '" + name + "'");
  const json& p = all[name];
  try {
    SweepSpec s;
    s.preset = name;
    if (p.contains("regime")) s.regime = regime_from_name(p["regime"].get<std::string>());
    if (p.contains("fixed")) s.fixed = p["fixed"].get<std::map<std::string, double>>();
    const json& sw = p.at("sweep");
    s.parameter = sw.at("parameter").get<std::string>();
    if (sw.contains("values")) {
      s.grid.values = sw["values"].get<std::vector<double>>();
      s.grid.count = int(s.grid.values.size());
    } else {
      s.grid.min = sw.at("min").get<double>();
      s.grid.max = sw.at("max").get<double>();
      s.grid.count = sw.at("count").get<int>();
      s.grid.log = sw.value("scale", std::string("lin")) == "log";
    }
    for (const auto& o : p.at("observables")) s.observables.push_back(observable_from_name(o.get<std::string>()));
    if (p.contains("emitter")) s.emitter = emitter_from(p["emitter"].get<int>());
    if (p.contains("spectrum_grid")) {
      const auto& g = p["spectrum_grid"];
      if (g.contains("min")) s.spectrum_grid.min = g["min"].get<double>();
      if (g.contains("max")) s.spectrum_grid.max = g["max"].get<double>();
      if (g.contains("points")) s.spectrum_grid.points = g["points"].get<int>();
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ValidationError("malformed preset '" + name + "': " + e.what());
  }
}

}  // namespace pairfluor
