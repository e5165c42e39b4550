#pragma once

#include <complex>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pairfluor/liouville.hpp"
#include "pairfluor/moments.hpp"
#include "pairfluor/params.hpp"
#include "pairfluor/spectrum.hpp"

namespace pairfluor {

inline constexpr const char* kVersion = "0.3.0";
inline constexpr int kSchemaVersion = 1;

enum class Observable { Populations, G2, Spectrum, Decomposition, Eigenvalues };
enum class Format { Csv, Json };

std::string observable_name(Observable o);
Observable observable_from_name(const std::string& s);
bool is_block(Observable o);

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  bool log = false;
  std::vector<double> values;  // explicit values; overrides min/max/count when non-empty

  std::vector<double> points() const;
  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

// Frequency window for spectra. Unset fields fall back to the default grid.
struct SpectrumGridSpec {
  std::optional<double> min;
  std::optional<double> max;
  int points = 2001;
  bool operator==(const SpectrumGridSpec&) const = default;
};

struct SweepSpec {
  std::string preset;                   // informational
  std::string parameter = "omega1";     // swept key
  GridSpec grid;
  std::map<std::string, double> fixed;  // explicitly fixed keys; defaults otherwise
  std::optional<Regime> regime;         // constraint re-imposed at every point
  std::vector<Observable> observables;
  Emitter emitter = Emitter::First;
  SpectrumGridSpec spectrum_grid;
  Format format = Format::Csv;
  std::string out;  // empty: stdout
  bool fastpath = true;
  int threads = 0;  // 0: hardware concurrency

  SystemParams base() const;
  void validate() const;
  bool operator==(const SweepSpec&) const = default;
};

struct SpectrumBlock {
  std::vector<double> omega;
  std::vector<double> values;
  double delta_weight = 0.0;
  std::string path;  // closed-form | numeric | oracle
  bool operator==(const SpectrumBlock&) const = default;
};

struct SweepRow {
  double value = 0.0;
  SystemParams params;
  Regime regime = Regime::Asymmetric;
  std::string path;  // closed-form | numeric (scalar observables)

  std::optional<Populations> populations;
  std::optional<double> g2;
  std::string g2_status;  // ok | undriven | undefined

  std::optional<SpectrumBlock> spectrum;
  std::string spectrum_status;  // ok | undriven | undefined
  std::optional<SpectralDecomposition> decomposition;
  std::string decomposition_status;  // ok | undriven | undefined | degenerate

  std::optional<std::vector<std::complex<double>>> eigenvalues;
  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  SweepSpec spec;
  std::string version = kVersion;
  std::vector<SweepRow> rows;
  bool operator==(const SweepResult&) const = default;
};

SweepResult run_sweep(const SweepSpec& spec);

// CSV holds either scalar observables (one row per point) or exactly one block
// observable in long format; JSON holds everything.
void emit(const SweepResult& r, Format f, std::ostream& out);
std::string emit(const SweepResult& r, Format f);
// Writes to path, or stdout when path is empty. Throws IoError naming the path.
void emit_to_path(const SweepResult& r, Format f, const std::string& path);

SweepResult parse_json(const std::string& text);

// Versioned preset definitions.
std::string default_presets_path();
std::vector<std::string> preset_names(const std::string& path = default_presets_path());
SweepSpec load_preset(const std::string& name, const std::string& path = default_presets_path());

}  // namespace pairfluor
