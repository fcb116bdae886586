// Copyright 2026 The jcpcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jcpcs/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <system_error>

#include "jcpcs/errors.hpp"
#include "jcpcs/spectroscopy.hpp"
#include "jcpcs/vee_system.hpp"

namespace jcpcs {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kModes = {"scan-2pcr", "scan-vee", "peak",
                                      "pg-dist", "reproduce-figure"};
const std::set<std::string> kFigures = {"2", "3", "4a", "4b", "5"};
const std::set<std::string> kDistributions = {"delta", "mask", "file"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Shortest representation that parses back to the same double.
std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

[[noreturn]] void reject_value(const std::string& key, const std::string& value,
                           const std::string& expected) {
  throw TypeMismatch("key '" + key + "': '" + value + "' is not " + expected);
}

double to_double(const std::string& key, const std::string& value) {
  double x = 0.0;
  const char* end = value.data() + value.size();
  const auto r = std::from_chars(value.data(), end, x);
  if (value.empty() || r.ec != std::errc() || r.ptr != end ||
      !std::isfinite(x)) {
    reject_value(key, value, "a finite number");
  }
  return x;
}

template <class Int>
Int to_integer(const std::string& key, const std::string& value) {
  Int x = 0;
  const char* end = value.data() + value.size();
  const auto r = std::from_chars(value.data(), end, x);
  if (value.empty() || r.ec != std::errc() || r.ptr != end) {
    reject_value(key, value, "an integer");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  reject_value(key, value, "true or false");
}

std::string one_of(const std::string& key, const std::string& value,
                   const std::set<std::string>& allowed) {
  if (allowed.count(value)) return value;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  reject_value(key, value, "one of {" + list + "}");
}

// Enum parsers from the library raise InvalidArgument; in a config they
// are type errors on the key.
template <class Fn>
auto as_key_type(const std::string& key, const std::string& value,
                 const std::string& expected, Fn&& parse) {
  try {
    return parse(value);
  } catch (const InvalidArgument&) {
    reject_value(key, value, expected);
  }
}

GridSpec grid_for_key(const std::string& key, const std::string& value) {
  try {
    return parse_grid_spec(value);
  } catch (const InvalidArgument&) {
    reject_value(key, value, "a grid LO:HI:STEP with LO <= HI and STEP > 0");
  }
}

std::pair<double, double> range_for_key(const std::string& key,
                                        const std::string& value) {
  const auto colon = value.find(':');
  if (colon == std::string::npos) reject_value(key, value, "a range LO:HI");
  const double lo = to_double(key, value.substr(0, colon));
  const double hi = to_double(key, value.substr(colon + 1));
  if (!(hi > lo)) reject_value(key, value, "a range LO:HI with LO < HI");
  return {lo, hi};
}

struct KeySpec {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define JCPCS_DOUBLE_KEY(field)                                             \
  KeySpec {                                                                 \
    #field,                                                                 \
        [](RunConfig& c, const std::string& v) {                            \
          c.field = to_double(#field, v);                                   \
        },                                                                  \
        [](const RunConfig& c) { return format_double(c.field); }           \
  }

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"mode",
       [](RunConfig& c, const std::string& v) {
         c.mode = one_of("mode", v, kModes);
       },
       [](const RunConfig& c) { return c.mode; }},
      {"figure",
       [](RunConfig& c, const std::string& v) {
         c.figure = v.empty() ? v : one_of("figure", v, kFigures);
       },
       [](const RunConfig& c) { return c.figure; }},
      JCPCS_DOUBLE_KEY(g_f),
      JCPCS_DOUBLE_KEY(gamma),
      JCPCS_DOUBLE_KEY(E1),
      JCPCS_DOUBLE_KEY(E2),
      JCPCS_DOUBLE_KEY(vee_E),
      {"preset",
       [](RunConfig& c, const std::string& v) {
         try {
           ablation_preset(v);
         } catch (const UnknownPreset&) {
           reject_value("preset", v, "a known ablation preset");
         }
         c.preset = v;
       },
       [](const RunConfig& c) { return c.preset; }},
      {"ablation",
       [](RunConfig& c, const std::string& v) {
         if (!v.empty()) {
           as_key_type("ablation", v, "an ablation spec", parse_ablation);
         }
         c.ablation = v;
       },
       [](const RunConfig& c) { return c.ablation; }},
      {"ablation_drive",
       [](RunConfig& c, const std::string& v) {
         c.ablation_drive = as_key_type("ablation_drive", v,
                                        "fixed, scanning or both",
                                        parse_drive_selector);
       },
       [](const RunConfig& c) { return to_string(c.ablation_drive); }},
      {"linewidth_surgery",
       [](RunConfig& c, const std::string& v) {
         c.linewidth_surgery = as_key_type("linewidth_surgery", v,
                                           "diagonal or project",
                                           parse_linewidth_surgery);
       },
       [](const RunConfig& c) { return to_string(c.linewidth_surgery); }},
      {"distribution",
       [](RunConfig& c, const std::string& v) {
         c.distribution = one_of("distribution", v, kDistributions);
       },
       [](const RunConfig& c) { return c.distribution; }},
      {"distribution_file",
       [](RunConfig& c, const std::string& v) { c.distribution_file = v; },
       [](const RunConfig& c) { return c.distribution_file; }},
      JCPCS_DOUBLE_KEY(g_max),
      JCPCS_DOUBLE_KEY(F),
      {"mask_geometry",
       [](RunConfig& c, const std::string& v) {
         c.mask_geometry = as_key_type("mask_geometry", v,
                                       "plane, transit or point",
                                       parse_mask_geometry);
       },
       [](const RunConfig& c) { return to_string(c.mask_geometry); }},
      {"mask_positions",
       [](RunConfig& c, const std::string& v) {
         c.mask_positions = to_integer<std::int64_t>("mask_positions", v);
       },
       [](const RunConfig& c) { return std::to_string(c.mask_positions); }},
      {"mask_bins",
       [](RunConfig& c, const std::string& v) {
         c.mask_bins = to_integer<int>("mask_bins", v);
       },
       [](const RunConfig& c) { return std::to_string(c.mask_bins); }},
      {"seed",
       [](RunConfig& c, const std::string& v) {
         c.seed = to_integer<std::uint64_t>("seed", v);
       },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"delta_grid",
       [](RunConfig& c, const std::string& v) {
         c.delta_grid = grid_for_key("delta_grid", v);
       },
       [](const RunConfig& c) { return to_string(c.delta_grid); }},
      {"fine_grid",
       [](RunConfig& c, const std::string& v) {
         if (v == "none") {
           c.fine_grid.reset();
         } else {
           c.fine_grid = grid_for_key("fine_grid", v);
         }
       },
       [](const RunConfig& c) {
         return c.fine_grid ? to_string(*c.fine_grid) : std::string("none");
       }},
      {"background_subtract",
       [](RunConfig& c, const std::string& v) {
         c.background_subtract = to_bool("background_subtract", v);
       },
       [](const RunConfig& c) {
         return std::string(c.background_subtract ? "true" : "false");
       }},
      JCPCS_DOUBLE_KEY(peak_nominal),
      {"peak_search",
       [](RunConfig& c, const std::string& v) {
         c.peak_search = range_for_key("peak_search", v);
       },
       [](const RunConfig& c) {
         return format_double(c.peak_search.first) + ":" +
                format_double(c.peak_search.second);
       }},
      JCPCS_DOUBLE_KEY(peak_half_width),
      {"n_max",
       [](RunConfig& c, const std::string& v) {
         c.n_max = to_integer<int>("n_max", v);
       },
       [](const RunConfig& c) { return std::to_string(c.n_max); }},
      {"m_max",
       [](RunConfig& c, const std::string& v) {
         c.m_max = to_integer<int>("m_max", v);
       },
       [](const RunConfig& c) { return std::to_string(c.m_max); }},
      JCPCS_DOUBLE_KEY(edge_tolerance),
      {"out",
       [](RunConfig& c, const std::string& v) { c.out = v; },
       [](const RunConfig& c) { return c.out.string(); }},
  };
  return table;
}

#undef JCPCS_DOUBLE_KEY

const KeySpec& find_key(const std::string& key) {
  for (const auto& spec : key_table()) {
    if (spec.name == key) return spec;
  }
  throw UnknownKey("'" + key + "'");
}

bool uses_vee_grid(const RunConfig& c) {
  return c.mode == "scan-vee" ||
         (c.mode == "reproduce-figure" && c.figure == "5");
}

// Mode-dependent defaults for keys the user did not set.
void resolve_defaults(RunConfig& c, const std::set<std::string>& explicit_keys) {
  auto unset = [&](const char* key) { return !explicit_keys.count(key); };
  if (unset("delta_grid")) {
    if (uses_vee_grid(c)) {
      c.delta_grid = {0.7, 1.3, 0.002};
      if (unset("fine_grid")) c.fine_grid.reset();
    } else if (c.mode == "reproduce-figure" && c.figure == "2") {
      c.delta_grid = {-1.5, 3.0, 0.02};
    }
  } else if (unset("fine_grid")) {
    c.fine_grid.reset();
  }
  // The figure 2 grid reaches the degenerate-tone region near
  // delta_tilde = -1, where the beat harmonics decay slowly.
  if (unset("m_max") && c.mode == "reproduce-figure" && c.figure == "2") {
    c.m_max = 6;
  }
  if (unset("distribution") && c.mode == "reproduce-figure" &&
      (c.figure == "2" || c.figure == "4a" || c.figure == "4b")) {
    c.distribution = "mask";
  }
}

void validate(const RunConfig& c) {
  if (c.mode == "reproduce-figure" && c.figure.empty()) {
    throw MissingRequired("'figure' (required by mode reproduce-figure)");
  }
  if (c.distribution == "file" && c.distribution_file.empty()) {
    throw MissingRequired("'distribution_file' (required by distribution = file)");
  }
  if (c.out.empty()) throw MissingRequired("'out'");
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0)) throw TypeMismatch("key '" + std::string(key) + "' must be > 0");
  };
  positive("g_f", c.g_f);
  positive("g_max", c.g_max);
  positive("peak_half_width", c.peak_half_width);
  positive("edge_tolerance", c.edge_tolerance);
  if (c.gamma < 0.0) throw TypeMismatch("key 'gamma' must be >= 0");
  if (c.E1 < 0.0) throw TypeMismatch("key 'E1' must be >= 0");
  if (c.E2 < 0.0) throw TypeMismatch("key 'E2' must be >= 0");
  if (c.vee_E < 0.0) throw TypeMismatch("key 'vee_E' must be >= 0");
  if (!(c.F > 0.0 && c.F < 1.0)) throw TypeMismatch("key 'F' must be in (0, 1)");
  if (c.n_max < 1) throw TypeMismatch("key 'n_max' must be >= 1");
  if (c.m_max < 1) throw TypeMismatch("key 'm_max' must be >= 1");
  if (c.mask_bins < 1) throw TypeMismatch("key 'mask_bins' must be >= 1");
  if (c.mask_positions < 100'000) {
    throw TypeMismatch("key 'mask_positions' must be >= 100000");
  }
}

// Files produced by one run; removed again unless the run completes.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) fs::remove(f, ec);
    if (created_dir_) fs::remove(dir_, ec);
  }

  std::ofstream open(const std::string& name) {
    if (!fs::exists(dir_)) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw IoError("cannot create '" + dir_.string() + "'");
      created_dir_ = true;
    }
    const fs::path path = dir_ / name;
    files_.push_back(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "'");
    return out;
  }

  void close(std::ofstream& out) {
    out.close();
    if (!out) throw IoError("write failed in '" + dir_.string() + "'");
  }

  std::vector<fs::path> commit() {
    committed_ = true;
    return files_;
  }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
  bool created_dir_ = false;
  bool committed_ = false;
};

void write_config_echo(std::ostream& out, const RunConfig& c) {
  std::istringstream lines(echo_config(c));
  std::string line;
  while (std::getline(lines, line)) out << kConfigEchoPrefix << line << '\n';
}

struct Curve {
  std::string label;
  Spectrum spectrum;
};

void write_curve(OutputSet& files, const RunConfig& c, const std::string& name,
                 const Spectrum& spec) {
  std::ofstream out = files.open(name);
  write_config_echo(out, c);
  write_spectrum(out, spec);
  files.close(out);
}

void write_peak_summary(OutputSet& files, const RunConfig& c,
                        const std::string& name,
                        const std::vector<std::pair<std::string, PeakReport>>& peaks,
                        const std::vector<std::string>& annotations) {
  std::ofstream out = files.open(name);
  out << "# jcpcs peak summary\n";
  write_config_echo(out, c);
  for (const auto& a : annotations) out << "# " << a << '\n';
  if (!peaks.empty()) {
    out << "# nominal = " << format_double(peaks.front().second.nominal) << '\n';
    out << "# fit_method = " << peaks.front().second.fit_method << '\n';
  }
  out << "# columns: curve shift apex height window_lo window_hi fit_residual\n";
  for (const auto& [label, r] : peaks) {
    out << label << ' ' << format_double(r.location) << ' '
        << format_double(r.apex) << ' ' << format_double(r.height) << ' '
        << format_double(r.window.first) << ' '
        << format_double(r.window.second) << ' '
        << format_double(r.fit_residual) << '\n';
  }
  files.close(out);
}

PhysicalParams physical_params(const RunConfig& c) {
  PhysicalParams p;
  p.g = c.g_f;
  p.g_f = c.g_f;
  p.gamma = c.gamma;
  p.E1 = c.E1;
  p.E2 = c.E2;
  p.validate();
  return p;
}

ScanOptions scan_options(const RunConfig& c, const RunOptions& o) {
  ScanOptions s;
  s.dims = SystemDims{c.n_max};
  s.floquet.m_max = c.m_max;
  s.floquet.edge_tolerance = c.edge_tolerance;
  s.threads = o.threads;
  return s;
}

VeeParams vee_params(const RunConfig& c) {
  VeeParams v;
  v.g = c.g_f;
  v.E = c.vee_E;
  v.gamma = c.gamma;
  v.validate();
  return v;
}

PeakReport peak_2pcr(const RunConfig& c, const Spectrum& spec) {
  return find_peak_near(spec, c.peak_nominal, c.peak_search,
                        c.peak_half_width);
}

PeakReport peak_vee(const RunConfig& c, const Spectrum& spec) {
  return find_peak_near(spec, 1.0, {0.8, 1.2}, c.peak_half_width);
}

// w2 and the E1 = 0 background for one preset.
std::pair<Spectrum, Spectrum> scan_with_background(
    const RunConfig& c, const AblationSpec& ab, const CouplingDistribution& dist,
    const std::vector<double>& grid, const RunOptions& o) {
  const PhysicalParams p = physical_params(c);
  Spectrum w2 = scan_2pcr(p, dist, grid, ab, false, scan_options(c, o));
  PhysicalParams dark = p;
  dark.E1 = 0.0;
  Spectrum background =
      scan_2pcr(dark, dist, grid, ab, false, scan_options(c, o));
  Spectrum d2 = w2;
  d2.observable = Observable::Delta2;
  for (std::size_t i = 0; i < d2.size(); ++i) {
    d2.values[i] -= background.values[i];
  }
  return {w2, d2};
}

AblationSpec preset_for(const RunConfig& c, const std::string& preset) {
  RunConfig copy = c;
  copy.preset = preset;
  copy.ablation.clear();
  return resolve_ablation(copy);
}

void run_figure(OutputSet& files, const RunConfig& c, const RunOptions& o) {
  const std::string prefix = "fig" + c.figure + "_";
  const std::vector<double> grid = resolve_grid(c);
  std::vector<std::pair<std::string, PeakReport>> peaks;
  std::vector<std::string> notes;

  if (c.figure == "5") {
    const VeeParams v = vee_params(c);
    const std::vector<std::pair<std::string, std::string>> curves = {
        {"full", "none"}, {"ablated", "vee-competition"},
        {"jump-free", "no-jumps"}};
    for (const auto& [label, preset] : curves) {
      VeeScanOptions vo;
      vo.threads = o.threads;
      const Spectrum s =
          vee_master_equation_scan(v, grid, ablation_preset(preset), vo);
      write_curve(files, c, prefix + label + ".dat", s);
      peaks.emplace_back(label, peak_vee(c, s));
    }
    try {
      notes.push_back("predicted_shift = " + format_double(vee_peak_shift(v)));
    } catch (const FormulaDomain&) {
      notes.push_back("predicted_shift = undefined");
    }
    write_peak_summary(files, c, prefix + "peaks.txt", peaks, notes);
    return;
  }

  const CouplingDistribution dist = resolve_distribution(c);
  if (c.figure == "2") {
    const auto [w2, d2] = scan_with_background(c, resolve_ablation(c), dist, grid, o);
    write_curve(files, c, prefix + "w2.dat", w2);
    write_curve(files, c, prefix + "delta2.dat", d2);
    peaks.emplace_back("w2", peak_2pcr(c, w2));
    peaks.emplace_back("delta2", peak_2pcr(c, d2));
    write_peak_summary(files, c, prefix + "peaks.txt", peaks, notes);
    return;
  }

  std::vector<std::string> presets;
  if (c.figure == "3" || c.figure == "4a") presets = {"none", "no-1m-2m"};
  if (c.figure == "4b") presets = {"no-1m-2m+no-1m-linewidth", "combined-all"};
  const PhysicalParams p = physical_params(c);
  for (const auto& preset : presets) {
    const Spectrum s = scan_2pcr(p, dist, grid, preset_for(c, preset),
                                 c.background_subtract, scan_options(c, o));
    write_curve(files, c, prefix + preset + ".dat", s);
    peaks.emplace_back(preset, peak_2pcr(c, s));
  }
  write_peak_summary(files, c, prefix + "peaks.txt", peaks, notes);
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) {
    throw InvalidArgument("grid '" + text + "' is not LO:HI:STEP");
  }
  GridSpec g;
  try {
    g.lo = to_double("grid", text.substr(0, a));
    g.hi = to_double("grid", text.substr(a + 1, b - a - 1));
    g.step = to_double("grid", text.substr(b + 1));
  } catch (const TypeMismatch&) {
    throw InvalidArgument("grid '" + text + "' is not LO:HI:STEP");
  }
  if (!(g.hi >= g.lo) || !(g.step > 0.0)) {
    throw InvalidArgument("grid '" + text + "' needs LO <= HI and STEP > 0");
  }
  return g;
}

std::string to_string(const GridSpec& grid) {
  return format_double(grid.lo) + ":" + format_double(grid.hi) + ":" +
         format_double(grid.step);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& spec : key_table()) out.push_back(spec.name);
    return out;
  }();
  return keys;
}

RunConfig parse_config(std::istream& in, const ConfigOverrides& overrides) {
  std::map<std::string, std::string> values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw TypeMismatch("line " + std::to_string(number) +
                         " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    find_key(key);
    if (values.count(key)) {
      throw TypeMismatch("key '" + key + "' given twice");
    }
    values[key] = trim(line.substr(eq + 1));
  }
  for (const auto& [key, value] : overrides) {
    find_key(key);
    values[key] = value;
  }

  RunConfig config;
  std::set<std::string> explicit_keys;
  // Table order, so that checks of one key never depend on file order.
  for (const auto& spec : key_table()) {
    const auto it = values.find(spec.name);
    if (it == values.end()) continue;
    spec.set(config, it->second);
    explicit_keys.insert(spec.name);
  }
  resolve_defaults(config, explicit_keys);
  validate(config);
  return config;
}

RunConfig parse_config_text(const std::string& text,
                            const ConfigOverrides& overrides) {
  std::istringstream in(text);
  return parse_config(in, overrides);
}

RunConfig parse_config_file(const fs::path& path,
                            const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  return parse_config(in, overrides);
}

std::string echo_config(const RunConfig& config) {
  std::string out;
  for (const auto& spec : key_table()) {
    out += spec.name + " = " + spec.get(config) + "\n";
  }
  return out;
}

std::string extract_config_echo(std::istream& in) {
  const std::string prefix = kConfigEchoPrefix;
  std::string out, line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) out += line.substr(prefix.size()) + "\n";
  }
  return out;
}

AblationSpec resolve_ablation(const RunConfig& c) {
  AblationSpec ab = ablation_preset(c.preset);
  for (auto& t : ab.zeroed_drive_transitions) {
    if (t.drive == DriveSelector::Scanning) t.drive = c.ablation_drive;
  }
  if (!ab.linewidth_removed_levels.empty()) {
    ab.linewidth_surgery = c.linewidth_surgery;
  }
  if (!c.ablation.empty()) ab = combine(ab, parse_ablation(c.ablation));
  return ab;
}

CouplingDistribution resolve_distribution(const RunConfig& c) {
  if (c.distribution == "delta") return delta_distribution(c.g_f);
  if (c.distribution == "file") {
    std::ifstream in(c.distribution_file);
    if (!in) {
      throw IoError("cannot read distribution '" + c.distribution_file + "'");
    }
    return read_distribution(in);
  }
  MaskOptions m;
  m.g_max = c.g_max;
  m.F = c.F;
  m.n_positions = c.mask_positions;
  m.n_bins = c.mask_bins;
  m.seed = c.seed;
  m.geometry = c.mask_geometry;
  return build_mask_distribution(m);
}

std::vector<double> resolve_grid(const RunConfig& c) {
  const GridSpec& g = c.delta_grid;
  if (!c.fine_grid) return make_grid(g.lo, g.hi, g.step);
  const GridSpec& f = *c.fine_grid;
  return make_refined_grid(g.lo, g.hi, g.step, f.lo, f.hi, f.step);
}

std::vector<fs::path> run(const RunConfig& c, const RunOptions& o) {
  OutputSet files(c.out);
  if (c.mode == "pg-dist") {
    const CouplingDistribution dist = resolve_distribution(c);
    std::ofstream out = files.open("pg.dat");
    write_config_echo(out, c);
    write_distribution(out, dist);
    files.close(out);
  } else if (c.mode == "scan-vee") {
    VeeScanOptions vo;
    vo.threads = o.threads;
    const Spectrum s = vee_master_equation_scan(
        vee_params(c), resolve_grid(c), resolve_ablation(c), vo);
    write_curve(files, c, "vee.dat", s);
  } else if (c.mode == "scan-2pcr" || c.mode == "peak") {
    const Spectrum s =
        scan_2pcr(physical_params(c), resolve_distribution(c), resolve_grid(c),
                  resolve_ablation(c), c.background_subtract, scan_options(c, o));
    write_curve(files, c, "2pcr.dat", s);
    if (c.mode == "peak") {
      write_peak_summary(files, c, "peak.txt", {{c.preset, peak_2pcr(c, s)}},
                         {});
    }
  } else {
    run_figure(files, c, o);
  }
  return files.commit();
}

}  // namespace jcpcs
