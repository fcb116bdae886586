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

#include "jcpcs/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "jcpcs/errors.hpp"
#include "jcpcs/parallel.hpp"

namespace jcpcs {

namespace {

std::string point_tag(double delta_tilde, double g) {
  std::ostringstream os;
  os << std::setprecision(10) << "at delta_tilde = " << delta_tilde
     << ", g = " << g << ": ";
  return os.str();
}

// Per-node Liouvillian pieces are independent of delta, so a scan builds
// them once per node and reuses them along the grid.
std::vector<LiouvillianParts> node_parts(const PhysicalParams& p,
                                         const CouplingDistribution& dist,
                                         const AblationSpec& ab,
                                         const SystemDims& dims) {
  std::vector<LiouvillianParts> parts;
  parts.reserve(dist.size());
  for (double g : dist.nodes) {
    PhysicalParams q = p;
    q.g = g;
    try {
      parts.push_back(assemble_liouvillian(q, dims, ab));
    } catch (const Error& e) {
      std::ostringstream os;
      os << std::setprecision(10) << "at g = " << g << ": " << e.what();
      throw Error(os.str(), e.code());
    }
  }
  return parts;
}

std::vector<double> scan_rates(const PhysicalParams& p,
                               const CouplingDistribution& dist,
                               const std::vector<double>& grid,
                               const AblationSpec& ab,
                               const ScanOptions& options) {
  const SystemDims& dims = options.dims;
  const std::vector<LiouvillianParts> parts = node_parts(p, dist, ab, dims);
  const std::size_t nodes = dist.size();
  const auto per_point = parallel_map<double>(
      grid.size() * nodes, options.threads, [&](std::size_t task) {
        const std::size_t i = task / nodes;
        const std::size_t j = task % nodes;
        const double delta = p.g_f * (1.0 + grid[i]);
        try {
          const LiouvillianParts& l = parts[j];
          const FloquetSolution sol =
              solve_floquet(l.L0, l.L_a, l.L_b, delta, dims, options.floquet);
          return two_photon_rate(sol.rho(0), dims);
        } catch (const Error& e) {
          throw Error(point_tag(grid[i], dist.nodes[j]) + e.what(), e.code());
        }
      });
  std::vector<double> values(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      total += dist.weights[j] * per_point[i * nodes + j];
    }
    values[i] = total;
  }
  return values;
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidArgument("delta_tilde grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw InvalidArgument("delta_tilde grid must be strictly increasing");
    }
  }
}

// Vertex of the parabola through three points.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2,
                       double y2) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (curvature == 0.0) return x1;
  return 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
}

// Least-squares quadratic; returns the RMS residual.
double quadratic_rms(const std::vector<double>& x, const std::vector<double>& y,
                     double center) {
  Eigen::MatrixXd a(x.size(), 3);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = x[i] - center;
    a(i, 0) = 1.0;
    a(i, 1) = u;
    a(i, 2) = u * u;
    b(i) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return std::sqrt((a * c - b).squaredNorm() / double(x.size()));
}

}  // namespace

std::string to_string(Observable tag) {
  switch (tag) {
    case Observable::W2:
      return "w2";
    case Observable::Delta2:
      return "delta2";
    case Observable::N1:
      return "n1";
  }
  return "?";
}

Observable parse_observable(const std::string& text) {
  if (text == "w2") return Observable::W2;
  if (text == "delta2") return Observable::Delta2;
  if (text == "n1") return Observable::N1;
  throw InvalidArgument("unknown observable '" + text + "'");
}

void Spectrum::validate() const {
  if (delta_tilde.size() != values.size()) {
    throw InvalidArgument("spectrum columns differ in length");
  }
  check_grid(delta_tilde);
  if (observable != Observable::Delta2) {
    for (double v : values) {
      if (v < -1e-12) {
        throw InvalidArgument("negative value in a nonnegative spectrum");
      }
    }
  }
}

double two_photon_rate(const DensityMatrix& rho, const SystemDims& dims) {
  const OperatorMatrix a = build_annihilation(dims);
  const OperatorMatrix ad = a.adjoint();
  return (ad * ad * a * a * rho).trace().real();
}

double one_photon_rate(const DensityMatrix& rho, const SystemDims& dims) {
  const OperatorMatrix a = build_annihilation(dims);
  return (a.adjoint() * a * rho).trace().real();
}

double two_photon_rate_at(const PhysicalParams& p, const AblationSpec& ab,
                          const ScanOptions& options) {
  const LiouvillianParts l = assemble_liouvillian(p, options.dims, ab);
  const FloquetSolution sol =
      solve_floquet(l.L0, l.L_a, l.L_b, p.delta, options.dims, options.floquet);
  return two_photon_rate(sol.rho(0), options.dims);
}

Spectrum scan_2pcr(const PhysicalParams& p, const CouplingDistribution& dist,
                   const std::vector<double>& grid, const AblationSpec& ab,
                   bool background_subtract, const ScanOptions& options) {
  check_grid(grid);
  dist.validate();
  ab.validate();
  Spectrum spec;
  spec.delta_tilde = grid;
  spec.params = p;
  spec.ablation = ab;
  spec.values = scan_rates(p, dist, grid, ab, options);
  spec.observable = Observable::W2;
  if (background_subtract) {
    PhysicalParams dark = p;
    dark.E1 = 0.0;
    const std::vector<double> background =
        scan_rates(dark, dist, grid, ab, options);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      spec.values[i] -= background[i];
    }
    spec.observable = Observable::Delta2;
  }
  return spec;
}

PeakReport find_peak(const Spectrum& spec, double nominal,
                     std::pair<double, double> window) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec.delta_tilde[i] >= window.first - 1e-12 &&
        spec.delta_tilde[i] <= window.second + 1e-12) {
      idx.push_back(i);
    }
  }
  if (idx.size() < 5) {
    throw InvalidArgument("peak window holds " + std::to_string(idx.size()) +
                          " grid points, need at least 5");
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < idx.size(); ++k) {
    if (spec.values[idx[k]] > spec.values[idx[best]]) best = k;
  }
  if (best == 0 || best + 1 == idx.size()) {
    std::ostringstream os;
    os << "maximum sits on the window boundary at delta_tilde = "
       << spec.delta_tilde[idx[best]];
    throw NoInteriorPeak(os.str());
  }
  const std::size_t i = idx[best];
  const auto& x = spec.delta_tilde;
  const auto& y = spec.values;

  PeakReport r;
  r.window = window;
  r.nominal = nominal;
  r.fit_method = "quadratic-3pt";
  r.apex = parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
  // Height of the same parabola at its vertex (Newton form).
  const double d01 = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
  const double d12 = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  const double c2 = (d12 - d01) / (x[i + 1] - x[i - 1]);
  r.height = y[i - 1] + d01 * (r.apex - x[i - 1]) +
             c2 * (r.apex - x[i - 1]) * (r.apex - x[i]);
  r.location = r.apex - nominal;

  const std::size_t lo = best >= 2 ? best - 2 : 0;
  const std::size_t hi = std::min(idx.size() - 1, lo + 4);
  std::vector<double> fx, fy;
  for (std::size_t k = lo; k <= hi; ++k) {
    fx.push_back(x[idx[k]]);
    fy.push_back(y[idx[k]]);
  }
  const double scale = std::abs(r.height) > 0.0 ? std::abs(r.height) : 1.0;
  r.fit_residual = quadratic_rms(fx, fy, x[i]) / scale;
  return r;
}

PeakReport find_peak_near(const Spectrum& spec, double nominal,
                          std::pair<double, double> search,
                          double half_width) {
  std::size_t best = spec.size();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double x = spec.delta_tilde[i];
    if (x < search.first || x > search.second) continue;
    if (best == spec.size() || spec.values[i] > spec.values[best]) best = i;
  }
  if (best == spec.size()) {
    throw InvalidArgument("no grid points inside the peak search range");
  }
  const double center = spec.delta_tilde[best];
  return find_peak(spec, nominal, {center - half_width, center + half_width});
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw InvalidArgument("grid needs lo <= hi and step > 0");
  }
  const long n = long(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (long k = 0; k <= n; ++k) grid.push_back(lo + double(k) * step);
  return grid;
}

std::vector<double> make_refined_grid(double lo, double hi, double coarse_step,
                                      double fine_lo, double fine_hi,
                                      double fine_step) {
  std::vector<double> grid;
  for (double x : make_grid(lo, hi, coarse_step)) {
    if (x < fine_lo - 1e-12 || x > fine_hi + 1e-12) grid.push_back(x);
  }
  const double flo = std::max(lo, fine_lo);
  const double fhi = std::min(hi, fine_hi);
  if (fhi >= flo) {
    for (double x : make_grid(flo, fhi, fine_step)) grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a < 1e-12; }),
             grid.end());
  return grid;
}

const std::vector<std::string>& ablation_preset_names() {
  static const std::vector<std::string> names = {
      "none",            "no-1m-2m", "keep-only-resonant",
      "no-1m-linewidth", "no-0-1p",  "combined-all",
      "vee-competition", "no-jumps"};
  return names;
}

AblationSpec ablation_preset(const std::string& name) {
  const auto plus = name.find('+');
  if (plus != std::string::npos) {
    return combine(ablation_preset(name.substr(0, plus)),
                   ablation_preset(name.substr(plus + 1)));
  }
  using L = DressedLevel;
  AblationSpec ab;
  if (name == "none") return ab;
  if (name == "no-1m-2m") {
    ab.zeroed_drive_transitions = {
        {L::minus(1), L::minus(2), DriveSelector::Scanning}};
    return ab;
  }
  if (name == "keep-only-resonant") {
    ab.keep_only_transitions = std::vector<DrivePathway>{
        {L::ground(), L::minus(1), DriveSelector::Fixed},
        {L::minus(1), L::plus(2), DriveSelector::Scanning}};
    return ab;
  }
  if (name == "no-1m-linewidth") {
    ab.linewidth_removed_levels = {L::minus(1)};
    ab.drop_jump_term = true;
    return ab;
  }
  if (name == "no-0-1p") {
    ab.zeroed_drive_transitions = {
        {L::ground(), L::plus(1), DriveSelector::Scanning}};
    return ab;
  }
  if (name == "vee-competition") {
    ab.zeroed_drive_transitions = {
        {L::ground(), L::minus(1), DriveSelector::Fixed}};
    return ab;
  }
  if (name == "no-jumps") {
    ab.drop_jump_term = true;
    return ab;
  }
  if (name == "combined-all") {
    return ablation_preset("no-1m-2m+no-1m-linewidth+no-0-1p");
  }
  throw UnknownPreset("'" + name + "'");
}

void write_spectrum(std::ostream& out, const Spectrum& spec) {
  const PhysicalParams& p = spec.params;
  out << std::setprecision(17);
  out << "# jcpcs spectrum\n";
  out << "# observable = " << to_string(spec.observable) << "\n";
  out << "# g_f = " << p.g_f << "\n";
  out << "# kappa = " << p.kappa << "\n";
  out << "# gamma = " << p.gamma << "\n";
  out << "# E1 = " << p.E1 << "\n";
  out << "# E2 = " << p.E2 << "\n";
  out << "# ablation = " << spec.ablation.describe() << "\n";
  for (const auto& line : spec.annotations) out << "# " << line << "\n";
  out << "# columns: delta_tilde value\n";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out << spec.delta_tilde[i] << ' ' << spec.values[i] << '\n';
  }
}

Spectrum read_spectrum(std::istream& in) {
  Spectrum spec;
  std::string line;
  std::map<std::string, std::string> header;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos) {
        header[line.substr(2, eq - 2)] = line.substr(eq + 3);
      }
      continue;
    }
    std::istringstream row(line);
    double x = 0.0, y = 0.0;
    if (!(row >> x >> y)) {
      throw InvalidArgument("spectrum row '" + line + "' is not two numbers");
    }
    spec.delta_tilde.push_back(x);
    spec.values.push_back(y);
  }
  auto number = [&](const char* key, double& field) {
    if (auto it = header.find(key); it != header.end()) {
      field = std::stod(it->second);
    }
  };
  if (auto it = header.find("observable"); it != header.end()) {
    spec.observable = parse_observable(it->second);
  }
  number("g_f", spec.params.g_f);
  number("kappa", spec.params.kappa);
  number("gamma", spec.params.gamma);
  number("E1", spec.params.E1);
  number("E2", spec.params.E2);
  if (auto it = header.find("ablation"); it != header.end()) {
    spec.ablation = parse_ablation(it->second);
  }
  spec.validate();
  return spec;
}

}  // namespace jcpcs
