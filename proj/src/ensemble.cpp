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

#include "jcpcs/ensemble.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "jcpcs/errors.hpp"

namespace jcpcs {

namespace {

// Portable [0, 1) double from the top 53 bits of a 64-bit draw.
double unit_draw(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

std::string node_tag(double g) {
  std::ostringstream os;
  os << std::setprecision(10) << "at g = " << g << ": ";
  return os.str();
}

template <class Fn>
auto at_node(double g, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(node_tag(g) + e.what(), e.code());
  }
}

}  // namespace

double CouplingDistribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) m += weights[i] * nodes[i];
  return m;
}

void CouplingDistribution::validate() const {
  if (nodes.empty()) throw InvalidArgument("distribution has no nodes");
  if (nodes.size() != weights.size()) {
    throw InvalidArgument("distribution nodes and weights differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] > 0.0)) throw InvalidArgument("distribution node <= 0");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) {
      throw InvalidArgument("distribution nodes must be strictly increasing");
    }
    if (!(weights[i] >= 0.0)) throw InvalidArgument("negative weight");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("distribution weights sum to " +
                          std::to_string(total));
  }
}

std::string to_string(MaskGeometry geometry) {
  switch (geometry) {
    case MaskGeometry::Plane:
      return "plane";
    case MaskGeometry::Transit:
      return "transit";
    case MaskGeometry::Point:
      return "point";
  }
  return "?";
}

MaskGeometry parse_mask_geometry(const std::string& text) {
  if (text == "plane") return MaskGeometry::Plane;
  if (text == "transit") return MaskGeometry::Transit;
  if (text == "point") return MaskGeometry::Point;
  throw InvalidArgument("unknown mask geometry '" + text +
                        "' (expected plane, transit or point)");
}

CouplingDistribution build_mask_distribution(const MaskOptions& o) {
  if (!(o.F > 0.0 && o.F < 1.0)) throw InvalidArgument("F must lie in (0, 1)");
  if (!(o.g_max > 0.0)) throw InvalidArgument("g_max must be > 0");
  if (o.n_bins < 1) throw InvalidArgument("n_bins must be >= 1");
  if (o.geometry == MaskGeometry::Point) {
    CouplingDistribution d = delta_distribution(o.g_max);
    d.F = o.F;
    return d;
  }
  if (o.n_positions < 100'000) {
    throw InvalidArgument("n_positions must be >= 1e5");
  }

  // Lengths in units of the waist w0 and the wavelength lambda.
  const double half_x = 0.5;
  const double half_z = 0.05;
  // Beyond |y| = sqrt(ln 1/F) every atom is below the cutoff.
  const double half_y = std::sqrt(std::log(1.0 / o.F));
  const double lo = o.F * o.g_max;
  const double width = (o.g_max - lo) / o.n_bins;

  std::mt19937_64 rng(o.seed);
  std::vector<std::int64_t> counts(o.n_bins, 0);
  std::int64_t kept = 0;
  for (std::int64_t k = 0; k < o.n_positions; ++k) {
    const double x = (2.0 * unit_draw(rng) - 1.0) * half_x;
    const double z = (2.0 * unit_draw(rng) - 1.0) * half_z;
    double r2 = x * x;
    if (o.geometry == MaskGeometry::Transit) {
      const double y = (2.0 * unit_draw(rng) - 1.0) * half_y;
      r2 += y * y;
    }
    const double g =
        o.g_max * std::exp(-r2) * std::cos(2.0 * std::numbers::pi * z);
    if (g < lo) continue;
    const int bin = std::min(o.n_bins - 1, int((g - lo) / width));
    ++counts[bin];
    ++kept;
  }
  if (kept == 0) {
    throw EmptySupport("no sampled coupling reaches F * g_max = " +
                       std::to_string(lo));
  }

  CouplingDistribution d;
  d.F = o.F;
  d.g_max = o.g_max;
  for (int b = 0; b < o.n_bins; ++b) {
    if (counts[b] == 0) continue;
    d.nodes.push_back(lo + (b + 0.5) * width);
    d.weights.push_back(double(counts[b]) / double(kept));
  }
  return d;
}

CouplingDistribution delta_distribution(double g_f) {
  if (!(g_f > 0.0)) throw InvalidArgument("g_f must be > 0");
  CouplingDistribution d;
  d.nodes = {g_f};
  d.weights = {1.0};
  d.F = 1.0;
  d.g_max = g_f;
  return d;
}

double average_observable(const CouplingDistribution& dist,
                          const std::function<double(double)>& f) {
  dist.validate();
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double g = dist.nodes[i];
    total += dist.weights[i] * at_node(g, [&] { return f(g); });
  }
  return total;
}

Eigen::MatrixXcd average_matrix(
    const CouplingDistribution& dist,
    const std::function<Eigen::MatrixXcd(double)>& f) {
  dist.validate();
  Eigen::MatrixXcd total;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double g = dist.nodes[i];
    Eigen::MatrixXcd m = at_node(g, [&] { return f(g); });
    if (i == 0) {
      total = dist.weights[i] * m;
    } else {
      total += dist.weights[i] * m;
    }
  }
  return total;
}

void write_distribution(std::ostream& out, const CouplingDistribution& dist) {
  out << "# coupling distribution P(g)\n";
  out << "# F = " << std::setprecision(17) << dist.F << "\n";
  out << "# g_max = " << dist.g_max << "\n";
  out << "# columns: g weight\n";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    out << dist.nodes[i] << ' ' << dist.weights[i] << '\n';
  }
}

CouplingDistribution read_distribution(std::istream& in) {
  CouplingDistribution d;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream meta(line.substr(first + 1));
      std::string key, eq;
      double value = 0.0;
      if (meta >> key >> eq >> value && eq == "=") {
        if (key == "F") d.F = value;
        if (key == "g_max") d.g_max = value;
      }
      continue;
    }
    std::istringstream row(line);
    double g = 0.0, w = 0.0;
    if (!(row >> g >> w)) {
      throw InvalidArgument("distribution table line " +
                            std::to_string(line_no) + " is not 'g weight'");
    }
    d.nodes.push_back(g);
    d.weights.push_back(w);
  }
  double total = 0.0;
  for (double w : d.weights) total += w;
  if (!(total > 0.0)) throw EmptySupport("distribution table has no weight");
  for (double& w : d.weights) w /= total;
  if (d.g_max == 0.0 && !d.nodes.empty()) d.g_max = d.nodes.back();
  // Renormalisation can leave a few ulps of slack.
  total = 0.0;
  for (double w : d.weights) total += w;
  if (!d.weights.empty()) d.weights.back() += 1.0 - total;
  d.validate();
  return d;
}

}  // namespace jcpcs
