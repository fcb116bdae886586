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

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "jcpcs/core_operators.hpp"

namespace jcpcs {

// Discrete coupling-strength distribution P(g) on [F g_max, g_max].
struct CouplingDistribution {
  std::vector<double> nodes;    // strictly increasing, kappa units
  std::vector<double> weights;  // nonnegative, sum to 1
  double F = 0.0;
  double g_max = 0.0;

  std::size_t size() const { return nodes.size(); }
  double mean() const;
  // Throws InvalidArgument on any violated invariant.
  void validate() const;
};

enum class MaskGeometry {
  // Atoms at rest in the mask plane: transverse offset x across the waist
  // and longitudinal offset z about the antinode, second transverse
  // coordinate at the waist centre.
  Plane,
  // As Plane, plus a uniformly distributed position along the beam
  // direction through the Gaussian mode (the atom transits the mode).
  Transit,
  // Every atom at the antinode: P(g) = delta(g - g_max).
  Point,
};

std::string to_string(MaskGeometry geometry);
MaskGeometry parse_mask_geometry(const std::string& text);

struct MaskOptions {
  double g_max = 9.0;
  double F = 0.35;
  std::int64_t n_positions = 1'000'000;
  int n_bins = 64;
  std::uint64_t seed = 20010101;
  MaskGeometry geometry = MaskGeometry::Plane;
};

// Samples atom positions uniformly over a w0 x lambda/10 mask centred on an
// antinode, maps them through g = g_max exp(-r^2/w0^2) cos(2 pi z / lambda),
// discards g < F g_max and histograms the rest. Empty bins are dropped.
CouplingDistribution build_mask_distribution(const MaskOptions& options);

CouplingDistribution delta_distribution(double g_f);

// sum_i w_i f(g_i), reduced in node order. Library errors raised by f are
// rethrown with the offending node in the message and their code kept.
double average_observable(const CouplingDistribution& dist,
                          const std::function<double(double)>& f);

// Matrix-level average sum_i w_i rho(g_i).
Eigen::MatrixXcd average_matrix(
    const CouplingDistribution& dist,
    const std::function<Eigen::MatrixXcd(double)>& f);

// Two-column text table "g weight" with '#' comments.
void write_distribution(std::ostream& out, const CouplingDistribution& dist);
// Reads a table written by write_distribution (or digitised elsewhere);
// weights are renormalised to sum to 1.
CouplingDistribution read_distribution(std::istream& in);

}  // namespace jcpcs
