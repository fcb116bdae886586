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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "jcpcs/ensemble.hpp"
#include "jcpcs/errors.hpp"

using namespace jcpcs;

namespace {

double weight_sum(const CouplingDistribution& d) {
  double total = 0.0;
  for (double w : d.weights) total += w;
  return total;
}

}  // namespace

TEST_CASE("delta distribution is a single unit-weight node") {
  const CouplingDistribution d = delta_distribution(9.0);
  CHECK(d.size() == 1);
  CHECK(d.nodes[0] == 9.0);
  CHECK(d.weights[0] == 1.0);
  CHECK(d.mean() == 9.0);
  CHECK_THROWS_AS(delta_distribution(0.0), InvalidArgument);
}

TEST_CASE("mask distribution is a normalised histogram above the cutoff") {
  for (const MaskGeometry geometry : {MaskGeometry::Plane, MaskGeometry::Transit}) {
    MaskOptions o;
    o.F = 0.6;
    o.n_positions = 200'000;
    o.n_bins = 40;
    o.geometry = geometry;
    const CouplingDistribution d = build_mask_distribution(o);
    CHECK_NOTHROW(d.validate());
    CHECK(std::abs(weight_sum(d) - 1.0) < 1e-12);
    CHECK(d.nodes.front() >= o.F * o.g_max);
    CHECK(d.nodes.back() <= o.g_max);
    CHECK(int(d.size()) <= o.n_bins);
    CHECK(d.F == o.F);
  }
}

TEST_CASE("mask sampling is deterministic in the seed") {
  MaskOptions o;
  o.F = 0.8;
  o.n_positions = 100'000;
  const CouplingDistribution a = build_mask_distribution(o);
  const CouplingDistribution b = build_mask_distribution(o);
  CHECK(a.nodes == b.nodes);
  CHECK(a.weights == b.weights);
  o.seed += 1;
  const CouplingDistribution c = build_mask_distribution(o);
  CHECK(a.weights != c.weights);
}

TEST_CASE("plane geometry sits between the waist edge and the antinode") {
  // In the mask plane the weakest coupling is at |x| = w0/2 and
  // |z| = lambda/20: exp(-1/4) cos(pi/10).
  MaskOptions o;
  o.F = 0.05;
  o.n_positions = 200'000;
  const CouplingDistribution d = build_mask_distribution(o);
  const double floor = std::exp(-0.25) * std::cos(M_PI / 10.0) * o.g_max;
  const double bin = (1.0 - o.F) * o.g_max / o.n_bins;
  CHECK(d.nodes.front() > floor - bin);
  CHECK(d.nodes.front() < floor + bin);
}

TEST_CASE("point geometry and empty support") {
  MaskOptions o;
  o.geometry = MaskGeometry::Point;
  const CouplingDistribution d = build_mask_distribution(o);
  CHECK(d.size() == 1);
  CHECK(d.nodes[0] == o.g_max);

  MaskOptions tight;
  tight.F = 1.0 - 1e-10;
  tight.n_positions = 100'000;
  CHECK_THROWS_AS(build_mask_distribution(tight), EmptySupport);

  MaskOptions bad;
  bad.F = 1.5;
  CHECK_THROWS_AS(build_mask_distribution(bad), InvalidArgument);
  bad.F = 0.5;
  bad.n_positions = 10;
  CHECK_THROWS_AS(build_mask_distribution(bad), InvalidArgument);
}

TEST_CASE("averages reduce in node order and annotate failures") {
  CouplingDistribution d;
  d.nodes = {1.0, 2.0, 4.0};
  d.weights = {0.25, 0.25, 0.5};
  CHECK(average_observable(d, [](double g) { return g * g; }) ==
        doctest::Approx(0.25 + 1.0 + 8.0));
  const Eigen::MatrixXcd m = average_matrix(
      d, [](double g) { return Eigen::MatrixXcd::Identity(2, 2) * g; });
  CHECK(m(1, 1).real() == doctest::Approx(d.mean()));

  try {
    average_observable(d, [](double g) -> double {
      if (g > 3.0) throw SingularSystem("boom");
      return g;
    });
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == SingularSystem("").code());
    CHECK(std::string(e.what()).find("at g = 4") != std::string::npos);
  }
}

TEST_CASE("distribution validation") {
  CouplingDistribution d;
  CHECK_THROWS_AS(d.validate(), InvalidArgument);
  d.nodes = {2.0, 1.0};
  d.weights = {0.5, 0.5};
  CHECK_THROWS_AS(d.validate(), InvalidArgument);
  d.nodes = {1.0, 2.0};
  d.weights = {0.5, 0.6};
  CHECK_THROWS_AS(d.validate(), InvalidArgument);
}

TEST_CASE("distribution tables round-trip") {
  MaskOptions o;
  o.F = 0.7;
  o.n_positions = 100'000;
  o.n_bins = 16;
  const CouplingDistribution d = build_mask_distribution(o);
  std::stringstream buffer;
  write_distribution(buffer, d);
  const CouplingDistribution back = read_distribution(buffer);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back.nodes[i] == d.nodes[i]);
    CHECK(back.weights[i] == doctest::Approx(d.weights[i]).epsilon(1e-14));
  }
  CHECK(back.F == d.F);

  std::istringstream unnormalised("# digitised\n8 1\n9 3\n");
  const CouplingDistribution u = read_distribution(unnormalised);
  CHECK(u.weights[1] == doctest::Approx(0.75));

  std::istringstream garbage("8 x\n");
  CHECK_THROWS_AS(read_distribution(garbage), InvalidArgument);
}
