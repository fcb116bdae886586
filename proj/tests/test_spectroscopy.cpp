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

#include "jcpcs/errors.hpp"
#include "jcpcs/spectroscopy.hpp"

using namespace jcpcs;

namespace {

const double kSqrt2 = std::sqrt(2.0);

DensityMatrix projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

Spectrum sampled(const std::vector<double>& x, double (*f)(double)) {
  Spectrum s;
  s.delta_tilde = x;
  for (double v : x) s.values.push_back(f(v));
  return s;
}

// Local maximum of the spectrum nearest to x0.
double local_max_near(const Spectrum& s, double x0) {
  double best = NAN, dist = INFINITY;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s.values[i] > s.values[i - 1] && s.values[i] > s.values[i + 1] &&
        std::abs(s.delta_tilde[i] - x0) < dist) {
      dist = std::abs(s.delta_tilde[i] - x0);
      best = s.delta_tilde[i];
    }
  }
  return best;
}

}  // namespace

TEST_CASE("two-photon rate is the normally ordered second moment") {
  const SystemDims dims{3};
  CHECK(two_photon_rate(projector(basis_state(dims, 0, 0)), dims) == 0.0);
  CHECK(two_photon_rate(projector(basis_state(dims, 2, 0)), dims) ==
        doctest::Approx(2.0));

  // Poissonian photon statistics: <n(n-1)> = nbar^2.
  const SystemDims big{40};
  const double nbar = 1.5;
  DensityMatrix rho = DensityMatrix::Zero(big.dim(), big.dim());
  double p = std::exp(-nbar);
  for (int n = 0; n <= big.n_max; ++n) {
    rho(big.index(n, 0), big.index(n, 0)) = p;
    p *= nbar / double(n + 1);
  }
  CHECK(two_photon_rate(rho, big) == doctest::Approx(nbar * nbar).epsilon(1e-12));
}

TEST_CASE("one-photon rate is the mean photon number") {
  const SystemDims dims{2};
  CHECK(one_photon_rate(projector(basis_state(dims, 0, 0)), dims) == 0.0);
  CHECK(one_photon_rate(projector(basis_state(dims, 1, 0)), dims) ==
        doctest::Approx(1.0));
  const DensityMatrix mix = 0.5 * (projector(basis_state(dims, 0, 0)) +
                                   projector(basis_state(dims, 1, 0)));
  CHECK(one_photon_rate(mix, dims) == doctest::Approx(0.5));
}

TEST_CASE("peak fit recovers symmetric and quadratic apices") {
  const std::vector<double> x = make_grid(0.0, 1.0, 0.05);
  const Spectrum tri = sampled(x, [](double v) { return 1.0 - std::abs(v - 0.5); });
  const PeakReport t = find_peak(tri, 0.4, {0.2, 0.8});
  CHECK(t.location == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(t.height == doctest::Approx(1.0));

  const Spectrum quad =
      sampled(x, [](double v) { return 2.0 - 3.0 * (v - 0.537) * (v - 0.537); });
  const PeakReport q = find_peak(quad, 0.0, {0.3, 0.8});
  CHECK(std::abs(q.apex - 0.537) < 1e-12);
  CHECK(std::abs(q.height - 2.0) < 1e-12);
  CHECK(q.fit_residual < 1e-12);
  CHECK(q.window == std::pair<double, double>{0.3, 0.8});
  CHECK(q.location >= q.window.first - q.nominal);
  CHECK(q.location <= q.window.second - q.nominal);

  const PeakReport n = find_peak_near(quad, 0.5, {0.0, 1.0}, 0.15);
  CHECK(std::abs(n.location - 0.037) < 1e-12);
}

TEST_CASE("peak fit rejects boundary maxima and sparse windows") {
  const std::vector<double> x = make_grid(0.0, 1.0, 0.05);
  const Spectrum rising = sampled(x, [](double v) { return v; });
  CHECK_THROWS_AS(find_peak(rising, 0.0, {0.2, 0.8}), NoInteriorPeak);
  const Spectrum quad = sampled(x, [](double v) { return -v * v + v; });
  CHECK_THROWS_AS(find_peak(quad, 0.0, {0.45, 0.55}), InvalidArgument);
}

TEST_CASE("grids") {
  const std::vector<double> g = make_grid(2.2, 2.6, 0.002);
  CHECK(g.size() == 201);
  CHECK(g.back() == doctest::Approx(2.6));
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), InvalidArgument);

  const std::vector<double> r = make_refined_grid(2.0, 2.8, 0.02, 2.2, 2.6, 0.002);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] > r[i - 1]);
  CHECK(r.front() == 2.0);
  CHECK(r.back() == doctest::Approx(2.8));
  CHECK(r.size() == 201 + 10 + 10);
}

TEST_CASE("presets") {
  CHECK(ablation_preset("none").empty());
  const AblationSpec cut = ablation_preset("no-1m-2m");
  REQUIRE(cut.zeroed_drive_transitions.size() == 1);
  CHECK(cut.zeroed_drive_transitions[0] ==
        DrivePathway{DressedLevel::minus(1), DressedLevel::minus(2),
                     DriveSelector::Scanning});
  const AblationSpec all = ablation_preset("combined-all");
  CHECK(all.drop_jump_term);
  CHECK(all.linewidth_removed_levels == std::vector{DressedLevel::minus(1)});
  CHECK(all.zeroed_drive_transitions.size() == 2);
  CHECK_THROWS_AS(ablation_preset("no-such-thing"), UnknownPreset);
  CHECK_THROWS_AS(ablation_preset("none+bogus"), UnknownPreset);
}

TEST_CASE("background subtraction of a dark scan vanishes identically") {
  PhysicalParams p;
  p.E1 = 0.0;
  ScanOptions o;
  o.dims = SystemDims{2};
  const Spectrum s = scan_2pcr(p, delta_distribution(9.0), make_grid(-0.75, 3.0, 0.25),
                               {}, true, o);
  CHECK(s.observable == Observable::Delta2);
  for (double v : s.values) CHECK(v == 0.0);
}

TEST_CASE("single-coupling spectrum shows the expected resonances") {
  PhysicalParams p;
  ScanOptions o;
  o.floquet.m_max = 5;
  const Spectrum s =
      scan_2pcr(p, delta_distribution(9.0), make_grid(-0.55, 3.0, 0.01), {}, false, o);
  // omega_1 to |1>_-, omega_2 on to |2>_-: delta_tilde = 1 - sqrt2.
  CHECK(std::abs(local_max_near(s, 1.0 - kSqrt2) - (1.0 - kSqrt2)) < 0.05);
  // Two omega_2 photons to |2>_+: 2 omega_2 = 2 omega + sqrt2 g.
  CHECK(std::abs(local_max_near(s, 1.0 / kSqrt2) - 1.0 / kSqrt2) < 0.05);
  // omega_1 to |1>_-, omega_2 on to |2>_+, shifted below its nominal place.
  const double upper = local_max_near(s, kSqrt2 + 1.0);
  CHECK(upper < kSqrt2 + 1.0);
  CHECK(upper > kSqrt2 + 1.0 - 0.05);
}

TEST_CASE("scans are independent of the worker count") {
  PhysicalParams p;
  CouplingDistribution d;
  d.nodes = {8.0, 8.5, 9.0};
  d.weights = {0.2, 0.3, 0.5};
  ScanOptions one;
  one.dims = SystemDims{2};
  ScanOptions many = one;
  many.threads = 3;
  const std::vector<double> grid = make_grid(2.0, 2.6, 0.05);
  const AblationSpec ab = ablation_preset("no-1m-2m");
  const Spectrum a = scan_2pcr(p, d, grid, ab, true, one);
  const Spectrum b = scan_2pcr(p, d, grid, ab, true, many);
  CHECK(a.values == b.values);
}

TEST_CASE("scan failures name the offending point") {
  PhysicalParams p;
  ScanOptions o;
  o.dims = SystemDims{2};
  o.floquet.edge_tolerance = 1e-12;
  try {
    scan_2pcr(p, delta_distribution(9.0), {2.0, 2.1}, {}, false, o);
    FAIL("expected a throw");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(e.code() == NonConvergent("").code());
    CHECK(what.find("delta_tilde = 2") != std::string::npos);
    CHECK(what.find("g = 9") != std::string::npos);
  }
  CHECK_THROWS_AS(scan_2pcr(p, delta_distribution(9.0), {2.1, 2.0}, {}, false, o),
                  InvalidArgument);
}

TEST_CASE("spectra round-trip through text") {
  PhysicalParams p;
  ScanOptions o;
  o.dims = SystemDims{2};
  Spectrum s = scan_2pcr(p, delta_distribution(9.0), make_grid(2.0, 2.2, 0.05),
                         ablation_preset("combined-all"), false, o);
  s.annotations.push_back("note = kept");
  std::stringstream buffer;
  write_spectrum(buffer, s);
  const Spectrum back = read_spectrum(buffer);
  CHECK(back.delta_tilde == s.delta_tilde);
  CHECK(back.values == s.values);
  CHECK(back.observable == s.observable);
  CHECK(back.ablation == s.ablation);
  CHECK(back.params.E1 == s.params.E1);

  Spectrum bad = s;
  bad.values[0] = -1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad.observable = Observable::Delta2;
  CHECK_NOTHROW(bad.validate());
}
