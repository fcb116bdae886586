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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion, with
// the measured quantities, and exits nonzero when a criterion fails that is
// not listed as a known deviation in the README.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "jcpcs/core_operators.hpp"
#include "jcpcs/ensemble.hpp"
#include "jcpcs/errors.hpp"
#include "jcpcs/floquet.hpp"
#include "jcpcs/liouvillian.hpp"
#include "jcpcs/parallel.hpp"
#include "jcpcs/spectroscopy.hpp"
#include "jcpcs/vee_system.hpp"

using namespace jcpcs;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kNominal = 1.0 + kSqrt2;
const std::pair<double, double> kSearch{2.1, 2.7};

// Criteria whose failure is a documented, analysed deviation.
const std::set<int> kKnownDeviations = {2};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

ScanOptions scan_options(int n_max, int m_max) {
  ScanOptions o;
  o.dims = SystemDims{n_max};
  o.floquet.m_max = m_max;
  o.threads = default_thread_count();
  return o;
}

double peak_shift(const Spectrum& s) {
  return find_peak_near(s, kNominal, kSearch).location;
}

// Single coupling g = g_f = 9 at the default drive strengths.
Outcome criterion_1() {
  const PhysicalParams p;
  const CouplingDistribution dist = delta_distribution(p.g_f);
  const std::vector<double> grid = make_grid(2.2, 2.598, 0.002);
  const ScanOptions o = scan_options(3, 3);

  const auto t0 = Clock::now();
  const Spectrum full = scan_2pcr(p, dist, grid, {}, false, o);
  const double elapsed = seconds_since(t0);
  const Spectrum ablated =
      scan_2pcr(p, dist, grid, ablation_preset("no-1m-2m"), false, o);

  const double s_full = peak_shift(full);
  const double s_ablated = peak_shift(ablated);
  Outcome out;
  out.pass = s_full < 0.0 && std::abs(s_ablated) < 0.005 && elapsed < 10.0 &&
             grid.size() == 200;
  out.detail = fmt(
      "shift(none) = %+.6f (< 0), shift(no-1m-2m) = %+.6f (|.| < 0.005), "
      "%zu-point scan in %.2f s (< 10 s)",
      s_full, s_ablated, grid.size(), elapsed);
  return out;
}

// Mask-derived P(g) with F calibrated once on the un-ablated shift; the
// calibrated F is shared with criterion 7.
struct Ladder {
  double F = 0.0;
  double shifts[4] = {0, 0, 0, 0};
};

constexpr int kMaskBins = 32;

CouplingDistribution mask(double F) {
  MaskOptions m;
  m.F = F;
  m.n_bins = kMaskBins;
  return build_mask_distribution(m);
}

double ensemble_shift(double F, const std::string& preset) {
  const PhysicalParams p;
  const Spectrum s =
      scan_2pcr(p, mask(F), make_grid(2.05, 2.65, 0.004),
                ablation_preset(preset), false, scan_options(3, 3));
  return peak_shift(s);
}

Ladder calibrate_ladder() {
  constexpr double target = -0.141;
  Ladder ladder;
  // Secant iteration on F -> shift(F) + 0.141, bracketed to [0.5, 0.95].
  double f0 = 0.75, f1 = 0.85;
  double r0 = ensemble_shift(f0, "none") - target;
  double r1 = ensemble_shift(f1, "none") - target;
  for (int iter = 0; iter < 8 && std::abs(r1) > 0.002; ++iter) {
    if (r1 == r0) break;
    const double f2 = std::clamp(f1 - r1 * (f1 - f0) / (r1 - r0), 0.5, 0.95);
    f0 = f1;
    r0 = r1;
    f1 = f2;
    r1 = ensemble_shift(f1, "none") - target;
  }
  ladder.F = f1;
  ladder.shifts[0] = r1 + target;
  const char* rungs[] = {"no-1m-2m", "no-1m-2m+no-1m-linewidth",
                         "combined-all"};
  for (int i = 0; i < 3; ++i) ladder.shifts[i + 1] = ensemble_shift(f1, rungs[i]);
  return ladder;
}

Outcome criterion_2(const Ladder& ladder) {
  const double targets[4] = {-0.141, -0.094, -0.057, -0.018};
  Outcome out;
  out.pass = true;
  out.detail = fmt("F = %.4f (%d bins):", ladder.F, kMaskBins);
  for (int i = 0; i < 4; ++i) {
    const bool ok = std::abs(ladder.shifts[i] - targets[i]) <= 0.02;
    out.pass = out.pass && ok;
    out.detail += fmt(" %+.4f [%+.3f%s]", ladder.shifts[i], targets[i],
                      ok ? "" : " x");
  }
  for (int i = 1; i < 4; ++i) {
    if (!(ladder.shifts[i] > ladder.shifts[i - 1])) out.pass = false;
  }
  const double recovered = 1.0 - ladder.shifts[3] / ladder.shifts[0];
  const bool recovery_ok = std::abs(recovered - (1.0 - 0.018 / 0.141)) <= 0.10;
  out.pass = out.pass && recovery_ok;
  out.detail += fmt("; recovered %.1f%% [87%% +- 10 pp%s]", 100.0 * recovered,
                    recovery_ok ? "" : " x");
  return out;
}

double vee_shift(const VeeParams& p, const std::string& preset,
                 const std::vector<double>& grid) {
  const Spectrum s = vee_master_equation_scan(p, grid, ablation_preset(preset));
  return find_peak_near(s, 1.0, {grid.front(), grid.back()}).location;
}

VeeParams reference_vee() {
  VeeParams p;
  p.g = 9.0;
  p.E = kSqrt2;
  p.gamma = 2.0;
  return p;
}

Outcome criterion_3() {
  const double step = 0.002;
  const std::vector<double> grid = make_grid(0.8, 1.2, step);
  const VeeParams p = reference_vee();
  const double predicted = -0.012423;
  const double jump_free = vee_shift(p, "no-jumps", grid);
  const double rel = std::abs(jump_free - predicted) / std::abs(predicted);

  VeeParams weak = p;
  weak.E = 0.01;
  const double weak_shift = vee_shift(weak, "no-jumps", grid);
  const double weak_err =
      std::abs(weak_shift - (std::sqrt(1.0 - 1.0 / (p.g * p.g)) - 1.0));

  const double ablated = vee_shift(p, "no-jumps+vee-competition", grid);
  double asym = 0.0;
  for (double x : {0.01, 0.05, 0.2, 0.6}) {
    VeeParams lo = p, hi = p;
    lo.delta = -p.g * (1.0 - x);
    hi.delta = -p.g * (1.0 + x);
    const AblationSpec ab = ablation_preset("no-jumps+vee-competition");
    const double a = vee_master_equation_rate(lo, ab);
    const double b = vee_master_equation_rate(hi, ab);
    asym = std::max(asym, std::abs(a - b) / std::max(a, b));
  }

  Outcome out;
  out.pass = rel < 0.25 && weak_err < 1e-4 && std::abs(ablated) <= step &&
             asym <= 1e-10;
  out.detail = fmt(
      "jump-free shift %+.6f vs -0.012423 (%.1f%% < 25%%); E = 0.01 shift "
      "error %.2e (< 1e-4); ablated apex offset %+.2e (<= %.3f), mirror "
      "asymmetry %.1e (<= 1e-10)",
      jump_free, 100.0 * rel, weak_err, ablated, step, asym);
  return out;
}

Outcome criterion_4() {
  const std::vector<double> grid = make_grid(0.8, 1.2, 0.002);
  const VeeParams p = reference_vee();
  const double full = vee_shift(p, "none", grid);
  const double jump_free = vee_shift(p, "no-jumps", grid);
  Outcome out;
  out.pass = std::abs(full) > std::abs(jump_free);
  out.detail = fmt("|shift| with jumps %.6f > jump-free %.6f", std::abs(full),
                   std::abs(jump_free));
  return out;
}

// Slowest nonzero relaxation rate and largest eigenvalue modulus of L0.
struct Spectral {
  double gap = INFINITY;
  double radius = 0.0;
};

Spectral spectral_bounds(const Superoperator& L0) {
  const Eigen::VectorXcd ev =
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(L0, false).eigenvalues();
  Spectral s;
  for (const auto& z : ev) {
    if (std::abs(z) > 1e-9) s.gap = std::min(s.gap, -z.real());
    s.radius = std::max(s.radius, std::abs(z));
  }
  return s;
}

Outcome criterion_5() {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SystemDims dims{2};
  const OperatorMatrix a = build_annihilation(dims);
  const OperatorMatrix w2_op = a.adjoint() * a.adjoint() * a * a;

  const auto t0 = Clock::now();
  double worst = 0.0;
  double worst_edge = 0.0;
  int failures = 0;
  std::string first_error;
  for (int k = 0; k < 20; ++k) {
    PhysicalParams p;
    p.g = 6.0 + 4.0 * u(rng);
    p.gamma = 1.0 + 2.0 * u(rng);
    p.E1 = 0.3 + 0.7 * u(rng);
    p.E2 = 0.5 + 1.0 * u(rng);
    const double delta_tilde = 0.5 + 2.5 * u(rng);
    p.delta = p.g_f * (1.0 + delta_tilde);
    FloquetOptions fo;
    fo.m_max = 2 + k % 2;
    // The harmonic-decay guard is a heuristic; here the comparison with
    // direct integration is the accuracy judge, so only gross truncation
    // is rejected up front.
    fo.edge_tolerance = 0.1;
    try {
      const LiouvillianParts l = assemble_liouvillian(p, dims);
      const FloquetSolution sol =
          solve_floquet(l.L0, l.L_a, l.L_b, p.delta, dims, fo);
      const double floquet = two_photon_rate(sol.rho(0), dims);
      worst_edge = std::max(worst_edge, sol.edge_ratio);
      const double period = 2.0 * std::numbers::pi / p.delta;
      const Spectral bounds = spectral_bounds(l.L0);
      OracleOptions oo;
      // Transients decay below 1e-8 of their initial size; the RK4 step
      // resolves the fastest coherence.
      oo.t_final = std::ceil(18.5 / bounds.gap / period + 1.0) * period;
      oo.dt = 0.05 / bounds.radius;
      const OracleResult r =
          time_integrate_oracle(l.L0, l.L_a, l.L_b, p.delta, dims, {w2_op}, oo);
      const double rel = std::abs(floquet - r.averages[0]) / std::abs(r.averages[0]);
      worst = std::max(worst, rel);
      if (!(rel < 0.01)) ++failures;
    } catch (const std::exception& e) {
      ++failures;
      if (first_error.empty()) first_error = e.what();
    }
  }
  const double elapsed = seconds_since(t0);
  Outcome out;
  out.pass = failures == 0 && elapsed < 60.0;
  out.detail = fmt("20 points, worst relative deviation %.2e (< 1e-2), %d "
                   "failures, largest edge ratio %.3f, %.1f s (< 60 s)",
                   worst, failures, worst_edge, elapsed);
  if (!first_error.empty()) out.detail += "; first error: " + first_error;
  return out;
}

Outcome criterion_6() {
  const auto t0 = Clock::now();
  std::vector<std::string> broken;
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) broken.push_back(what);
  };

  // Ladder operator on Fock states, compared exactly.
  const SystemDims dims{3};
  const OperatorMatrix a = build_annihilation(dims);
  for (int atom = 0; atom < 2; ++atom) {
    const Eigen::VectorXcd lowered = a * basis_state(dims, 2, atom);
    const Eigen::VectorXcd expected = kSqrt2 * basis_state(dims, 1, atom);
    require(lowered == expected, "a|2> = sqrt2 |1>");
  }

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_herm = 0, worst_trace = 0, worst_eig = 0, worst_diag = 0,
         worst_annih = 0;
  const Eigen::RowVectorXcd tr = trace_functional(dims.dim());
  for (int k = 0; k < 12; ++k) {
    PhysicalParams p;
    p.g = 5.0 + 4.0 * u(rng);
    p.delta = p.g_f * (1.0 + 0.3 + 2.7 * u(rng));

    const DressedBasis basis = build_dressed_basis(p.g, p.cavity_detuning(), dims);
    const OperatorMatrix h = build_jc_hamiltonian(p.g, p.cavity_detuning(), dims);
    OperatorMatrix off = basis.to_dressed(h);
    off.diagonal().setZero();
    worst_diag = std::max(worst_diag, max_abs(off));

    const LiouvillianParts l = assemble_liouvillian(p, dims);
    worst_annih = std::max({worst_annih, max_abs(tr * l.L0), max_abs(tr * l.L_a),
                            max_abs(tr * l.L_b)});

    FloquetOptions fo;
    fo.m_max = 6;
    const FloquetSolution sol = solve_floquet(l.L0, l.L_a, l.L_b, p.delta, dims, fo);
    for (int m = 1; m <= fo.m_max; ++m) {
      worst_herm = std::max(worst_herm, max_abs(sol.rho(-m) - sol.rho(m).adjoint()));
    }
    worst_trace = std::max(worst_trace, std::abs(sol.rho(0).trace() - 1.0));
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(sol.rho(0)).eigenvalues();
    worst_eig = std::min(worst_eig, ev.minCoeff());
  }
  require(worst_herm <= 1e-10, "rho_-m = rho_m^dag");
  require(worst_trace <= 1e-10, "Tr rho_0 = 1");
  require(worst_eig >= -1e-8, "rho_0 >= 0");
  require(worst_diag <= 1e-12, "dressed diagonalization");
  require(worst_annih <= 1e-10, "trace annihilation");

  PhysicalParams quiet;
  quiet.E1 = 0.0;
  const Spectrum bg = scan_2pcr(quiet, delta_distribution(quiet.g_f),
                                make_grid(2.0, 2.8, 0.05), {}, true,
                                scan_options(3, 3));
  double worst_bg = 0.0;
  for (double v : bg.values) worst_bg = std::max(worst_bg, std::abs(v));
  require(worst_bg == 0.0, "Delta2 = 0 at E1 = 0");

  const double elapsed = seconds_since(t0);
  require(elapsed < 30.0, "runtime");
  Outcome out;
  out.pass = broken.empty();
  out.detail = fmt(
      "herm %.1e, trace %.1e, min eig %.1e, offdiag %.1e, annih %.1e, "
      "|Delta2(E1=0)| %.1e, a|2> exact, %.1f s (< 30 s)",
      worst_herm, worst_trace, worst_eig, worst_diag, worst_annih, worst_bg,
      elapsed);
  for (const auto& b : broken) out.detail += "; broken: " + b;
  return out;
}

// Midpoint-rule integral of |w2 - Delta2| over [lo, hi].
double background_integral(const CouplingDistribution& dist, double lo,
                           double hi, double step) {
  std::vector<double> grid;
  for (int i = 0; lo + (i + 0.5) * step < hi; ++i) grid.push_back(lo + (i + 0.5) * step);
  const PhysicalParams p;
  const ScanOptions o = scan_options(3, 6);
  const Spectrum w2 = scan_2pcr(p, dist, grid, {}, false, o);
  const Spectrum d2 = scan_2pcr(p, dist, grid, {}, true, o);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    total += std::abs(w2.values[i] - d2.values[i]) * step;
  }
  return total;
}

Outcome criterion_7(double F) {
  const CouplingDistribution dist = mask(F);
  const double peak = background_integral(dist, 2.2, 2.6, 0.01);
  const double inner = background_integral(dist, -1.0, 1.0, 0.02);
  Outcome out;
  out.pass = peak < 0.1 * inner;
  out.detail = fmt("integral over [2.2, 2.6] = %.3e, over [-1, 1] = %.3e, "
                   "ratio %.2f%% (< 10%%), F = %.4f",
                   peak, inner, 100.0 * peak / inner, F);
  return out;
}

}  // namespace

int main() {
  int unexpected = 0;
  auto report = [&](int id, const std::function<Outcome()>& run) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const bool known = kKnownDeviations.count(id) > 0;
    if (!o.pass && !known) ++unexpected;
    std::printf("criterion %d: %s%s  %s  [%.1f s]\n", id, o.pass ? "PASS" : "FAIL",
                !o.pass && known ? " (known deviation)" : "", o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  };

  Ladder ladder;
  bool have_ladder = false;
  report(1, criterion_1);
  report(2, [&] {
    ladder = calibrate_ladder();
    have_ladder = true;
    return criterion_2(ladder);
  });
  report(3, criterion_3);
  report(4, criterion_4);
  report(5, criterion_5);
  report(6, criterion_6);
  report(7, [&] {
    if (!have_ladder) throw InvalidArgument("no calibrated F from criterion 2");
    return criterion_7(ladder.F);
  });
  return unexpected == 0 ? 0 : 1;
}
