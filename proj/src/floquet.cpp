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

#include "jcpcs/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SparseCore>

#include "jcpcs/errors.hpp"

namespace jcpcs {

namespace {

constexpr Complex kI{0.0, 1.0};

// Reciprocal condition estimate, forced to 0 when a pivot vanishes
// relative to the largest one (the estimator is unreliable there).
double safe_rcond(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu) {
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double largest = pivots.maxCoeff();
  if (!(largest > 0.0) ||
      !(pivots.minCoeff() > 1e-15 * largest) || !std::isfinite(largest)) {
    return 0.0;
  }
  const double r = lu.rcond();
  return std::isfinite(r) ? r : 0.0;
}

Eigen::MatrixXcd solve_block(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& rhs, double min_rcond,
                             int m) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const double rcond = safe_rcond(lu);
  if (!(rcond > min_rcond)) {
    throw SingularSystem("harmonic block m = " + std::to_string(m) +
                         " is singular (rcond " + std::to_string(rcond) + ")");
  }
  return lu.solve(rhs);
}

// delta -> 0 limit: the beat is slow against every damping rate, so rho(t)
// follows the instantaneous steady state of L0 + e^{-i phi} L_a + e^{i phi} L_b
// adiabatically and the harmonics become Fourier coefficients in the
// relative phase phi of the two tones. Nothing is truncated here, so the
// edge ratio is reported but never raises NonConvergent.
FloquetSolution adiabatic_limit(const Superoperator& L0,
                                const Superoperator& L_a,
                                const Superoperator& L_b, const SystemDims& dims,
                                const FloquetOptions& options) {
  const int m_max = options.m_max;
  const int d = dims.dim();
  const int n = d * d;
  const int samples = std::max(64, 8 * (m_max + 1));
  const int row = options.normalization_row;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(row) = 1.0;

  std::vector<Eigen::VectorXcd> vecs(2 * m_max + 1,
                                     Eigen::VectorXcd::Zero(n));
  double residual = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / samples;
    const Eigen::MatrixXcd l =
        L0 + std::exp(-kI * phi) * L_a + std::exp(kI * phi) * L_b;
    Eigen::MatrixXcd system = l;
    system.row(row) = trace_functional(d);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
    const double rcond = safe_rcond(lu);
    if (!(rcond > options.singular_rcond)) {
      throw SingularSystem("instantaneous steady-state system at phase " +
                           std::to_string(phi) + " is singular (rcond " +
                           std::to_string(rcond) + ")");
    }
    const Eigen::VectorXcd rho = lu.solve(rhs);
    residual = std::max(residual, (l * rho).cwiseAbs().maxCoeff());
    for (int m = -m_max; m <= m_max; ++m) {
      vecs[m_max + m] += std::exp(-kI * (double(m) * phi)) * rho;
    }
  }

  FloquetSolution sol;
  sol.m_max = m_max;
  sol.residual = residual;
  sol.components.assign(2 * m_max + 1, DensityMatrix());
  const DensityMatrix r0 = unvectorize(vecs[m_max], d) / double(samples);
  sol.components[m_max] = 0.5 * (r0 + r0.adjoint());
  for (int m = 1; m <= m_max; ++m) {
    sol.components[m_max + m] = unvectorize(vecs[m_max + m], d) / double(samples);
    sol.components[m_max - m] = sol.components[m_max + m].adjoint();
  }
  const double norm0 = sol.components[m_max].cwiseAbs().maxCoeff();
  const double edge = sol.components[2 * m_max].cwiseAbs().maxCoeff();
  sol.edge_ratio = norm0 > 0.0 ? edge / norm0 : INFINITY;
  return sol;
}

}  // namespace

FloquetSolution solve_floquet(const Superoperator& L0, const Superoperator& L_a,
                              const Superoperator& L_b, double delta,
                              const SystemDims& dims,
                              const FloquetOptions& options) {
  const int m_max = options.m_max;
  const int d = dims.dim();
  const int n = d * d;
  if (m_max < 1) throw InvalidArgument("m_max must be >= 1");
  if (L0.rows() != n || L_a.rows() != n || L_b.rows() != n) {
    throw InvalidArgument("superoperator size does not match dims");
  }
  if (options.normalization_row < 0 || options.normalization_row >= n) {
    throw InvalidArgument("normalization_row out of range");
  }
  if (delta == 0.0) return adiabatic_limit(L0, L_a, L_b, dims, options);

  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::SparseMatrix<Complex> sparse_a = L_a.sparseView();
  const Eigen::SparseMatrix<Complex> sparse_b = L_b.sparseView();
  // rho_m = up[m-1] rho_{m-1} for m > 0. The negative harmonics follow from
  // rho_{-m} = rho_m^dag, which the truncated system preserves exactly.
  std::vector<Eigen::MatrixXcd> up(m_max);
  for (int m = m_max; m >= 1; --m) {
    Eigen::MatrixXcd a = L0 - kI * (double(m) * delta) * identity;
    if (m < m_max) a += sparse_a * up[m];
    up[m - 1] = -solve_block(a, L_b, options.singular_rcond, m);
  }

  // On Hermitian rho_0: vec(rho_{-1}) = P conj(up[0] vec(rho_0))
  //                                  = P conj(up[0]) P vec(rho_0),
  // with P the transposition permutation.
  Eigen::MatrixXcd down0(n, n);
  for (int col = 0; col < n; ++col) {
    const int src_col = (col % d) * d + col / d;
    for (int row = 0; row < n; ++row) {
      const int src_row = (row % d) * d + row / d;
      down0(row, col) = std::conj(up[0](src_row, src_col));
    }
  }

  Eigen::MatrixXcd reduced = L0 + sparse_a * up[0] + sparse_b * down0;
  const int row = options.normalization_row;
  reduced.row(row) = trace_functional(d);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(row) = 1.0;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(reduced);
  const double rcond = safe_rcond(lu);
  if (!(rcond > options.singular_rcond)) {
    throw SingularSystem("reduced m = 0 system is singular after trace "
                         "normalization (rcond " + std::to_string(rcond) + ")");
  }
  Eigen::VectorXcd rho0 = lu.solve(rhs);
  {
    // Remove the roundoff-level anti-Hermitian part.
    const DensityMatrix r = unvectorize(rho0, d);
    rho0 = vectorize(0.5 * (r + r.adjoint()));
  }

  FloquetSolution sol;
  sol.m_max = m_max;
  sol.components.assign(2 * m_max + 1, DensityMatrix());
  std::vector<Eigen::VectorXcd> vecs(2 * m_max + 1);
  vecs[m_max] = rho0;
  sol.components[m_max] = unvectorize(rho0, d);
  for (int m = 1; m <= m_max; ++m) {
    vecs[m_max + m] = up[m - 1] * vecs[m_max + m - 1];
    sol.components[m_max + m] = unvectorize(vecs[m_max + m], d);
    sol.components[m_max - m] = sol.components[m_max + m].adjoint();
    vecs[m_max - m] = vectorize(sol.components[m_max - m]);
  }

  const double norm0 = vecs[m_max].cwiseAbs().maxCoeff();
  const double edge = std::max(vecs[0].cwiseAbs().maxCoeff(),
                               vecs[2 * m_max].cwiseAbs().maxCoeff());
  sol.edge_ratio = norm0 > 0.0 ? edge / norm0 : INFINITY;

  // Master-equation defect at a generic time.
  const double t = 0.3183 * 2.0 * std::numbers::pi / std::abs(delta);
  Eigen::VectorXcd rho_t = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd drho_t = Eigen::VectorXcd::Zero(n);
  for (int m = -m_max; m <= m_max; ++m) {
    const Complex phase = std::exp(kI * (double(m) * delta * t));
    rho_t += phase * vecs[m_max + m];
    drho_t += kI * (double(m) * delta) * phase * vecs[m_max + m];
  }
  const Eigen::VectorXcd lhs =
      L0 * rho_t + std::exp(-kI * (delta * t)) * (sparse_a * rho_t) +
      std::exp(kI * (delta * t)) * (sparse_b * rho_t);
  sol.residual = (drho_t - lhs).cwiseAbs().maxCoeff();

  if (!(sol.edge_ratio <= options.edge_tolerance)) {
    throw NonConvergent("outermost harmonic m = +-" + std::to_string(m_max) +
                        " carries " + std::to_string(sol.edge_ratio) +
                        " of |rho_0|; raise m_max");
  }
  return sol;
}

DensityMatrix steady_state(const Superoperator& L0, const SystemDims& dims) {
  const int d = dims.dim();
  const int n = d * d;
  if (L0.rows() != n || L0.cols() != n) {
    throw InvalidArgument("superoperator size does not match dims");
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(L0);
  lu.setThreshold(1e-10);
  const auto kernel_dim = lu.dimensionOfKernel();
  if (kernel_dim != 1) {
    throw SingularSystem("steady state null space has dimension " +
                         std::to_string(kernel_dim) + ", expected 1");
  }
  // Re-solve with the trace row in place of the population of |0,g> for a
  // full-accuracy solution; the kernel only certified uniqueness.
  Superoperator system = L0;
  system.row(0) = trace_functional(d);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(0) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXcd> solver(system);
  if (!solver.isInvertible()) {
    throw SingularSystem("trace-normalized steady-state system is singular");
  }
  DensityMatrix rho = unvectorize(solver.solve(rhs), d);
  return 0.5 * (rho + rho.adjoint());
}

OracleResult time_integrate_oracle(const Superoperator& L0,
                                   const Superoperator& L_a,
                                   const Superoperator& L_b, double delta,
                                   const SystemDims& dims,
                                   const std::vector<OperatorMatrix>& observables,
                                   const OracleOptions& options) {
  const int d = dims.dim();
  const int n = d * d;
  if (delta == 0.0) throw InvalidArgument("oracle needs delta != 0");
  if (!(options.dt > 0.0) || !(options.t_final > 0.0)) {
    throw InvalidArgument("oracle needs dt > 0 and t_final > 0");
  }

  const double period = 2.0 * std::numbers::pi / std::abs(delta);
  const long steps_per_period =
      std::max<long>(8, long(std::ceil(period / options.dt)));
  const double h = period / double(steps_per_period);
  const long periods = std::max<long>(1, long(std::ceil(options.t_final / period)));

  auto rhs = [&](double t, const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return L0 * v + std::exp(-kI * (delta * t)) * (L_a * v) +
           std::exp(kI * (delta * t)) * (L_b * v);
  };
  auto rk4 = [&](double t, const Eigen::VectorXcd& v, double step) {
    const Eigen::VectorXcd k1 = rhs(t, v);
    const Eigen::VectorXcd k2 = rhs(t + 0.5 * step, v + 0.5 * step * k1);
    const Eigen::VectorXcd k3 = rhs(t + 0.5 * step, v + 0.5 * step * k2);
    const Eigen::VectorXcd k4 = rhs(t + step, v + step * k3);
    return Eigen::VectorXcd(v + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };

  std::vector<Eigen::RowVectorXcd> probes;
  for (const auto& o : observables) {
    // Tr(O rho) = sum_ij O(j, i) rho(i, j) = vec(O^T) . vec(rho)
    probes.push_back(vectorize(o.transpose()).transpose());
  }
  const Eigen::RowVectorXcd trace_row = trace_functional(d);

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(0) = 1.0;  // |0,g><0,g|
  OracleResult out;
  out.step = h;
  out.averages.assign(observables.size(), 0.0);
  double t = 0.0;
  const long total = periods * steps_per_period;
  for (long k = 0; k < total; ++k) {
    if (k % steps_per_period == 0) {
      const Eigen::VectorXcd half =
          rk4(t + 0.5 * h, rk4(t, v, 0.5 * h), 0.5 * h);
      const Eigen::VectorXcd full = rk4(t, v, h);
      const double defect = (half - full).cwiseAbs().maxCoeff();
      if (defect > options.step_tolerance) {
        throw StepSizeTooLarge("step-doubling defect " +
                               std::to_string(defect) + " at t = " +
                               std::to_string(t) + " exceeds tolerance");
      }
    }
    if (k >= total - steps_per_period) {
      for (std::size_t i = 0; i < probes.size(); ++i) {
        out.averages[i] += (probes[i] * v)(0).real();
      }
    }
    v = rk4(t, v, h);
    t = double(k + 1) * h;
    out.trace_drift =
        std::max(out.trace_drift, std::abs((trace_row * v)(0) - 1.0));
  }
  for (auto& avg : out.averages) avg /= double(steps_per_period);
  return out;
}

}  // namespace jcpcs
