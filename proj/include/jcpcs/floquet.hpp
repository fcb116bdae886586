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

#include <vector>

#include "jcpcs/liouvillian.hpp"

namespace jcpcs {

// Long-time harmonic components rho_m of rho(t) = sum_m rho_m exp(i m delta t).
struct FloquetSolution {
  int m_max = 0;
  // components[m + m_max] = rho_m.
  std::vector<DensityMatrix> components;
  // Max-norm of drho/dt - L(t) rho(t) at a probe time inside the first beat
  // period. Includes the truncation defect of the outermost harmonics.
  double residual = 0.0;
  // max(|rho_{+m_max}|, |rho_{-m_max}|) / |rho_0| in max-norm.
  double edge_ratio = 0.0;

  const DensityMatrix& rho(int m) const { return components.at(m + m_max); }
};

struct FloquetOptions {
  int m_max = 3;
  // NonConvergent when edge_ratio exceeds this.
  double edge_tolerance = 1e-2;
  // Index of the vectorized equation replaced by Tr(rho_0) = 1; 0 is the
  // |0,g><0,g| population.
  int normalization_row = 0;
  // Reciprocal condition estimate below which a harmonic block counts as
  // singular.
  double singular_rcond = 1e-14;
};

// Solves i m delta rho_m = L0 rho_m + L_a rho_{m+1} + L_b rho_{m-1} for
// |m| <= m_max with rho_{+-(m_max+1)} = 0, eliminating the outer harmonics
// block by block towards m = 0. At delta = 0 the two tones are degenerate
// and the delta -> 0 limit is returned instead: the harmonics of the
// adiabatically followed steady state, averaged over the relative phase.
FloquetSolution solve_floquet(const Superoperator& L0, const Superoperator& L_a,
                              const Superoperator& L_b, double delta,
                              const SystemDims& dims,
                              const FloquetOptions& options = {});

// Unique normalized null vector of a trace-preserving L0.
DensityMatrix steady_state(const Superoperator& L0, const SystemDims& dims);

struct OracleOptions {
  double t_final = 100.0;
  double dt = 0.01;
  // Largest allowed step-doubling difference per step (max-norm).
  double step_tolerance = 1e-8;
};

struct OracleResult {
  // Re Tr(O rho) averaged over the final beat period, one per observable.
  std::vector<double> averages;
  // max_t |Tr rho(t) - 1| along the trajectory.
  double trace_drift = 0.0;
  // Step size actually used (dt rounded so a period is a whole number of
  // steps).
  double step = 0.0;
};

// Integrates drho/dt = (L0 + e^{-i delta t} L_a + e^{+i delta t} L_b) rho from
// the vacuum with classical RK4.
OracleResult time_integrate_oracle(const Superoperator& L0,
                                   const Superoperator& L_a,
                                   const Superoperator& L_b, double delta,
                                   const SystemDims& dims,
                                   const std::vector<OperatorMatrix>& observables,
                                   const OracleOptions& options = {});

}  // namespace jcpcs
