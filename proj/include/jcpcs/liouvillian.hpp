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

#include <optional>
#include <string>
#include <vector>

#include "jcpcs/core_operators.hpp"

namespace jcpcs {

// Dense matrix acting on column-stacked density matrices:
// vec(rho)[i + j * dim] = rho(i, j), so vec(A rho B) = (B^T kron A) vec(rho).
using Superoperator = Eigen::MatrixXcd;

// Rotating-frame parameters, every rate and amplitude in units of kappa.
struct PhysicalParams {
  double g = 9.0;        // atom-cavity coupling
  double g_f = 9.0;      // omega - omega_1
  double kappa = 1.0;
  double gamma = 2.0;    // free-space decay
  double E1 = 0.70710678118654752;  // fixed drive, 1/sqrt2
  double E2 = 1.41421356237309505;  // scanning drive, sqrt2
  double delta = 9.0 * (2.0 + 1.41421356237309505);  // omega_2 - omega_1
  // Replaces g_f as the frame detuning omega - omega_1 when set. Used by
  // the monochromatic three-level scans, where omega_1 is the scanned
  // quantity and g_f keeps its role of normalising the detuning.
  std::optional<double> frame_detuning;

  double cavity_detuning() const { return frame_detuning.value_or(g_f); }
  double delta_tilde() const { return (delta - g_f) / g_f; }
  void validate() const;
};

enum class DriveSelector { Fixed, Scanning, Both };

std::string to_string(DriveSelector which);
DriveSelector parse_drive_selector(const std::string& text);

// Unordered pair of dressed levels whose drive matrix element (and its
// conjugate) is targeted by an ablation.
struct DrivePathway {
  DressedLevel first;
  DressedLevel second;
  DriveSelector drive = DriveSelector::Scanning;

  bool applies_to(DriveSelector which) const {
    return drive == DriveSelector::Both || drive == which;
  }
  bool operator==(const DrivePathway&) const = default;
};

enum class LinewidthSurgery {
  // Zero the dressed-basis diagonal of the anti-Hermitian part of H_eff at
  // each listed level; off-diagonal damping stays.
  DiagonalOnly,
  // Remove the level from every collapse operator, L_k -> L_k (1 - P):
  // its row and column of the damping vanish and so do the jumps out of it.
  // Trace-preserving.
  ProjectOut,
};

std::string to_string(LinewidthSurgery mode);
LinewidthSurgery parse_linewidth_surgery(const std::string& text);

// Declarative pathway surgery applied to operators before any superoperator
// is formed.
struct AblationSpec {
  std::vector<DrivePathway> zeroed_drive_transitions;
  // When present every drive element outside the list is zeroed.
  std::optional<std::vector<DrivePathway>> keep_only_transitions;
  std::vector<DressedLevel> linewidth_removed_levels;
  LinewidthSurgery linewidth_surgery = LinewidthSurgery::DiagonalOnly;
  bool drop_jump_term = false;

  bool empty() const;
  void validate() const;
  // Single-line human readable form, also used in output headers.
  std::string describe() const;

  bool operator==(const AblationSpec&) const = default;
};

// Inverse of AblationSpec::describe(): space-separated key=value tokens
//   zero=1-:2-:scanning,0:1+:both   keep_only=0:1-:fixed
//   linewidth_removed=1-   linewidth_surgery=diagonal|project
//   drop_jump_term=true|false
// or the single word "none".
AblationSpec parse_ablation(const std::string& text);

// Union of two specs. Throws InvalidArgument when the result would combine
// a whitelist with explicit zeroing.
AblationSpec combine(const AblationSpec& a, const AblationSpec& b);

Eigen::VectorXcd vectorize(const DensityMatrix& rho);
DensityMatrix unvectorize(const Eigen::VectorXcd& v, int dim);

Superoperator left_multiplication(const OperatorMatrix& a);   // rho -> a rho
Superoperator right_multiplication(const OperatorMatrix& b);  // rho -> rho b
// rho -> -i [h, rho]
Superoperator commutator_superoperator(const OperatorMatrix& h);
// rho -> c rho c^dag
Superoperator sandwich_superoperator(const OperatorMatrix& c);

// Row vector t with t * vec(rho) = Tr(rho).
Eigen::RowVectorXcd trace_functional(int dim);

// i E (sigma_+ - sigma_-).
OperatorMatrix build_drive_operator(double amplitude, const SystemDims& dims);

// Applies the drive-element part of the spec to op, expressed in the bare
// basis, for the given drive. Elements are zeroed symmetrically so a
// Hermitian input stays Hermitian.
OperatorMatrix ablate_drive(const OperatorMatrix& op, const DressedBasis& basis,
                            const AblationSpec& ab, DriveSelector which);

// kappa a^dag a + (gamma/2) sigma_+ sigma_- with the linewidth surgery of ab
// applied (so H_eff = H + Upsilon - i * damping).
OperatorMatrix build_damping_operator(const PhysicalParams& p,
                                      const SystemDims& dims,
                                      const AblationSpec& ab);

OperatorMatrix build_effective_hamiltonian(const PhysicalParams& p,
                                           const SystemDims& dims,
                                           const AblationSpec& ab = {});

Superoperator build_jump_superoperator(const PhysicalParams& p,
                                       const SystemDims& dims,
                                       const AblationSpec& ab = {});

// D(t) = exp(-i delta t) L_a + exp(+i delta t) L_b, from the Hermitian drive
// i E2 (exp(-i delta t) sigma_+ - exp(+i delta t) sigma_-).
struct ScanningDrive {
  Superoperator L_a;
  Superoperator L_b;
  // i E2 sigma_+ after ablation; the lowering part is its adjoint.
  OperatorMatrix raising;
};

ScanningDrive build_scanning_drive_superoperators(const PhysicalParams& p,
                                                  const SystemDims& dims,
                                                  const AblationSpec& ab = {});

// L0 = L_eff + J.
Superoperator assemble_static_liouvillian(const PhysicalParams& p,
                                          const SystemDims& dims,
                                          const AblationSpec& ab = {});

struct LiouvillianParts {
  Superoperator L0;
  Superoperator L_a;
  Superoperator L_b;
};

LiouvillianParts assemble_liouvillian(const PhysicalParams& p,
                                      const SystemDims& dims,
                                      const AblationSpec& ab = {});

}  // namespace jcpcs
