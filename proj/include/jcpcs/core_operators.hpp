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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace jcpcs {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;

// Truncated atom (x) field space.
//
// Joint index = field_index * 2 + atom_index with atom 0 = |g>, 1 = |e>.
// Every matrix in the library uses this ordering.
struct SystemDims {
  int n_max = 3;

  int dim_field() const { return n_max + 1; }
  static constexpr int dim_atom() { return 2; }
  int dim() const { return dim_field() * dim_atom(); }

  int index(int photons, int atom) const { return photons * 2 + atom; }

  // Throws InvalidArgument unless n_max >= 1.
  void validate() const;
};

// Unit vector |photons, atom>.
Eigen::VectorXcd basis_state(const SystemDims& dims, int photons, int atom);

OperatorMatrix build_annihilation(const SystemDims& dims);

struct AtomicOperators {
  OperatorMatrix sigma_plus;
  OperatorMatrix sigma_minus;
  // Eigenvalues +1/2 on |e> and -1/2 on |g>, so sigma_z + a^dag a counts
  // excitations up to a constant offset of -1/2.
  OperatorMatrix sigma_z;
};

AtomicOperators build_atomic_operators(const SystemDims& dims);

// (omega - omega_1)(sigma_z + a^dag a) + i g (a^dag sigma_- - a sigma_+),
// all frequencies in units of the cavity decay rate.
OperatorMatrix build_jc_hamiltonian(double g, double detuning_frame,
                                    const SystemDims& dims);

// Label of a dressed level of the JC ladder.
//
// Ground is |0> = |0, g>. Minus/Plus with rung n >= 1 are
// |n>_+- = i/sqrt(2) (|n-1, e> +- i |n, g>). Top is the uncoupled
// |n_max, e> left over by the Fock truncation (its partner |n_max+1, g> is
// outside the space).
struct DressedLevel {
  enum class Branch { Ground, Minus, Plus, Top };

  int rung = 0;
  Branch branch = Branch::Ground;

  static DressedLevel ground() { return {0, Branch::Ground}; }
  static DressedLevel minus(int n) { return {n, Branch::Minus}; }
  static DressedLevel plus(int n) { return {n, Branch::Plus}; }
  static DressedLevel top() { return {0, Branch::Top}; }

  // "0", "1-", "2+", "top".
  std::string name() const;
  static DressedLevel parse(const std::string& text);

  auto operator<=>(const DressedLevel&) const = default;
};

struct DressedBasis {
  // Columns: |0>, then |n>_-, |n>_+ for n = 1..n_max, then |n_max, e>.
  OperatorMatrix unitary;
  // Diagonal of U^dag H U in the same ordering.
  Eigen::VectorXd energies;
  double g = 0.0;
  // True when the coupling was below threshold and the columns are the bare
  // states in the joint ordering instead.
  bool bare_fallback = false;

  // Column of the given level; throws InvalidArgument when the level does
  // not exist in this truncation or the basis is bare.
  int column(const DressedLevel& level) const;
  DressedLevel level_at(int column) const;

  OperatorMatrix to_dressed(const OperatorMatrix& op) const {
    return unitary.adjoint() * op * unitary;
  }
  OperatorMatrix from_dressed(const OperatorMatrix& op) const {
    return unitary * op * unitary.adjoint();
  }
};

inline constexpr double kDefaultCouplingEpsilon = 1e-9;

// Throws DegenerateCoupling when g < epsilon.
DressedBasis build_dressed_basis(double g, double detuning_frame,
                                 const SystemDims& dims,
                                 double epsilon = kDefaultCouplingEpsilon);

// As build_dressed_basis, but below epsilon returns the bare basis with
// bare_fallback set.
DressedBasis build_dressed_basis_or_bare(
    double g, double detuning_frame, const SystemDims& dims,
    double epsilon = kDefaultCouplingEpsilon);

double max_abs(const Eigen::MatrixXcd& m);

}  // namespace jcpcs
