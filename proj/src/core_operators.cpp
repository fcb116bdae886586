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

#include "jcpcs/core_operators.hpp"

#include <cmath>

#include "jcpcs/errors.hpp"

namespace jcpcs {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

void SystemDims::validate() const {
  if (n_max < 1) {
    throw InvalidArgument("n_max must be >= 1, got " + std::to_string(n_max));
  }
}

Eigen::VectorXcd basis_state(const SystemDims& dims, int photons, int atom) {
  if (photons < 0 || photons > dims.n_max || atom < 0 || atom > 1) {
    throw InvalidArgument("basis state outside the truncated space");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dims.dim());
  v(dims.index(photons, atom)) = 1.0;
  return v;
}

OperatorMatrix build_annihilation(const SystemDims& dims) {
  dims.validate();
  OperatorMatrix a = OperatorMatrix::Zero(dims.dim(), dims.dim());
  for (int n = 1; n <= dims.n_max; ++n) {
    for (int atom = 0; atom < 2; ++atom) {
      a(dims.index(n - 1, atom), dims.index(n, atom)) = std::sqrt(double(n));
    }
  }
  return a;
}

AtomicOperators build_atomic_operators(const SystemDims& dims) {
  dims.validate();
  const int d = dims.dim();
  AtomicOperators ops{OperatorMatrix::Zero(d, d), OperatorMatrix::Zero(d, d),
                      OperatorMatrix::Zero(d, d)};
  for (int n = 0; n <= dims.n_max; ++n) {
    const int g = dims.index(n, 0);
    const int e = dims.index(n, 1);
    ops.sigma_plus(e, g) = 1.0;
    ops.sigma_minus(g, e) = 1.0;
    ops.sigma_z(e, e) = 0.5;
    ops.sigma_z(g, g) = -0.5;
  }
  return ops;
}

OperatorMatrix build_jc_hamiltonian(double g, double detuning_frame,
                                    const SystemDims& dims) {
  if (g < 0.0) throw InvalidArgument("coupling g must be >= 0");
  const OperatorMatrix a = build_annihilation(dims);
  const AtomicOperators s = build_atomic_operators(dims);
  const OperatorMatrix ad = a.adjoint();
  return detuning_frame * (s.sigma_z + ad * a) +
         kI * g * (ad * s.sigma_minus - a * s.sigma_plus);
}

std::string DressedLevel::name() const {
  switch (branch) {
    case Branch::Ground:
      return "0";
    case Branch::Minus:
      return std::to_string(rung) + "-";
    case Branch::Plus:
      return std::to_string(rung) + "+";
    case Branch::Top:
      return "top";
  }
  return "?";
}

DressedLevel DressedLevel::parse(const std::string& text) {
  if (text == "0") return ground();
  if (text == "top") return top();
  if (text.size() >= 2) {
    const char sign = text.back();
    const std::string digits = text.substr(0, text.size() - 1);
    bool numeric = !digits.empty();
    for (char c : digits) numeric = numeric && (c >= '0' && c <= '9');
    if (numeric && (sign == '-' || sign == '+')) {
      const int n = std::stoi(digits);
      if (n >= 1) return sign == '-' ? minus(n) : plus(n);
    }
  }
  throw InvalidArgument("unknown dressed level '" + text +
                        "' (expected 0, <n>-, <n>+ or top)");
}

int DressedBasis::column(const DressedLevel& level) const {
  if (bare_fallback) {
    throw InvalidArgument("dressed level " + level.name() +
                          " requested from a bare-basis fallback");
  }
  const int d = static_cast<int>(unitary.cols());
  const int n_max = (d - 2) / 2;
  using B = DressedLevel::Branch;
  switch (level.branch) {
    case B::Ground:
      return 0;
    case B::Top:
      return d - 1;
    case B::Minus:
    case B::Plus:
      if (level.rung < 1 || level.rung > n_max) {
        throw InvalidArgument("dressed level " + level.name() +
                              " outside truncation n_max=" +
                              std::to_string(n_max));
      }
      return level.branch == B::Minus ? 2 * level.rung - 1 : 2 * level.rung;
  }
  return -1;
}

DressedLevel DressedBasis::level_at(int col) const {
  const int d = static_cast<int>(unitary.cols());
  if (col == 0) return DressedLevel::ground();
  if (col == d - 1) return DressedLevel::top();
  return col % 2 == 1 ? DressedLevel::minus((col + 1) / 2)
                      : DressedLevel::plus(col / 2);
}

DressedBasis build_dressed_basis(double g, double detuning_frame,
                                 const SystemDims& dims, double epsilon) {
  if (!(g >= epsilon)) {
    throw DegenerateCoupling("g = " + std::to_string(g) +
                             " is below the dressed-basis threshold " +
                             std::to_string(epsilon));
  }
  dims.validate();
  const int d = dims.dim();
  DressedBasis basis;
  basis.g = g;
  basis.unitary = OperatorMatrix::Zero(d, d);
  basis.unitary(dims.index(0, 0), 0) = 1.0;
  const double r = 1.0 / std::sqrt(2.0);
  for (int n = 1; n <= dims.n_max; ++n) {
    const int e = dims.index(n - 1, 1);
    const int gr = dims.index(n, 0);
    // |n>_- = i/sqrt2 (|n-1,e> - i|n,g>),  |n>_+ = i/sqrt2 (|n-1,e> + i|n,g>)
    basis.unitary(e, 2 * n - 1) = kI * r;
    basis.unitary(gr, 2 * n - 1) = kI * r * (-kI);
    basis.unitary(e, 2 * n) = kI * r;
    basis.unitary(gr, 2 * n) = kI * r * kI;
  }
  basis.unitary(dims.index(dims.n_max, 1), d - 1) = 1.0;

  const OperatorMatrix h = build_jc_hamiltonian(g, detuning_frame, dims);
  basis.energies = basis.to_dressed(h).diagonal().real();
  return basis;
}

DressedBasis build_dressed_basis_or_bare(double g, double detuning_frame,
                                         const SystemDims& dims,
                                         double epsilon) {
  if (g >= epsilon) return build_dressed_basis(g, detuning_frame, dims, epsilon);
  dims.validate();
  DressedBasis basis;
  basis.g = g;
  basis.bare_fallback = true;
  basis.unitary = OperatorMatrix::Identity(dims.dim(), dims.dim());
  basis.energies =
      build_jc_hamiltonian(std::max(g, 0.0), detuning_frame, dims)
          .diagonal()
          .real();
  return basis;
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace jcpcs
