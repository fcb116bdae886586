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

#include "jcpcs/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jcpcs/errors.hpp"

namespace jcpcs {

namespace {

constexpr Complex kI{0.0, 1.0};

bool has_drive_surgery(const AblationSpec& ab) {
  return !ab.zeroed_drive_transitions.empty() ||
         ab.keep_only_transitions.has_value();
}

std::string describe_pathways(const std::vector<DrivePathway>& list) {
  std::string out;
  for (const auto& t : list) {
    if (!out.empty()) out += ",";
    out += t.first.name() + ":" + t.second.name() + ":" + to_string(t.drive);
  }
  return out;
}

// Identity minus the projectors onto the listed dressed levels.
OperatorMatrix level_complement(const DressedBasis& basis,
                                const std::vector<DressedLevel>& levels) {
  const auto d = basis.unitary.rows();
  OperatorMatrix q = OperatorMatrix::Identity(d, d);
  for (const auto& level : levels) {
    const auto col = basis.unitary.col(basis.column(level));
    q -= col * col.adjoint();
  }
  return q;
}

DressedBasis surgery_basis(const PhysicalParams& p, const SystemDims& dims) {
  return build_dressed_basis(p.g, p.cavity_detuning(), dims);
}

}  // namespace

void PhysicalParams::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
  };
  require(g > 0.0, "g must be > 0");
  require(g_f > 0.0, "g_f must be > 0");
  require(kappa > 0.0, "kappa must be > 0");
  require(gamma >= 0.0, "gamma must be >= 0");
  require(E1 >= 0.0, "E1 must be >= 0");
  require(E2 >= 0.0, "E2 must be >= 0");
  require(std::isfinite(delta), "delta must be finite");
}

std::string to_string(DriveSelector which) {
  switch (which) {
    case DriveSelector::Fixed:
      return "fixed";
    case DriveSelector::Scanning:
      return "scanning";
    case DriveSelector::Both:
      return "both";
  }
  return "?";
}

DriveSelector parse_drive_selector(const std::string& text) {
  if (text == "fixed") return DriveSelector::Fixed;
  if (text == "scanning") return DriveSelector::Scanning;
  if (text == "both") return DriveSelector::Both;
  throw InvalidArgument("unknown drive '" + text +
                        "' (expected fixed, scanning or both)");
}

std::string to_string(LinewidthSurgery mode) {
  return mode == LinewidthSurgery::DiagonalOnly ? "diagonal" : "project";
}

LinewidthSurgery parse_linewidth_surgery(const std::string& text) {
  if (text == "diagonal") return LinewidthSurgery::DiagonalOnly;
  if (text == "project") return LinewidthSurgery::ProjectOut;
  throw InvalidArgument("unknown linewidth surgery '" + text +
                        "' (expected diagonal or project)");
}

bool AblationSpec::empty() const {
  return zeroed_drive_transitions.empty() && !keep_only_transitions &&
         linewidth_removed_levels.empty() && !drop_jump_term;
}

void AblationSpec::validate() const {
  if (keep_only_transitions && !zeroed_drive_transitions.empty()) {
    throw InvalidArgument(
        "zeroed_drive_transitions and keep_only_transitions are mutually "
        "exclusive");
  }
}

std::string AblationSpec::describe() const {
  if (empty()) return "none";
  std::ostringstream os;
  const char* sep = "";
  if (!zeroed_drive_transitions.empty()) {
    os << sep << "zero=" << describe_pathways(zeroed_drive_transitions);
    sep = " ";
  }
  if (keep_only_transitions) {
    os << sep << "keep_only=" << describe_pathways(*keep_only_transitions);
    sep = " ";
  }
  if (!linewidth_removed_levels.empty()) {
    os << sep << "linewidth_removed=";
    for (std::size_t i = 0; i < linewidth_removed_levels.size(); ++i) {
      os << (i ? "," : "") << linewidth_removed_levels[i].name();
    }
    os << " linewidth_surgery=" << to_string(linewidth_surgery);
    sep = " ";
  }
  if (drop_jump_term) os << sep << "drop_jump_term=true";
  return os.str();
}

AblationSpec parse_ablation(const std::string& text) {
  AblationSpec out;
  std::istringstream in(text);
  std::string token;
  auto parse_list = [](const std::string& value) {
    std::vector<DrivePathway> list;
    std::istringstream items(value);
    std::string item;
    while (std::getline(items, item, ',')) {
      const auto c1 = item.find(':');
      const auto c2 = item.find(':', c1 == std::string::npos ? c1 : c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) {
        throw InvalidArgument("transition '" + item +
                              "' is not level:level:drive");
      }
      list.push_back({DressedLevel::parse(item.substr(0, c1)),
                      DressedLevel::parse(item.substr(c1 + 1, c2 - c1 - 1)),
                      parse_drive_selector(item.substr(c2 + 1))});
    }
    return list;
  };
  while (in >> token) {
    if (token == "none") continue;
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("ablation token '" + token + "' is not key=value");
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "zero") {
      out.zeroed_drive_transitions = parse_list(value);
    } else if (key == "keep_only") {
      out.keep_only_transitions = parse_list(value);
    } else if (key == "linewidth_removed") {
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        out.linewidth_removed_levels.push_back(DressedLevel::parse(item));
      }
    } else if (key == "linewidth_surgery") {
      out.linewidth_surgery = parse_linewidth_surgery(value);
    } else if (key == "drop_jump_term") {
      if (value != "true" && value != "false") {
        throw InvalidArgument("drop_jump_term must be true or false");
      }
      out.drop_jump_term = value == "true";
    } else {
      throw InvalidArgument("unknown ablation key '" + key + "'");
    }
  }
  out.validate();
  return out;
}

AblationSpec combine(const AblationSpec& a, const AblationSpec& b) {
  AblationSpec out = a;
  auto append_unique = [](auto& dst, const auto& src) {
    for (const auto& item : src) {
      if (std::find(dst.begin(), dst.end(), item) == dst.end()) {
        dst.push_back(item);
      }
    }
  };
  append_unique(out.zeroed_drive_transitions, b.zeroed_drive_transitions);
  if (b.keep_only_transitions) {
    if (!out.keep_only_transitions) out.keep_only_transitions.emplace();
    append_unique(*out.keep_only_transitions, *b.keep_only_transitions);
  }
  append_unique(out.linewidth_removed_levels, b.linewidth_removed_levels);
  if (!b.linewidth_removed_levels.empty()) {
    out.linewidth_surgery = b.linewidth_surgery;
  }
  out.drop_jump_term = a.drop_jump_term || b.drop_jump_term;
  out.validate();
  return out;
}

Eigen::VectorXcd vectorize(const DensityMatrix& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

DensityMatrix unvectorize(const Eigen::VectorXcd& v, int dim) {
  return Eigen::Map<const DensityMatrix>(v.data(), dim, dim);
}

Superoperator left_multiplication(const OperatorMatrix& a) {
  const auto d = a.rows();
  Superoperator s = Superoperator::Zero(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    s.block(j * d, j * d, d, d) = a;
  }
  return s;
}

Superoperator right_multiplication(const OperatorMatrix& b) {
  const auto d = b.rows();
  Superoperator s = Superoperator::Zero(d * d, d * d);
  // (rho b)(i, j) = sum_k rho(i, k) b(k, j)
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      if (b(k, j) == Complex(0.0)) continue;
      for (Eigen::Index i = 0; i < d; ++i) {
        s(i + j * d, i + k * d) = b(k, j);
      }
    }
  }
  return s;
}

Superoperator commutator_superoperator(const OperatorMatrix& h) {
  return -kI * (left_multiplication(h) - right_multiplication(h));
}

Superoperator sandwich_superoperator(const OperatorMatrix& c) {
  return left_multiplication(c) * right_multiplication(c.adjoint());
}

Eigen::RowVectorXcd trace_functional(int dim) {
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(dim * dim);
  for (int i = 0; i < dim; ++i) t(i + i * dim) = 1.0;
  return t;
}

OperatorMatrix build_drive_operator(double amplitude, const SystemDims& dims) {
  if (amplitude < 0.0) throw InvalidArgument("drive amplitude must be >= 0");
  const AtomicOperators s = build_atomic_operators(dims);
  return kI * amplitude * (s.sigma_plus - s.sigma_minus);
}

OperatorMatrix ablate_drive(const OperatorMatrix& op, const DressedBasis& basis,
                            const AblationSpec& ab, DriveSelector which) {
  ab.validate();
  if (!has_drive_surgery(ab)) return op;
  OperatorMatrix x = basis.to_dressed(op);
  if (ab.keep_only_transitions) {
    Eigen::MatrixXi keep = Eigen::MatrixXi::Zero(x.rows(), x.cols());
    for (const auto& t : *ab.keep_only_transitions) {
      if (!t.applies_to(which)) continue;
      const int i = basis.column(t.first);
      const int j = basis.column(t.second);
      keep(i, j) = keep(j, i) = 1;
    }
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      for (Eigen::Index r = 0; r < x.rows(); ++r) {
        if (!keep(r, c)) x(r, c) = 0.0;
      }
    }
  }
  for (const auto& t : ab.zeroed_drive_transitions) {
    if (!t.applies_to(which)) continue;
    const int i = basis.column(t.first);
    const int j = basis.column(t.second);
    x(i, j) = 0.0;
    x(j, i) = 0.0;
  }
  return basis.from_dressed(x);
}

OperatorMatrix build_damping_operator(const PhysicalParams& p,
                                      const SystemDims& dims,
                                      const AblationSpec& ab) {
  const OperatorMatrix a = build_annihilation(dims);
  const AtomicOperators s = build_atomic_operators(dims);
  OperatorMatrix damping =
      p.kappa * a.adjoint() * a + 0.5 * p.gamma * s.sigma_plus * s.sigma_minus;
  if (ab.linewidth_removed_levels.empty()) return damping;

  const DressedBasis basis = surgery_basis(p, dims);
  if (ab.linewidth_surgery == LinewidthSurgery::ProjectOut) {
    const OperatorMatrix q = level_complement(basis, ab.linewidth_removed_levels);
    return q * damping * q;
  }
  OperatorMatrix dressed = basis.to_dressed(damping);
  for (const auto& level : ab.linewidth_removed_levels) {
    const int c = basis.column(level);
    dressed(c, c) = 0.0;
  }
  return basis.from_dressed(dressed);
}

OperatorMatrix build_effective_hamiltonian(const PhysicalParams& p,
                                           const SystemDims& dims,
                                           const AblationSpec& ab) {
  p.validate();
  ab.validate();
  OperatorMatrix drive = build_drive_operator(p.E1, dims);
  if (has_drive_surgery(ab)) {
    drive = ablate_drive(drive, surgery_basis(p, dims), ab, DriveSelector::Fixed);
  }
  return build_jc_hamiltonian(p.g, p.cavity_detuning(), dims) + drive -
         kI * build_damping_operator(p, dims, ab);
}

Superoperator build_jump_superoperator(const PhysicalParams& p,
                                       const SystemDims& dims,
                                       const AblationSpec& ab) {
  p.validate();
  const int d2 = dims.dim() * dims.dim();
  if (ab.drop_jump_term) return Superoperator::Zero(d2, d2);
  OperatorMatrix a = build_annihilation(dims);
  OperatorMatrix lower = build_atomic_operators(dims).sigma_minus;
  if (!ab.linewidth_removed_levels.empty() &&
      ab.linewidth_surgery == LinewidthSurgery::ProjectOut) {
    const OperatorMatrix q =
        level_complement(surgery_basis(p, dims), ab.linewidth_removed_levels);
    a = a * q;
    lower = lower * q;
  }
  return 2.0 * p.kappa * sandwich_superoperator(a) +
         p.gamma * sandwich_superoperator(lower);
}

ScanningDrive build_scanning_drive_superoperators(const PhysicalParams& p,
                                                  const SystemDims& dims,
                                                  const AblationSpec& ab) {
  p.validate();
  ab.validate();
  OperatorMatrix raising = kI * p.E2 * build_atomic_operators(dims).sigma_plus;
  if (has_drive_surgery(ab)) {
    raising = ablate_drive(raising, surgery_basis(p, dims), ab,
                           DriveSelector::Scanning);
  }
  ScanningDrive out;
  out.L_a = commutator_superoperator(raising);
  out.L_b = commutator_superoperator(raising.adjoint());
  out.raising = std::move(raising);
  return out;
}

Superoperator assemble_static_liouvillian(const PhysicalParams& p,
                                          const SystemDims& dims,
                                          const AblationSpec& ab) {
  const OperatorMatrix h = build_effective_hamiltonian(p, dims, ab);
  return -kI * (left_multiplication(h) - right_multiplication(h.adjoint())) +
         build_jump_superoperator(p, dims, ab);
}

LiouvillianParts assemble_liouvillian(const PhysicalParams& p,
                                      const SystemDims& dims,
                                      const AblationSpec& ab) {
  ScanningDrive drive = build_scanning_drive_superoperators(p, dims, ab);
  return {assemble_static_liouvillian(p, dims, ab), std::move(drive.L_a),
          std::move(drive.L_b)};
}

}  // namespace jcpcs
