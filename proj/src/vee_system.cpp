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

#include "jcpcs/vee_system.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "jcpcs/errors.hpp"
#include "jcpcs/floquet.hpp"
#include "jcpcs/parallel.hpp"

namespace jcpcs {

namespace {

constexpr double kKappa = 1.0;
const std::complex<double> kI{0.0, 1.0};

void check_closed_form(const VeeParams& p) {
  p.validate();
  if (std::abs(p.gamma - 2.0 * kKappa) > 1e-12) {
    throw FormulaDomain("closed-form extrema assume gamma = 2 kappa");
  }
  const double x = (2.0 + p.E * p.E) / (2.0 * p.g * p.g);
  if (x > 1.0) {
    throw FormulaDomain("g^2 must exceed (2 + E^2)/2");
  }
}

// Three-level physical parameters: the drive is E1 alone and the frame is
// set by the scanned detuning.
PhysicalParams three_level_params(const VeeParams& p) {
  PhysicalParams q;
  q.g = p.g;
  q.g_f = p.g;
  q.kappa = kKappa;
  q.gamma = p.gamma;
  q.E1 = p.E;
  q.E2 = 0.0;
  q.frame_detuning = p.delta;
  return q;
}

// Restricts the n_max = 1 drive to |0> <-> |1>_+- and removes any fixed-drive
// pathway zeroed in ab.
AblationSpec three_level_ablation(const AblationSpec& ab) {
  ab.validate();
  AblationSpec out = ab;
  if (ab.keep_only_transitions) return out;
  std::vector<DrivePathway> keep;
  for (const DrivePathway& t :
       {DrivePathway{DressedLevel::ground(), DressedLevel::minus(1),
                     DriveSelector::Fixed},
        DrivePathway{DressedLevel::ground(), DressedLevel::plus(1),
                     DriveSelector::Fixed}}) {
    bool zeroed = false;
    for (const DrivePathway& z : ab.zeroed_drive_transitions) {
      const bool same = (z.first == t.first && z.second == t.second) ||
                        (z.first == t.second && z.second == t.first);
      zeroed = zeroed || (same && z.applies_to(DriveSelector::Fixed));
    }
    if (!zeroed) keep.push_back(t);
  }
  out.zeroed_drive_transitions.clear();
  out.keep_only_transitions = keep;
  return out;
}

// Normalized stationary state of H_eff with the ground amplitude held at 1.
// Energies are measured from the ground level, whose phase is frozen.
DensityMatrix pseudo_pure_state(const OperatorMatrix& h_eff) {
  const Eigen::Index n = h_eff.rows() - 1;
  const Eigen::VectorXcd rhs = -h_eff.block(1, 0, n, 1);
  const Eigen::MatrixXcd excited =
      h_eff.block(1, 1, n, n) - h_eff(0, 0) * Eigen::MatrixXcd::Identity(n, n);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(excited);
  Eigen::VectorXcd psi(n + 1);
  psi(0) = 1.0;
  psi.tail(n) = lu.solve(rhs);
  if (!psi.allFinite()) throw SingularSystem("excited block of H_eff");
  psi /= psi.norm();
  return psi * psi.adjoint();
}

}  // namespace

void VeeParams::validate() const {
  if (!(g > 0.0)) throw InvalidArgument("vee g must be > 0");
  if (!(E >= 0.0)) throw InvalidArgument("vee E must be >= 0");
  if (!(gamma >= 0.0)) throw InvalidArgument("vee gamma must be >= 0");
  if (!std::isfinite(delta)) throw InvalidArgument("vee delta must be finite");
}

double vee_cross_coupling(const VeeParams& p) {
  return 0.5 * (kKappa - 0.5 * p.gamma);
}

VeeAmplitudes vee_rhs(const VeeAmplitudes& s, const VeeParams& p,
                      bool ablated) {
  const double a = p.E / std::sqrt(2.0);
  const double damping = 0.5 * (kKappa + 0.5 * p.gamma);
  const double c = vee_cross_coupling(p);
  const std::complex<double> c0 = ablated ? 0.0 : s.C0;
  const std::complex<double> c1m = ablated ? 0.0 : s.C1m;
  VeeAmplitudes d;
  d.C0 = -a * (c1m + s.C1p);
  d.C1m = a * c0 - (kI * (p.delta - p.g) + damping) * s.C1m + c * s.C1p;
  d.C1p = a * s.C0 - (kI * (p.delta + p.g) + damping) * s.C1p + c * s.C1m;
  return d;
}

double vee_response(const VeeParams& p, bool ablated) {
  p.validate();
  const double damping = 0.5 * (kKappa + 0.5 * p.gamma);
  if (!(damping > 0.0)) throw InvalidArgument("vee response needs damping");
  const double a = p.E / std::sqrt(2.0);
  const double c = vee_cross_coupling(p);
  // Stationary excited amplitudes at C0 = 1.
  Eigen::Matrix2cd m;
  m << kI * (p.delta - p.g) + damping, -c, -c, kI * (p.delta + p.g) + damping;
  const Eigen::Vector2cd source(ablated ? 0.0 : a, a);
  const Eigen::Vector2cd x = m.partialPivLu().solve(source);
  const double excited = std::norm(x(0) - x(1)) / 2.0;
  return excited / (1.0 + x.squaredNorm());
}

VeeExtrema vee_extrema(const VeeParams& p) {
  check_closed_form(p);
  const double x = (2.0 + p.E * p.E) / (2.0 * p.g * p.g);
  return {0.0, std::sqrt(1.0 - x), std::sqrt(1.0 + x)};
}

double vee_peak_shift(const VeeParams& p) {
  return vee_extrema(p).delta_tilde_max_minus - 1.0;
}

double vee_response_peak(const VeeParams& p, bool ablated, double step) {
  Spectrum spec;
  spec.observable = Observable::N1;
  spec.delta_tilde = make_grid(0.7, 1.3, step);
  for (double x : spec.delta_tilde) {
    VeeParams q = p;
    q.delta = -p.g * x;
    spec.values.push_back(vee_response(q, ablated));
  }
  return find_peak_near(spec, 0.0, {0.7, 1.3}, 10.0 * step).apex;
}

AblationSpec vee_competition_ablation() {
  return ablation_preset("vee-competition");
}

double vee_master_equation_rate(const VeeParams& p, const AblationSpec& ab) {
  p.validate();
  const SystemDims dims{1};
  const PhysicalParams q = three_level_params(p);
  const AblationSpec restricted = three_level_ablation(ab);
  DensityMatrix rho;
  if (restricted.drop_jump_term) {
    rho = pseudo_pure_state(build_effective_hamiltonian(q, dims, restricted));
  } else {
    rho = steady_state(assemble_static_liouvillian(q, dims, restricted), dims);
  }
  return one_photon_rate(rho, dims);
}

Spectrum vee_master_equation_scan(const VeeParams& p,
                                  const std::vector<double>& grid,
                                  const AblationSpec& ab,
                                  const VeeScanOptions& options) {
  if (grid.empty()) throw InvalidArgument("delta_tilde grid is empty");
  p.validate();
  Spectrum spec;
  spec.delta_tilde = grid;
  spec.observable = Observable::N1;
  spec.ablation = ab;
  spec.params = three_level_params(p);
  spec.params.frame_detuning.reset();
  spec.values = parallel_map<double>(
      grid.size(), options.threads, [&](std::size_t i) {
        VeeParams q = p;
        q.delta = -p.g * grid[i];
        try {
          return vee_master_equation_rate(q, ab);
        } catch (const Error& e) {
          std::ostringstream os;
          os << std::setprecision(10) << "at delta_tilde = " << grid[i]
             << ": " << e.what();
          throw Error(os.str(), e.code());
        }
      });
  try {
    std::ostringstream os;
    os << std::setprecision(17) << "predicted_shift = " << vee_peak_shift(p);
    spec.annotations.push_back(os.str());
  } catch (const FormulaDomain&) {
    spec.annotations.push_back("predicted_shift = undefined");
  }
  spec.validate();
  return spec;
}

}  // namespace jcpcs
