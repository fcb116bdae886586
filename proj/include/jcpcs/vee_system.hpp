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
#include <utility>
#include <vector>

#include "jcpcs/liouvillian.hpp"
#include "jcpcs/spectroscopy.hpp"

namespace jcpcs {

// Monochromatically driven three-level system {|0>, |1>_-, |1>_+}, every
// rate in units of kappa.
struct VeeParams {
  double g = 9.0;
  double E = 1.41421356237309505;  // drive amplitude (the fixed drive E1)
  double gamma = 2.0;
  double delta = -9.0;  // omega - omega_1; delta_tilde = -delta / g

  double delta_tilde() const { return -delta / g; }
  void validate() const;
};

struct VeeAmplitudes {
  std::complex<double> C0;
  std::complex<double> C1m;
  std::complex<double> C1p;

  double norm_squared() const {
    return std::norm(C0) + std::norm(C1m) + std::norm(C1p);
  }
};

// Coefficient coupling C1- and C1+, (kappa - gamma/2)/2.
double vee_cross_coupling(const VeeParams& p);

// Time derivatives of the damped dressed-state amplitudes. With ablated the
// |0> <-> |1>_- drive is removed from both equations it enters.
VeeAmplitudes vee_rhs(const VeeAmplitudes& s, const VeeParams& p,
                      bool ablated);

// Long-time response of the damped amplitudes in the linear regime: the
// excited amplitudes are slaved to C0 (dC1+-/dt = 0 at C0 = 1), the
// resulting pseudo-pure state is normalized and the returned value is its
// |1, g> population, i.e. the one-photon count rate in units of 2 kappa.
double vee_response(const VeeParams& p, bool ablated);

struct VeeExtrema {
  double delta_tilde_min = 0.0;
  double delta_tilde_max_minus = 0.0;  // magnitude of the inner maximum
  double delta_tilde_max_plus = 0.0;   // magnitude of the outer maximum
};

// Closed-form stationary points of the response for gamma = 2 kappa.
// Throws FormulaDomain for other gamma or when a root is complex.
VeeExtrema vee_extrema(const VeeParams& p);

// Closed-form shift of the vacuum Rabi peak, sqrt(1 - (2 + E^2)/(2 g^2)) - 1.
double vee_peak_shift(const VeeParams& p);

// Fitted delta_tilde of the vee_response maximum near delta_tilde = +1.
double vee_response_peak(const VeeParams& p, bool ablated,
                         double step = 0.002);

// Drive pathway removed by the competition ablation: <0|Y(E1)|1>_-.
AblationSpec vee_competition_ablation();

struct VeeScanOptions {
  unsigned threads = 1;
};

// One-photon count rate <a^dag a> of the three-level truncation (n_max = 1
// restricted to |0>, |1>_-, |1>_+) on the delta_tilde grid. Zeroed fixed-drive
// pathways in ab remove transitions from the three-level drive; with
// drop_jump_term the normalized stationary state of H_eff is used instead
// of the master-equation steady state. An annotation line records the
// closed-form shift when it is defined.
Spectrum vee_master_equation_scan(const VeeParams& p,
                                  const std::vector<double>& delta_tilde_grid,
                                  const AblationSpec& ab,
                                  const VeeScanOptions& options = {});

// One-photon rate at a single point of vee_master_equation_scan.
double vee_master_equation_rate(const VeeParams& p, const AblationSpec& ab);

}  // namespace jcpcs
