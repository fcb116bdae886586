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

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "jcpcs/ensemble.hpp"
#include "jcpcs/floquet.hpp"
#include "jcpcs/liouvillian.hpp"

namespace jcpcs {

enum class Observable {
  W2,      // two-photon count rate <a^dag^2 a^2>
  Delta2,  // w2 minus the E1 = 0 background
  N1,      // one-photon count rate <a^dag a>
};

std::string to_string(Observable tag);
Observable parse_observable(const std::string& text);

struct Spectrum {
  std::vector<double> delta_tilde;  // strictly increasing
  std::vector<double> values;
  Observable observable = Observable::W2;
  PhysicalParams params;
  AblationSpec ablation;
  // Free-form '#' header lines (without the leading '#').
  std::vector<std::string> annotations;

  std::size_t size() const { return values.size(); }
  void validate() const;
};

struct PeakReport {
  double location = 0.0;  // apex - nominal
  double apex = 0.0;      // fitted delta_tilde of the maximum
  double height = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  std::string fit_method;
  double nominal = 0.0;
  // RMS deviation of a least-squares quadratic through the five samples
  // around the grid maximum, relative to the height.
  double fit_residual = 0.0;
};

double two_photon_rate(const DensityMatrix& rho, const SystemDims& dims);
double one_photon_rate(const DensityMatrix& rho, const SystemDims& dims);

struct ScanOptions {
  SystemDims dims{3};
  FloquetOptions floquet{};
  unsigned threads = 1;
};

// w2 of the m = 0 Floquet component at a single parameter point.
double two_photon_rate_at(const PhysicalParams& p, const AblationSpec& ab,
                          const ScanOptions& options);

// 2PCR (or the background-subtracted difference) on the delta_tilde grid,
// averaged over the coupling distribution. p.g and p.delta are overwritten
// per node and grid point; every other field is taken from p.
Spectrum scan_2pcr(const PhysicalParams& p, const CouplingDistribution& dist,
                   const std::vector<double>& delta_tilde_grid,
                   const AblationSpec& ab, bool background_subtract,
                   const ScanOptions& options = {});

// Quadratic refinement of the grid maximum inside window.
PeakReport find_peak(const Spectrum& spec, double nominal,
                     std::pair<double, double> window);

// find_peak on a symmetric window of half_width about the grid maximum
// inside search.
PeakReport find_peak_near(const Spectrum& spec, double nominal,
                          std::pair<double, double> search,
                          double half_width = 0.15);

// Evenly spaced grid lo, lo + step, ..., up to hi inclusive (within 1e-9).
std::vector<double> make_grid(double lo, double hi, double step);
// Coarse grid over [lo, hi] with a fine sub-grid over [fine_lo, fine_hi].
std::vector<double> make_refined_grid(double lo, double hi, double coarse_step,
                                      double fine_lo, double fine_hi,
                                      double fine_step);

// Named pathway-ablation experiments; names may be joined with '+'.
//   none                no surgery
//   no-1m-2m            zero <1-|Y(E2)|2->
//   keep-only-resonant  keep only <0|Y(E1)|1-> and <1-|Y(E2)|2+>
//   no-1m-linewidth     remove the |1>_- linewidth and the jump term
//   no-0-1p             zero <0|Y(E2)|1+>
//   combined-all        no-1m-2m + no-1m-linewidth + no-0-1p
//   vee-competition     zero <0|Y(E1)|1-> (three-level competition)
//   no-jumps            drop the jump term only
AblationSpec ablation_preset(const std::string& name);
const std::vector<std::string>& ablation_preset_names();

void write_spectrum(std::ostream& out, const Spectrum& spec);
Spectrum read_spectrum(std::istream& in);

}  // namespace jcpcs
