// Copyright 2026 The ptflab Authors
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

#ifndef PTF_RECONSTRUCT_HPP_
#define PTF_RECONSTRUCT_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ptf/poly.hpp"
#include "ptf/rng.hpp"
#include "ptf/wht.hpp"

namespace ptf {

// Accuracy and budget for the iterative reconstruction.
//
// Defaults: max_iters = ceil(64 / xi^2), stop_radius = 4 xi. The stopping
// radius must stay below 6 xi so a terminating run certifies the 6 xi
// coefficient-distance guarantee against any Boolean source within xi of
// the input vector.
struct ReconstructParams {
  double xi = 0.0;
  std::int64_t max_iters = 0;
  double stop_radius = 0.0;

  static ReconstructParams defaults(double xi);
  void validate() const;
};

// Callable contract mapping a hypothesis to its degree-d Chow vector with
// l2 error at most xi/8. `exact` enumerates the cube; `sampled` draws
// fresh Monte Carlo samples per call, sized by a Hoeffding bound.
struct ChowOracle {
  std::string mode;
  std::function<ChowVector(const PbfHypothesis&)> estimate;
};

ChowOracle exact_chow_oracle(int n, int d);

// Per call draws m = ceil(2 ln(4N/delta) N / (xi/8)^2) samples, all
// coordinates sharing them; with probability >= 1 - delta one call meets
// the xi/8 contract.
ChowOracle sampled_chow_oracle(int n, int d, double xi, double delta,
                               std::uint64_t seed);

struct ReconstructResult {
  PbfHypothesis hypothesis;
  std::int64_t iterations = 0;  // integer updates performed
  double residual = 0.0;        // l2 residual at termination
  std::vector<double> trace;    // residual norm before each update
};

// Iterative fit of a degree-d PBF to the target coefficient vector.
//
// Maintains integer weights H with scale lambda = xi/2 and repeats
//   rho = alpha - oracle(h);  H += round_half_even(rho / xi)
// until ||rho||_2 <= stop_radius. Exhausting max_iters first raises
// NonConvergenceError carrying the residual trace (the usual causes: an
// oracle violating its accuracy contract, or xi too small for the
// sampling budget).
ReconstructResult reconstruct(const ChowVector& alpha,
                              const ReconstructParams& params,
                              const ChowOracle& oracle);

// Integer polynomial sum_S H_S chi_S (the scale drops; sign-invariant)
// plus the certificate sum_S H_S^2.
struct PtfExtraction {
  MultilinearPoly poly;
  std::int64_t certificate = 0;
};

PtfExtraction extract_ptf(const PbfHypothesis& h);

struct LearnReport {
  ReconstructResult recon;
  PtfExtraction extraction;
  bool has_reference = false;
  double dist_sign = 0.0;  // exact dist(f, sign(Q)) when a reference is given
  double dist_pbf = 0.0;   // exact dist(f, g) for the bounded hypothesis
  bool factor2_ok = true;  // dist_sign <= 2 * dist_pbf
};

// reconstruct + extract_ptf; with a reference table also reports the
// exact distances and checks the pointwise factor-2 relation between the
// thresholded and bounded hypotheses.
LearnReport reconstruct_and_learn(const ChowVector& alpha,
                                  const ReconstructParams& params,
                                  const ChowOracle& oracle,
                                  const TruthTable* reference);

}  // namespace ptf

#endif  // PTF_RECONSTRUCT_HPP_
