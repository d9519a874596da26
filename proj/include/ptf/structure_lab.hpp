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

#ifndef PTF_STRUCTURE_LAB_HPP_
#define PTF_STRUCTURE_LAB_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptf/poly.hpp"
#include "ptf/rng.hpp"
#include "ptf/tables.hpp"

namespace ptf {

// Exhaustive oracles above this dimension get too slow to be useful.
inline constexpr int kLabMaxDimension = 22;

// Independent per-point rounding: +1 with probability (g(x)+1)/2, so the
// rounded table matches g in expectation pointwise.
TruthTable random_round(const BoundedTable& g, Rng& rng);

// Smallest positive integer t <= m^N + 1 (m = ceil(1/gamma)) such that
// every coordinate of t*w is strictly within gamma of an integer. The
// pigeonhole argument guarantees one exists in that range. The search is
// exponential in N by design; N <= 6.
std::int64_t diophantine_t(const std::vector<double>& w, double gamma);

struct AffineMassReport {
  double mass = 0.0;            // exact fraction of common zeros
  std::uint64_t zero_count = 0;
  int dim = 0;                  // dimension of the span
};

// Exact fraction of cube points annihilating every listed degree-<=1
// polynomial, plus the dimension of their span. The zero test is exact
// floating comparison, so integer-coefficient forms evaluate exactly.
AffineMassReport affine_zero_mass(const std::vector<MultilinearPoly>& linears,
                                  int n);

// Random list of 1..max_forms degree-<=1 integer forms, biased toward
// balanced difference forms (x_a - x_b and friends) so the common zero
// set is frequently nonempty.
std::vector<MultilinearPoly> random_linear_span(int n, int max_forms,
                                                Rng& rng);

struct TailScan {
  double l2 = 0.0;
  // (threshold, exact probability) rows.
  std::vector<std::pair<double, double>> tail;       // Pr[|p| >= t * l2]
  std::vector<std::pair<double, double>> anti_tail;  // Pr[|p| <= tau * l2]
};

TailScan tail_scan(const MultilinearPoly& p, const std::vector<double>& ts,
                   const std::vector<double>& taus);

struct UniquenessCollision {
  std::uint32_t ltf_table = 0;
  std::uint32_t other_table = 0;
};

struct UniquenessReport {
  int n = 0;
  std::uint64_t functions_scanned = 0;
  std::uint64_t ltf_count = 0;
  std::uint64_t ltf_collisions = 0;
  std::vector<UniquenessCollision> examples;  // at most a handful
  bool ok = false;
};

// Scans all 2^(2^n) Boolean functions (n <= 4), buckets them by the
// degree-1 coefficient vector (exact integer bucketing: coefficients are
// multiples of 2^(1-n)), enumerates every threshold function via integer
// weights |w_i| <= 32 with all thresholds between consecutive attainable
// dot products, and checks that every threshold function sits alone in
// its bucket. Weight bound: minimal integer realizations for n <= 4 need
// weights far below 32 (Muroga), so the enumeration is complete.
UniquenessReport chow_uniqueness_bruteforce(int n);

struct SmallPMassReport {
  double pr_disagree = 0.0;   // Pr[f != g]
  double pr_dprime = 0.0;     // Pr[x in D : |p(x)| > delta/eta], p normalized
  double chow_dist = 0.0;     // coefficient distance at degree d
  double delta = 0.0;
  double eta = 0.0;
  bool precondition_met = false;  // chow_dist <= delta
  bool claim_holds = true;        // pr_dprime <= eta/2 when applicable
};

// Diagnostic for f = sign(p) vs g: mass of the disagreement region where
// the (normalized) margin exceeds delta/eta, with the implication
// "coefficient distance <= delta implies that mass <= eta/2" checked
// whenever its precondition is met.
SmallPMassReport small_p_mass(const MultilinearPoly& p, const TruthTable& g,
                              double delta, double eta);

enum class FlipStrategy { kRandomFlips, kMarginFlips, kRoundMollified };

std::string flip_strategy_id(FlipStrategy s);
FlipStrategy flip_strategy_from_id(const std::string& id);

struct ExperimentRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int d = 0;
  std::string strategy;
  double dist = 0.0;
  double chow_distance = 0.0;
  double aux_small_p_mass = 0.0;
};

// Degree-d polynomial with i.i.d. standard normal coefficients on every
// subset of size <= d.
MultilinearPoly random_poly(int n, int d, Rng& rng);

// Landscape experiment: samples random PTFs f = sign(p), perturbs each
// into g by the chosen strategy at rate eps, and records the exact
// (dist, coefficient-distance) pair plus the mass of the disagreement
// region carrying margin above the measured coefficient distance.
// Trials are independent given per-trial forked seeds; `jobs` worker
// threads may run them concurrently, and records always come back in
// trial order.
std::vector<ExperimentRecord> robustness_experiment(int n, int d, int trials,
                                                    FlipStrategy strategy,
                                                    double eps,
                                                    std::uint64_t seed,
                                                    int jobs = 1);

// CSV columns: trial,seed,n,d,strategy,dist,chow_distance,aux_small_p_mass
// with optional leading '#' comment lines.
void write_experiment_csv(std::ostream& out,
                          const std::vector<ExperimentRecord>& records,
                          const std::string& comment = "");

}  // namespace ptf

#endif  // PTF_STRUCTURE_LAB_HPP_
