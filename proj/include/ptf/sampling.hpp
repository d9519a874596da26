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

#ifndef PTF_SAMPLING_HPP_
#define PTF_SAMPLING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ptf/poly.hpp"
#include "ptf/rng.hpp"
#include "ptf/tables.hpp"
#include "ptf/wht.hpp"

namespace ptf {

// Labeled-example source: a truth table, or a thresholded polynomial
// (materialized once so labeling is a table lookup).
class Target {
 public:
  static Target table(TruthTable t);
  static Target ptf(MultilinearPoly p);

  int n() const { return table_.n(); }
  int label(std::uint32_t point) const { return table_.get(point); }
  const TruthTable& truth_table() const { return table_; }
  // Margin polynomial; null for table-backed targets.
  const MultilinearPoly* poly() const {
    return has_poly_ ? &poly_ : nullptr;
  }

 private:
  Target(TruthTable t, MultilinearPoly p, bool has_poly)
      : table_(std::move(t)), poly_(std::move(p)), has_poly_(has_poly) {}

  TruthTable table_;
  MultilinearPoly poly_;
  bool has_poly_;
};

// One restricted-focus example: the revealed coordinate set J, the
// revealed values, and the label. Only the bits of J are stored, so the
// unrevealed coordinates cannot leak through any accessor.
class RfaExample {
 public:
  RfaExample(std::uint32_t revealed_set, std::uint32_t full_point, int label)
      : jmask_(revealed_set), xj_(full_point & revealed_set),
        y_(static_cast<std::int8_t>(label)) {}

  std::uint32_t revealed_set() const { return jmask_; }
  int label() const { return y_; }

  // Value of a revealed coordinate (1-based). Asking for an unrevealed
  // coordinate is a protocol violation.
  int value_at(int i) const;

  // chi_S on the revealed values; S must be contained in J.
  int chi_revealed(std::uint32_t subset) const;

 private:
  std::uint32_t jmask_;
  std::uint32_t xj_;
  std::int8_t y_;
};

// Draws a fresh uniform point, labels it, and reveals only J. |J| <= d.
RfaExample rfa_sample(const Target& target, std::uint32_t revealed_set, int d,
                      Rng& rng);

struct RfaEstimate {
  ChowVector chow;
  std::uint64_t total_samples = 0;          // sum of the per-subset budgets
  std::vector<std::uint64_t> per_subset;    // m_S in indexer order
  std::uint64_t exact_fallbacks = 0;        // subsets answered exhaustively
};

// Per-subset restricted-focus estimation: queries J = S and averages
// y * chi_S(x_S) over m_S = ceil(2 ln(4N/delta) N / eps^2) samples, an
// even split of the l2 budget (eps/sqrt(N) per coordinate, Hoeffding plus
// a union bound). Whenever m_S >= 2^n the subset is answered by exact
// enumeration instead, which is both cheaper and error-free.
RfaEstimate estimate_chow_rfa(const Target& target, int n, int d, double eps,
                              double delta, Rng& rng);

struct LabeledExample {
  std::uint32_t x = 0;
  std::int8_t y = 0;
};

// Empirical mean of y * chi_S(x) per subset, all subsets sharing the
// sample list. Errors on an empty list.
ChowVector estimate_chow_full(const std::vector<LabeledExample>& samples,
                              int n, int d);

std::vector<LabeledExample> draw_clean(const Target& target, std::size_t m,
                                       Rng& rng);

// Adversary strategies for the corrupted-sample model. All are
// deterministic given (clean set, seed), so robust-vs-plain comparisons
// can be paired.
//   a: flips the labels of the clean points with smallest margin |p(x)|.
//   b: replaces the examples most opposed to one chosen coefficient with
//      examples of aligned character value and flipped label, planting a
//      2 eps shift toward zero on that coefficient.
//   c: replaces uniformly chosen examples with uniform random ones.
enum class Adversary { kMarginFlip, kChowBias, kRandomReplace };

std::string adversary_id(Adversary a);
Adversary adversary_from_id(const std::string& id);

// eps-corrupted labeled sample plus the adversary metadata.
struct CorruptedSampleSet {
  int n = 0;
  std::vector<LabeledExample> examples;
  double eps_corrupt = 0.0;
  std::string adversary;
  std::uint64_t seed = 0;
  std::size_t corrupted_count = 0;           // exactly floor(eps * m)
  std::vector<std::uint32_t> replaced_indices;
  std::uint32_t bias_subset = 0;             // adversary b only
  int bias_direction = 0;                    // adversary b only, +1/-1
};

// Applies the chosen adversary to a clean sample. The adversary inspects
// the clean set (and the target) before acting and corrupts exactly
// floor(eps * m) examples. eps must lie in [0, 1/2).
CorruptedSampleSet nasty_corrupt(const std::vector<LabeledExample>& clean,
                                 double eps, Adversary adversary,
                                 const Target& target,
                                 std::uint32_t bias_subset, Rng& rng);

// Per-coordinate trimmed mean of y * chi_S(x): drops the ceil(eps * m)
// largest and smallest contributions and averages the rest. Requires at
// least 10 surviving samples.
ChowVector robust_estimate_chow(const CorruptedSampleSet& corrupted, int d,
                                double eps);

// Sample-set files: CSV rows "x_bits_hex,y" plus a JSON sidecar
// {n, m, eps_corrupt, adversary_id, seed} at <path>.json.
void write_sample_set(const std::string& csv_path,
                      const CorruptedSampleSet& set);
CorruptedSampleSet read_sample_set(const std::string& csv_path);

}  // namespace ptf

#endif  // PTF_SAMPLING_HPP_
