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

#ifndef PTF_POLY_HPP_
#define PTF_POLY_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ptf/subset_indexer.hpp"
#include "ptf/tables.hpp"
#include "ptf/wht.hpp"

namespace ptf {

// Projection of a real onto [-1, 1].
inline double p1(double a) {
  if (a > 1.0) return 1.0;
  if (a < -1.0) return -1.0;
  return a;
}

// sign with the fixed tie convention sign(0) = +1.
inline int sign_of(double a) { return a >= 0.0 ? 1 : -1; }

// Sparse degree-d multilinear polynomial: subset mask -> nonzero
// coefficient. Stored subsets have size <= d; zero coefficients are never
// stored, so the key set is exactly the support.
class MultilinearPoly {
 public:
  MultilinearPoly(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t support_size() const { return terms_.size(); }
  const std::map<std::uint32_t, double>& terms() const { return terms_; }

  double coeff(std::uint32_t subset) const;
  void set_coeff(std::uint32_t subset, double value);

  double eval(std::uint32_t point) const;
  int sign_at(std::uint32_t point) const { return sign_of(eval(point)); }

  double l2_norm() const;
  MultilinearPoly scaled(double factor) const;
  MultilinearPoly plus(const MultilinearPoly& other) const;

  // Inf_i = sum over stored subsets containing i of the squared
  // coefficient; i is 1-based.
  double influence(int i) const;
  double total_influence() const;
  // max_i Inf_i <= tau * total influence. Throws DegenerateInputError when
  // the total influence is zero (constant polynomial).
  bool is_tau_regular(double tau) const;

  // JSON: {"n":int,"d":int,"terms":[{"vars":[1-based sorted],"coef":f},..]}
  // Zero coefficients and duplicate subsets are rejected on load.
  static MultilinearPoly from_json_text(const std::string& text);
  static MultilinearPoly load_file(const std::string& path);
  std::string to_json_text() const;
  void save_file(const std::string& path) const;

 private:
  int n_;
  int d_;
  std::map<std::uint32_t, double> terms_;
};

// Maximum number of pairwise-disjoint size-d supports with nonzero
// coefficient. Exhaustive search; refuses more than kRankExactGuard
// size-d terms (set packing is exponential) and directs the caller to the
// greedy bound.
inline constexpr int kRankExactGuard = 20;
int rank_exact(const MultilinearPoly& p, int d);

// Size of a greedily built maximal disjoint family of size-d supports,
// scanning supports in indexer order. Lower-bounds the exact rank and is
// at least rank/d of it.
int rank_greedy(const MultilinearPoly& p, int d);

// Union of the greedy maximal disjoint family: every nonzero size-d term
// meets the returned set. Bitmask over variables; empty when the
// polynomial has no size-d terms.
std::uint32_t hitting_set(const MultilinearPoly& p, int d);

// Exact E_x[|f(x) - g(x)|] over the cube; 2 Pr[f != g] for Boolean pairs.
double dist(const TruthTable& f, const TruthTable& g);
double dist(const TruthTable& f, const BoundedTable& g);
double dist(const BoundedTable& f, const BoundedTable& g);

// Point codes where two Boolean tables differ.
std::vector<std::uint32_t> disagreement(const TruthTable& f,
                                        const TruthTable& g);

// Point values of p at every point code, via the unscaled inverse
// transform of its coefficient vector.
std::vector<double> point_values(const MultilinearPoly& p);

// sign(p) as a table; exact tie handling when all coefficients are
// integers (integer butterflies, no rounding).
TruthTable materialize_sign(const MultilinearPoly& p);
// P1(p) as a bounded table.
BoundedTable materialize_clamped(const MultilinearPoly& p);

// Scale lambda > 0 plus integer weights in SubsetIndexer order;
// represents g(x) = P1(lambda * sum_S H_S chi_S(x)).
struct PbfHypothesis {
  int n = 0;
  int d = 0;
  double lambda = 0.0;
  std::vector<std::int64_t> weights;

  PbfHypothesis() = default;
  PbfHypothesis(int n_in, int d_in, double lambda_in);
};

double pbf_eval(const PbfHypothesis& h, std::uint32_t point);

// Exact materialization: integer butterflies for the weight polynomial,
// one multiply by lambda and one clamp per point.
BoundedTable materialize(const PbfHypothesis& h);

// Degree-d Chow vector of the represented bounded function.
ChowVector pbf_chow(const PbfHypothesis& h);

}  // namespace ptf

#endif  // PTF_POLY_HPP_
