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

#include "ptf/poly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ptf {

MultilinearPoly::MultilinearPoly(int n, int d) : n_(n), d_(d) {
  check_dimension(n);
  if (d < 0 || d > n) {
    throw ParamError("MultilinearPoly: d must be in [0, n]");
  }
}

double MultilinearPoly::coeff(std::uint32_t subset) const {
  const auto it = terms_.find(subset);
  return it == terms_.end() ? 0.0 : it->second;
}

void MultilinearPoly::set_coeff(std::uint32_t subset, double value) {
  if (subset >> n_) {
    throw IndexError("set_coeff: subset has members beyond variable n");
  }
  if (SubsetIndexer::popcount(subset) > d_) {
    throw IndexError("set_coeff: subset size exceeds degree bound");
  }
  if (value == 0.0) {
    terms_.erase(subset);
  } else {
    terms_[subset] = value;
  }
}

double MultilinearPoly::eval(std::uint32_t point) const {
  double acc = 0.0;
  for (const auto& [subset, c] : terms_) {
    acc += chi(subset, point) * c;
  }
  return acc;
}

double MultilinearPoly::l2_norm() const {
  double s = 0.0;
  for (const auto& [subset, c] : terms_) s += c * c;
  return std::sqrt(s);
}

MultilinearPoly MultilinearPoly::scaled(double factor) const {
  MultilinearPoly out(n_, d_);
  if (factor != 0.0) {
    for (const auto& [subset, c] : terms_) out.terms_[subset] = factor * c;
  }
  return out;
}

MultilinearPoly MultilinearPoly::plus(const MultilinearPoly& other) const {
  if (n_ != other.n_) throw ShapeError("plus: dimension mismatch");
  MultilinearPoly out(n_, std::max(d_, other.d_));
  out.terms_ = terms_;
  for (const auto& [subset, c] : other.terms_) {
    const double v = out.coeff(subset) + c;
    if (v == 0.0) {
      out.terms_.erase(subset);
    } else {
      out.terms_[subset] = v;
    }
  }
  return out;
}

double MultilinearPoly::influence(int i) const {
  if (i < 1 || i > n_) throw IndexError("influence: variable out of range");
  const std::uint32_t bit = 1u << (i - 1);
  double s = 0.0;
  for (const auto& [subset, c] : terms_) {
    if (subset & bit) s += c * c;
  }
  return s;
}

double MultilinearPoly::total_influence() const {
  double s = 0.0;
  for (const auto& [subset, c] : terms_) {
    s += SubsetIndexer::popcount(subset) * c * c;
  }
  return s;
}

bool MultilinearPoly::is_tau_regular(double tau) const {
  const double total = total_influence();
  if (total == 0.0) {
    throw DegenerateInputError(
        "is_tau_regular: constant polynomial has zero total influence");
  }
  double max_inf = 0.0;
  for (int i = 1; i <= n_; ++i) max_inf = std::max(max_inf, influence(i));
  // Tolerance keeps exact boundary cases (max = tau * total) stable
  // against summation rounding.
  return max_inf <= tau * total * (1.0 + 1e-12);
}

MultilinearPoly MultilinearPoly::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("polynomial json: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("d") || !j.contains("terms")) {
    throw ParseError("polynomial json: need fields n, d, terms");
  }
  MultilinearPoly p(j.at("n").get<int>(), j.at("d").get<int>());
  std::size_t row = 0;
  for (const auto& term : j.at("terms")) {
    ++row;
    if (!term.contains("vars") || !term.contains("coef")) {
      throw ParseError("polynomial json term " + std::to_string(row) +
                       ": need fields vars, coef");
    }
    const double c = term.at("coef").get<double>();
    if (c == 0.0) {
      throw ParseError("polynomial json term " + std::to_string(row) +
                       ": zero coefficient rejected");
    }
    std::uint32_t mask = 0;
    int prev = 0;
    for (const auto& v : term.at("vars")) {
      const int var = v.get<int>();
      if (var < 1 || var > p.n()) {
        throw ParseError("polynomial json term " + std::to_string(row) +
                         ": variable " + std::to_string(var) +
                         " outside [1, n]");
      }
      if (var <= prev) {
        throw ParseError("polynomial json term " + std::to_string(row) +
                         ": vars must be sorted and duplicate-free");
      }
      prev = var;
      mask |= 1u << (var - 1);
    }
    if (p.terms_.count(mask)) {
      throw ParseError("polynomial json term " + std::to_string(row) +
                       ": duplicate subset rejected");
    }
    if (SubsetIndexer::popcount(mask) > p.d()) {
      throw ParseError("polynomial json term " + std::to_string(row) +
                       ": subset size exceeds d");
    }
    p.terms_[mask] = c;
  }
  return p;
}

MultilinearPoly MultilinearPoly::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open polynomial file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string MultilinearPoly::to_json_text() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [subset, c] : terms_) {
    nlohmann::json t;
    t["vars"] = SubsetIndexer::members(subset);
    t["coef"] = c;
    terms.push_back(t);
  }
  nlohmann::json j;
  j["n"] = n_;
  j["d"] = d_;
  j["terms"] = terms;
  return j.dump();
}

void MultilinearPoly::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write polynomial file: " + path);
  out << to_json_text() << "\n";
}

namespace {

std::vector<std::uint32_t> size_d_supports(const MultilinearPoly& p, int d) {
  std::vector<std::uint32_t> masks;
  for (const auto& [subset, c] : p.terms()) {
    if (SubsetIndexer::popcount(subset) == d) masks.push_back(subset);
  }
  // std::map iteration is mask-ordered already; keep it explicit.
  std::sort(masks.begin(), masks.end());
  return masks;
}

void packing_dfs(const std::vector<std::uint32_t>& masks, std::size_t idx,
                 std::uint32_t used, int count, int& best) {
  best = std::max(best, count);
  if (idx == masks.size()) return;
  if (count + static_cast<int>(masks.size() - idx) <= best) return;
  if (!(masks[idx] & used)) {
    packing_dfs(masks, idx + 1, used | masks[idx], count + 1, best);
  }
  packing_dfs(masks, idx + 1, used, count, best);
}

}  // namespace

int rank_exact(const MultilinearPoly& p, int d) {
  const auto masks = size_d_supports(p, d);
  if (static_cast<int>(masks.size()) > kRankExactGuard) {
    throw CapacityError("rank_exact: " + std::to_string(masks.size()) +
                        " size-d terms exceed the guard of " +
                        std::to_string(kRankExactGuard) +
                        "; use rank_greedy");
  }
  int best = 0;
  packing_dfs(masks, 0, 0, 0, best);
  return best;
}

int rank_greedy(const MultilinearPoly& p, int d) {
  std::uint32_t used = 0;
  int count = 0;
  for (const std::uint32_t mask : size_d_supports(p, d)) {
    if (!(mask & used)) {
      used |= mask;
      ++count;
    }
  }
  return count;
}

std::uint32_t hitting_set(const MultilinearPoly& p, int d) {
  std::uint32_t used = 0;
  for (const std::uint32_t mask : size_d_supports(p, d)) {
    if (!(mask & used)) used |= mask;
  }
  return used;
}

double dist(const TruthTable& f, const TruthTable& g) {
  if (f.n() != g.n()) throw ShapeError("dist: dimension mismatch");
  std::size_t disagree = 0;
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto point = static_cast<std::uint32_t>(p);
    if (f.get(point) != g.get(point)) ++disagree;
  }
  return 2.0 * static_cast<double>(disagree) / static_cast<double>(f.size());
}

double dist(const TruthTable& f, const BoundedTable& g) {
  if (f.n() != g.n()) throw ShapeError("dist: dimension mismatch");
  double s = 0.0;
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto point = static_cast<std::uint32_t>(p);
    s += std::abs(f.get(point) - g.get(point));
  }
  return s / static_cast<double>(f.size());
}

double dist(const BoundedTable& f, const BoundedTable& g) {
  if (f.n() != g.n()) throw ShapeError("dist: dimension mismatch");
  double s = 0.0;
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto point = static_cast<std::uint32_t>(p);
    s += std::abs(f.get(point) - g.get(point));
  }
  return s / static_cast<double>(f.size());
}

std::vector<std::uint32_t> disagreement(const TruthTable& f,
                                        const TruthTable& g) {
  if (f.n() != g.n()) throw ShapeError("disagreement: dimension mismatch");
  std::vector<std::uint32_t> points;
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto point = static_cast<std::uint32_t>(p);
    if (f.get(point) != g.get(point)) points.push_back(point);
  }
  return points;
}

std::vector<double> point_values(const MultilinearPoly& p) {
  std::vector<double> spectrum(std::size_t{1} << p.n(), 0.0);
  for (const auto& [subset, c] : p.terms()) spectrum[subset] = c;
  walsh_hadamard(spectrum);
  return spectrum;
}

namespace {

bool integer_coefficients(const MultilinearPoly& p) {
  for (const auto& [subset, c] : p.terms()) {
    if (c != std::nearbyint(c) || std::abs(c) > 1e15) return false;
  }
  return true;
}

}  // namespace

TruthTable materialize_sign(const MultilinearPoly& p) {
  TruthTable out(p.n());
  if (integer_coefficients(p)) {
    std::vector<std::int64_t> values(std::size_t{1} << p.n(), 0);
    for (const auto& [subset, c] : p.terms()) {
      values[subset] = static_cast<std::int64_t>(c);
    }
    walsh_hadamard(values);
    for (std::size_t q = 0; q < values.size(); ++q) {
      if (values[q] < 0) out.flip(static_cast<std::uint32_t>(q));
    }
    return out;
  }
  const auto values = point_values(p);
  for (std::size_t q = 0; q < values.size(); ++q) {
    if (sign_of(values[q]) < 0) out.flip(static_cast<std::uint32_t>(q));
  }
  return out;
}

BoundedTable materialize_clamped(const MultilinearPoly& p) {
  auto values = point_values(p);
  for (double& v : values) v = p1(v);
  return BoundedTable::from_values(p.n(), std::move(values));
}

PbfHypothesis::PbfHypothesis(int n_in, int d_in, double lambda_in)
    : n(n_in), d(d_in), lambda(lambda_in) {
  if (lambda <= 0.0) throw ParamError("PbfHypothesis: lambda must be > 0");
  weights.assign(SubsetIndexer(n, d).size(), 0);
}

double pbf_eval(const PbfHypothesis& h, std::uint32_t point) {
  const SubsetIndexer indexer(h.n, h.d);
  std::int64_t acc = 0;
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t mask) {
    acc += chi(mask, point) * h.weights[i++];
  });
  return p1(h.lambda * static_cast<double>(acc));
}

BoundedTable materialize(const PbfHypothesis& h) {
  const SubsetIndexer indexer(h.n, h.d);
  if (h.weights.size() != indexer.size()) {
    throw ShapeError("materialize: weight vector length mismatch");
  }
  std::vector<std::int64_t> acc(std::size_t{1} << h.n, 0);
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t mask) { acc[mask] = h.weights[i++]; });
  walsh_hadamard(acc);
  std::vector<double> values(acc.size());
  for (std::size_t q = 0; q < acc.size(); ++q) {
    values[q] = p1(h.lambda * static_cast<double>(acc[q]));
  }
  return BoundedTable::from_values(h.n, std::move(values));
}

ChowVector pbf_chow(const PbfHypothesis& h) {
  return chow_vector(materialize(h), h.d);
}

}  // namespace ptf
