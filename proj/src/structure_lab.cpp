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

#include "ptf/structure_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "ptf/wht.hpp"

namespace ptf {

TruthTable random_round(const BoundedTable& g, Rng& rng) {
  TruthTable out(g.n());
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto point = static_cast<std::uint32_t>(p);
    const double prob_plus = (g.get(point) + 1.0) / 2.0;
    if (!(rng.next_unit() < prob_plus)) out.flip(point);
  }
  return out;
}

std::int64_t diophantine_t(const std::vector<double>& w, double gamma) {
  const std::size_t width = w.size();
  if (width == 0) throw ParamError("diophantine_t: empty vector");
  if (width > 6) {
    throw CapacityError("diophantine_t: N = " + std::to_string(width) +
                        " exceeds the exhaustive-search limit of 6");
  }
  if (!(gamma > 0.0 && gamma < 0.5)) {
    throw ParamError("diophantine_t: gamma must lie in (0, 1/2)");
  }
  const auto m = static_cast<std::int64_t>(std::ceil(1.0 / gamma));
  long double bound_real = 1.0L;
  for (std::size_t i = 0; i < width; ++i) bound_real *= m;
  bound_real += 1.0L;
  if (bound_real > 5e8L) {
    throw CapacityError("diophantine_t: search bound m^N + 1 = " +
                        std::to_string(static_cast<double>(bound_real)) +
                        " is impractical");
  }
  const auto bound = static_cast<std::int64_t>(bound_real);
  for (std::int64_t t = 1; t <= bound; ++t) {
    bool ok = true;
    for (const double wi : w) {
      const double v = t * wi;
      if (!(std::abs(v - std::nearbyint(v)) < gamma)) {
        ok = false;
        break;
      }
    }
    if (ok) return t;
  }
  throw Error("diophantine_t: no multiplier within the pigeonhole bound "
              "(boundary-degenerate input)");
}

namespace {

void check_lab_dimension(int n) {
  if (n < 1 || n > kLabMaxDimension) {
    throw CapacityError("structure lab: n must be in [1, " +
                        std::to_string(kLabMaxDimension) + "], got " +
                        std::to_string(n));
  }
}

// Rank of the coefficient rows via Gaussian elimination with partial
// pivoting. Small integer inputs stay exact.
int span_dimension(std::vector<std::vector<double>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  double scale = 0.0;
  for (const auto& r : rows) {
    for (const double v : r) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) return 0;
  const double tol = 1e-9 * scale;
  int rank = 0;
  std::size_t col = 0;
  for (std::size_t row = 0; row < rows.size() && col < cols; ++col) {
    std::size_t pivot = row;
    for (std::size_t r = row + 1; r < rows.size(); ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
    }
    if (std::abs(rows[pivot][col]) <= tol) continue;
    std::swap(rows[row], rows[pivot]);
    for (std::size_t r = row + 1; r < rows.size(); ++r) {
      const double f = rows[r][col] / rows[row][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

AffineMassReport affine_zero_mass(const std::vector<MultilinearPoly>& linears,
                                  int n) {
  check_lab_dimension(n);
  std::vector<std::vector<double>> rows;
  for (const auto& linear : linears) {
    if (linear.n() > n) {
      throw ShapeError("affine_zero_mass: form mentions variables beyond n");
    }
    std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
    for (const auto& [subset, c] : linear.terms()) {
      if (SubsetIndexer::popcount(subset) > 1) {
        throw ParamError("affine_zero_mass: form of degree above 1");
      }
      if (subset == 0) {
        row[0] = c;
      } else {
        row[static_cast<std::size_t>(SubsetIndexer::countr_zero(subset)) + 1] =
            c;
      }
    }
    rows.push_back(std::move(row));
  }

  AffineMassReport report;
  report.dim = span_dimension(rows);
  const std::uint64_t cube = std::uint64_t{1} << n;
  for (std::uint64_t p = 0; p < cube; ++p) {
    bool all_zero = true;
    for (const auto& row : rows) {
      double v = row[0];
      for (int i = 0; i < n; ++i) {
        if (row[static_cast<std::size_t>(i) + 1] == 0.0) continue;
        v += (p >> i) & 1 ? -row[static_cast<std::size_t>(i) + 1]
                          : row[static_cast<std::size_t>(i) + 1];
      }
      if (v != 0.0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) ++report.zero_count;
  }
  report.mass = static_cast<double>(report.zero_count) /
                static_cast<double>(cube);
  return report;
}

std::vector<MultilinearPoly> random_linear_span(int n, int max_forms,
                                                Rng& rng) {
  if (max_forms < 1 || max_forms > n) {
    throw ParamError("random_linear_span: max_forms must lie in [1, n]");
  }
  const auto count = static_cast<std::size_t>(
      1 + rng.next_below(static_cast<std::uint64_t>(max_forms)));
  std::vector<MultilinearPoly> span;
  span.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    MultilinearPoly linear(n, 1);
    if (rng.next_unit() < 0.7) {
      // Balanced difference of 2k distinct variables; vanishes somewhere.
      const int pairs = 1 + static_cast<int>(rng.next_below(2));
      std::vector<int> vars(static_cast<std::size_t>(n));
      std::iota(vars.begin(), vars.end(), 0);
      for (int i = 0; i < 2 * pairs; ++i) {
        const auto pick = static_cast<std::size_t>(
            i + static_cast<int>(rng.next_below(
                    static_cast<std::uint64_t>(n - i))));
        std::swap(vars[static_cast<std::size_t>(i)], vars[pick]);
      }
      for (int i = 0; i < pairs; ++i) {
        linear.set_coeff(1u << vars[static_cast<std::size_t>(2 * i)], 1.0);
        linear.set_coeff(1u << vars[static_cast<std::size_t>(2 * i + 1)],
                         -1.0);
      }
    } else {
      for (int i = 0; i < n; ++i) {
        const auto c = static_cast<double>(
            static_cast<std::int64_t>(rng.next_below(5)) - 2);
        if (c != 0.0) linear.set_coeff(1u << i, c);
      }
      const auto c0 = static_cast<double>(
          static_cast<std::int64_t>(rng.next_below(3)) - 1);
      if (c0 != 0.0) linear.set_coeff(0, c0);
    }
    if (linear.support_size() == 0) linear.set_coeff(0, 1.0);
    span.push_back(std::move(linear));
  }
  return span;
}

TailScan tail_scan(const MultilinearPoly& p, const std::vector<double>& ts,
                   const std::vector<double>& taus) {
  check_lab_dimension(p.n());
  TailScan scan;
  scan.l2 = p.l2_norm();
  if (scan.l2 == 0.0) {
    throw DegenerateInputError("tail_scan: zero polynomial");
  }
  const auto values = point_values(p);
  const auto cube = static_cast<double>(values.size());
  for (const double t : ts) {
    const double cut = t * scan.l2;
    std::uint64_t count = 0;
    for (const double v : values) {
      if (std::abs(v) >= cut) ++count;
    }
    scan.tail.emplace_back(t, static_cast<double>(count) / cube);
  }
  for (const double tau : taus) {
    const double cut = tau * scan.l2;
    std::uint64_t count = 0;
    for (const double v : values) {
      if (std::abs(v) <= cut) ++count;
    }
    scan.anti_tail.emplace_back(tau, static_cast<double>(count) / cube);
  }
  return scan;
}

namespace {

// Degree-1 coefficient key, exactly bucketable: each integer correlation
// sum lies in [-2^n, 2^n] with the same parity as 2^n, so (sum + 2^n)/2
// fits in five bits for n <= 4.
std::uint32_t degree1_key(std::uint32_t fmask, int points,
                          const std::vector<std::uint32_t>& chi_masks) {
  std::uint32_t key = 0;
  for (const std::uint32_t cm : chi_masks) {
    const int sum = points - 2 * SubsetIndexer::popcount(fmask ^ cm);
    key = (key << 5) | static_cast<std::uint32_t>((sum + points) / 2);
  }
  return key;
}

}  // namespace

UniquenessReport chow_uniqueness_bruteforce(int n) {
  if (n < 1 || n > 4) {
    throw CapacityError(
        "chow_uniqueness_bruteforce: n must be in [1, 4], got " +
        std::to_string(n));
  }
  const int points = 1 << n;
  const std::uint64_t functions = std::uint64_t{1} << points;

  // chi masks for the empty set and singletons, as point bitmasks
  // (bit x set means chi(x) = -1).
  std::vector<std::uint32_t> chi_masks;
  for (int i = -1; i < n; ++i) {
    const std::uint32_t subset = i < 0 ? 0u : (1u << i);
    std::uint32_t cm = 0;
    for (int x = 0; x < points; ++x) {
      if (chi(subset, static_cast<std::uint32_t>(x)) < 0) cm |= 1u << x;
    }
    chi_masks.push_back(cm);
  }

  // Threshold-function tables: sweep all integer weights |w_i| <= 32; for
  // each weight vector the distinct tables over all real thresholds are
  // exactly the cuts at the attainable dot products (plus the all -1
  // table beyond the maximum).
  std::vector<bool> is_ltf(functions, false);
  std::vector<int> w(n, -32);
  std::vector<int> dots(points);
  std::vector<int> cuts(points);
  for (;;) {
    for (int x = 0; x < points; ++x) {
      int dot = 0;
      for (int i = 0; i < n; ++i) {
        dot += (x >> i) & 1 ? -w[i] : w[i];
      }
      dots[x] = dot;
    }
    cuts.assign(dots.begin(), dots.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (const int theta : cuts) {
      std::uint32_t table = 0;
      for (int x = 0; x < points; ++x) {
        if (dots[x] < theta) table |= 1u << x;  // sign(dot - theta), ties +1
      }
      is_ltf[table] = true;
    }
    is_ltf[(std::uint32_t{1} << points) - 1] = true;  // theta above max
    int pos = n - 1;
    while (pos >= 0 && w[pos] == 32) {
      w[pos] = -32;
      --pos;
    }
    if (pos < 0) break;
    ++w[pos];
  }

  std::unordered_map<std::uint32_t, std::uint32_t> bucket_count;
  std::unordered_map<std::uint32_t, std::uint32_t> bucket_first;
  bucket_count.reserve(functions * 2);
  for (std::uint64_t f = 0; f < functions; ++f) {
    const auto fmask = static_cast<std::uint32_t>(f);
    const std::uint32_t key = degree1_key(fmask, points, chi_masks);
    auto [it, fresh] = bucket_count.try_emplace(key, 0u);
    if (fresh) bucket_first.emplace(key, fmask);
    ++it->second;
  }

  UniquenessReport report;
  report.n = n;
  report.functions_scanned = functions;
  for (std::uint64_t f = 0; f < functions; ++f) {
    if (!is_ltf[f]) continue;
    ++report.ltf_count;
    const auto fmask = static_cast<std::uint32_t>(f);
    const std::uint32_t key = degree1_key(fmask, points, chi_masks);
    if (bucket_count.at(key) > 1) {
      ++report.ltf_collisions;
      if (report.examples.size() < 8) {
        UniquenessCollision c;
        c.ltf_table = fmask;
        c.other_table = bucket_first.at(key);
        if (c.other_table == fmask) {
          for (std::uint64_t f2 = f + 1; f2 < functions; ++f2) {
            const auto mask2 = static_cast<std::uint32_t>(f2);
            if (degree1_key(mask2, points, chi_masks) == key) {
              c.other_table = mask2;
              break;
            }
          }
        }
        report.examples.push_back(c);
      }
    }
  }
  report.ok = report.ltf_collisions == 0;
  return report;
}

SmallPMassReport small_p_mass(const MultilinearPoly& p, const TruthTable& g,
                              double delta, double eta) {
  check_lab_dimension(p.n());
  if (p.n() != g.n()) throw ShapeError("small_p_mass: dimension mismatch");
  if (!(delta > 0.0) || !(eta > 0.0 && eta < 1.0)) {
    throw ParamError("small_p_mass: need delta > 0 and eta in (0, 1)");
  }
  const double norm = p.l2_norm();
  if (norm == 0.0) throw DegenerateInputError("small_p_mass: zero polynomial");

  auto values = point_values(p);
  for (double& v : values) v /= norm;
  TruthTable f(p.n());
  for (std::size_t q = 0; q < values.size(); ++q) {
    if (sign_of(values[q]) < 0) f.flip(static_cast<std::uint32_t>(q));
  }

  SmallPMassReport report;
  report.delta = delta;
  report.eta = eta;
  const double cut = delta / eta;
  std::uint64_t in_d = 0;
  std::uint64_t in_dprime = 0;
  for (std::size_t q = 0; q < values.size(); ++q) {
    const auto point = static_cast<std::uint32_t>(q);
    if (f.get(point) != g.get(point)) {
      ++in_d;
      if (std::abs(values[q]) > cut) ++in_dprime;
    }
  }
  const auto cube = static_cast<double>(values.size());
  report.pr_disagree = static_cast<double>(in_d) / cube;
  report.pr_dprime = static_cast<double>(in_dprime) / cube;
  report.chow_dist =
      chow_distance(chow_vector(f, p.d()), chow_vector(g, p.d()));
  report.precondition_met = report.chow_dist <= delta;
  report.claim_holds =
      !report.precondition_met || report.pr_dprime <= eta / 2.0 + 1e-12;
  return report;
}

std::string flip_strategy_id(FlipStrategy s) {
  switch (s) {
    case FlipStrategy::kRandomFlips: return "random_flips";
    case FlipStrategy::kMarginFlips: return "margin_flips";
    case FlipStrategy::kRoundMollified: return "round_mollified";
  }
  throw ParamError("flip_strategy_id: unknown strategy");
}

FlipStrategy flip_strategy_from_id(const std::string& id) {
  if (id == "random_flips") return FlipStrategy::kRandomFlips;
  if (id == "margin_flips") return FlipStrategy::kMarginFlips;
  if (id == "round_mollified") return FlipStrategy::kRoundMollified;
  throw ParamError("flip_strategy_from_id: unknown strategy '" + id + "'");
}

MultilinearPoly random_poly(int n, int d, Rng& rng) {
  MultilinearPoly p(n, d);
  const SubsetIndexer indexer(n, d);
  indexer.for_each(
      [&](std::uint32_t mask) { p.set_coeff(mask, rng.next_gaussian()); });
  return p;
}

namespace {

ExperimentRecord run_trial(int n, int d, FlipStrategy strategy, double eps,
                           std::uint64_t base_seed, std::uint64_t trial) {
  Rng rng = Rng(base_seed).fork(trial);
  ExperimentRecord record;
  record.trial = trial;
  record.seed = rng.seed();
  record.n = n;
  record.d = d;
  record.strategy = flip_strategy_id(strategy);

  const MultilinearPoly p = random_poly(n, d, rng);
  auto values = point_values(p);
  const double norm = p.l2_norm();
  TruthTable f(n);
  for (std::size_t q = 0; q < values.size(); ++q) {
    if (sign_of(values[q]) < 0) f.flip(static_cast<std::uint32_t>(q));
  }

  TruthTable g = f;
  switch (strategy) {
    case FlipStrategy::kRandomFlips: {
      for (std::size_t q = 0; q < g.size(); ++q) {
        if (rng.next_unit() < eps) g.flip(static_cast<std::uint32_t>(q));
      }
      break;
    }
    case FlipStrategy::kMarginFlips: {
      const auto flips = static_cast<std::size_t>(
          eps * static_cast<double>(g.size()));
      std::vector<std::uint32_t> order(g.size());
      std::iota(order.begin(), order.end(), 0u);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::uint32_t a, std::uint32_t b) {
                         return std::abs(values[a]) < std::abs(values[b]);
                       });
      for (std::size_t j = 0; j < flips; ++j) g.flip(order[j]);
      break;
    }
    case FlipStrategy::kRoundMollified: {
      BoundedTable mollified(n);
      for (std::size_t q = 0; q < g.size(); ++q) {
        const auto point = static_cast<std::uint32_t>(q);
        mollified.set(point, (1.0 - eps) * f.get(point));
      }
      g = random_round(mollified, rng);
      break;
    }
  }

  record.dist = dist(f, g);
  record.chow_distance = chow_distance(chow_vector(f, d), chow_vector(g, d));

  std::uint64_t heavy_disagree = 0;
  for (std::size_t q = 0; q < values.size(); ++q) {
    const auto point = static_cast<std::uint32_t>(q);
    if (f.get(point) != g.get(point) &&
        std::abs(values[q]) / norm > record.chow_distance) {
      ++heavy_disagree;
    }
  }
  record.aux_small_p_mass = static_cast<double>(heavy_disagree) /
                            static_cast<double>(values.size());
  return record;
}

}  // namespace

std::vector<ExperimentRecord> robustness_experiment(int n, int d, int trials,
                                                    FlipStrategy strategy,
                                                    double eps,
                                                    std::uint64_t seed,
                                                    int jobs) {
  check_lab_dimension(n);
  if (trials < 1) throw ParamError("robustness_experiment: trials must be >= 1");
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw ParamError("robustness_experiment: eps must lie in [0, 1]");
  }
  std::vector<ExperimentRecord> records(static_cast<std::size_t>(trials));
  const int workers = std::max(1, std::min(jobs, trials));
  if (workers == 1) {
    for (int t = 0; t < trials; ++t) {
      records[static_cast<std::size_t>(t)] =
          run_trial(n, d, strategy, eps, seed,
                    static_cast<std::uint64_t>(t));
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int worker = 0; worker < workers; ++worker) {
      pool.emplace_back([&, worker] {
        for (int t = worker; t < trials; t += workers) {
          records[static_cast<std::size_t>(t)] =
              run_trial(n, d, strategy, eps, seed,
                        static_cast<std::uint64_t>(t));
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return records;
}

void write_experiment_csv(std::ostream& out,
                          const std::vector<ExperimentRecord>& records,
                          const std::string& comment) {
  if (!comment.empty()) {
    std::size_t start = 0;
    while (start <= comment.size()) {
      const auto end = comment.find('\n', start);
      out << "# " << comment.substr(start, end - start) << "\n";
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  out << "trial,seed,n,d,strategy,dist,chow_distance,aux_small_p_mass\n";
  for (const auto& r : records) {
    out << r.trial << "," << r.seed << "," << r.n << "," << r.d << ","
        << r.strategy << "," << format_coefficient(r.dist) << ","
        << format_coefficient(r.chow_distance) << ","
        << format_coefficient(r.aux_small_p_mass) << "\n";
  }
}

}  // namespace ptf
