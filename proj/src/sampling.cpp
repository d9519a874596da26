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

#include "ptf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace ptf {

Target Target::table(TruthTable t) {
  return Target(std::move(t), MultilinearPoly(1, 0), false);
}

Target Target::ptf(MultilinearPoly p) {
  TruthTable t = materialize_sign(p);
  return Target(std::move(t), std::move(p), true);
}

int RfaExample::value_at(int i) const {
  const std::uint32_t bit = 1u << (i - 1);
  if (i < 1 || !(jmask_ & bit)) {
    throw ProtocolError("RfaExample: coordinate " + std::to_string(i) +
                        " was not revealed");
  }
  return (xj_ & bit) ? -1 : 1;
}

int RfaExample::chi_revealed(std::uint32_t subset) const {
  if (subset & ~jmask_) {
    throw ProtocolError("RfaExample: chi over unrevealed coordinates");
  }
  return chi(subset, xj_);
}

RfaExample rfa_sample(const Target& target, std::uint32_t revealed_set, int d,
                      Rng& rng) {
  if (SubsetIndexer::popcount(revealed_set) > d) {
    throw ProtocolError("rfa_sample: |J| exceeds the focus bound d");
  }
  if (revealed_set >> target.n()) {
    throw ProtocolError("rfa_sample: J has members beyond variable n");
  }
  const std::uint32_t x = rng.next_point(target.n());
  return RfaExample(revealed_set, x, target.label(x));
}

RfaEstimate estimate_chow_rfa(const Target& target, int n, int d, double eps,
                              double delta, Rng& rng) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw ParamError("estimate_chow_rfa: eps and delta must lie in (0, 1)");
  }
  if (target.n() != n) {
    throw ShapeError("estimate_chow_rfa: target dimension mismatch");
  }
  const SubsetIndexer indexer(n, d);
  const auto width = static_cast<double>(indexer.size());
  const double m_real = std::ceil(2.0 * std::log(4.0 * width / delta) *
                                  width / (eps * eps));
  if (m_real > 1e15) {
    throw CapacityError("estimate_chow_rfa: per-subset budget overflows");
  }
  const auto m_subset = static_cast<std::uint64_t>(m_real);
  const std::uint64_t cube = std::uint64_t{1} << n;

  RfaEstimate est;
  est.chow = ChowVector(n, d);
  est.per_subset.assign(indexer.size(), m_subset);
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t subset) {
    est.total_samples += m_subset;
    if (m_subset >= cube) {
      // Exhaustive fallback: the budget covers the whole cube, so the
      // exact coefficient is cheaper than sampling.
      std::int64_t acc = 0;
      for (std::uint64_t p = 0; p < cube; ++p) {
        const auto point = static_cast<std::uint32_t>(p);
        acc += target.label(point) * chi(subset, point);
      }
      est.chow.coeffs[i] = static_cast<double>(acc) /
                           static_cast<double>(cube);
      ++est.exact_fallbacks;
    } else {
      std::int64_t acc = 0;
      for (std::uint64_t s = 0; s < m_subset; ++s) {
        const RfaExample ex = rfa_sample(target, subset, d, rng);
        acc += ex.label() * ex.chi_revealed(subset);
      }
      est.chow.coeffs[i] = static_cast<double>(acc) /
                           static_cast<double>(m_subset);
    }
    ++i;
  });
  return est;
}

ChowVector estimate_chow_full(const std::vector<LabeledExample>& samples,
                              int n, int d) {
  if (samples.empty()) {
    throw InsufficientDataError("estimate_chow_full: empty sample list");
  }
  const SubsetIndexer indexer(n, d);
  ChowVector est(n, d);
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t subset) {
    std::int64_t acc = 0;
    for (const auto& ex : samples) acc += ex.y * chi(subset, ex.x);
    est.coeffs[i++] = static_cast<double>(acc) /
                      static_cast<double>(samples.size());
  });
  return est;
}

std::vector<LabeledExample> draw_clean(const Target& target, std::size_t m,
                                       Rng& rng) {
  std::vector<LabeledExample> out(m);
  for (auto& ex : out) {
    ex.x = rng.next_point(target.n());
    ex.y = static_cast<std::int8_t>(target.label(ex.x));
  }
  return out;
}

std::string adversary_id(Adversary a) {
  switch (a) {
    case Adversary::kMarginFlip: return "a";
    case Adversary::kChowBias: return "b";
    case Adversary::kRandomReplace: return "c";
  }
  throw ParamError("adversary_id: unknown adversary");
}

Adversary adversary_from_id(const std::string& id) {
  if (id == "a") return Adversary::kMarginFlip;
  if (id == "b") return Adversary::kChowBias;
  if (id == "c") return Adversary::kRandomReplace;
  throw ParamError("adversary_from_id: expected a, b or c, got '" + id + "'");
}

namespace {

// Exact coefficient E[f chi_S] of the target, which the omniscient
// adversary is allowed to know.
double exact_target_coefficient(const Target& target, std::uint32_t subset) {
  const std::uint64_t cube = std::uint64_t{1} << target.n();
  std::int64_t acc = 0;
  for (std::uint64_t p = 0; p < cube; ++p) {
    const auto point = static_cast<std::uint32_t>(p);
    acc += target.label(point) * chi(subset, point);
  }
  return static_cast<double>(acc) / static_cast<double>(cube);
}

}  // namespace

CorruptedSampleSet nasty_corrupt(const std::vector<LabeledExample>& clean,
                                 double eps, Adversary adversary,
                                 const Target& target,
                                 std::uint32_t bias_subset, Rng& rng) {
  if (!(eps >= 0.0 && eps < 0.5)) {
    throw ParamError("nasty_corrupt: eps must lie in [0, 1/2)");
  }
  CorruptedSampleSet out;
  out.n = target.n();
  out.examples = clean;
  out.eps_corrupt = eps;
  out.adversary = adversary_id(adversary);
  out.seed = rng.seed();
  const std::size_t m = clean.size();
  const auto k = static_cast<std::size_t>(eps * static_cast<double>(m));
  out.corrupted_count = k;
  if (k == 0) return out;

  switch (adversary) {
    case Adversary::kMarginFlip: {
      const MultilinearPoly* p = target.poly();
      if (p == nullptr) {
        throw ParamError(
            "nasty_corrupt: margin adversary needs a polynomial target");
      }
      const auto values = point_values(*p);
      std::vector<std::uint32_t> order(m);
      std::iota(order.begin(), order.end(), 0u);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::uint32_t a, std::uint32_t b) {
                         return std::abs(values[clean[a].x]) <
                                std::abs(values[clean[b].x]);
                       });
      order.resize(k);
      std::sort(order.begin(), order.end());
      for (const std::uint32_t idx : order) {
        out.examples[idx].y = static_cast<std::int8_t>(-out.examples[idx].y);
      }
      out.replaced_indices = std::move(order);
      break;
    }
    case Adversary::kChowBias: {
      const double coefficient = exact_target_coefficient(target, bias_subset);
      const int direction = coefficient > 0.0 ? -1 : 1;  // push toward zero
      out.bias_subset = bias_subset;
      out.bias_direction = direction;
      // Remove the examples most opposed to the shift: those contributing
      // -direction to the empirical coefficient.
      std::vector<std::uint32_t> victims;
      victims.reserve(k);
      for (std::uint32_t idx = 0; idx < m && victims.size() < k; ++idx) {
        if (clean[idx].y * chi(bias_subset, clean[idx].x) == -direction) {
          victims.push_back(idx);
        }
      }
      for (std::uint32_t idx = 0; idx < m && victims.size() < k; ++idx) {
        if (clean[idx].y * chi(bias_subset, clean[idx].x) == direction) {
          victims.push_back(idx);
        }
      }
      // Replacements carry flipped labels at character-aligned points, so
      // each contributes exactly `direction` to the attacked coefficient.
      for (const std::uint32_t idx : victims) {
        for (;;) {
          const std::uint32_t x = rng.next_point(target.n());
          const int y = -target.label(x);
          if (y * chi(bias_subset, x) == direction) {
            out.examples[idx] = {x, static_cast<std::int8_t>(y)};
            break;
          }
        }
      }
      std::sort(victims.begin(), victims.end());
      out.replaced_indices = std::move(victims);
      break;
    }
    case Adversary::kRandomReplace: {
      // Partial Fisher-Yates for k distinct victim indices.
      std::vector<std::uint32_t> order(m);
      std::iota(order.begin(), order.end(), 0u);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t swap = j + static_cast<std::size_t>(
            rng.next_below(m - j));
        std::swap(order[j], order[swap]);
      }
      order.resize(k);
      std::sort(order.begin(), order.end());
      for (const std::uint32_t idx : order) {
        out.examples[idx].x = rng.next_point(target.n());
        out.examples[idx].y = static_cast<std::int8_t>(rng.next_sign());
      }
      out.replaced_indices = std::move(order);
      break;
    }
  }
  return out;
}

ChowVector robust_estimate_chow(const CorruptedSampleSet& corrupted, int d,
                                double eps) {
  if (!(eps >= 0.0 && eps < 0.5)) {
    throw ParamError("robust_estimate_chow: eps must lie in [0, 1/2)");
  }
  const std::size_t m = corrupted.examples.size();
  const auto k = static_cast<std::size_t>(
      std::ceil(eps * static_cast<double>(m)));
  if (m < 2 * k + 10) {
    throw InsufficientDataError(
        "robust_estimate_chow: trimming leaves fewer than 10 samples");
  }
  const SubsetIndexer indexer(corrupted.n, d);
  ChowVector est(corrupted.n, d);
  std::vector<double> contributions(m);
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t subset) {
    for (std::size_t j = 0; j < m; ++j) {
      contributions[j] =
          corrupted.examples[j].y * chi(subset, corrupted.examples[j].x);
    }
    std::sort(contributions.begin(), contributions.end());
    double acc = 0.0;
    for (std::size_t j = k; j < m - k; ++j) acc += contributions[j];
    est.coeffs[i++] = acc / static_cast<double>(m - 2 * k);
  });
  return est;
}

void write_sample_set(const std::string& csv_path,
                      const CorruptedSampleSet& set) {
  std::ofstream csv(csv_path);
  if (!csv) throw ParseError("cannot write sample set file: " + csv_path);
  char buf[16];
  for (const auto& ex : set.examples) {
    std::snprintf(buf, sizeof(buf), "%x", ex.x);
    csv << buf << "," << static_cast<int>(ex.y) << "\n";
  }
  nlohmann::json sidecar;
  sidecar["n"] = set.n;
  sidecar["m"] = set.examples.size();
  sidecar["eps_corrupt"] = set.eps_corrupt;
  sidecar["adversary_id"] = set.adversary;
  sidecar["seed"] = set.seed;
  std::ofstream meta(csv_path + ".json");
  if (!meta) {
    throw ParseError("cannot write sample set sidecar: " + csv_path + ".json");
  }
  meta << sidecar.dump(2) << "\n";
}

CorruptedSampleSet read_sample_set(const std::string& csv_path) {
  std::ifstream meta(csv_path + ".json");
  if (!meta) {
    throw ParseError("cannot open sample set sidecar: " + csv_path + ".json");
  }
  nlohmann::json sidecar;
  try {
    meta >> sidecar;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sample set sidecar: ") + e.what());
  }
  CorruptedSampleSet set;
  set.n = sidecar.at("n").get<int>();
  check_dimension(set.n);
  set.eps_corrupt = sidecar.at("eps_corrupt").get<double>();
  set.adversary = sidecar.at("adversary_id").get<std::string>();
  set.seed = sidecar.at("seed").get<std::uint64_t>();
  const auto m = sidecar.at("m").get<std::size_t>();

  std::ifstream csv(csv_path);
  if (!csv) throw ParseError("cannot open sample set file: " + csv_path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(csv, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("sample set line " + std::to_string(lineno) +
                       ": missing ',' separator");
    }
    LabeledExample ex;
    try {
      ex.x = static_cast<std::uint32_t>(
          std::stoul(line.substr(0, comma), nullptr, 16));
      ex.y = static_cast<std::int8_t>(std::stoi(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ParseError("sample set line " + std::to_string(lineno) +
                       ": bad field in '" + line + "'");
    }
    if (ex.x >> set.n || (ex.y != 1 && ex.y != -1)) {
      throw ParseError("sample set line " + std::to_string(lineno) +
                       ": value out of range");
    }
    set.examples.push_back(ex);
  }
  if (set.examples.size() != m) {
    throw ParseError("sample set: sidecar promises " + std::to_string(m) +
                     " rows, file has " +
                     std::to_string(set.examples.size()));
  }
  set.corrupted_count = static_cast<std::size_t>(
      set.eps_corrupt * static_cast<double>(m));
  return set;
}

}  // namespace ptf
