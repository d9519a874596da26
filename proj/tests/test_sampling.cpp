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

#include <cmath>
#include <cstdio>
#include <vector>

#include "doctest.h"
#include "ptf/rng.hpp"
#include "ptf/structure_lab.hpp"

using ptf::Adversary;
using ptf::ChowVector;
using ptf::MultilinearPoly;
using ptf::Rng;
using ptf::Target;
using ptf::TruthTable;

namespace {

Target dictator_target(int n) {
  MultilinearPoly p(n, 1);
  p.set_coeff(0b001, 1.0);
  return Target::ptf(std::move(p));
}

Target maj3_target() {
  MultilinearPoly p(3, 1);
  p.set_coeff(0b001, 1.0);
  p.set_coeff(0b010, 1.0);
  p.set_coeff(0b100, 1.0);
  return Target::ptf(std::move(p));
}

}  // namespace

TEST_CASE("restricted examples reveal only the requested coordinates") {
  const Target target = dictator_target(4);
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const ptf::RfaExample ex = ptf::rfa_sample(target, 0b0001, 1, rng);
    CHECK(ex.revealed_set() == 0b0001);
    CHECK(ex.label() == ex.value_at(1));  // dictator label
    CHECK_THROWS_AS((void)ex.value_at(2), ptf::ProtocolError);
    CHECK_THROWS_AS((void)ex.value_at(0), ptf::ProtocolError);
    CHECK_THROWS_AS((void)ex.chi_revealed(0b0011), ptf::ProtocolError);
  }
}

TEST_CASE("focus-width violations are protocol errors") {
  const Target target = dictator_target(4);
  Rng rng(32);
  CHECK_THROWS_AS((void)ptf::rfa_sample(target, 0b0011, 1, rng),
                  ptf::ProtocolError);
  CHECK_THROWS_AS((void)ptf::rfa_sample(target, 1u << 5, 2, rng),
                  ptf::ProtocolError);
}

TEST_CASE("label-only samples recover the mean") {
  // Constant +1 target: every label must be +1 with nothing revealed.
  const Target target = Target::table(TruthTable(3));
  Rng rng(33);
  for (int i = 0; i < 50; ++i) {
    const ptf::RfaExample ex = ptf::rfa_sample(target, 0, 0, rng);
    CHECK(ex.label() == 1);
    CHECK(ex.revealed_set() == 0);
  }
}

TEST_CASE("maj3 single-coordinate correlation near one half") {
  const Target target = maj3_target();
  Rng rng(34);
  double acc = 0.0;
  const int m = 100000;
  for (int i = 0; i < m; ++i) {
    const ptf::RfaExample ex = ptf::rfa_sample(target, 0b001, 1, rng);
    acc += ex.label() * ex.value_at(1);
  }
  CHECK(std::abs(acc / m - 0.5) <= 0.02);
}

TEST_CASE("restricted-focus estimation meets its budget on the dictator") {
  const Target target = dictator_target(4);
  int hits = 0;
  const ChowVector exact = ptf::chow_vector(target.truth_table(), 1);
  std::uint64_t expected_total = 0;
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(1000 + seed);
    const ptf::RfaEstimate est =
        ptf::estimate_chow_rfa(target, 4, 1, 0.1, 0.1, rng);
    if (ptf::chow_distance(est.chow, exact) <= 0.1) ++hits;
    std::uint64_t total = 0;
    for (const auto m : est.per_subset) total += m;
    CHECK(est.total_samples == total);
    expected_total = total;
  }
  CHECK(hits >= 18);
  CHECK(expected_total > 0);
}

TEST_CASE("wide cubes engage the sampling path and keep the budget") {
  // At n=16 the cube outgrows the per-subset budget, so estimates are
  // genuinely sampled.
  ptf::MultilinearPoly p(16, 1);
  for (int i = 0; i < 16; ++i) p.set_coeff(1u << i, 1.0);
  const Target target = Target::ptf(std::move(p));
  const ChowVector exact = ptf::chow_vector(target.truth_table(), 1);
  int hits = 0;
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(2000 + seed);
    const ptf::RfaEstimate est =
        ptf::estimate_chow_rfa(target, 16, 1, 0.3, 0.3, rng);
    CHECK(est.exact_fallbacks == 0);
    if (ptf::chow_distance(est.chow, exact) <= 0.3) ++hits;
  }
  CHECK(hits >= 9);
}

TEST_CASE("tiny budgets fall back to exact enumeration") {
  const Target target = dictator_target(4);
  Rng rng(35);
  const ptf::RfaEstimate est =
      ptf::estimate_chow_rfa(target, 4, 1, 0.005, 0.1, rng);
  CHECK(est.exact_fallbacks == est.per_subset.size());
  const ChowVector exact = ptf::chow_vector(target.truth_table(), 1);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    CHECK(est.chow.coeffs[i] == exact.coeffs[i]);
  }
}

TEST_CASE("budget contract over 200 seeded runs at n=8 d=2") {
  Rng gen(53);
  const ptf::MultilinearPoly p = ptf::random_poly(8, 2, gen);
  const Target target = Target::ptf(p);
  const ChowVector exact = ptf::chow_vector(target.truth_table(), 2);
  int hits = 0;
  for (int seed = 0; seed < 200; ++seed) {
    Rng rng(3000 + seed);
    const auto est = ptf::estimate_chow_rfa(target, 8, 2, 0.1, 0.1, rng);
    if (ptf::chow_distance(est.chow, exact) <= 0.1) ++hits;
  }
  // The allocation must succeed on at least a 1 - delta fraction; at
  // these parameters the budget covers the cube, so it is exact.
  CHECK(hits >= 180);
}

TEST_CASE("trimmed deviation bound holds under every adversary") {
  Rng gen(54);
  const ptf::MultilinearPoly p = ptf::random_poly(8, 2, gen);
  const Target target = Target::ptf(p);
  const ChowVector exact = ptf::chow_vector(target.truth_table(), 2);
  const double eps = 0.02;
  const std::size_t m = 20000;
  const double bound = 4.0 * eps + 5.0 / std::sqrt(static_cast<double>(m));
  for (const auto adversary :
       {Adversary::kMarginFlip, Adversary::kChowBias,
        Adversary::kRandomReplace}) {
    for (int seed = 0; seed < 5; ++seed) {
      Rng clean_rng = Rng(4000 + seed).fork(1);
      Rng adv_rng = Rng(4000 + seed).fork(2);
      const auto clean = ptf::draw_clean(target, m, clean_rng);
      const auto corrupted =
          ptf::nasty_corrupt(clean, eps, adversary, target, 0b11, adv_rng);
      const ChowVector trimmed = ptf::robust_estimate_chow(corrupted, 2, eps);
      for (std::size_t i = 0; i < exact.size(); ++i) {
        CHECK(std::abs(trimmed.coeffs[i] - exact.coeffs[i]) <= bound);
      }
    }
  }
}

TEST_CASE("full-sample estimation") {
  const Target target = maj3_target();
  SUBCASE("whole cube with correct labels is exact") {
    std::vector<ptf::LabeledExample> samples;
    for (std::uint32_t p = 0; p < 8; ++p) {
      samples.push_back({p, static_cast<std::int8_t>(target.label(p))});
    }
    const ChowVector est = ptf::estimate_chow_full(samples, 3, 1);
    const ChowVector exact = ptf::chow_vector(target.truth_table(), 1);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      CHECK(est.coeffs[i] == exact.coeffs[i]);
    }
  }
  SUBCASE("a single sample gives plus-minus-one coefficients") {
    const std::vector<ptf::LabeledExample> samples{{0b101, -1}};
    const ChowVector est = ptf::estimate_chow_full(samples, 3, 2);
    for (const double c : est.coeffs) CHECK(std::abs(c) == 1.0);
  }
  SUBCASE("empty input is an error") {
    CHECK_THROWS_AS(
        (void)ptf::estimate_chow_full({}, 3, 1), ptf::InsufficientDataError);
  }
  SUBCASE("seeded run lands near the known coefficients") {
    Rng rng(36);
    const auto samples = ptf::draw_clean(target, 100000, rng);
    const ChowVector est = ptf::estimate_chow_full(samples, 3, 1);
    CHECK(std::abs(est.coeffs[0] - 0.0) <= 0.02);
    for (std::size_t i = 1; i < 4; ++i) {
      CHECK(std::abs(est.coeffs[i] - 0.5) <= 0.02);
    }
  }
}

TEST_CASE("estimator is unbiased over seeds") {
  const Target target = maj3_target();
  const ChowVector exact = ptf::chow_vector(target.truth_table(), 1);
  const int runs = 200;
  const std::size_t m = 500;
  std::vector<double> mean(exact.size(), 0.0);
  for (int seed = 0; seed < runs; ++seed) {
    Rng rng(5000 + seed);
    const auto samples = ptf::draw_clean(target, m, rng);
    const ChowVector est = ptf::estimate_chow_full(samples, 3, 1);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += est.coeffs[i];
  }
  for (std::size_t i = 0; i < mean.size(); ++i) {
    mean[i] /= runs;
    const double sigma = std::sqrt(
        (1.0 - exact.coeffs[i] * exact.coeffs[i]) /
        static_cast<double>(m * runs));
    CHECK(std::abs(mean[i] - exact.coeffs[i]) <= 3.0 * sigma);
  }
}

TEST_CASE("corruption bookkeeping") {
  const Target target = maj3_target();
  Rng rng(37);
  auto clean = ptf::draw_clean(target, 1000, rng);
  SUBCASE("zero rate leaves the sample untouched") {
    Rng adv_rng(38);
    const auto out = ptf::nasty_corrupt(clean, 0.0, Adversary::kRandomReplace,
                                        target, 0, adv_rng);
    CHECK(out.corrupted_count == 0);
    for (std::size_t i = 0; i < clean.size(); ++i) {
      CHECK(out.examples[i].x == clean[i].x);
      CHECK(out.examples[i].y == clean[i].y);
    }
  }
  SUBCASE("corrupted count is exactly the floor") {
    Rng adv_rng(39);
    const auto out = ptf::nasty_corrupt(clean, 0.013,
                                        Adversary::kRandomReplace, target, 0,
                                        adv_rng);
    CHECK(out.corrupted_count == 13);
    CHECK(out.replaced_indices.size() == 13);
  }
  SUBCASE("rate bounds are enforced") {
    Rng adv_rng(40);
    CHECK_THROWS_AS((void)ptf::nasty_corrupt(clean, 0.5,
                                             Adversary::kRandomReplace,
                                             target, 0, adv_rng),
                    ptf::ParamError);
  }
}

TEST_CASE("margin adversary flips the smallest margins") {
  MultilinearPoly p(6, 2);
  Rng gen(41);
  const ptf::SubsetIndexer indexer(6, 2);
  indexer.for_each(
      [&](std::uint32_t mask) { p.set_coeff(mask, gen.next_gaussian()); });
  const auto values = ptf::point_values(p);
  const Target target = Target::ptf(p);
  Rng rng(42);
  const auto clean = ptf::draw_clean(target, 500, rng);
  Rng adv_rng(43);
  const auto out = ptf::nasty_corrupt(clean, 0.1, Adversary::kMarginFlip,
                                      target, 0, adv_rng);
  REQUIRE(out.corrupted_count == 50);
  double worst_flipped = 0.0;
  for (const auto idx : out.replaced_indices) {
    CHECK(out.examples[idx].y == -clean[idx].y);
    worst_flipped = std::max(worst_flipped, std::abs(values[clean[idx].x]));
  }
  // No untouched example carries a strictly smaller margin.
  std::size_t next = 0;
  std::size_t strictly_smaller = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (next < out.replaced_indices.size() &&
        out.replaced_indices[next] == i) {
      ++next;
      continue;
    }
    CHECK(out.examples[i].y == clean[i].y);
    if (std::abs(values[clean[i].x]) < worst_flipped) ++strictly_smaller;
  }
  CHECK(strictly_smaller == 0);
}

TEST_CASE("margin adversary requires a polynomial target") {
  const Target target = Target::table(TruthTable(3));
  Rng rng(44);
  const auto clean = ptf::draw_clean(target, 100, rng);
  Rng adv_rng(45);
  CHECK_THROWS_AS((void)ptf::nasty_corrupt(clean, 0.1,
                                           Adversary::kMarginFlip, target, 0,
                                           adv_rng),
                  ptf::ParamError);
}

TEST_CASE("coefficient-bias adversary plants a two-eps shift") {
  Rng gen(46);
  MultilinearPoly p = ptf::random_poly(10, 2, gen);
  const Target target = Target::ptf(p);
  const ChowVector exact = ptf::chow_vector(target.truth_table(), 2);
  const ptf::SubsetIndexer indexer(10, 2);
  // Attack the largest nonempty coefficient.
  std::uint32_t coord = 0;
  double best = -1.0;
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t mask) {
    if (mask != 0 && std::abs(exact.coeffs[i]) > best) {
      best = std::abs(exact.coeffs[i]);
      coord = mask;
    }
    ++i;
  });
  const std::size_t coord_index = indexer.index_of(coord);

  const double eps = 0.01;
  const std::size_t m = 50000;
  Rng rng(47);
  const auto clean = ptf::draw_clean(target, m, rng);
  Rng adv_rng(48);
  const auto out =
      ptf::nasty_corrupt(clean, eps, Adversary::kChowBias, target, coord,
                         adv_rng);
  const ChowVector before = ptf::estimate_chow_full(clean, 10, 2);
  const ChowVector after = ptf::estimate_chow_full(out.examples, 10, 2);
  const double shift = after.coeffs[coord_index] - before.coeffs[coord_index];
  // Every replaced example moves the empirical mean by exactly 2/m in the
  // planted direction.
  const double expected = 2.0 * static_cast<double>(out.corrupted_count) /
                          static_cast<double>(m) * out.bias_direction;
  CHECK(shift == doctest::Approx(expected).epsilon(1e-12));

  SUBCASE("the trimmed estimate limits the planted shift") {
    const ChowVector trimmed = ptf::robust_estimate_chow(out, 2, eps);
    const double dev_plain =
        std::abs(after.coeffs[coord_index] - exact.coeffs[coord_index]);
    const double dev_trim =
        std::abs(trimmed.coeffs[coord_index] - exact.coeffs[coord_index]);
    CHECK(dev_trim < dev_plain);
  }
}

TEST_CASE("trimmed estimation basics") {
  const Target target = maj3_target();
  Rng rng(49);
  const auto clean = ptf::draw_clean(target, 2000, rng);
  Rng adv_rng(50);
  const auto wrapped = ptf::nasty_corrupt(clean, 0.0,
                                          Adversary::kRandomReplace, target,
                                          0, adv_rng);
  SUBCASE("trimming clean data moves each coordinate at most 4 eps") {
    const double eps = 0.02;
    const ChowVector plain = ptf::estimate_chow_full(clean, 3, 1);
    const ChowVector trimmed = ptf::robust_estimate_chow(wrapped, 1, eps);
    for (std::size_t i = 0; i < plain.size(); ++i) {
      CHECK(std::abs(trimmed.coeffs[i] - plain.coeffs[i]) <= 4.0 * eps);
    }
  }
  SUBCASE("constant labels reduce to a trimmed character mean") {
    ptf::CorruptedSampleSet constant;
    constant.n = 3;
    for (std::uint32_t x = 0; x < 8; ++x) {
      for (int copy = 0; copy < 8; ++copy) constant.examples.push_back({x, 1});
    }
    const double eps = 0.05;  // ceil(0.05 * 64) = 4 trimmed per side
    const ChowVector est = ptf::robust_estimate_chow(constant, 1, eps);
    // chi values over the cube balance exactly, so trimming removes four
    // +1s and four -1s from each nonempty coordinate and the mean is 0;
    // the empty coordinate is the all-ones list, trimmed mean 1.
    CHECK(est.coeffs[0] == 1.0);
    for (std::size_t i = 1; i < est.size(); ++i) CHECK(est.coeffs[i] == 0.0);
  }
  SUBCASE("insufficient survivors raise an error") {
    ptf::CorruptedSampleSet tiny;
    tiny.n = 3;
    for (std::uint32_t x = 0; x < 20; ++x) tiny.examples.push_back({x & 7, 1});
    CHECK_THROWS_AS((void)ptf::robust_estimate_chow(tiny, 1, 0.3),
                    ptf::InsufficientDataError);
  }
}

TEST_CASE("sample sets round-trip through files") {
  const Target target = maj3_target();
  Rng rng(51);
  const auto clean = ptf::draw_clean(target, 250, rng);
  Rng adv_rng(52);
  const auto out = ptf::nasty_corrupt(clean, 0.1, Adversary::kRandomReplace,
                                      target, 0, adv_rng);
  const std::string path = "sample_set_test.csv";
  ptf::write_sample_set(path, out);
  const auto back = ptf::read_sample_set(path);
  CHECK(back.n == out.n);
  CHECK(back.eps_corrupt == out.eps_corrupt);
  CHECK(back.adversary == out.adversary);
  CHECK(back.examples.size() == out.examples.size());
  for (std::size_t i = 0; i < out.examples.size(); ++i) {
    CHECK(back.examples[i].x == out.examples[i].x);
    CHECK(back.examples[i].y == out.examples[i].y);
  }
  std::remove(path.c_str());
  std::remove((path + ".json").c_str());
}
