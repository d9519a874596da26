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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "naive_fourier.hpp"
#include "ptf/rng.hpp"
#include "ptf/tables.hpp"
#include "ptf/wht.hpp"

using ptf::BoundedTable;
using ptf::ChowVector;
using ptf::Rng;
using ptf::TruthTable;

namespace {

TruthTable random_table(int n, Rng& rng) {
  TruthTable t(n);
  for (std::size_t p = 0; p < t.size(); ++p) {
    if (rng.next_sign() < 0) t.flip(static_cast<std::uint32_t>(p));
  }
  return t;
}

TruthTable maj3() {
  TruthTable t(3);
  for (std::uint32_t p = 0; p < 8; ++p) {
    // Point-code: bit set means the coordinate is -1.
    const int ones = 3 - ptf::SubsetIndexer::popcount(p);
    if (ones < 2) t.flip(p);
  }
  return t;
}

}  // namespace

TEST_CASE("point-code convention: code 0 is the all-ones point") {
  TruthTable t(2);
  CHECK(t.get(0) == 1);
  t.set(0b01, -1);  // x_1 = -1, x_2 = +1
  CHECK(t.get(1) == -1);
  CHECK(t.get(2) == 1);
}

TEST_CASE("dimension cap") {
  CHECK_THROWS_AS(TruthTable(25), ptf::CapacityError);
  CHECK_THROWS_AS(TruthTable(0), ptf::CapacityError);
}

TEST_CASE("bounded table rejects out-of-range values") {
  BoundedTable t(3);
  CHECK_THROWS_AS(t.set(0, 1.5), ptf::ParamError);
  CHECK_THROWS_AS(BoundedTable(3, -2.0), ptf::ParamError);
  t.set(0, -1.0);
  CHECK(t.get(0) == -1.0);
}

TEST_CASE("constant function spectrum") {
  const TruthTable t(3);  // all +1
  const auto spec = ptf::wht(t);
  CHECK(spec[0] == 1.0);
  for (std::size_t s = 1; s < 8; ++s) CHECK(spec[s] == 0.0);
}

TEST_CASE("dictator spectrum, n=2") {
  TruthTable t(2);
  t.set(0b01, -1);
  t.set(0b11, -1);  // f(x) = x_1
  const auto spec = ptf::wht(t);
  CHECK(spec[0b01] == 1.0);
  CHECK(spec[0b00] == 0.0);
  CHECK(spec[0b10] == 0.0);
  CHECK(spec[0b11] == 0.0);
}

TEST_CASE("majority-of-three spectrum, checked against the naive sum") {
  const TruthTable t = maj3();
  const auto naive = ptf_test::naive_spectrum(t);
  const auto fast = ptf::wht(t);
  for (std::size_t s = 0; s < 8; ++s) {
    CHECK(fast[s] == doctest::Approx(naive[s]).epsilon(1e-14));
  }
  CHECK(fast[0b001] == 0.5);
  CHECK(fast[0b010] == 0.5);
  CHECK(fast[0b100] == 0.5);
  CHECK(fast[0b111] == -0.5);
  CHECK(fast[0b000] == 0.0);
  CHECK(fast[0b011] == 0.0);
}

TEST_CASE("fast transform equals the naive double sum on random tables") {
  Rng rng(2026);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(8));
    const TruthTable t = random_table(n, rng);
    const auto fast = ptf::wht(t);
    const auto naive = ptf_test::naive_spectrum(t);
    for (std::size_t s = 0; s < fast.size(); ++s) {
      CHECK(std::abs(fast[s] - naive[s]) <= 1e-12);
    }
  }
}

TEST_CASE("Parseval on Boolean tables") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(10));
    const auto spec = ptf::wht(random_table(n, rng));
    double sum = 0.0;
    for (const double c : spec) sum += c * c;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("Plancherel on random pairs") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(8));
    const TruthTable f = random_table(n, rng);
    const TruthTable g = random_table(n, rng);
    const auto sf = ptf::wht(f);
    const auto sg = ptf::wht(g);
    double spectral = 0.0;
    for (std::size_t s = 0; s < sf.size(); ++s) spectral += sf[s] * sg[s];
    double direct = 0.0;
    for (std::size_t p = 0; p < f.size(); ++p) {
      direct += f.get(static_cast<std::uint32_t>(p)) *
                g.get(static_cast<std::uint32_t>(p));
    }
    direct /= static_cast<double>(f.size());
    CHECK(std::abs(spectral - direct) <= 1e-12);
  }
}

TEST_CASE("transform is linear on raw value vectors") {
  Rng rng(13);
  const int n = 6;
  const std::size_t size = 64;
  std::vector<double> f(size);
  std::vector<double> g(size);
  for (std::size_t i = 0; i < size; ++i) {
    f[i] = 2.0 * rng.next_unit() - 1.0;
    g[i] = 2.0 * rng.next_unit() - 1.0;
  }
  const double a = 1.7;
  const double b = -0.4;
  std::vector<double> combo(size);
  for (std::size_t i = 0; i < size; ++i) combo[i] = a * f[i] + b * g[i];
  ptf::walsh_hadamard(f);
  ptf::walsh_hadamard(g);
  ptf::walsh_hadamard(combo);
  for (std::size_t i = 0; i < size; ++i) {
    CHECK(std::abs(combo[i] - (a * f[i] + b * g[i])) <= 1e-12 * size);
  }
  (void)n;
}

TEST_CASE("round trip through the inverse transform") {
  Rng rng(14);
  TruthTable t = random_table(7, rng);
  auto spec = ptf::wht(t);
  const auto values = ptf::values_from_spectrum(spec);
  for (std::size_t p = 0; p < t.size(); ++p) {
    CHECK(values[p] ==
          doctest::Approx(t.get(static_cast<std::uint32_t>(p))).epsilon(1e-12));
  }
}

TEST_CASE("chow vector of maj3 at degree 1") {
  const ChowVector v = ptf::chow_vector(maj3(), 1);
  REQUIRE(v.size() == 4);
  CHECK(v.coeffs[0] == 0.0);
  CHECK(v.coeffs[1] == 0.5);
  CHECK(v.coeffs[2] == 0.5);
  CHECK(v.coeffs[3] == 0.5);
}

TEST_CASE("degree-n truncation satisfies Parseval") {
  Rng rng(15);
  const TruthTable t = random_table(6, rng);
  const ChowVector v = ptf::chow_vector(t, 6);
  double sum = 0.0;
  for (const double c : v.coeffs) sum += c * c;
  CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("truncated vectors of Boolean sources stay inside the ball") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_below(8));
    const ChowVector v = ptf::chow_vector(random_table(n, rng), 2);
    double sum = 0.0;
    for (const double c : v.coeffs) {
      CHECK(std::abs(c) <= 1.0);
      sum += c * c;
    }
    CHECK(sum <= 1.0 + 1e-9);
  }
}

TEST_CASE("pure degree-2 parity has an empty degree-1 vector") {
  TruthTable t(2);
  t.set(0b01, -1);
  t.set(0b10, -1);  // f = x_1 x_2
  const ChowVector v = ptf::chow_vector(t, 1);
  for (const double c : v.coeffs) CHECK(c == 0.0);
}

TEST_CASE("coefficient distance basics") {
  const TruthTable m = maj3();
  const ChowVector v = ptf::chow_vector(m, 2);
  CHECK(ptf::chow_distance(v, v) == 0.0);

  TruthTable f(3);
  TruthTable g(3);
  for (std::uint32_t p = 0; p < 8; ++p) {
    f.set(p, (p & 1) ? -1 : 1);   // x_1
    g.set(p, (p & 1) ? 1 : -1);   // -x_1
  }
  CHECK(ptf::chow_distance(ptf::chow_vector(f, 1), ptf::chow_vector(g, 1)) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("tables differing at one point have coefficient distance "
          "2 * 2^-n * sqrt(2^n)") {
  Rng rng(16);
  TruthTable f = random_table(3, rng);
  TruthTable g = f;
  g.flip(5);
  const double d =
      ptf::chow_distance(ptf::chow_vector(f, 3), ptf::chow_vector(g, 3));
  CHECK(d == doctest::Approx(2.0 / 8.0 * std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("coefficient distance rejects mismatched shapes") {
  const ChowVector a(3, 1);
  const ChowVector b(3, 2);
  const ChowVector c(4, 1);
  CHECK_THROWS_AS((void)ptf::chow_distance(a, b), ptf::ShapeError);
  CHECK_THROWS_AS((void)ptf::chow_distance(a, c), ptf::ShapeError);
}
