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

#ifndef PTF_WHT_HPP_
#define PTF_WHT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptf/subset_indexer.hpp"
#include "ptf/tables.hpp"

namespace ptf {

// In-place Walsh-Hadamard butterflies: a[s] <- sum_x a[x] * chi_s(x).
// Self-inverse up to the factor 2^n. Length must be a power of two.
void walsh_hadamard(std::vector<std::int64_t>& a);
void walsh_hadamard(std::vector<double>& a);

// Full spectrum: out[mask of S] = 2^{-n} sum_x f(x) chi_S(x).
// The Boolean overload accumulates in integers and divides once at the
// end, so it is exact for every n <= 24.
std::vector<double> wht(const TruthTable& table);
std::vector<double> wht(const BoundedTable& table);

// Point values from a full spectrum (unscaled inverse transform).
std::vector<double> values_from_spectrum(std::vector<double> spectrum);

// Dense vector of Fourier coefficients over all subsets of size <= d, in
// SubsetIndexer order.
struct ChowVector {
  int n = 0;
  int d = 0;
  std::vector<double> coeffs;

  ChowVector() = default;
  ChowVector(int n_in, int d_in)
      : n(n_in), d(d_in), coeffs(SubsetIndexer(n_in, d_in).size(), 0.0) {}

  std::size_t size() const { return coeffs.size(); }
  double norm2() const;
  double max_abs() const;
};

ChowVector chow_vector(const TruthTable& table, int d);
ChowVector chow_vector(const BoundedTable& table, int d);
ChowVector chow_from_spectrum(const std::vector<double>& spectrum, int n,
                              int d);

// Euclidean distance between coefficient vectors sharing (n, d).
double chow_distance(const ChowVector& a, const ChowVector& b);

// 17-significant-digit rendering used by every text format.
std::string format_coefficient(double value);

// CSV format: optional leading '#' comment lines, a header "n,d" line
// with the two integers, then one row per subset in indexer order:
// comma-separated 1-based members, ';', coefficient with 17 significant
// digits. The empty set serializes with an empty member field.
void write_chow_csv(std::ostream& out, const ChowVector& v,
                    const std::string& comment = "");
ChowVector read_chow_csv(std::istream& in);
ChowVector read_chow_csv_file(const std::string& path);
void write_chow_csv_file(const std::string& path, const ChowVector& v,
                         const std::string& comment = "");

}  // namespace ptf

#endif  // PTF_WHT_HPP_
