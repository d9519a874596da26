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

#ifndef PTF_TABLES_HPP_
#define PTF_TABLES_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptf/errors.hpp"

namespace ptf {

// {-1,+1}-valued function on the n-cube, bit-packed, 1 <= n <= 24.
//
// Point-code convention (fixed): bit i-1 of a point code is 1 iff
// x_i = -1, so code 0 is the all-(+1) point. Packed bit = 1 encodes the
// value -1.
class TruthTable {
 public:
  explicit TruthTable(int n);

  static TruthTable from_values(int n, const std::vector<int>& values);

  int n() const { return n_; }
  std::size_t size() const { return std::size_t{1} << n_; }

  int get(std::uint32_t point) const {
    return (bits_[point >> 6] >> (point & 63)) & 1 ? -1 : 1;
  }

  void set(std::uint32_t point, int value);
  void flip(std::uint32_t point) { bits_[point >> 6] ^= 1ULL << (point & 63); }

  bool operator==(const TruthTable& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
  }

  // Text format: header line "n=<int>" (append " hex" for the hex body),
  // then either 2^n characters '+'/'-' in point-code order or the packed
  // little-endian bit array as lowercase hex bytes. Whitespace is ignored
  // in the body.
  static TruthTable load(std::istream& in);
  static TruthTable load_file(const std::string& path);
  void save(std::ostream& out, bool hex = false) const;
  void save_file(const std::string& path, bool hex = false) const;

 private:
  int n_;
  std::vector<std::uint64_t> bits_;
};

// [-1,1]-valued function on the n-cube.
class BoundedTable {
 public:
  explicit BoundedTable(int n, double fill = 0.0);

  static BoundedTable from_values(int n, std::vector<double> values);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }

  double get(std::uint32_t point) const { return values_[point]; }
  void set(std::uint32_t point, double value);

  const std::vector<double>& values() const { return values_; }

 private:
  static void check_range(double value);

  int n_;
  std::vector<double> values_;
};

void check_dimension(int n);

}  // namespace ptf

#endif  // PTF_TABLES_HPP_
