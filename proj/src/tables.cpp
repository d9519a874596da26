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

#include "ptf/tables.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ptf {

void check_dimension(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw CapacityError("dimension n must be in [1, 24], got " +
                        std::to_string(n));
  }
}

TruthTable::TruthTable(int n) : n_(n) {
  check_dimension(n);
  bits_.assign((size() + 63) / 64, 0);
}

TruthTable TruthTable::from_values(int n, const std::vector<int>& values) {
  TruthTable t(n);
  if (values.size() != t.size()) {
    throw ShapeError("TruthTable::from_values: expected " +
                     std::to_string(t.size()) + " values, got " +
                     std::to_string(values.size()));
  }
  for (std::size_t p = 0; p < values.size(); ++p) {
    t.set(static_cast<std::uint32_t>(p), values[p]);
  }
  return t;
}

void TruthTable::set(std::uint32_t point, int value) {
  if (value != 1 && value != -1) {
    throw ParamError("TruthTable::set: value must be +1 or -1");
  }
  const std::uint64_t mask = 1ULL << (point & 63);
  if (value == -1) {
    bits_[point >> 6] |= mask;
  } else {
    bits_[point >> 6] &= ~mask;
  }
}

namespace {

int parse_header(std::istream& in, bool& hex) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("truth table: missing header line");
  }
  std::istringstream hs(line);
  std::string tag;
  hs >> tag;
  if (tag.rfind("n=", 0) != 0) {
    throw ParseError("truth table: header must start with n=<int>, got '" +
                     line + "'");
  }
  int n = 0;
  try {
    n = std::stoi(tag.substr(2));
  } catch (const std::exception&) {
    throw ParseError("truth table: bad dimension in header '" + line + "'");
  }
  std::string mode;
  hex = false;
  if (hs >> mode) {
    if (mode == "hex") {
      hex = true;
    } else {
      throw ParseError("truth table: unknown header mode '" + mode + "'");
    }
  }
  return n;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

TruthTable TruthTable::load(std::istream& in) {
  bool hex = false;
  const int n = parse_header(in, hex);
  check_dimension(n);
  TruthTable t(n);
  const std::size_t points = t.size();
  char c;
  if (!hex) {
    std::size_t p = 0;
    while (p < points && in.get(c)) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c == '+') {
        ++p;
      } else if (c == '-') {
        t.flip(static_cast<std::uint32_t>(p++));
      } else {
        throw ParseError(std::string("truth table: body char '") + c +
                         "' at point " + std::to_string(p) +
                         " (expected '+' or '-')");
      }
    }
    if (p != points) {
      throw ParseError("truth table: body ended after " + std::to_string(p) +
                       " of " + std::to_string(points) + " points");
    }
  } else {
    // Hex body: packed little-endian bit array, byte k covers points
    // 8k..8k+7, bit j within the byte is point 8k+j; two lowercase hex
    // digits per byte, high nibble first.
    const std::size_t bytes = (points + 7) / 8;
    std::size_t b = 0;
    int hi = -1;
    while (b < bytes && in.get(c)) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      const int v = hex_value(c);
      if (v < 0) {
        throw ParseError(std::string("truth table: bad hex digit '") + c +
                         "' at byte " + std::to_string(b));
      }
      if (hi < 0) {
        hi = v;
      } else {
        const std::uint32_t byte = static_cast<std::uint32_t>((hi << 4) | v);
        for (int j = 0; j < 8; ++j) {
          const std::size_t p = 8 * b + static_cast<std::size_t>(j);
          if (p < points && ((byte >> j) & 1)) {
            t.flip(static_cast<std::uint32_t>(p));
          }
        }
        hi = -1;
        ++b;
      }
    }
    if (b != bytes || hi >= 0) {
      throw ParseError("truth table: hex body ended after " +
                       std::to_string(b) + " of " + std::to_string(bytes) +
                       " bytes");
    }
  }
  return t;
}

TruthTable TruthTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open truth table file: " + path);
  return load(in);
}

void TruthTable::save(std::ostream& out, bool hex) const {
  if (!hex) {
    out << "n=" << n_ << "\n";
    for (std::size_t p = 0; p < size(); ++p) {
      out << (get(static_cast<std::uint32_t>(p)) > 0 ? '+' : '-');
      if ((p & 63) == 63) out << "\n";
    }
    if (size() & 63) out << "\n";
  } else {
    out << "n=" << n_ << " hex\n";
    static const char* digits = "0123456789abcdef";
    const std::size_t bytes = (size() + 7) / 8;
    for (std::size_t b = 0; b < bytes; ++b) {
      std::uint32_t byte = 0;
      for (int j = 0; j < 8; ++j) {
        const std::size_t p = 8 * b + static_cast<std::size_t>(j);
        if (p < size() && get(static_cast<std::uint32_t>(p)) < 0) {
          byte |= 1u << j;
        }
      }
      out << digits[byte >> 4] << digits[byte & 15];
      if ((b & 31) == 31) out << "\n";
    }
    if (bytes & 31) out << "\n";
  }
}

void TruthTable::save_file(const std::string& path, bool hex) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write truth table file: " + path);
  save(out, hex);
}

BoundedTable::BoundedTable(int n, double fill) : n_(n) {
  check_dimension(n);
  check_range(fill);
  values_.assign(std::size_t{1} << n, fill);
}

BoundedTable BoundedTable::from_values(int n, std::vector<double> values) {
  BoundedTable t(n);
  if (values.size() != t.size()) {
    throw ShapeError("BoundedTable::from_values: expected " +
                     std::to_string(t.size()) + " values, got " +
                     std::to_string(values.size()));
  }
  for (double v : values) check_range(v);
  t.values_ = std::move(values);
  return t;
}

void BoundedTable::set(std::uint32_t point, double value) {
  check_range(value);
  values_[point] = value;
}

void BoundedTable::check_range(double value) {
  if (!(value >= -1.0 && value <= 1.0)) {
    throw ParamError("BoundedTable: value " + std::to_string(value) +
                     " outside [-1, 1]");
  }
}

}  // namespace ptf
