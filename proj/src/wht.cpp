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

#include "ptf/wht.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ptf {

namespace {

template <typename T>
void butterflies(std::vector<T>& a) {
  const std::size_t size = a.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw ShapeError("walsh_hadamard: length must be a power of two");
  }
  for (std::size_t len = 1; len < size; len <<= 1) {
    for (std::size_t i = 0; i < size; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const T u = a[j];
        const T v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
}

}  // namespace

void walsh_hadamard(std::vector<std::int64_t>& a) { butterflies(a); }
void walsh_hadamard(std::vector<double>& a) { butterflies(a); }

std::vector<double> wht(const TruthTable& table) {
  std::vector<std::int64_t> acc(table.size());
  for (std::size_t p = 0; p < table.size(); ++p) {
    acc[p] = table.get(static_cast<std::uint32_t>(p));
  }
  walsh_hadamard(acc);
  // Each accumulated value is an integer in [-2^n, 2^n]; the single
  // division below is the only floating-point step.
  const double scale = 1.0 / static_cast<double>(table.size());
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    out[i] = static_cast<double>(acc[i]) * scale;
  }
  return out;
}

std::vector<double> wht(const BoundedTable& table) {
  std::vector<double> acc(table.values());
  walsh_hadamard(acc);
  const double scale = 1.0 / static_cast<double>(table.size());
  for (double& v : acc) v *= scale;
  return acc;
}

std::vector<double> values_from_spectrum(std::vector<double> spectrum) {
  walsh_hadamard(spectrum);
  return spectrum;
}

double ChowVector::norm2() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return std::sqrt(s);
}

double ChowVector::max_abs() const {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

ChowVector chow_from_spectrum(const std::vector<double>& spectrum, int n,
                              int d) {
  if (spectrum.size() != (std::size_t{1} << n)) {
    throw ShapeError("chow_from_spectrum: spectrum length mismatch");
  }
  ChowVector v(n, d);
  const SubsetIndexer indexer(n, d);
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t mask) { v.coeffs[i++] = spectrum[mask]; });
  return v;
}

ChowVector chow_vector(const TruthTable& table, int d) {
  return chow_from_spectrum(wht(table), table.n(), d);
}

ChowVector chow_vector(const BoundedTable& table, int d) {
  return chow_from_spectrum(wht(table), table.n(), d);
}

double chow_distance(const ChowVector& a, const ChowVector& b) {
  if (a.n != b.n || a.d != b.d) {
    throw ShapeError("chow_distance: vectors must share (n, d); got (" +
                     std::to_string(a.n) + "," + std::to_string(a.d) +
                     ") vs (" + std::to_string(b.n) + "," +
                     std::to_string(b.d) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const double diff = a.coeffs[i] - b.coeffs[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

std::string format_coefficient(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_chow_csv(std::ostream& out, const ChowVector& v,
                    const std::string& comment) {
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
  }
  out << v.n << "," << v.d << "\n";
  const SubsetIndexer indexer(v.n, v.d);
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t mask) {
    const auto members = SubsetIndexer::members(mask);
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j) out << ",";
      out << members[j];
    }
    out << ";" << format_coefficient(v.coeffs[i++]) << "\n";
  });
}

ChowVector read_chow_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line[0] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("chow csv: missing n,d header");
  int n = 0;
  int d = 0;
  if (std::sscanf(line.c_str(), "%d,%d", &n, &d) != 2) {
    throw ParseError("chow csv line " + std::to_string(lineno) +
                     ": expected 'n,d' header, got '" + line + "'");
  }
  ChowVector v(n, d);
  const SubsetIndexer indexer(n, d);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!next_line()) {
      throw ParseError("chow csv: ended after " + std::to_string(i) + " of " +
                       std::to_string(v.size()) + " rows");
    }
    const auto sep = line.find(';');
    if (sep == std::string::npos) {
      throw ParseError("chow csv line " + std::to_string(lineno) +
                       ": missing ';' separator");
    }
    std::uint32_t mask = 0;
    const std::string members = line.substr(0, sep);
    if (!members.empty()) {
      std::istringstream ms(members);
      std::string tok;
      while (std::getline(ms, tok, ',')) {
        int var = 0;
        try {
          var = std::stoi(tok);
        } catch (const std::exception&) {
          throw ParseError("chow csv line " + std::to_string(lineno) +
                           ": bad member '" + tok + "'");
        }
        if (var < 1 || var > n) {
          throw ParseError("chow csv line " + std::to_string(lineno) +
                           ": member " + std::to_string(var) +
                           " outside [1, n]");
        }
        mask |= 1u << (var - 1);
      }
    }
    if (indexer.index_of(mask) != i) {
      throw ParseError("chow csv line " + std::to_string(lineno) +
                       ": subset out of indexer order");
    }
    try {
      v.coeffs[i] = std::stod(line.substr(sep + 1));
    } catch (const std::exception&) {
      throw ParseError("chow csv line " + std::to_string(lineno) +
                       ": bad coefficient field '" + line.substr(sep + 1) +
                       "'");
    }
  }
  return v;
}

ChowVector read_chow_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open chow csv file: " + path);
  return read_chow_csv(in);
}

void write_chow_csv_file(const std::string& path, const ChowVector& v,
                         const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write chow csv file: " + path);
  write_chow_csv(out, v, comment);
}

}  // namespace ptf
