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

#ifndef PTF_ERRORS_HPP_
#define PTF_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ptf {

// Exhaustive code paths enumerate all 2^n points; this caps n.
inline constexpr int kMaxDimension = 24;

// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension or budget exceeds what the exhaustive code paths support.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Two operands do not share the (n, d) shape they must agree on.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Subset or point index outside the valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its documented range.
class ParamError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; the message names the offending line/field.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A learning-protocol contract was violated (e.g. asking a restricted
// example for a coordinate it never revealed).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Input is degenerate for the requested statistic (e.g. regularity of a
// constant polynomial, whose total influence is zero).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Too few samples survive preprocessing to produce an estimate.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// The iterative reconstruction exhausted its budget before the stopping
// rule fired. Carries the per-iteration residual norms so the caller can
// inspect the trajectory.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> trace)
      : Error(what), trace_(std::move(trace)) {}

  const std::vector<double>& trace() const { return trace_; }

 private:
  std::vector<double> trace_;
};

}  // namespace ptf

#endif  // PTF_ERRORS_HPP_
