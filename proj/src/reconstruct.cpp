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

#include "ptf/reconstruct.hpp"

#include <cmath>
#include <memory>

namespace ptf {

ReconstructParams ReconstructParams::defaults(double xi) {
  ReconstructParams p;
  p.xi = xi;
  if (!(xi > 0.0 && xi < 1.0)) {
    throw ParamError("ReconstructParams: xi must lie in (0, 1)");
  }
  p.max_iters = static_cast<std::int64_t>(std::ceil(64.0 / (xi * xi)));
  p.stop_radius = 4.0 * xi;
  return p;
}

void ReconstructParams::validate() const {
  if (!(xi > 0.0 && xi < 1.0)) {
    throw ParamError("ReconstructParams: xi must lie in (0, 1)");
  }
  if (!(stop_radius > 0.0 && stop_radius < 6.0 * xi)) {
    throw ParamError("ReconstructParams: stop_radius must lie in (0, 6 xi)");
  }
  if (max_iters < 1) {
    throw ParamError("ReconstructParams: max_iters must be >= 1");
  }
}

ChowOracle exact_chow_oracle(int n, int d) {
  ChowOracle oracle;
  oracle.mode = "exact";
  oracle.estimate = [n, d](const PbfHypothesis& h) {
    if (h.n != n || h.d != d) {
      throw ShapeError("exact chow oracle: hypothesis shape mismatch");
    }
    return pbf_chow(h);
  };
  return oracle;
}

ChowOracle sampled_chow_oracle(int n, int d, double xi, double delta,
                               std::uint64_t seed) {
  if (!(xi > 0.0 && xi < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw ParamError("sampled chow oracle: xi and delta must lie in (0, 1)");
  }
  const SubsetIndexer indexer(n, d);
  const double coord_budget = (xi / 8.0) / std::sqrt(
      static_cast<double>(indexer.size()));
  const double m_real = std::ceil(
      2.0 * std::log(4.0 * static_cast<double>(indexer.size()) / delta) /
      (coord_budget * coord_budget));
  if (m_real > 4e9) {
    throw CapacityError("sampled chow oracle: per-call sample count " +
                        std::to_string(m_real) + " is impractical");
  }
  const auto m = static_cast<std::size_t>(m_real);
  auto rng = std::make_shared<Rng>(seed);
  ChowOracle oracle;
  oracle.mode = "sampled";
  oracle.estimate = [n, d, m, rng](const PbfHypothesis& h) {
    if (h.n != n || h.d != d) {
      throw ShapeError("sampled chow oracle: hypothesis shape mismatch");
    }
    const BoundedTable g = materialize(h);
    const SubsetIndexer indexer(n, d);
    ChowVector est(n, d);
    for (std::size_t s = 0; s < m; ++s) {
      const std::uint32_t x = rng->next_point(n);
      const double gx = g.get(x);
      std::size_t i = 0;
      indexer.for_each(
          [&](std::uint32_t mask) { est.coeffs[i++] += gx * chi(mask, x); });
    }
    const double scale = 1.0 / static_cast<double>(m);
    for (double& c : est.coeffs) c *= scale;
    return est;
  };
  return oracle;
}

ReconstructResult reconstruct(const ChowVector& alpha,
                              const ReconstructParams& params,
                              const ChowOracle& oracle) {
  params.validate();
  if (alpha.max_abs() > 1.0 + 1e-12) {
    throw ParamError("reconstruct: input coefficients must lie in [-1, 1]");
  }
  ReconstructResult result;
  result.hypothesis = PbfHypothesis(alpha.n, alpha.d, params.xi / 2.0);
  const std::size_t width = alpha.size();
  std::vector<double> residual(width, 0.0);

  for (std::int64_t updates = 0;; ++updates) {
    const ChowVector current = oracle.estimate(result.hypothesis);
    if (current.n != alpha.n || current.d != alpha.d) {
      throw ShapeError("reconstruct: oracle returned mismatched (n, d)");
    }
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      residual[i] = alpha.coeffs[i] - current.coeffs[i];
      norm_sq += residual[i] * residual[i];
    }
    const double norm = std::sqrt(norm_sq);
    result.trace.push_back(norm);
    if (norm <= params.stop_radius) {
      result.iterations = updates;
      result.residual = norm;
      return result;
    }
    if (updates >= params.max_iters) {
      throw NonConvergenceError(
          "reconstruct: residual " + format_coefficient(norm) +
              " still above stop radius " +
              format_coefficient(params.stop_radius) + " after " +
              std::to_string(updates) + " updates",
          result.trace);
    }
    for (std::size_t i = 0; i < width; ++i) {
      // Nearest integer, ties to even (default FP rounding mode), so the
      // update carries no direction bias.
      result.hypothesis.weights[i] +=
          static_cast<std::int64_t>(std::nearbyint(residual[i] / params.xi));
    }
  }
}

PtfExtraction extract_ptf(const PbfHypothesis& h) {
  const SubsetIndexer indexer(h.n, h.d);
  if (h.weights.size() != indexer.size()) {
    throw ShapeError("extract_ptf: weight vector length mismatch");
  }
  PtfExtraction out{MultilinearPoly(h.n, h.d), 0};
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t mask) {
    const std::int64_t w = h.weights[i++];
    if (w != 0) out.poly.set_coeff(mask, static_cast<double>(w));
    out.certificate += w * w;
  });
  return out;
}

LearnReport reconstruct_and_learn(const ChowVector& alpha,
                                  const ReconstructParams& params,
                                  const ChowOracle& oracle,
                                  const TruthTable* reference) {
  ReconstructResult recon = reconstruct(alpha, params, oracle);
  PtfExtraction extraction = extract_ptf(recon.hypothesis);
  LearnReport report{std::move(recon), std::move(extraction)};
  if (reference != nullptr) {
    if (reference->n() != alpha.n) {
      throw ShapeError("reconstruct_and_learn: reference dimension mismatch");
    }
    report.has_reference = true;
    const TruthTable thresholded = materialize_sign(report.extraction.poly);
    const BoundedTable bounded = materialize(report.recon.hypothesis);
    report.dist_sign = dist(*reference, thresholded);
    report.dist_pbf = dist(*reference, bounded);
    report.factor2_ok = report.dist_sign <= 2.0 * report.dist_pbf + 1e-12;
  }
  return report;
}

}  // namespace ptf
