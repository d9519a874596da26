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
//
// Command-line front end: spectra, reconstruction, learning simulations,
// the corruption harness, and the brute-force verification suites. All
// randomness flows from the --seed flag; identical invocations produce
// byte-identical output. Exit codes: 0 success, 1 operational error,
// 2 verification failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptf/poly.hpp"
#include "ptf/reconstruct.hpp"
#include "ptf/rng.hpp"
#include "ptf/sampling.hpp"
#include "ptf/structure_lab.hpp"
#include "ptf/tables.hpp"
#include "ptf/wht.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOperational = 1;
constexpr int kExitVerifyFailed = 2;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ptf::ParseError("cannot open output file: " + path);
  out << text;
}

// Targets: *.json holds a polynomial (thresholded), anything else a table.
ptf::Target load_target(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    return ptf::Target::ptf(ptf::MultilinearPoly::load_file(path));
  }
  return ptf::Target::table(ptf::TruthTable::load_file(path));
}

nlohmann::json learn_report_json(const ptf::LearnReport& report) {
  nlohmann::json j;
  j["lambda"] = report.recon.hypothesis.lambda;
  j["H"] = report.recon.hypothesis.weights;
  j["iterations"] = report.recon.iterations;
  j["residual_l2"] = report.recon.residual;
  j["certificate_sum_sq"] = report.extraction.certificate;
  if (report.has_reference) {
    j["dist_exact"] = report.dist_sign;
    j["dist_pbf"] = report.dist_pbf;
    j["factor2_ok"] = report.factor2_ok;
  }
  return j;
}

// Largest-magnitude nonempty coefficient; what an omniscient adversary
// would attack.
std::uint32_t dominant_subset(const ptf::ChowVector& exact) {
  const ptf::SubsetIndexer indexer(exact.n, exact.d);
  std::uint32_t best_mask = 0;
  double best = -1.0;
  std::size_t i = 0;
  indexer.for_each([&](std::uint32_t mask) {
    const double mag = std::abs(exact.coeffs[i++]);
    if (mask != 0 && mag > best) {
      best = mag;
      best_mask = mask;
    }
  });
  return best_mask;
}

std::uint32_t parse_subset(const std::string& text, int n) {
  std::uint32_t mask = 0;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const int var = std::stoi(tok);
    if (var < 1 || var > n) {
      throw ptf::ParamError("--coord: variable " + std::to_string(var) +
                            " outside [1, n]");
    }
    mask |= 1u << (var - 1);
  }
  return mask;
}

int cmd_spectrum(const std::string& input, int d_flag,
                 const std::string& output) {
  const ptf::TruthTable table = ptf::TruthTable::load_file(input);
  const int d = d_flag < 0 ? table.n() : d_flag;
  const ptf::ChowVector chow = ptf::chow_vector(table, d);
  nlohmann::json config;
  config["command"] = "spectrum";
  config["input"] = input;
  config["n"] = table.n();
  config["d"] = d;
  std::ostringstream out;
  ptf::write_chow_csv(out, chow, "config " + config.dump());
  write_text(output, out.str());
  return kExitOk;
}

int cmd_reconstruct(const std::string& alpha_path, double xi,
                    const std::string& oracle_mode, double oracle_delta,
                    std::uint64_t seed, bool seed_given,
                    const std::string& reference_path,
                    const std::string& output) {
  const ptf::ChowVector alpha = ptf::read_chow_csv_file(alpha_path);
  const ptf::ReconstructParams params = ptf::ReconstructParams::defaults(xi);
  ptf::ChowOracle oracle;
  if (oracle_mode == "exact") {
    oracle = ptf::exact_chow_oracle(alpha.n, alpha.d);
  } else if (oracle_mode == "sampled") {
    if (!seed_given) {
      throw ptf::ParamError("--seed is required with --oracle sampled");
    }
    oracle = ptf::sampled_chow_oracle(alpha.n, alpha.d, xi, oracle_delta,
                                      seed);
  } else {
    throw ptf::ParamError("--oracle must be exact or sampled");
  }
  ptf::TruthTable reference(1);
  const ptf::TruthTable* ref = nullptr;
  if (!reference_path.empty()) {
    reference = ptf::TruthTable::load_file(reference_path);
    ref = &reference;
  }
  const ptf::LearnReport report =
      ptf::reconstruct_and_learn(alpha, params, oracle, ref);
  nlohmann::json j = learn_report_json(report);
  j["config"] = {{"command", "reconstruct"}, {"alpha", alpha_path},
                 {"xi", xi},                 {"oracle", oracle_mode},
                 {"n", alpha.n},             {"d", alpha.d}};
  if (oracle_mode == "sampled") {
    j["config"]["seed"] = seed;
    j["config"]["oracle_delta"] = oracle_delta;
  }
  if (ref != nullptr) j["config"]["reference"] = reference_path;
  write_text(output, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_learn_rfa(const std::string& target_path, int d, double eps,
                  double delta, double xi_flag, std::uint64_t seed,
                  const std::string& output) {
  const ptf::Target target = load_target(target_path);
  const int n = target.n();
  ptf::Rng rng(seed);
  const ptf::RfaEstimate est =
      ptf::estimate_chow_rfa(target, n, d, eps, delta, rng);
  const double xi = xi_flag > 0.0 ? xi_flag : eps / 2.0;
  const ptf::LearnReport report = ptf::reconstruct_and_learn(
      est.chow, ptf::ReconstructParams::defaults(xi),
      ptf::exact_chow_oracle(n, d), &target.truth_table());

  const ptf::ChowVector exact = ptf::chow_vector(target.truth_table(), d);
  nlohmann::json j = learn_report_json(report);
  j["sample_count"] = est.total_samples;
  j["per_subset_samples"] = est.per_subset.front();
  j["exact_fallbacks"] = est.exact_fallbacks;
  j["chow_l2_error"] = ptf::chow_distance(est.chow, exact);
  j["config"] = {{"command", "learn-rfa"}, {"target", target_path},
                 {"n", n},                 {"d", d},
                 {"eps", eps},             {"delta", delta},
                 {"xi", xi},               {"seed", seed}};
  write_text(output, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_learn_nasty(const std::string& target_path, int d, double eps_corrupt,
                    const std::string& adversary, std::size_t m,
                    double xi_flag, std::uint64_t seed, bool no_trim,
                    const std::string& coord_flag,
                    const std::string& output) {
  const ptf::Target target = load_target(target_path);
  const int n = target.n();
  const ptf::Adversary adv = ptf::adversary_from_id(adversary);
  const ptf::ChowVector exact = ptf::chow_vector(target.truth_table(), d);
  const std::uint32_t coord = coord_flag.empty() ? dominant_subset(exact)
                                                 : parse_subset(coord_flag, n);
  if (ptf::SubsetIndexer::popcount(coord) > d) {
    throw ptf::ParamError("--coord names a subset larger than d");
  }
  ptf::Rng rng(seed);
  ptf::Rng clean_rng = rng.fork(1);
  ptf::Rng adversary_rng = rng.fork(2);
  const auto clean = ptf::draw_clean(target, m, clean_rng);
  const auto corrupted =
      ptf::nasty_corrupt(clean, eps_corrupt, adv, target, coord,
                         adversary_rng);

  const ptf::ChowVector plain =
      ptf::estimate_chow_full(corrupted.examples, n, d);
  const ptf::ChowVector trimmed =
      ptf::robust_estimate_chow(corrupted, d, eps_corrupt);
  const ptf::ChowVector clean_est = ptf::estimate_chow_full(clean, n, d);

  const ptf::SubsetIndexer indexer(n, d);
  const std::size_t coord_index = indexer.index_of(coord);
  double trimmed_max_dev = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    trimmed_max_dev = std::max(trimmed_max_dev,
                               std::abs(trimmed.coeffs[i] - exact.coeffs[i]));
  }

  const double xi = xi_flag > 0.0 ? xi_flag : 0.05;
  const ptf::ChowVector& pipeline_alpha = no_trim ? plain : trimmed;
  const ptf::LearnReport report = ptf::reconstruct_and_learn(
      pipeline_alpha, ptf::ReconstructParams::defaults(xi),
      ptf::exact_chow_oracle(n, d), &target.truth_table());

  nlohmann::json j = learn_report_json(report);
  j["estimator"] = no_trim ? "plain" : "trimmed";
  j["target_coord"] = ptf::SubsetIndexer::members(coord);
  j["bias_direction"] = corrupted.bias_direction;
  j["corrupted_count"] = corrupted.corrupted_count;
  j["coord_exact"] = exact.coeffs[coord_index];
  j["coord_clean_estimate"] = clean_est.coeffs[coord_index];
  j["coord_plain"] = plain.coeffs[coord_index];
  j["coord_trimmed"] = trimmed.coeffs[coord_index];
  j["coord_dev_plain"] = std::abs(plain.coeffs[coord_index] -
                                  exact.coeffs[coord_index]);
  j["coord_dev_trimmed"] = std::abs(trimmed.coeffs[coord_index] -
                                    exact.coeffs[coord_index]);
  j["chow_err_plain"] = ptf::chow_distance(plain, exact);
  j["chow_err_trimmed"] = ptf::chow_distance(trimmed, exact);
  j["trimmed_max_coord_dev"] = trimmed_max_dev;
  j["config"] = {{"command", "learn-nasty"},
                 {"target", target_path},
                 {"n", n},
                 {"d", d},
                 {"eps_corrupt", eps_corrupt},
                 {"adversary", adversary},
                 {"m", m},
                 {"xi", xi},
                 {"seed", seed},
                 {"no_trim", no_trim}};
  write_text(output, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_experiment(const std::string& kind, int n, int d, int trials,
                   const std::string& strategy, double eps,
                   std::uint64_t seed, int jobs, const std::string& t_list,
                   const std::string& tau_list, const std::string& output) {
  nlohmann::json config;
  config["command"] = "experiment";
  config["kind"] = kind;
  config["n"] = n;
  config["trials"] = trials;
  config["seed"] = seed;
  std::ostringstream out;
  if (kind == "robustness") {
    config["d"] = d;
    config["strategy"] = strategy;
    config["eps"] = eps;
    config["jobs"] = jobs;
    const auto records = ptf::robustness_experiment(
        n, d, trials, ptf::flip_strategy_from_id(strategy), eps, seed, jobs);
    ptf::write_experiment_csv(out, records, "config " + config.dump());
  } else if (kind == "rounding") {
    out << "# config " << config.dump() << "\n";
    out << "trial,seed,n,dist_fg,dist_fg0,abs_gap,zero_round_mean\n";
    for (int t = 0; t < trials; ++t) {
      ptf::Rng rng = ptf::Rng(seed).fork(static_cast<std::uint64_t>(t));
      ptf::TruthTable f(n);
      ptf::BoundedTable g(n);
      for (std::size_t q = 0; q < f.size(); ++q) {
        const auto point = static_cast<std::uint32_t>(q);
        if (rng.next_sign() < 0) f.flip(point);
        g.set(point, 2.0 * rng.next_unit() - 1.0);
      }
      const ptf::TruthTable g0 = ptf::random_round(g, rng);
      const double dist_fg = ptf::dist(f, g);
      const double dist_fg0 = ptf::dist(f, g0);
      const ptf::TruthTable zero_round =
          ptf::random_round(ptf::BoundedTable(n), rng);
      double mean = 0.0;
      for (std::size_t q = 0; q < zero_round.size(); ++q) {
        mean += zero_round.get(static_cast<std::uint32_t>(q));
      }
      mean /= static_cast<double>(zero_round.size());
      out << t << "," << rng.seed() << "," << n << ","
          << ptf::format_coefficient(dist_fg) << ","
          << ptf::format_coefficient(dist_fg0) << ","
          << ptf::format_coefficient(std::abs(dist_fg0 - dist_fg)) << ","
          << ptf::format_coefficient(mean) << "\n";
    }
  } else if (kind == "tails") {
    config["d"] = d;
    auto parse_list = [](const std::string& text) {
      std::vector<double> vals;
      std::istringstream in(text);
      std::string tok;
      while (std::getline(in, tok, ',')) vals.push_back(std::stod(tok));
      return vals;
    };
    const auto ts = parse_list(t_list);
    const auto taus = parse_list(tau_list);
    config["t"] = ts;
    config["tau"] = taus;
    out << "# config " << config.dump() << "\n";
    out << "trial,seed,n,d,kind,threshold,probability\n";
    for (int t = 0; t < trials; ++t) {
      ptf::Rng rng = ptf::Rng(seed).fork(static_cast<std::uint64_t>(t));
      const ptf::MultilinearPoly p = ptf::random_poly(n, d, rng);
      const ptf::TailScan scan = ptf::tail_scan(p, ts, taus);
      for (const auto& [threshold, prob] : scan.tail) {
        out << t << "," << rng.seed() << "," << n << "," << d << ",t,"
            << ptf::format_coefficient(threshold) << ","
            << ptf::format_coefficient(prob) << "\n";
      }
      for (const auto& [threshold, prob] : scan.anti_tail) {
        out << t << "," << rng.seed() << "," << n << "," << d << ",tau,"
            << ptf::format_coefficient(threshold) << ","
            << ptf::format_coefficient(prob) << "\n";
      }
    }
  } else {
    throw ptf::ParamError("--kind must be robustness, rounding or tails");
  }
  write_text(output, out.str());
  return kExitOk;
}

int cmd_verify(const std::string& suite, int n, int d, int trials,
               double gamma, int dim, int max_span, std::uint64_t seed,
               const std::string& output) {
  nlohmann::json report;
  nlohmann::json counterexamples = nlohmann::json::array();
  report["config"] = {{"command", "verify"}, {"suite", suite},
                      {"trials", trials},    {"seed", seed}};
  bool ok = true;
  if (suite == "chow-uniqueness") {
    const ptf::UniquenessReport rep = ptf::chow_uniqueness_bruteforce(n);
    report["config"]["n"] = n;
    report["functions_scanned"] = rep.functions_scanned;
    report["threshold_functions"] = rep.ltf_count;
    report["collisions"] = rep.ltf_collisions;
    for (const auto& c : rep.examples) {
      counterexamples.push_back(
          {{"ltf_table", c.ltf_table}, {"other_table", c.other_table}});
    }
    ok = rep.ok;
  } else if (suite == "diophantine") {
    ptf::Rng rng(seed);
    const auto m = static_cast<std::int64_t>(std::ceil(1.0 / gamma));
    std::int64_t bound = 1;
    for (int i = 0; i < dim; ++i) bound *= m;
    bound += 1;
    report["config"]["gamma"] = gamma;
    report["config"]["dim"] = dim;
    report["bound"] = bound;
    std::int64_t max_t = 0;
    for (int t = 0; t < trials; ++t) {
      std::vector<double> w(static_cast<std::size_t>(dim));
      for (double& v : w) v = rng.next_unit();
      const std::int64_t mult = ptf::diophantine_t(w, gamma);
      max_t = std::max(max_t, mult);
      bool member = true;
      for (const double v : w) {
        const double y = static_cast<double>(mult) * v;
        if (!(std::abs(y - std::nearbyint(y)) < gamma)) member = false;
      }
      if (!member || mult > bound) {
        counterexamples.push_back({{"trial", t}, {"t", mult}, {"w", w}});
        ok = false;
      }
    }
    report["max_t"] = max_t;
  } else if (suite == "affine") {
    ptf::Rng rng(seed);
    report["config"]["n"] = n;
    report["config"]["max_span"] = max_span;
    int nontrivial = 0;
    for (int t = 0; t < trials; ++t) {
      ptf::Rng trial_rng = rng.fork(static_cast<std::uint64_t>(t));
      const auto span = ptf::random_linear_span(n, max_span, trial_rng);
      const ptf::AffineMassReport rep = ptf::affine_zero_mass(span, n);
      if (rep.zero_count > 0) ++nontrivial;
      // Exact integer comparison: mass <= 2^-dim.
      if ((rep.zero_count << rep.dim) > (std::uint64_t{1} << n)) {
        counterexamples.push_back({{"trial", t},
                                   {"dim", rep.dim},
                                   {"zero_count", rep.zero_count}});
        ok = false;
      }
    }
    report["nonempty_zero_sets"] = nontrivial;
  } else if (suite == "small-p") {
    ptf::Rng rng(seed);
    const double delta = 0.3;
    const double eta = 0.6;
    report["config"]["n"] = n;
    report["config"]["d"] = d;
    report["config"]["delta"] = delta;
    report["config"]["eta"] = eta;
    int met = 0;
    for (int t = 0; t < trials; ++t) {
      ptf::Rng trial_rng = rng.fork(static_cast<std::uint64_t>(t));
      const ptf::MultilinearPoly p = ptf::random_poly(n, d, trial_rng);
      const auto values = ptf::point_values(p);
      ptf::TruthTable f(n);
      for (std::size_t q = 0; q < values.size(); ++q) {
        if (ptf::sign_of(values[q]) < 0) {
          f.flip(static_cast<std::uint32_t>(q));
        }
      }
      // Flip the 2% of points with smallest margin.
      std::vector<std::uint32_t> order(values.size());
      for (std::size_t q = 0; q < order.size(); ++q) {
        order[q] = static_cast<std::uint32_t>(q);
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::uint32_t a, std::uint32_t b) {
                         return std::abs(values[a]) < std::abs(values[b]);
                       });
      ptf::TruthTable g = f;
      const auto flips =
          static_cast<std::size_t>(0.02 * static_cast<double>(g.size()));
      for (std::size_t q = 0; q < flips; ++q) g.flip(order[q]);
      const ptf::SmallPMassReport rep = ptf::small_p_mass(p, g, delta, eta);
      if (rep.precondition_met) ++met;
      if (!rep.claim_holds) {
        counterexamples.push_back({{"trial", t},
                                   {"chow_dist", rep.chow_dist},
                                   {"pr_dprime", rep.pr_dprime}});
        ok = false;
      }
    }
    report["precondition_met"] = met;
  } else {
    throw ptf::ParamError(
        "--suite must be chow-uniqueness, diophantine, affine or small-p");
  }
  report["counterexamples"] = counterexamples;
  report["pass"] = ok;
  write_text(output, report.dump(2) + "\n");
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_fixtures(const std::string& dir, int corpus_size,
                 std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  fs::create_directories(dir + "/corpus");

  // Majority of three bits.
  ptf::MultilinearPoly maj3_poly(3, 1);
  maj3_poly.set_coeff(0b001, 1.0);
  maj3_poly.set_coeff(0b010, 1.0);
  maj3_poly.set_coeff(0b100, 1.0);
  const ptf::TruthTable maj3 = ptf::materialize_sign(maj3_poly);
  maj3.save_file(dir + "/maj3.table");
  ptf::write_chow_csv_file(dir + "/maj3_d1.chow.csv",
                           ptf::chow_vector(maj3, 1), "fixture maj3 d=1");

  // Dictator x_1 on four variables.
  ptf::MultilinearPoly dict_poly(4, 1);
  dict_poly.set_coeff(0b0001, 1.0);
  const ptf::TruthTable dict = ptf::materialize_sign(dict_poly);
  dict.save_file(dir + "/dictator_x1_n4.table");
  ptf::write_chow_csv_file(dir + "/dictator_x1_n4_d1.chow.csv",
                           ptf::chow_vector(dict, 1),
                           "fixture dictator x1 n=4 d=1");

  // Seeded degree-2 PTF corpus with exact coefficient vectors.
  for (int i = 0; i < corpus_size; ++i) {
    ptf::Rng rng = ptf::Rng(seed).fork(static_cast<std::uint64_t>(i));
    const ptf::MultilinearPoly p = ptf::random_poly(10, 2, rng);
    char name[64];
    std::snprintf(name, sizeof(name), "%s/corpus/ptf_%03d", dir.c_str(), i);
    p.save_file(std::string(name) + ".poly.json");
    const ptf::TruthTable f = ptf::materialize_sign(p);
    f.save_file(std::string(name) + ".table");
    ptf::write_chow_csv_file(std::string(name) + ".chow.csv",
                             ptf::chow_vector(f, 2),
                             "fixture corpus ptf " + std::to_string(i));
  }
  std::cout << "fixtures written to " << dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean-Fourier toolkit: threshold-function spectra, "
               "coefficient-vector reconstruction, restricted-focus and "
               "corrupted learning simulations, brute-force checks"};
  app.require_subcommand(1);

  // spectrum
  std::string sp_input;
  std::string sp_output = "-";
  int sp_d = -1;
  auto* spectrum = app.add_subcommand(
      "spectrum", "Coefficient vector of a truth table (CSV)");
  spectrum->add_option("table", sp_input, "truth table file")->required();
  spectrum->add_option("--d", sp_d, "max subset size (default n)");
  spectrum->add_option("-o,--output", sp_output, "output path or -");

  // reconstruct
  std::string rc_alpha;
  std::string rc_oracle = "exact";
  std::string rc_reference;
  std::string rc_output = "-";
  double rc_xi = 0.0;
  double rc_delta = 0.05;
  std::uint64_t rc_seed = 0;
  auto* reconstruct = app.add_subcommand(
      "reconstruct", "Fit an integer-weight bounded hypothesis to a "
                     "coefficient vector (JSON)");
  reconstruct->add_option("--alpha", rc_alpha, "coefficient CSV")->required();
  reconstruct->add_option("--xi", rc_xi, "accuracy parameter in (0,1)")
      ->required();
  reconstruct->add_option("--oracle", rc_oracle, "exact|sampled");
  reconstruct->add_option("--oracle-delta", rc_delta,
                          "per-call confidence for the sampled oracle");
  auto* rc_seed_opt =
      reconstruct->add_option("--seed", rc_seed, "rng seed (sampled oracle)");
  reconstruct->add_option("--reference", rc_reference,
                          "truth table for exact error reporting");
  reconstruct->add_option("-o,--output", rc_output, "output path or -");

  // learn-rfa
  std::string lr_target;
  std::string lr_output = "-";
  int lr_d = 0;
  double lr_eps = 0.0;
  double lr_delta = 0.0;
  double lr_xi = 0.0;
  std::uint64_t lr_seed = 0;
  auto* learn_rfa = app.add_subcommand(
      "learn-rfa", "Restricted-focus estimation plus reconstruction (JSON)");
  learn_rfa->add_option("--target", lr_target, "table or polynomial json")
      ->required();
  learn_rfa->add_option("--d", lr_d, "degree bound")->required();
  learn_rfa->add_option("--eps", lr_eps, "l2 budget")->required();
  learn_rfa->add_option("--delta", lr_delta, "confidence")->required();
  learn_rfa->add_option("--xi", lr_xi, "reconstruction accuracy "
                                       "(default eps/2)");
  learn_rfa->add_option("--seed", lr_seed, "rng seed")->required();
  learn_rfa->add_option("-o,--output", lr_output, "output path or -");

  // learn-nasty
  std::string ln_target;
  std::string ln_adversary;
  std::string ln_coord;
  std::string ln_output = "-";
  int ln_d = 0;
  double ln_eps = 0.0;
  double ln_xi = 0.0;
  std::size_t ln_m = 0;
  std::uint64_t ln_seed = 0;
  bool ln_no_trim = false;
  auto* learn_nasty = app.add_subcommand(
      "learn-nasty", "Corruption, robust estimation and reconstruction "
                     "(paired-comparison JSON)");
  learn_nasty->add_option("--target", ln_target, "table or polynomial json")
      ->required();
  learn_nasty->add_option("--d", ln_d, "degree bound")->required();
  learn_nasty->add_option("--eps-corrupt", ln_eps, "corruption fraction")
      ->required();
  learn_nasty->add_option("--adversary", ln_adversary, "a|b|c")->required();
  learn_nasty->add_option("--m", ln_m, "sample count")->required();
  learn_nasty->add_option("--xi", ln_xi, "reconstruction accuracy "
                                         "(default 0.05)");
  learn_nasty->add_option("--seed", ln_seed, "rng seed")->required();
  learn_nasty->add_flag("--no-trim", ln_no_trim,
                        "reconstruct from the plain estimate");
  learn_nasty->add_option("--coord", ln_coord,
                          "attacked subset as 1-based members, e.g. 1,3 "
                          "(default: largest exact coefficient)");
  learn_nasty->add_option("-o,--output", ln_output, "output path or -");

  // experiment
  std::string ex_kind;
  std::string ex_strategy = "random_flips";
  std::string ex_t = "1,1.5,2,3";
  std::string ex_tau = "0.01,0.05,0.1";
  std::string ex_output = "-";
  int ex_n = 0;
  int ex_d = 2;
  int ex_trials = 0;
  int ex_jobs = 1;
  double ex_eps = 0.05;
  std::uint64_t ex_seed = 0;
  auto* experiment = app.add_subcommand(
      "experiment", "Landscape experiments emitting deterministic CSV");
  experiment->add_option("--kind", ex_kind, "robustness|rounding|tails")
      ->required();
  experiment->add_option("--n", ex_n, "dimension")->required();
  experiment->add_option("--d", ex_d, "degree (robustness/tails)");
  experiment->add_option("--trials", ex_trials, "trial count")->required();
  experiment->add_option("--strategy", ex_strategy,
                         "random_flips|margin_flips|round_mollified");
  experiment->add_option("--eps", ex_eps, "perturbation rate");
  experiment->add_option("--t", ex_t, "tail thresholds, comma separated");
  experiment->add_option("--tau", ex_tau,
                         "anti-tail thresholds, comma separated");
  experiment->add_option("--jobs", ex_jobs, "worker threads (robustness)");
  experiment->add_option("--seed", ex_seed, "rng seed")->required();
  experiment->add_option("-o,--output", ex_output, "output path or -");

  // verify
  std::string vf_suite;
  std::string vf_output = "-";
  int vf_n = 4;
  int vf_d = 2;
  int vf_trials = 100;
  int vf_dim = 3;
  int vf_span = 8;
  double vf_gamma = 0.1;
  std::uint64_t vf_seed = 0;
  auto* verify = app.add_subcommand(
      "verify", "Brute-force verification suites (exit 2 on failure)");
  verify->add_option("--suite", vf_suite,
                     "chow-uniqueness|diophantine|affine|small-p")
      ->required();
  verify->add_option("--n", vf_n, "dimension");
  verify->add_option("--d", vf_d, "degree (small-p)");
  verify->add_option("--trials", vf_trials, "trial count");
  verify->add_option("--gamma", vf_gamma, "approximation gap (diophantine)");
  verify->add_option("--dim", vf_dim, "vector length (diophantine)");
  verify->add_option("--max-span", vf_span, "max span size (affine)");
  auto* vf_seed_opt = verify->add_option(
      "--seed", vf_seed, "rng seed (required except for chow-uniqueness)");
  verify->add_option("-o,--output", vf_output, "output path or -");

  // fixtures
  std::string fx_dir;
  int fx_corpus = 50;
  std::uint64_t fx_seed = 424242;
  auto* fixtures = app.add_subcommand(
      "fixtures", "Regenerate the bundled fixture files");
  fixtures->add_option("--out", fx_dir, "output directory")->required();
  fixtures->add_option("--corpus-size", fx_corpus, "corpus size");
  fixtures->add_option("--seed", fx_seed, "corpus seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) {
      return cmd_spectrum(sp_input, sp_d, sp_output);
    }
    if (reconstruct->parsed()) {
      return cmd_reconstruct(rc_alpha, rc_xi, rc_oracle, rc_delta, rc_seed,
                             rc_seed_opt->count() > 0, rc_reference,
                             rc_output);
    }
    if (learn_rfa->parsed()) {
      return cmd_learn_rfa(lr_target, lr_d, lr_eps, lr_delta, lr_xi, lr_seed,
                           lr_output);
    }
    if (learn_nasty->parsed()) {
      return cmd_learn_nasty(ln_target, ln_d, ln_eps, ln_adversary, ln_m,
                             ln_xi, ln_seed, ln_no_trim, ln_coord, ln_output);
    }
    if (experiment->parsed()) {
      return cmd_experiment(ex_kind, ex_n, ex_d, ex_trials, ex_strategy,
                            ex_eps, ex_seed, ex_jobs, ex_t, ex_tau,
                            ex_output);
    }
    if (verify->parsed()) {
      if (vf_suite != "chow-uniqueness" && vf_seed_opt->count() == 0) {
        throw ptf::ParamError("--seed is required for randomized suites");
      }
      return cmd_verify(vf_suite, vf_n, vf_d, vf_trials, vf_gamma, vf_dim,
                        vf_span, vf_seed, vf_output);
    }
    if (fixtures->parsed()) {
      return cmd_fixtures(fx_dir, fx_corpus, fx_seed);
    }
  } catch (const ptf::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "residual trace tail:";
    const auto& trace = e.trace();
    const std::size_t start = trace.size() > 8 ? trace.size() - 8 : 0;
    for (std::size_t i = start; i < trace.size(); ++i) {
      std::cerr << " " << ptf::format_coefficient(trace[i]);
    }
    std::cerr << "\n";
    return kExitOperational;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOperational;
  }
  return kExitOperational;
}
