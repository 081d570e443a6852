// Acceptance harness. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
//
//   acceptance <path-to-specnet-cli> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specnet/specnet.hpp"

using namespace specnet;
using nlohmann::json;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail, double seconds) {
  std::printf("criterion %2d %-36s %s  %s  (%.1fs)\n", id, name.c_str(), ok ? "PASS" : "FAIL", detail.c_str(),
              seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<double> values_of(const std::vector<ResultRow>& rows, const std::string& metric) {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.metric == metric) out.push_back(r.value);
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Criteria 1 and 2 share the same grid.
void improvement_grid() {
  Timer t;
  const std::vector<int> ns{5, 10};
  const std::vector<double> sigmas{1, 2, 5, 10};
  std::vector<std::vector<double>> means(ns.size());
  bool all_nonneg = true;
  double at_10_5 = 0;
  std::ostringstream cells;
  for (std::size_t a = 0; a < ns.size(); ++a) {
    for (double s2 : sigmas) {
      const auto c = parse_experiment_config(json{{"experiment", "improvement"},
                                                  {"n", 200},
                                                  {"N", ns[a]},
                                                  {"outlier_variance", s2},
                                                  {"replications", 50},
                                                  {"seed", 1000 + 10 * ns[a] + static_cast<int>(s2)},
                                                  {"norms", {"frobenius"}}});
      const double m = mean(values_of(run_experiment(c), "improvement_frobenius"));
      means[a].push_back(m);
      all_nonneg = all_nonneg && m >= -0.01;
      if (ns[a] == 5 && s2 == 10) at_10_5 = m;
      cells << " N" << ns[a] << "/s" << s2 << "=" << fmt("%.4f", m);
    }
  }
  const double t12 = t.seconds();
  report(1, "relative improvement sign", all_nonneg && at_10_5 > 0.05,
         "min cell >= -0.01, s=10 N=5 " + fmt("%.4f", at_10_5) + " > 0.05;" + cells.str(), t12);

  bool monotone = true;
  std::ostringstream detail;
  for (std::size_t a = 0; a < ns.size(); ++a) {
    int inversions = 0;
    double worst = 0;
    for (std::size_t i = 1; i < means[a].size(); ++i) {
      const double drop = means[a][i - 1] - means[a][i];
      if (drop > 0) {
        ++inversions;
        worst = std::max(worst, drop);
      }
    }
    monotone = monotone && (inversions == 0 || (inversions == 1 && worst <= 0.01));
    detail << " N" << ns[a] << ": " << inversions << " inversion(s), max drop " << fmt("%.4f", worst) << ";";
  }
  report(2, "improvement monotone in outlier var", monotone, detail.str(), 0.0);
}

void exact_recovery() {
  Timer t;
  const auto c = parse_experiment_config(json{{"experiment", "recovery"},
                                              {"n", 600},
                                              {"N", 4},
                                              {"d", 2},
                                              {"K", 2},
                                              {"noise", {"gaussian:0.25", "gaussian:0.25", "gaussian:0.25", "gaussian:0.25"}},
                                              {"community_centers", {{0.8, 0.1}, {0.1, 0.8}}},
                                              {"replications", 40},
                                              {"seed", 3}});
  const auto d = values_of(run_experiment(c), "discrepancy");
  const auto exact = std::count(d.begin(), d.end(), 0.0);
  const double frac = static_cast<double>(exact) / static_cast<double>(d.size());
  report(3, "exact recovery", frac >= 0.95,
         std::to_string(exact) + "/" + std::to_string(d.size()) + " exact, need >= 95%", t.seconds());
}

void weight_consistency() {
  Timer t;
  auto run = [](Index n) {
    return run_experiment(parse_experiment_config(json{{"experiment", "weight-consistency"},
                                                       {"n", n},
                                                       {"N", 4},
                                                       {"noise", {"gaussian:4", "gaussian:1", "gaussian:1", "gaussian:1"}},
                                                       {"replications", 30},
                                                       {"seed", 4}}));
  };
  const auto small = run(200);
  const auto large = run(400);
  const double m200 = median(values_of(small, "max_weight_error"));
  const double m400 = median(values_of(large, "max_weight_error"));
  const auto ratios = values_of(large, "error_ratio_two_inf");
  const auto in_band = std::count_if(ratios.begin(), ratios.end(), [](double r) { return r >= 0.8 && r <= 1.25; });
  const double frac = static_cast<double>(in_band) / static_cast<double>(ratios.size());
  const bool ok = m400 <= 0.6 * m200 && frac >= 0.8;
  report(4, "weight estimation consistency", ok,
         "median err n=200 " + fmt("%.3g", m200) + ", n=400 " + fmt("%.3g", m400) + " (ratio " +
             fmt("%.3f", m400 / m200) + " <= 0.6); ratio band " + std::to_string(in_band) + "/" +
             std::to_string(ratios.size()) + " >= 80%",
         t.seconds());
}

void concentration_bound() {
  Timer t;
  const Index n = 50;
  const std::vector<NoiseSpec> specs{NoiseSpec::gaussian(1), NoiseSpec::laplace(2), NoiseSpec::gaussian(0.5)};
  std::vector<SubGamma> params;
  for (const auto& s : specs) params.push_back(s.subgamma());
  const WeightVector weightings[2] = {oracle_weights(specs), uniform_weights(specs.size())};
  int held = 0;
  const int trials = 500;
  double worst = 0;
  Matrix cov(3, 3);
  cov << 3, 2, 1, 2, 3, 2, 1, 2, 3;
  for (int trial = 0; trial < trials; ++trial) {
    RngStream rng(5, static_cast<std::uint64_t>(trial));
    const LatentModel model = generate_latent_gaussian(n, Vector::Ones(3), cov, rng);
    const NetworkCollection nets = generate_collection(model, specs, rng);
    bool ok = true;
    for (const auto& w : weightings) {
      const double err = spectral_norm(weighted_mean(nets, w).dense() - model.expectation.dense());
      const double bound = spectral_error_bound(eta_squared(w, params, n), n);
      worst = std::max(worst, err / bound);
      ok = ok && err <= bound;
    }
    held += ok;
  }
  report(5, "concentration bound validity", held == trials,
         std::to_string(held) + "/" + std::to_string(trials) + " trials within bound, worst error/bound " +
             fmt("%.3f", worst),
         t.seconds());
}

void estimator_identities() {
  Timer t;
  bool exact = true;
  double worst = 0;
  for (int input = 0; input < 100; ++input) {
    RngStream rng(6, static_cast<std::uint64_t>(input));
    std::mt19937_64 gen(600 + input);
    const Index n = std::uniform_int_distribution<Index>(10, 60)(gen);
    const int d = std::uniform_int_distribution<int>(1, 3)(gen);
    const int count = std::uniform_int_distribution<int>(1, 6)(gen);
    std::vector<NoiseSpec> specs;
    for (int s = 0; s < count; ++s) {
      const double v = std::uniform_real_distribution<double>(0.1, 8)(gen);
      specs.push_back(s % 2 ? NoiseSpec::laplace(v) : NoiseSpec::gaussian(v));
    }
    const LatentModel model =
        generate_latent_gaussian(n, Vector::Ones(d), Matrix::Identity(d, d), rng);
    const NetworkCollection nets = generate_collection(model, specs, rng);
    for (const auto& a : nets.networks) exact = exact && estimate_rho_subgamma(a, d) == estimate_rho_gaussian(a, d) / 32;
    const auto wg = weights_from_rho(estimate_rho(nets, d, RhoVariant::gaussian));
    const auto ws = weights_from_rho(estimate_rho(nets, d, RhoVariant::subgamma));
    for (std::size_t s = 0; s < wg.size(); ++s) worst = std::max(worst, std::abs(wg[s] - ws[s]));
  }
  report(6, "estimator identities", exact && worst <= 1e-12,
         std::string("subgamma == gaussian/32 ") + (exact ? "bitwise" : "NOT exact") + ", max weight diff " +
             fmt("%.2g", worst),
         t.seconds());
}

void oracle_equivalences() {
  Timer t;
  std::mt19937_64 gen(7);
  int hung = 0, disc = 0, bh = 0, eig = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const int k = std::uniform_int_distribution<int>(1, 7)(gen);
    Matrix cost = oracle::random_matrix(gen, k, k, 10.0);
    if (rep % 4 == 0) cost = cost.array().round();
    hung += std::abs(hungarian(cost).cost - oracle::brute_force_assignment(cost)) <= 1e-9;
  }
  for (int rep = 0; rep < 500; ++rep) {
    const int k = std::uniform_int_distribution<int>(1, 5)(gen);
    const int n = std::uniform_int_distribution<int>(1, 40)(gen);
    std::uniform_int_distribution<int> lab(1, k);
    std::vector<int> c(n), cp(n);
    for (int i = 0; i < n; ++i) {
      c[i] = lab(gen);
      cp[i] = lab(gen);
    }
    disc += std::abs(discrepancy(c, cp, k) - oracle::brute_force_discrepancy(c, cp, k)) <= 1e-15;
  }
  for (int rep = 0; rep < 1000; ++rep) {
    const int m = std::uniform_int_distribution<int>(1, 20)(gen);
    std::vector<double> p(m);
    for (double& v : p) v = std::pow(std::uniform_real_distribution<double>(0, 1)(gen), 3);
    const double alpha = std::uniform_real_distribution<double>(0.001, 0.5)(gen);
    bh += bh_adjust(p, alpha) == oracle::step_up_by_definition(p, alpha);
  }
  for (int rep = 0; rep < 200; ++rep) {
    const Index n = std::uniform_int_distribution<Index>(1, 20)(gen);
    const int d = std::uniform_int_distribution<int>(1, static_cast<int>(n))(gen);
    const Matrix a = oracle::random_symmetric(gen, n);
    const auto got = sym_eigen_topd(SymmetricMatrix::from_dense(a), d);
    const auto ref = oracle::jacobi_eigen(a);
    bool ok = true;
    for (int j = 0; j < d; ++j) {
      Vector v = ref.vectors.col(j);
      if (v.dot(got.vectors.col(j)) < 0) v = -v;
      ok = ok && std::abs(got.values(j) - ref.values(j)) <= 1e-7 &&
           (v - got.vectors.col(j)).cwiseAbs().maxCoeff() <= 1e-7;
    }
    eig += ok;
  }
  const bool ok = hung == 500 && disc == 500 && bh == 1000 && eig == 200;
  report(7, "oracle equivalences", ok,
         "hungarian " + std::to_string(hung) + "/500, discrepancy " + std::to_string(disc) + "/500, BH " +
             std::to_string(bh) + "/1000, eigensolver " + std::to_string(eig) + "/200",
         t.seconds());
}

void rho_consistency() {
  Timer t;
  int rho_ok = 0, tau_ok = 0;
  const int reps = 50;
  const double tau = tau_from_variance(4.0);
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(8, static_cast<std::uint64_t>(rep));
    const LatentModel model = generate_latent_gaussian(200, Vector::Ones(2), Matrix::Identity(2, 2), rng);
    const std::vector<NoiseSpec> specs{NoiseSpec::gaussian(4)};
    const NetworkCollection nets = generate_collection(model, specs, rng);
    rho_ok += std::abs(estimate_rho_gaussian(nets.networks[0], 2) - 4.0) / 4.0 <= 0.1;
    tau_ok += std::abs(estimate_rho_subgamma(nets.networks[0], 2) - tau) / tau <= 0.1;
  }
  report(8, "rho-hat consistency", rho_ok >= 0.9 * reps && tau_ok >= 0.9 * reps,
         "gaussian within 10% in " + std::to_string(rho_ok) + "/50, tau within 10% of " + fmt("%.3f", tau) +
             " in " + std::to_string(tau_ok) + "/50",
         t.seconds());
}

void celltest_null() {
  Timer t;
  const auto c = parse_experiment_config(json{{"experiment", "celltest-null"},
                                              {"n", 60},
                                              {"N", 3},
                                              {"K", 4},
                                              {"d", 3},
                                              {"alpha", 0.05},
                                              {"replications", 500},
                                              {"seed", 9}});
  const auto rows = run_experiment(c);
  const auto rejected = values_of(rows, "rejections_bh");
  const auto tested = values_of(rows, "tested_cells");
  const auto subset = values_of(rows, "by_subset_of_bh");
  double r = 0, m = 0;
  for (std::size_t i = 0; i < rejected.size(); ++i) {
    r += rejected[i];
    m += tested[i];
  }
  const double prop = m > 0 ? r / m : 0.0;
  const bool all_subset = std::all_of(subset.begin(), subset.end(), [](double v) { return v == 1.0; });
  report(9, "celltest null behaviour", prop <= 0.08 && all_subset,
         "BH rejection proportion " + fmt("%.4f", prop) + " <= 0.08 over " + std::to_string(rejected.size()) +
             " reps; BY subset of BH " + (all_subset ? "in every rep" : "VIOLATED"),
         t.seconds());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void cli_determinism(const std::string& cli, const std::filesystem::path& dir) {
  Timer t;
  std::filesystem::create_directories(dir);
  const std::vector<json> configs{
      json{{"experiment", "improvement"}, {"n", 40}, {"replications", 4}, {"outlier_variance", 5},
           {"norms", {"frobenius", "spectral", "two_inf"}}},
      json{{"experiment", "recovery"}, {"n", 60}, {"N", 3}, {"d", 2}, {"K", 2}, {"replications", 4}},
      json{{"experiment", "weight-consistency"}, {"n", 40}, {"N", 3}, {"replications", 4}},
      json{{"experiment", "celltest-null"}, {"n", 40}, {"N", 2}, {"K", 3}, {"replications", 4}}};
  int same = 0;
  std::string failed;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto cfg = dir / ("config" + std::to_string(i) + ".json");
    std::ofstream(cfg) << configs[i].dump(2) << '\n';
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const auto out = dir / ("run" + std::to_string(i) + "_" + std::to_string(run) + ".csv");
      // Different worker counts on the two runs.
      const std::string cmd = "SPECNET_THREADS=" + std::string(run ? "3" : "1") + " \"" + cli +
                              "\" experiment --config \"" + cfg.string() + "\" --out \"" + out.string() + "\"";
      if (std::system(cmd.c_str()) != 0) {
        outputs[run] = "<exit failure>" + std::to_string(run);
      } else {
        outputs[run] = slurp(out);
      }
    }
    if (outputs[0] == outputs[1] && !outputs[0].empty()) {
      ++same;
    } else {
      failed += " " + configs[i]["experiment"].get<std::string>();
    }
  }
  report(10, "CLI determinism", same == static_cast<int>(configs.size()),
         std::to_string(same) + "/" + std::to_string(configs.size()) + " experiments byte-identical" +
             (failed.empty() ? "" : "; differ:" + failed),
         t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <specnet-cli> <scratch-dir>\n");
    return 2;
  }
  improvement_grid();
  exact_recovery();
  weight_consistency();
  concentration_bound();
  estimator_identities();
  oracle_equivalences();
  rho_consistency();
  celltest_null();
  cli_determinism(argv[1], argv[2]);
  std::printf("%s: %d criterion/criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
