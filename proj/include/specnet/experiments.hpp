#ifndef SPECNET_EXPERIMENTS_HPP
#define SPECNET_EXPERIMENTS_HPP

// Config-driven synthetic experiments. Replication r of every experiment draws
// from RngStream(seed, r), and rows are assembled in replication order, so a
// result table is a pure function of its config regardless of thread count.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "specnet/clustering.hpp"
#include "specnet/diagnostics.hpp"
#include "specnet/error.hpp"
#include "specnet/estimation.hpp"
#include "specnet/io.hpp"
#include "specnet/matrix.hpp"
#include "specnet/noise.hpp"
#include "specnet/parallel.hpp"
#include "specnet/rng.hpp"
#include "specnet/stats.hpp"

namespace specnet {

enum class ExperimentKind { improvement, recovery, weight_consistency, celltest_null };

inline std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::improvement:
      return "improvement";
    case ExperimentKind::recovery:
      return "recovery";
    case ExperimentKind::weight_consistency:
      return "weight-consistency";
    case ExperimentKind::celltest_null:
      return "celltest-null";
  }
  return "?";
}

enum class WeightScheme { uniform, oracle, estimated };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::improvement;
  Index n = 200;
  int networks = 5;
  int d = 3;
  int communities = 2;
  /// Empty: one Laplace(outlier_variance) network followed by N-1 Laplace(1).
  std::vector<NoiseSpec> noise;
  double outlier_variance = 1.0;
  int replications = 50;
  std::uint64_t seed = 0;
  std::vector<NormKind> norms{NormKind::frobenius, NormKind::spectral, NormKind::two_inf};
  std::string output_path;
  /// Latent-position distribution; defaults to mean (1,1,1) with the 3x3
  /// banded covariance when d = 3, else mean ones and identity covariance.
  std::optional<Vector> latent_mean;
  std::optional<Matrix> latent_cov;
  /// Block-model centers (K x d); defaults to rows (0.8, 0.1), (0.1, 0.8) for K = d = 2.
  std::optional<Matrix> community_centers;
  RhoVariant variant = RhoVariant::subgamma;
  int restarts = 20;
  int max_iter = 300;
  double alpha = 0.05;
  WeightScheme weights = WeightScheme::oracle;
  int ell = 2;
  double c_ell = 1.0;
};

struct ResultRow {
  std::string experiment;
  int replication = 0;
  Index n = 0;
  int networks = 0;
  int d = 0;
  int communities = 0;
  double outlier_variance = 0.0;
  std::string metric;
  double value = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// JSON Schema (draft-07) for experiment configs.
inline nlohmann::json experiment_config_schema() {
  using nlohmann::json;
  const json noise = {
      {"oneOf",
       json::array({json{{"type", "string"}, {"pattern", "^(gaussian|laplace|exponential|gamma|bernoulli):"}},
                    json{{"type", "object"},
                         {"required", json::array({"kind"})},
                         {"properties",
                          {{"kind", {{"enum", {"gaussian", "laplace", "exponential", "gamma", "bernoulli"}}}},
                           {"variance", {{"type", "number"}, {"minimum", 0}}},
                           {"rate", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                           {"shape", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                           {"scale", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                           {"q", {{"type", "number"}, {"exclusiveMinimum", 0}, {"exclusiveMaximum", 1}}},
                           {"nu", {{"type", "number"}}},
                           {"b", {{"type", "number"}}}}},
                         {"additionalProperties", false}}})}};
  const json pos_int = {{"type", "integer"}, {"minimum", 1}};
  const json matrix = {{"type", "array"}, {"items", {{"type", "array"}, {"items", {{"type", "number"}}}}}};
  return json{
      {"$schema", "http://json-schema.org/draft-07/schema#"},
      {"title", "specnet experiment config"},
      {"type", "object"},
      {"required", json::array({"experiment"})},
      {"additionalProperties", false},
      {"properties",
       {{"experiment", {{"enum", {"improvement", "recovery", "weight-consistency", "celltest-null"}}}},
        {"n", pos_int},
        {"N", pos_int},
        {"d", pos_int},
        {"K", pos_int},
        {"noise", {{"type", "array"}, {"items", noise}}},
        {"outlier_variance", {{"type", "number"}, {"minimum", 0}}},
        {"replications", pos_int},
        {"seed", {{"type", "integer"}, {"minimum", 0}}},
        {"norms", {{"type", "array"}, {"items", {{"enum", {"frobenius", "spectral", "two_inf"}}}}}},
        {"output_path", {{"type", "string"}}},
        {"latent_mean", {{"type", "array"}, {"items", {{"type", "number"}}}}},
        {"latent_cov", matrix},
        {"community_centers", matrix},
        {"variant", {{"enum", {"gaussian", "subgamma"}}}},
        {"restarts", pos_int},
        {"max_iter", pos_int},
        {"alpha", {{"type", "number"}, {"exclusiveMinimum", 0}, {"exclusiveMaximum", 1}}},
        {"weights", {{"enum", {"uniform", "oracle", "estimated"}}}},
        {"ell", pos_int},
        {"c_ell", {{"type", "number"}}}}}};
}

namespace detail {

inline Matrix json_matrix(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) throw ConfigError("'" + key + "' must be a non-empty array of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols || cols == 0) {
      throw ConfigError("'" + key + "' rows must be equal-length numeric arrays");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[i][c].is_number()) throw ConfigError("'" + key + "' entries must be numbers");
      m(static_cast<Index>(i), static_cast<Index>(c)) = j[i][c].get<double>();
    }
  }
  return m;
}

template <typename T>
T json_get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace detail

/// Parses and validates a config object. Unknown keys are rejected.
inline ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known{
      "experiment", "n",       "N",        "d",       "K",     "noise",   "outlier_variance",
      "replications", "seed",  "norms",    "output_path", "latent_mean", "latent_cov",
      "community_centers", "variant", "restarts", "max_iter", "alpha", "weights", "ell", "c_ell"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig c;
  if (!j.contains("experiment")) throw ConfigError("config needs an 'experiment' key");
  const auto kind = detail::json_get<std::string>(j, "experiment");
  if (kind == "improvement") {
    c.experiment = ExperimentKind::improvement;
  } else if (kind == "recovery") {
    c.experiment = ExperimentKind::recovery;
  } else if (kind == "weight-consistency") {
    c.experiment = ExperimentKind::weight_consistency;
  } else if (kind == "celltest-null") {
    c.experiment = ExperimentKind::celltest_null;
  } else {
    throw ConfigError("unknown experiment '" + kind + "'");
  }

  auto positive = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    const auto v = detail::json_get<long long>(j, key);
    if (v < 1) throw ConfigError(std::string("config key '") + key + "' must be >= 1");
    field = static_cast<std::remove_reference_t<decltype(field)>>(v);
  };
  positive("n", c.n);
  positive("N", c.networks);
  positive("d", c.d);
  positive("K", c.communities);
  positive("replications", c.replications);
  positive("restarts", c.restarts);
  positive("max_iter", c.max_iter);
  positive("ell", c.ell);
  if (j.contains("seed")) c.seed = detail::json_get<std::uint64_t>(j, "seed");
  if (j.contains("outlier_variance")) c.outlier_variance = detail::json_get<double>(j, "outlier_variance");
  if (j.contains("alpha")) c.alpha = detail::json_get<double>(j, "alpha");
  if (j.contains("c_ell")) c.c_ell = detail::json_get<double>(j, "c_ell");
  if (j.contains("output_path")) c.output_path = detail::json_get<std::string>(j, "output_path");
  try {
    if (j.contains("noise")) {
      if (!j.at("noise").is_array()) throw ConfigError("'noise' must be an array");
      for (const auto& e : j.at("noise")) c.noise.push_back(io::noise_from_json(e));
    }
    if (j.contains("norms")) {
      c.norms.clear();
      for (const auto& e : j.at("norms")) c.norms.push_back(parse_norm(e.get<std::string>()));
    }
    if (j.contains("variant")) c.variant = parse_rho_variant(detail::json_get<std::string>(j, "variant"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (j.contains("weights")) {
    const auto w = detail::json_get<std::string>(j, "weights");
    if (w == "uniform") {
      c.weights = WeightScheme::uniform;
    } else if (w == "oracle") {
      c.weights = WeightScheme::oracle;
    } else if (w == "estimated") {
      c.weights = WeightScheme::estimated;
    } else {
      throw ConfigError("unknown weights '" + w + "'");
    }
  }
  if (j.contains("latent_mean")) {
    const auto& m = j.at("latent_mean");
    if (!m.is_array()) throw ConfigError("'latent_mean' must be an array");
    Vector v(static_cast<Index>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) v(static_cast<Index>(i)) = m[i].get<double>();
    c.latent_mean = v;
  }
  if (j.contains("latent_cov")) c.latent_cov = detail::json_matrix(j.at("latent_cov"), "latent_cov");
  if (j.contains("community_centers")) {
    c.community_centers = detail::json_matrix(j.at("community_centers"), "community_centers");
  }

  if (c.d > c.n) throw ConfigError("d must not exceed n");
  if (c.communities > c.n) throw ConfigError("K must not exceed n");
  if (!c.noise.empty() && static_cast<int>(c.noise.size()) != c.networks) {
    throw ConfigError("'noise' lists " + std::to_string(c.noise.size()) + " specs but N = " +
                      std::to_string(c.networks));
  }
  if (!(c.outlier_variance >= 0)) throw ConfigError("outlier_variance must be >= 0");
  if (!(c.alpha > 0 && c.alpha < 1)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(c.c_ell > 1.0 / c.ell)) throw ConfigError("c_ell must exceed 1/ell");
  if (c.norms.empty()) throw ConfigError("'norms' must not be empty");
  if (c.latent_mean && c.latent_mean->size() != c.d) throw ConfigError("latent_mean must have d entries");
  if (c.latent_cov && (c.latent_cov->rows() != c.d || c.latent_cov->cols() != c.d)) {
    throw ConfigError("latent_cov must be d x d");
  }
  if (c.community_centers &&
      (c.community_centers->rows() != c.communities || c.community_centers->cols() != c.d)) {
    throw ConfigError("community_centers must be K x d");
  }
  if (c.experiment == ExperimentKind::recovery && !c.community_centers &&
      !(c.communities == 2 && c.d == 2)) {
    throw ConfigError("recovery experiments need 'community_centers' unless K = d = 2");
  }
  return c;
}

inline std::vector<NoiseSpec> resolved_noise(const ExperimentConfig& c) {
  if (!c.noise.empty()) return c.noise;
  std::vector<NoiseSpec> out;
  out.reserve(static_cast<std::size_t>(c.networks));
  out.push_back(NoiseSpec::laplace(c.outlier_variance));
  for (int s = 1; s < c.networks; ++s) out.push_back(NoiseSpec::laplace(1.0));
  return out;
}

inline Vector latent_mean(const ExperimentConfig& c) {
  if (c.latent_mean) return *c.latent_mean;
  return Vector::Ones(c.d);
}

inline Matrix latent_cov(const ExperimentConfig& c) {
  if (c.latent_cov) return *c.latent_cov;
  if (c.d == 3) {
    Matrix s(3, 3);
    s << 3, 2, 1, 2, 3, 2, 1, 2, 3;
    return s;
  }
  return Matrix::Identity(c.d, c.d);
}

inline CommunityModel community_model(const ExperimentConfig& c) {
  Matrix centers;
  if (c.community_centers) {
    centers = *c.community_centers;
  } else {
    if (!(c.communities == 2 && c.d == 2)) throw ConfigError("community_centers required");
    centers.resize(2, 2);
    centers << 0.8, 0.1, 0.1, 0.8;
  }
  return CommunityModel::make(make_balanced_memberships(c.n, c.communities), centers);
}

namespace detail {

inline ResultRow make_row(const ExperimentConfig& c, int rep, std::string metric, double value) {
  return ResultRow{std::string(to_string(c.experiment)), rep, c.n, c.networks, c.d, c.communities,
                   c.outlier_variance, std::move(metric), value};
}

inline double aligned_two_inf_error(const Matrix& estimate, const Matrix& truth) {
  const Matrix w = procrustes_align(estimate, truth).rotation;
  return two_to_infty_norm(estimate - truth * w);
}

inline std::vector<ResultRow> improvement_replication(const ExperimentConfig& c,
                                                      const std::vector<NoiseSpec>& specs, int rep) {
  RngStream rng(c.seed, static_cast<std::uint64_t>(rep));
  const LatentModel model = generate_latent_gaussian(c.n, latent_mean(c), latent_cov(c), rng);
  const NetworkCollection nets = generate_collection(model, specs, rng);
  const SymmetricMatrix p_bar = rank_d_truncate(weighted_mean(nets, uniform_weights(nets.size())), c.d);
  const WeightVector w_hat = weights_from_rho_allow_zero(estimate_rho(nets, c.d, c.variant));
  const SymmetricMatrix p_tilde = rank_d_truncate(weighted_mean(nets, w_hat), c.d);
  std::vector<ResultRow> rows;
  for (NormKind norm : c.norms) {
    rows.push_back(make_row(c, rep, "improvement_" + std::string(to_string(norm)),
                            relative_improvement(model.expectation, p_bar, p_tilde, norm)));
  }
  return rows;
}

inline std::vector<ResultRow> recovery_replication(const ExperimentConfig& c, const CommunityModel& model,
                                                   const std::vector<NoiseSpec>& specs, int rep) {
  RngStream rng(c.seed, static_cast<std::uint64_t>(rep));
  const NetworkCollection nets = generate_collection(model, specs, rng);
  RngStream cluster_rng = rng.derive(1);
  const RecoveryResult r =
      recover_communities(nets, c.d, c.communities, c.variant, KMeansOptions{c.restarts, c.max_iter}, cluster_rng);
  return {make_row(c, rep, "discrepancy", discrepancy(model.labels, r.clustering.labels, c.communities))};
}

inline std::vector<ResultRow> weight_consistency_replication(const ExperimentConfig& c,
                                                             const std::vector<NoiseSpec>& specs, int rep) {
  RngStream rng(c.seed, static_cast<std::uint64_t>(rep));
  const LatentModel model = generate_latent_gaussian(c.n, latent_mean(c), latent_cov(c), rng);
  const NetworkCollection nets = generate_collection(model, specs, rng);
  const PluginResult plug = plugin_embedding(nets, c.d, c.variant);
  const WeightVector w_star = oracle_weights(specs);
  const Embedding oracle = ase(weighted_mean(nets, w_star), c.d);
  double max_err = 0.0;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    max_err = std::max(max_err, std::abs(plug.weights[s] - w_star[s]));
  }
  const double plug_err = aligned_two_inf_error(plug.embedding.coords, model.positions);
  const double oracle_err = aligned_two_inf_error(oracle.coords, model.positions);
  double ratio = 1.0;
  if (plug_err != oracle_err) {
    if (oracle_err == 0) throw DivisionByZero("weight-consistency: oracle embedding error is zero");
    ratio = plug_err / oracle_err;
  }
  return {make_row(c, rep, "max_weight_error", max_err), make_row(c, rep, "error_ratio_two_inf", ratio)};
}

inline SymmetricMatrix group_estimate(const NetworkCollection& nets, int d, RhoVariant variant) {
  return rank_d_truncate(weighted_mean(nets, weights_from_rho_allow_zero(estimate_rho(nets, d, variant))), d);
}

inline std::vector<ResultRow> celltest_null_replication(const ExperimentConfig& c,
                                                        const std::vector<NoiseSpec>& specs,
                                                        const Parcellation& parc, int rep) {
  RngStream rng(c.seed, static_cast<std::uint64_t>(rep));
  const LatentModel model = generate_latent_gaussian(c.n, latent_mean(c), latent_cov(c), rng);
  const NetworkCollection group_a = generate_collection(model, specs, rng);
  const NetworkCollection group_b = generate_collection(model, specs, rng);
  const SymmetricMatrix p_a = group_estimate(group_a, c.d, c.variant);
  const SymmetricMatrix p_b = group_estimate(group_b, c.d, c.variant);
  const CellTestReport bh = cell_test_report(p_a, p_b, parc, c.alpha, FdrMethod::bh);
  const CellTestReport by = cell_test_report(p_a, p_b, parc, c.alpha, FdrMethod::by);
  double tested = 0.0;
  bool subset = true;
  for (std::size_t i = 0; i < bh.cells.size(); ++i) {
    if (!bh.cells[i].degenerate) tested += 1.0;
    if (by.cells[i].rejected && !bh.cells[i].rejected) subset = false;
  }
  return {make_row(c, rep, "rejections_bh", static_cast<double>(bh.rejections())),
          make_row(c, rep, "rejections_by", static_cast<double>(by.rejections())),
          make_row(c, rep, "tested_cells", tested),
          make_row(c, rep, "by_subset_of_bh", subset ? 1.0 : 0.0)};
}

template <typename Fn>
std::vector<ResultRow> run_replications(const ExperimentConfig& c, unsigned threads, Fn&& one) {
  std::vector<std::vector<ResultRow>> per(static_cast<std::size_t>(c.replications));
  parallel_for(per.size(), threads, [&](std::size_t r) { per[r] = one(static_cast<int>(r)); });
  std::vector<ResultRow> rows;
  for (auto& block : per) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

}  // namespace detail

/// Relative improvement of the estimated-weight truncation over the uniform
/// one, per requested norm.
inline std::vector<ResultRow> run_improvement(const ExperimentConfig& c, unsigned threads = 0) {
  const auto specs = resolved_noise(c);
  return detail::run_replications(c, threads, [&](int r) { return detail::improvement_replication(c, specs, r); });
}

/// Discrepancy between recovered and true communities.
inline std::vector<ResultRow> run_recovery(const ExperimentConfig& c, unsigned threads = 0) {
  const auto specs = resolved_noise(c);
  const CommunityModel model = community_model(c);
  return detail::run_replications(c, threads,
                                  [&](int r) { return detail::recovery_replication(c, model, specs, r); });
}

/// max_s |w_hat_s - w*_s| and the plug-in / oracle 2,inf error ratio.
inline std::vector<ResultRow> run_weight_consistency(const ExperimentConfig& c, unsigned threads = 0) {
  const auto specs = resolved_noise(c);
  return detail::run_replications(c, threads,
                                  [&](int r) { return detail::weight_consistency_replication(c, specs, r); });
}

/// Two groups drawn from the same model, compared cell by cell.
inline std::vector<ResultRow> run_celltest_null(const ExperimentConfig& c, unsigned threads = 0) {
  const auto specs = resolved_noise(c);
  const Parcellation parc = Parcellation::make(make_balanced_memberships(c.n, c.communities));
  return detail::run_replications(
      c, threads, [&](int r) { return detail::celltest_null_replication(c, specs, parc, r); });
}

inline std::vector<ResultRow> run_experiment(const ExperimentConfig& c, unsigned threads = 0) {
  switch (c.experiment) {
    case ExperimentKind::improvement:
      return run_improvement(c, threads);
    case ExperimentKind::recovery:
      return run_recovery(c, threads);
    case ExperimentKind::weight_consistency:
      return run_weight_consistency(c, threads);
    case ExperimentKind::celltest_null:
      return run_celltest_null(c, threads);
  }
  return {};
}

inline void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "experiment,replication,n,N,d,K,outlier_variance,metric,value\n";
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.replication << ',' << r.n << ',' << r.networks << ',' << r.d << ','
        << r.communities << ',' << io::format_double(r.outlier_variance) << ',' << r.metric << ','
        << io::format_double(r.value) << '\n';
  }
}

/// Tidy long-format summary: one line per parameter tuple and metric with the
/// mean, sample standard deviation and count over replications.
inline void write_plot_data(std::ostream& out, const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, Index, int, int, int, double, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<double>> groups;
  for (const auto& r : rows) {
    Key k{r.experiment, r.n, r.networks, r.d, r.communities, r.outlier_variance, r.metric};
    auto [it, inserted] = groups.try_emplace(k);
    if (inserted) order.push_back(k);
    it->second.push_back(r.value);
  }
  out << "experiment,n,N,d,K,outlier_variance,metric,mean,sd,count\n";
  for (const auto& k : order) {
    const auto& v = groups[k];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    out << std::get<0>(k) << ',' << std::get<1>(k) << ',' << std::get<2>(k) << ',' << std::get<3>(k) << ','
        << std::get<4>(k) << ',' << io::format_double(std::get<5>(k)) << ',' << std::get<6>(k) << ','
        << io::format_double(mean) << ',' << io::format_double(sd) << ',' << v.size() << '\n';
  }
}

/// Bound report for one draw of the configured model (stream (seed, 0)).
inline BoundReport diagnose(const ExperimentConfig& c) {
  const auto specs = resolved_noise(c);
  RngStream rng(c.seed, 0);
  std::vector<int> memberships;
  LatentModel model;
  if (c.experiment == ExperimentKind::recovery) {
    const CommunityModel cm = community_model(c);
    memberships = cm.labels;
    model = cm.latent();
  } else {
    model = generate_latent_gaussian(c.n, latent_mean(c), latent_cov(c), rng);
  }
  const NetworkCollection nets = generate_collection(model, specs, rng);
  WeightVector w;
  switch (c.weights) {
    case WeightScheme::uniform:
      w = uniform_weights(specs.size());
      break;
    case WeightScheme::oracle:
      w = oracle_weights(specs);
      break;
    case WeightScheme::estimated:
      w = weights_from_rho_allow_zero(estimate_rho(nets, c.d, c.variant));
      break;
  }
  GrowthInputs in;
  in.expectation = &model.expectation;
  in.d = c.d;
  in.specs = specs;
  in.weights = &w;
  in.memberships = memberships;
  in.ell = c.ell;
  in.c_ell = c.c_ell;
  BoundReport report = growth_report(in);
  report.empirical_spectral_error = spectral_norm(weighted_mean(nets, w).dense() - model.expectation.dense());
  return report;
}

inline nlohmann::json report_to_json(const BoundReport& r) {
  nlohmann::json conditions = nlohmann::json::object();
  for (const auto& [name, v] : r.conditions) {
    conditions[name] = {{"lhs", v.lhs}, {"rhs", v.rhs}, {"ratio", v.ratio}, {"relation", v.relation},
                        {"informational", true}};
  }
  return {{"eta_sq", r.eta_sq},
          {"spectral_bound", r.spectral_bound},
          {"empirical_spectral_error", r.empirical_spectral_error},
          {"two_inf_terms", {r.two_inf_terms.first, r.two_inf_terms.second}},
          {"conditions", conditions},
          {"note", "shape diagnostic: universal constants set to 1, natural logarithms"}};
}

}  // namespace specnet

#endif  // SPECNET_EXPERIMENTS_HPP
