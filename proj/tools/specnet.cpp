// specnet: command-line front end for the specnet library.
//
// Exit codes: 0 success, 2 config/input error, 3 numeric failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specnet/specnet.hpp"

namespace {

using namespace specnet;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  auto out = io::open_output(path);
  out << text;
}

std::vector<NoiseSpec> parse_noise_list(const std::vector<std::string>& items) {
  std::vector<NoiseSpec> out;
  for (const auto& s : items) out.push_back(NoiseSpec::parse(s));
  return out;
}

Matrix parse_rows(const std::string& text) {
  // "a,b;c,d"
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<double> vals;
    std::stringstream rs(row);
    std::string tok;
    while (std::getline(rs, tok, ',')) vals.push_back(std::stod(tok));
    rows.push_back(vals);
  }
  if (rows.empty() || rows.front().empty()) throw ConfigError("empty matrix '" + text + "'");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw ConfigError("ragged matrix '" + text + "'");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  return m;
}

/// Estimated weights; a network with a zero estimate takes the weight.
WeightVector estimated_weights_lenient(const RhoEstimates& rho) {
  std::vector<std::size_t> zero;
  WeightVector w = weights_from_rho_allow_zero(rho, &zero);
  for (std::size_t s : zero) {
    std::cerr << "warning: network " << s + 1 << " has zero estimated noise; it receives the weight\n";
  }
  return w;
}

struct WeightChoice {
  std::string scheme = "estimated";
  std::string variant = "subgamma";
  std::string meta;
};

void add_weight_options(CLI::App* cmd, WeightChoice& w) {
  cmd->add_option("--weights", w.scheme, "uniform | estimated | oracle")
      ->check(CLI::IsMember({"uniform", "estimated", "oracle"}));
  cmd->add_option("--variant", w.variant, "noise estimator: gaussian | subgamma")
      ->check(CLI::IsMember({"gaussian", "subgamma"}));
  cmd->add_option("--meta", w.meta, "noise metadata JSON (needed for --weights oracle)");
}

WeightVector resolve_weights(const NetworkCollection& nets, int d, const WeightChoice& w) {
  if (w.scheme == "uniform") return uniform_weights(nets.size());
  if (w.scheme == "oracle") {
    if (w.meta.empty()) throw ConfigError("--weights oracle needs --meta");
    const auto specs = io::noise_metadata_from_json(io::load_json(w.meta));
    if (specs.size() != nets.size()) throw ConfigError("metadata does not match network count");
    return oracle_weights(specs);
  }
  return estimated_weights_lenient(estimate_rho(nets, d, parse_rho_variant(w.variant)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted averaging and spectral embedding of multiple noisy networks"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "draw a network collection");
  std::string sim_model = "latent";
  Index sim_n = 200;
  int sim_d = 3, sim_k = 2, sim_networks = 5;
  double sim_outlier = 1.0;
  std::vector<std::string> sim_noise;
  std::uint64_t sim_seed = 0, sim_stream = 0;
  std::string sim_out, sim_meta, sim_truth, sim_labels, sim_centers;
  sim->add_option("--model", sim_model, "latent | sbm")->check(CLI::IsMember({"latent", "sbm"}));
  sim->add_option("--n", sim_n, "vertices")->check(CLI::PositiveNumber);
  sim->add_option("--d", sim_d, "latent dimension")->check(CLI::PositiveNumber);
  sim->add_option("--K", sim_k, "communities (sbm)")->check(CLI::PositiveNumber);
  sim->add_option("--N", sim_networks, "networks when --noise is not given")->check(CLI::PositiveNumber);
  sim->add_option("--outlier-variance", sim_outlier, "Laplace variance of network 1 when --noise is not given");
  sim->add_option("--noise", sim_noise, "per-network noise, e.g. laplace:5 gaussian:1 gamma:2,0.5");
  sim->add_option("--centers", sim_centers, "sbm community centers 'a,b;c,d' (K x d)");
  sim->add_option("--seed", sim_seed);
  sim->add_option("--stream", sim_stream);
  sim->add_option("--out", sim_out, "NETSET output")->required();
  sim->add_option("--meta", sim_meta, "noise metadata JSON output");
  sim->add_option("--truth", sim_truth, "expectation P as SYMMAT");
  sim->add_option("--labels-out", sim_labels, "true community labels CSV (sbm)");

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate per-network noise levels and weights");
  std::string est_in, est_out, est_variant = "subgamma";
  int est_d = 3;
  est->add_option("--input", est_in)->required();
  est->add_option("--d", est_d)->check(CLI::PositiveNumber);
  est->add_option("--variant", est_variant)->check(CLI::IsMember({"gaussian", "subgamma"}));
  est->add_option("--out", est_out, "JSON output (default stdout)");

  // embed
  auto* emb = app.add_subcommand("embed", "spectral embedding of the weighted mean");
  std::string emb_in, emb_out;
  int emb_d = 3;
  WeightChoice emb_w;
  emb->add_option("--input", emb_in)->required();
  emb->add_option("--d", emb_d)->check(CLI::PositiveNumber);
  add_weight_options(emb, emb_w);
  emb->add_option("--out", emb_out, "CSV of latent positions (default stdout)");

  // cluster
  auto* clu = app.add_subcommand("cluster", "community recovery by k-means on the embedding");
  std::string clu_in, clu_out;
  int clu_d = 3, clu_k = 2, clu_restarts = 20, clu_iter = 300;
  std::uint64_t clu_seed = 0;
  WeightChoice clu_w;
  clu->add_option("--input", clu_in)->required();
  clu->add_option("--d", clu_d)->check(CLI::PositiveNumber);
  clu->add_option("--K", clu_k)->check(CLI::PositiveNumber);
  clu->add_option("--restarts", clu_restarts)->check(CLI::PositiveNumber);
  clu->add_option("--max-iter", clu_iter)->check(CLI::PositiveNumber);
  clu->add_option("--seed", clu_seed);
  add_weight_options(clu, clu_w);
  clu->add_option("--out", clu_out, "labels CSV (default stdout)");

  // compare
  auto* cmp = app.add_subcommand("compare", "label discrepancy, or weighted vs uniform improvement against P");
  std::string cmp_a, cmp_b, cmp_truth, cmp_in, cmp_out, cmp_variant = "subgamma";
  std::vector<std::string> cmp_norms{"frobenius", "spectral", "two_inf"};
  int cmp_d = 3;
  cmp->add_option("--labels-a", cmp_a);
  cmp->add_option("--labels-b", cmp_b);
  cmp->add_option("--truth", cmp_truth, "expectation P as SYMMAT");
  cmp->add_option("--input", cmp_in, "NETSET");
  cmp->add_option("--d", cmp_d)->check(CLI::PositiveNumber);
  cmp->add_option("--variant", cmp_variant)->check(CLI::IsMember({"gaussian", "subgamma"}));
  cmp->add_option("--norm", cmp_norms)->check(CLI::IsMember({"frobenius", "spectral", "two_inf"}));
  cmp->add_option("--out", cmp_out, "JSON output (default stdout)");

  // celltest
  auto* cell = app.add_subcommand("celltest", "cell-level two-sample tests between two groups");
  std::string cell_a, cell_b, cell_parc, cell_out, cell_method = "bh";
  int cell_d = 3;
  double cell_alpha = 0.01;
  WeightChoice cell_w;
  cell->add_option("--group-a", cell_a)->required();
  cell->add_option("--group-b", cell_b)->required();
  cell->add_option("--d", cell_d)->check(CLI::PositiveNumber);
  cell->add_option("--parcellation", cell_parc)->required();
  cell->add_option("--alpha", cell_alpha);
  cell->add_option("--method", cell_method)->check(CLI::IsMember({"bh", "by"}));
  add_weight_options(cell, cell_w);
  cell->add_option("--out", cell_out, "CSV output (default stdout)");

  // diagnose
  auto* dia = app.add_subcommand("diagnose", "bound constituents and growth-condition readouts");
  std::string dia_config, dia_out;
  dia->add_option("--config", dia_config)->required();
  dia->add_option("--out", dia_out, "JSON output (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a synthetic experiment from a JSON config");
  std::string exp_config, exp_out, exp_plot;
  unsigned exp_threads = 0;
  bool exp_schema = false;
  exp->add_option("--config", exp_config);
  exp->add_option("--out", exp_out, "results CSV (overrides output_path)");
  exp->add_option("--emit-plot-data", exp_plot, "tidy summary CSV");
  exp->add_option("--threads", exp_threads, "worker threads (default SPECNET_THREADS or all cores)");
  exp->add_flag("--print-schema", exp_schema, "print the config JSON schema and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) {
      RngStream rng(sim_seed, sim_stream);
      std::vector<NoiseSpec> specs = parse_noise_list(sim_noise);
      if (specs.empty()) {
        ExperimentConfig c;
        c.networks = sim_networks;
        c.outlier_variance = sim_outlier;
        specs = resolved_noise(c);
      }
      NetworkCollection nets;
      SymmetricMatrix truth;
      if (sim_model == "sbm") {
        Matrix centers;
        if (!sim_centers.empty()) {
          centers = parse_rows(sim_centers);
        } else if (sim_k == 2 && sim_d == 2) {
          centers.resize(2, 2);
          centers << 0.8, 0.1, 0.1, 0.8;
        } else {
          throw ConfigError("--centers is required for sbm unless K = d = 2");
        }
        const CommunityModel model = CommunityModel::make(make_balanced_memberships(sim_n, static_cast<int>(centers.rows())), centers);
        const LatentModel latent = model.latent();
        nets = generate_collection(latent, specs, rng);
        truth = latent.expectation;
        if (!sim_labels.empty()) {
          auto out = io::open_output(sim_labels);
          io::write_labels(out, model.labels);
        }
      } else {
        ExperimentConfig c;
        c.d = sim_d;
        const LatentModel model = generate_latent_gaussian(sim_n, latent_mean(c), latent_cov(c), rng);
        nets = generate_collection(model, specs, rng);
        truth = model.expectation;
      }
      io::save_netset(sim_out, nets);
      if (!sim_meta.empty()) write_text(sim_meta, io::noise_metadata_json(specs).dump(2) + "\n");
      if (!sim_truth.empty()) io::save_symmat(sim_truth, truth);
    } else if (*est) {
      const NetworkCollection nets = io::load_netset(est_in);
      const RhoEstimates rho = estimate_rho(nets, est_d, parse_rho_variant(est_variant));
      const WeightVector w = estimated_weights_lenient(rho);
      const json j{{"rho", rho.rho}, {"weights", w.w}, {"variant", est_variant}};
      write_text(est_out, j.dump(2) + "\n");
    } else if (*emb) {
      const NetworkCollection nets = io::load_netset(emb_in);
      const WeightVector w = resolve_weights(nets, emb_d, emb_w);
      const Embedding e = ase(weighted_mean(nets, w), emb_d);
      std::ostringstream os;
      io::write_matrix_csv(os, e.coords);
      write_text(emb_out, os.str());
    } else if (*clu) {
      const NetworkCollection nets = io::load_netset(clu_in);
      const WeightVector w = resolve_weights(nets, clu_d, clu_w);
      const Embedding e = ase(weighted_mean(nets, w), clu_d);
      RngStream rng(clu_seed, 0);
      const Clustering c = kmeans(e.coords, clu_k, KMeansOptions{clu_restarts, clu_iter}, rng);
      std::ostringstream os;
      io::write_labels(os, c.labels);
      write_text(clu_out, os.str());
    } else if (*cmp) {
      json j;
      if (!cmp_a.empty() || !cmp_b.empty()) {
        if (cmp_a.empty() || cmp_b.empty()) throw ConfigError("--labels-a and --labels-b go together");
        auto ia = io::open_input(cmp_a);
        auto ib = io::open_input(cmp_b);
        j["discrepancy"] = discrepancy(io::read_labels(ia), io::read_labels(ib));
      } else {
        if (cmp_truth.empty() || cmp_in.empty()) {
          throw ConfigError("compare needs --labels-a/--labels-b or --truth/--input");
        }
        const SymmetricMatrix p = io::load_symmat(cmp_truth);
        const NetworkCollection nets = io::load_netset(cmp_in);
        const SymmetricMatrix p_bar = rank_d_truncate(weighted_mean(nets, uniform_weights(nets.size())), cmp_d);
        const WeightVector w = estimated_weights_lenient(estimate_rho(nets, cmp_d, parse_rho_variant(cmp_variant)));
        const SymmetricMatrix p_tilde = rank_d_truncate(weighted_mean(nets, w), cmp_d);
        json imp = json::object();
        for (const auto& name : cmp_norms) {
          imp[name] = relative_improvement(p, p_bar, p_tilde, parse_norm(name));
        }
        j["relative_improvement"] = imp;
        j["weights"] = w.w;
      }
      write_text(cmp_out, j.dump(2) + "\n");
    } else if (*cell) {
      const NetworkCollection a = io::load_netset(cell_a);
      const NetworkCollection b = io::load_netset(cell_b);
      auto pin = io::open_input(cell_parc);
      const Parcellation parc = io::read_parcellation(pin);
      auto estimate_group = [&](const NetworkCollection& nets) {
        return rank_d_truncate(weighted_mean(nets, resolve_weights(nets, cell_d, cell_w)), cell_d);
      };
      const CellTestReport report =
          cell_test_report(estimate_group(a), estimate_group(b), parc, cell_alpha, parse_fdr_method(cell_method));
      std::ostringstream os;
      os << "k,l,t_stat,p_value,rejected,degenerate\n";
      for (const auto& c : report.cells) {
        os << c.k << ',' << c.l << ',' << io::format_double(c.t_stat) << ',' << io::format_double(c.p_value) << ','
           << (c.rejected ? 1 : 0) << ',' << (c.degenerate ? 1 : 0) << '\n';
      }
      write_text(cell_out, os.str());
    } else if (*dia) {
      const ExperimentConfig c = parse_experiment_config(io::load_json(dia_config));
      write_text(dia_out, report_to_json(diagnose(c)).dump(2) + "\n");
    } else if (*exp) {
      if (exp_schema) {
        std::cout << experiment_config_schema().dump(2) << '\n';
        return 0;
      }
      if (exp_config.empty()) throw ConfigError("experiment needs --config");
      const ExperimentConfig c = parse_experiment_config(io::load_json(exp_config));
      const auto rows = run_experiment(c, exp_threads);
      std::ostringstream os;
      write_results_csv(os, rows);
      write_text(exp_out.empty() ? c.output_path : exp_out, os.str());
      if (!exp_plot.empty()) {
        std::ostringstream ps;
        write_plot_data(ps, rows);
        write_text(exp_plot, ps.str());
      }
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
