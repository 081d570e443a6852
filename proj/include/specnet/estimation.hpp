#ifndef SPECNET_ESTIMATION_HPP
#define SPECNET_ESTIMATION_HPP

// Noise-level estimation from truncation residuals, network weights, weighted
// means, and the plug-in spectral embedding.

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specnet/error.hpp"
#include "specnet/matrix.hpp"
#include "specnet/noise.hpp"

namespace specnet {

enum class WeightProvenance { uniform, oracle, estimated_gaussian, estimated_subgamma, user };

inline std::string_view to_string(WeightProvenance p) {
  switch (p) {
    case WeightProvenance::uniform:
      return "uniform";
    case WeightProvenance::oracle:
      return "oracle";
    case WeightProvenance::estimated_gaussian:
      return "estimated-gaussian";
    case WeightProvenance::estimated_subgamma:
      return "estimated-subgamma";
    case WeightProvenance::user:
      return "user";
  }
  return "?";
}

/// Nonnegative weights summing to one.
struct WeightVector {
  std::vector<double> w;
  WeightProvenance provenance = WeightProvenance::user;

  std::size_t size() const noexcept { return w.size(); }
  double operator[](std::size_t s) const { return w[s]; }

  /// Normalizes `raw` (nonnegative, positive sum).
  static WeightVector normalized(std::vector<double> raw, WeightProvenance provenance) {
    double total = 0.0;
    for (double v : raw) {
      if (!(v >= 0) || !std::isfinite(v)) throw InvalidArgument("weights must be finite and >= 0");
      total += v;
    }
    if (!(total > 0)) throw InvalidArgument("weights must have a positive sum");
    for (double& v : raw) v /= total;
    return WeightVector{std::move(raw), provenance};
  }

  void validate() const {
    double total = 0.0;
    for (double v : w) {
      if (!(v >= 0)) throw InvalidArgument("negative weight");
      total += v;
    }
    if (w.empty() || std::abs(total - 1.0) > 1e-12) throw InvalidArgument("weights must sum to 1");
  }
};

inline WeightVector uniform_weights(std::size_t n_networks) {
  if (n_networks == 0) throw InvalidArgument("uniform_weights: no networks");
  return WeightVector{std::vector<double>(n_networks, 1.0 / static_cast<double>(n_networks)),
                      WeightProvenance::uniform};
}

enum class RhoVariant { gaussian, subgamma };

inline std::string_view to_string(RhoVariant v) {
  return v == RhoVariant::gaussian ? "gaussian" : "subgamma";
}

inline RhoVariant parse_rho_variant(std::string_view s) {
  if (s == "gaussian") return RhoVariant::gaussian;
  if (s == "subgamma") return RhoVariant::subgamma;
  throw InvalidArgument("unknown variant '" + std::string(s) + "'");
}

struct RhoEstimates {
  std::vector<double> rho;
  RhoVariant variant = RhoVariant::subgamma;
};

namespace detail {

// sum_{i <= j} (A - P_hat)_{ij}^2 / (n (n + 1)), P_hat the rank-d truncation.
inline double normalized_residual(const SymmetricMatrix& a, int d) {
  const SymmetricMatrix p_hat = rank_d_truncate(a, d);
  const Index n = a.size();
  double sum = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double r = a(i, j) - p_hat(i, j);
      sum += r * r;
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n + 1));
}

}  // namespace detail

/// Gaussian plug-in edge variance: 2 sum_{i<=j} (A - P_hat)^2 / (n (n + 1)).
inline double estimate_rho_gaussian(const SymmetricMatrix& a, int d) {
  return 2.0 * detail::normalized_residual(a, d);
}

/// Sub-gamma variant: sum_{i<=j} (A - P_hat)^2 / (16 n (n + 1)). Always exactly
/// estimate_rho_gaussian / 32.
inline double estimate_rho_subgamma(const SymmetricMatrix& a, int d) {
  return detail::normalized_residual(a, d) / 16.0;
}

inline RhoEstimates estimate_rho(const NetworkCollection& networks, int d, RhoVariant variant) {
  networks.validate();
  RhoEstimates out;
  out.variant = variant;
  out.rho.reserve(networks.size());
  for (const auto& a : networks.networks) {
    out.rho.push_back(variant == RhoVariant::gaussian ? estimate_rho_gaussian(a, d)
                                                      : estimate_rho_subgamma(a, d));
  }
  return out;
}

/// w_s = rho_s^{-1} / sum_t rho_t^{-1}.
inline WeightVector weights_from_rho(const RhoEstimates& rho) {
  if (rho.rho.empty()) throw InvalidArgument("weights_from_rho: no estimates");
  std::vector<double> inv(rho.rho.size());
  for (std::size_t s = 0; s < rho.rho.size(); ++s) {
    if (rho.rho[s] < 0 || !std::isfinite(rho.rho[s])) {
      throw InvalidArgument("weights_from_rho: estimate " + std::to_string(s) + " is invalid");
    }
    if (rho.rho[s] == 0) throw ZeroRho(s);
    inv[s] = 1.0 / rho.rho[s];
  }
  return WeightVector::normalized(std::move(inv), rho.variant == RhoVariant::gaussian
                                                      ? WeightProvenance::estimated_gaussian
                                                      : WeightProvenance::estimated_subgamma);
}

/// Like weights_from_rho, except that networks with a zero estimate (noiseless
/// under the model) share all of the weight. Their indices go to `zero_out`.
inline WeightVector weights_from_rho_allow_zero(const RhoEstimates& rho,
                                                std::vector<std::size_t>* zero_out = nullptr) {
  std::vector<double> raw(rho.rho.size(), 0.0);
  bool any_zero = false;
  for (std::size_t s = 0; s < rho.rho.size(); ++s) {
    if (rho.rho[s] == 0) {
      raw[s] = 1.0;
      any_zero = true;
      if (zero_out) zero_out->push_back(s);
    }
  }
  if (!any_zero) return weights_from_rho(rho);
  return WeightVector::normalized(std::move(raw), rho.variant == RhoVariant::gaussian
                                                      ? WeightProvenance::estimated_gaussian
                                                      : WeightProvenance::estimated_subgamma);
}

/// Minimizer of sum_s w_s^2 (nu_s + b_s^2) over the simplex.
inline WeightVector oracle_weights(std::span<const NoiseSpec> specs) {
  if (specs.empty()) throw InvalidArgument("oracle_weights: no noise specs");
  std::vector<double> inv(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const SubGamma g = specs[s].subgamma();
    const double scale = g.nu + g.b * g.b;
    if (!(scale > 0)) {
      throw InvalidArgument("oracle_weights: noise spec " + std::to_string(s) + " is noiseless");
    }
    inv[s] = 1.0 / scale;
  }
  return WeightVector::normalized(std::move(inv), WeightProvenance::oracle);
}

/// sum_s w_s^2 (nu_s + b_s^2), the quantity the error bounds grow with.
inline double weighted_noise_scale(const WeightVector& w, std::span<const NoiseSpec> specs) {
  if (w.size() != specs.size()) throw InvalidArgument("weights/specs length mismatch");
  double total = 0.0;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const SubGamma g = specs[s].subgamma();
    total += w[s] * w[s] * (g.nu + g.b * g.b);
  }
  return total;
}

inline SymmetricMatrix weighted_mean(const NetworkCollection& networks, const WeightVector& w) {
  networks.validate();
  if (w.size() != networks.size()) {
    throw InvalidArgument("weighted_mean: " + std::to_string(w.size()) + " weights for " +
                          std::to_string(networks.size()) + " networks");
  }
  const Index n = networks.vertex_count();
  Matrix acc = Matrix::Zero(n, n);
  for (std::size_t s = 0; s < networks.size(); ++s) {
    acc.noalias() += w[s] * networks.networks[s].dense();
  }
  return SymmetricMatrix::from_upper(acc);
}

struct PluginResult {
  Embedding embedding;
  WeightVector weights;
  RhoEstimates rho;
  SymmetricMatrix mean;
};

/// ASE of the inverse-noise weighted mean, with the estimates that produced it.
inline PluginResult plugin_embedding(const NetworkCollection& networks, int d, RhoVariant variant) {
  PluginResult out;
  out.rho = estimate_rho(networks, d, variant);
  out.weights = weights_from_rho(out.rho);
  out.mean = weighted_mean(networks, out.weights);
  out.embedding = ase(out.mean, d);
  return out;
}

/// (||P_bar - P|| - ||P_tilde - P||) / ||P_bar - P||.
inline double relative_improvement(const SymmetricMatrix& p, const SymmetricMatrix& p_bar,
                                   const SymmetricMatrix& p_tilde, NormKind norm) {
  if (p.size() != p_bar.size() || p.size() != p_tilde.size()) {
    throw InvalidArgument("relative_improvement: shape mismatch");
  }
  const double base = matrix_norm(p_bar.dense() - p.dense(), norm);
  if (base == 0) throw DivisionByZero("relative_improvement: baseline estimate equals P");
  const double ours = matrix_norm(p_tilde.dense() - p.dense(), norm);
  return (base - ours) / base;
}

}  // namespace specnet

#endif  // SPECNET_ESTIMATION_HPP
