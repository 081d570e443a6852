#ifndef SPECNET_DIAGNOSTICS_HPP
#define SPECNET_DIAGNOSTICS_HPP

// Computable constituents of the concentration and embedding error bounds,
// plus finite-n readouts of the asymptotic growth conditions. Unspecified
// universal constants are fixed to 1: these are shape diagnostics, not
// certified bounds. All logarithms are natural.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "specnet/error.hpp"
#include "specnet/estimation.hpp"
#include "specnet/matrix.hpp"
#include "specnet/noise.hpp"

namespace specnet {

namespace detail {

template <typename NuAt, typename BAt>
double eta_squared_kernel(const WeightVector& w, Index n, NuAt nu_at, BAt b_at) {
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t s = 0; s < w.size(); ++s) {
      for (Index j = 0; j < n; ++j) {
        const double term = std::sqrt(2.0 * nu_at(s, i, j)) + 2.0 * b_at(s, i, j);
        row += w[s] * w[s] * term * term;
      }
    }
    worst = std::max(worst, row);
  }
  return 2.0 * worst;
}

}  // namespace detail

/// eta^2 = 2 max_i sum_s sum_j w_s^2 (sqrt(2 nu_sij) + 2 b_sij)^2 with one
/// (nu, b) pair per network, broadcast over all edges.
inline double eta_squared(const WeightVector& w, std::span<const SubGamma> params, Index n) {
  if (params.size() != w.size()) throw InvalidArgument("eta_squared: weights/parameters mismatch");
  if (n < 1) throw InvalidArgument("eta_squared: n must be positive");
  return detail::eta_squared_kernel(
      w, n, [&](std::size_t s, Index, Index) { return params[s].nu; },
      [&](std::size_t s, Index, Index) { return params[s].b; });
}

/// Per-edge form: nu[s] and b[s] are n x n arrays.
inline double eta_squared(const WeightVector& w, std::span<const Matrix> nu, std::span<const Matrix> b) {
  if (nu.size() != w.size() || b.size() != w.size()) {
    throw InvalidArgument("eta_squared: weights/parameters mismatch");
  }
  if (nu.empty()) throw InvalidArgument("eta_squared: no networks");
  const Index n = nu.front().rows();
  for (std::size_t s = 0; s < nu.size(); ++s) {
    if (nu[s].rows() != n || nu[s].cols() != n || b[s].rows() != n || b[s].cols() != n) {
      throw InvalidArgument("eta_squared: parameter arrays must all be n x n");
    }
  }
  return detail::eta_squared_kernel(
      w, n, [&](std::size_t s, Index i, Index j) { return nu[s](i, j); },
      [&](std::size_t s, Index i, Index j) { return b[s](i, j); });
}

/// (15/2) sqrt(2 eta^2) ln n.
inline double spectral_error_bound(double eta_sq, Index n) {
  if (n < 2) throw InvalidArgument("spectral_error_bound: n must be >= 2");
  if (eta_sq < 0) throw InvalidArgument("spectral_error_bound: eta^2 must be >= 0");
  return 7.5 * std::sqrt(2.0 * eta_sq) * std::log(static_cast<double>(n));
}

struct TwoInfTerms {
  double first = 0.0;
  double second = 0.0;
};

/// d lambda_d^{-1/2} S^{1/2} ln n and d n kappa lambda_d^{-3/2} S ln^2 n, with
/// S = sum_s w_s^2 (nu_s + b_s^2).
inline TwoInfTerms two_inf_bound_terms(const WeightVector& w, std::span<const NoiseSpec> specs,
                                       const SymmetricMatrix& p, int d) {
  const EigenPairs e = sym_eigen_topd(p, d);
  const double lambda_d = e.values(d - 1);
  require_positive_lambda_d(e.values);
  const double kappa = e.values(0) / lambda_d;
  const double s = weighted_noise_scale(w, specs);
  const double n = static_cast<double>(p.size());
  const double ln = std::log(n);
  return {d * std::sqrt(s) * ln / std::sqrt(lambda_d),
          d * n * kappa * s * ln * ln / std::pow(lambda_d, 1.5)};
}

struct PerturbationTerms {
  double row_term = 0.0;        // ||(A - P) U_P||_{2,inf} / lambda_d^{1/2}
  double projected_term = 0.0;  // ||U_P^T (A - P) U_P||_F / lambda_d^{1/2}
  double spectral_term = 0.0;   // d ||A - P||^2 kappa / lambda_d^{3/2}
};

inline PerturbationTerms perturbation_terms(const SymmetricMatrix& a, const SymmetricMatrix& p, int d) {
  if (a.size() != p.size()) throw InvalidArgument("perturbation_terms: shape mismatch");
  const EigenPairs e = sym_eigen_topd(p, d);
  const double lambda_d = e.values(d - 1);
  require_positive_lambda_d(e.values);
  const double kappa = e.values(0) / lambda_d;
  const Matrix diff = a.dense() - p.dense();
  const Matrix du = diff * e.vectors;
  const double root = std::sqrt(lambda_d);
  const double spec = spectral_norm(diff);
  return {two_to_infty_norm(du) / root, frobenius_norm(e.vectors.transpose() * du) / root,
          d * spec * spec * kappa / (lambda_d * root)};
}

/// [sqrt(d) (ln N + ln n)^2 + N^{1/l} n^{(2-l)/(2l)} (ln n)^{c_l}] / sqrt(n).
inline double gamma_n_ell(double n, double n_networks, double d, int ell, double c_ell) {
  if (ell < 1) throw InvalidArgument("gamma_n_ell: ell must be a positive integer");
  if (!(c_ell > 1.0 / ell)) throw InvalidArgument("gamma_n_ell: c_ell must exceed 1/ell");
  if (n < 1 || n_networks < 1 || d < 1) throw InvalidArgument("gamma_n_ell: sizes must be >= 1");
  const double l = ell;
  const double ln_n = std::log(n);
  const double first = std::sqrt(d) * std::pow(std::log(n_networks) + ln_n, 2);
  const double second = std::pow(n_networks, 1.0 / l) * std::pow(n, (2.0 - l) / (2.0 * l)) *
                        std::pow(ln_n, c_ell);
  return (first + second) / std::sqrt(n);
}

/// Expected sub-gamma rho for a given edge variance: variance / 32.
inline double tau_from_variance(double edge_variance) {
  if (edge_variance < 0) throw InvalidArgument("tau_from_variance: variance must be >= 0");
  return edge_variance / 32.0;
}

/// One growth condition at finite n. `relation` is "o" (lhs should vanish
/// relative to rhs), "omega" (lhs should dominate rhs) or "le".
struct ConditionValue {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs (0 when rhs is 0 and lhs is 0)
  std::string relation;
};

struct BoundReport {
  double eta_sq = 0.0;
  double spectral_bound = 0.0;
  double empirical_spectral_error = 0.0;
  TwoInfTerms two_inf_terms;
  /// Informational only; finite runs cannot confirm o / omega statements.
  std::map<std::string, ConditionValue> conditions;
};

namespace detail {

inline ConditionValue condition(double lhs, double rhs, std::string relation) {
  double ratio = 0.0;
  if (rhs != 0) {
    ratio = lhs / rhs;
  } else if (lhs != 0) {
    ratio = std::numeric_limits<double>::max();
  }
  return {lhs, rhs, ratio, std::move(relation)};
}

}  // namespace detail

struct GrowthInputs {
  const SymmetricMatrix* expectation = nullptr;
  int d = 1;
  std::span<const NoiseSpec> specs;
  const WeightVector* weights = nullptr;
  /// 1-based community labels; empty for latent-position models.
  std::span<const int> memberships;
  int ell = 2;
  double c_ell = 1.0;
};

/// Evaluates the bound constituents and growth-condition readouts. The
/// empirical spectral error is left for the caller to fill from a sample.
inline BoundReport growth_report(const GrowthInputs& in) {
  if (in.expectation == nullptr || in.weights == nullptr) {
    throw InvalidArgument("growth_report: expectation and weights are required");
  }
  const SymmetricMatrix& p = *in.expectation;
  const WeightVector& w = *in.weights;
  if (w.size() != in.specs.size()) throw InvalidArgument("growth_report: weights/specs mismatch");
  const int d = in.d;
  const Index n_idx = p.size();
  const double n = static_cast<double>(n_idx);
  const double n_networks = static_cast<double>(in.specs.size());
  const double ln = std::log(n);

  std::vector<SubGamma> params;
  params.reserve(in.specs.size());
  for (const auto& s : in.specs) params.push_back(s.subgamma());

  BoundReport r;
  r.eta_sq = eta_squared(w, params, n_idx);
  r.spectral_bound = spectral_error_bound(r.eta_sq, n_idx);
  r.two_inf_terms = two_inf_bound_terms(w, in.specs, p, d);

  const EigenPairs e = sym_eigen_topd(p, d);
  const double lambda_d = e.values(d - 1);
  const double s_w = weighted_noise_scale(w, in.specs);

  double inv_sum = 0.0;
  bool noiseless = false;
  double tau_inv_sum = 0.0;
  double tau_weighted = 0.0;
  double worst_ratio = 0.0;
  for (std::size_t s = 0; s < params.size(); ++s) {
    const double scale = params[s].nu + params[s].b * params[s].b;
    const double tau = tau_from_variance(in.specs[s].variance());
    if (scale > 0) {
      inv_sum += 1.0 / scale;
    } else {
      noiseless = true;
    }
    if (tau > 0) {
      tau_inv_sum += 1.0 / tau;
      tau_weighted += scale / tau;
      worst_ratio = std::max(worst_ratio, scale / tau);
    }
  }

  r.conditions["paragrowth"] =
      detail::condition(s_w, lambda_d * lambda_d / (n * ln * ln), "o");
  // Reciprocal form: (sum_s (nu_s + b_s^2)^{-1})^{-1} = o(lambda_d^2 / (n ln^2 n)).
  const double harmonic_scale = (noiseless || inv_sum == 0) ? 0.0 : 1.0 / inv_sum;
  r.conditions["subgammagrowth"] =
      detail::condition(harmonic_scale, lambda_d * lambda_d / (n * ln * ln), "o");
  r.conditions["ratiogrowth"] = detail::condition(
      gamma_n_ell(n, n_networks, d, in.ell, in.c_ell) * worst_ratio, 1.0, "o");
  const double harmonic_lhs = tau_inv_sum > 0 ? inv_sum / tau_inv_sum * tau_weighted : 0.0;
  r.conditions["harmonicish"] = detail::condition(
      harmonic_lhs, ln * ln / std::pow(std::log(n_networks) + ln, 2), "le");

  if (!in.memberships.empty()) {
    int k = 0;
    for (int l : in.memberships) k = std::max(k, l);
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int l : in.memberships) {
      if (l < 1) throw InvalidArgument("growth_report: membership labels must be >= 1");
      ++sizes[l - 1];
    }
    const double n_min = *std::min_element(sizes.begin(), sizes.end());
    const double dd = static_cast<double>(d) * d;
    r.conditions["nmingrowth"] =
        detail::condition(n_min, dd * s_w + dd * s_w * s_w * std::pow(ln, 4), "omega");
  }
  return r;
}

}  // namespace specnet

#endif  // SPECNET_DIAGNOSTICS_HPP
