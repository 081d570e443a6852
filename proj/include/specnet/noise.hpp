#ifndef SPECNET_NOISE_HPP
#define SPECNET_NOISE_HPP

// Edge-noise distributions, their sub-gamma parameters, and generators for
// latent-position and block-model network collections.

#include <charconv>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specnet/error.hpp"
#include "specnet/matrix.hpp"
#include "specnet/rng.hpp"

namespace specnet {

/// (nu, b) with psi(t) <= t^2 nu / (2 (1 - b t)) for 0 < t < 1/b.
struct SubGamma {
  double nu = 0.0;
  double b = 0.0;

  friend bool operator==(const SubGamma&, const SubGamma&) = default;
};

enum class NoiseKind { gaussian, laplace, centered_exponential, centered_gamma, centered_bernoulli };

/// A centered edge-noise distribution. Gaussian and Laplace accept variance 0
/// (a noiseless network); every other parameter must be strictly inside its
/// domain.
class NoiseSpec {
 public:
  static NoiseSpec gaussian(double variance) {
    require(variance >= 0 && std::isfinite(variance), "gaussian variance must be >= 0");
    return NoiseSpec(NoiseKind::gaussian, variance, 0.0);
  }
  static NoiseSpec laplace(double variance) {
    require(variance >= 0 && std::isfinite(variance), "laplace variance must be >= 0");
    return NoiseSpec(NoiseKind::laplace, variance, 0.0);
  }
  static NoiseSpec centered_exponential(double rate) {
    require(rate > 0 && std::isfinite(rate), "exponential rate must be > 0");
    return NoiseSpec(NoiseKind::centered_exponential, rate, 0.0);
  }
  static NoiseSpec centered_gamma(double shape, double scale) {
    require(shape > 0 && scale > 0 && std::isfinite(shape) && std::isfinite(scale),
            "gamma shape and scale must be > 0");
    return NoiseSpec(NoiseKind::centered_gamma, shape, scale);
  }
  static NoiseSpec centered_bernoulli(double q) {
    require(q > 0 && q < 1, "bernoulli success probability must lie in (0, 1)");
    return NoiseSpec(NoiseKind::centered_bernoulli, q, 0.0);
  }

  NoiseKind kind() const noexcept { return kind_; }
  /// variance (gaussian, laplace), rate, shape, or q.
  double first() const noexcept { return a_; }
  /// gamma scale; 0 otherwise.
  double second() const noexcept { return b_; }

  double variance() const noexcept {
    switch (kind_) {
      case NoiseKind::gaussian:
      case NoiseKind::laplace:
        return a_;
      case NoiseKind::centered_exponential:
        return 1.0 / (a_ * a_);
      case NoiseKind::centered_gamma:
        return a_ * b_ * b_;
      case NoiseKind::centered_bernoulli:
        return a_ * (1.0 - a_);
    }
    return 0.0;
  }

  /// Documented sub-gamma pair for each family:
  ///   gaussian(s2)          -> (s2, 0)
  ///   laplace(s2)           -> (2 s2, sqrt(s2 / 2))
  ///   centered_gamma(k, th) -> (k th^2, th)
  ///   centered_exp(rate)    -> gamma(1, 1/rate)
  ///   centered_bernoulli(q) -> (q, 1/2)
  SubGamma subgamma() const noexcept {
    switch (kind_) {
      case NoiseKind::gaussian:
        return {a_, 0.0};
      case NoiseKind::laplace:
        return {2.0 * a_, std::sqrt(a_ / 2.0)};
      case NoiseKind::centered_exponential:
        return {1.0 / (a_ * a_), 1.0 / a_};
      case NoiseKind::centered_gamma:
        return {a_ * b_ * b_, b_};
      case NoiseKind::centered_bernoulli:
        return {a_, 0.5};
    }
    return {};
  }

  /// One centered draw.
  double sample(RngStream& rng) const {
    switch (kind_) {
      case NoiseKind::gaussian:
        return std::sqrt(a_) * rng.normal();
      case NoiseKind::laplace:
        return rng.laplace(std::sqrt(a_ / 2.0));
      case NoiseKind::centered_exponential:
        return rng.exponential(a_) - 1.0 / a_;
      case NoiseKind::centered_gamma:
        return rng.gamma(a_, b_) - a_ * b_;
      case NoiseKind::centered_bernoulli:
        return (rng.bernoulli(a_) ? 1.0 : 0.0) - a_;
    }
    return 0.0;
  }

  /// Compact text form, e.g. "laplace:5", "gamma:2,0.5", "bernoulli:0.3".
  std::string to_string() const {
    auto num = [](double v) {
      char buf[32];
      auto r = std::to_chars(buf, buf + sizeof buf, v);
      return std::string(buf, r.ptr);
    };
    switch (kind_) {
      case NoiseKind::gaussian:
        return "gaussian:" + num(a_);
      case NoiseKind::laplace:
        return "laplace:" + num(a_);
      case NoiseKind::centered_exponential:
        return "exponential:" + num(a_);
      case NoiseKind::centered_gamma:
        return "gamma:" + num(a_) + "," + num(b_);
      case NoiseKind::centered_bernoulli:
        return "bernoulli:" + num(a_);
    }
    return "?";
  }

  static NoiseSpec parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidArgument("noise spec '" + std::string(text) + "' must look like kind:param");
    }
    const std::string_view kind = text.substr(0, colon);
    std::string_view rest = text.substr(colon + 1);
    std::vector<double> params;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view tok = rest.substr(0, comma);
      double v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw InvalidArgument("noise spec '" + std::string(text) + "': bad number '" +
                              std::string(tok) + "'");
      }
      params.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    auto want = [&](std::size_t k) {
      if (params.size() != k) {
        throw InvalidArgument("noise spec '" + std::string(text) + "' expects " +
                              std::to_string(k) + " parameter(s)");
      }
    };
    if (kind == "gaussian") {
      want(1);
      return gaussian(params[0]);
    }
    if (kind == "laplace") {
      want(1);
      return laplace(params[0]);
    }
    if (kind == "exponential") {
      want(1);
      return centered_exponential(params[0]);
    }
    if (kind == "gamma") {
      want(2);
      return centered_gamma(params[0], params[1]);
    }
    if (kind == "bernoulli") {
      want(1);
      return centered_bernoulli(params[0]);
    }
    throw InvalidArgument("unknown noise kind '" + std::string(kind) + "'");
  }

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;

 private:
  NoiseSpec(NoiseKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  static void require(bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
  }

  NoiseKind kind_;
  double a_;
  double b_;
};

inline SubGamma subgamma_params(const NoiseSpec& spec) { return spec.subgamma(); }

/// Parameters of sum_i coeffs[i] Z_i for independent (nu_i, b_i)-sub-gamma Z_i.
inline SubGamma combine_subgamma(std::span<const double> coeffs, std::span<const SubGamma> params) {
  if (coeffs.size() != params.size()) {
    throw InvalidArgument("combine_subgamma: " + std::to_string(coeffs.size()) +
                          " coefficients for " + std::to_string(params.size()) + " parameters");
  }
  SubGamma out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out.nu += coeffs[i] * coeffs[i] * params[i].nu;
    out.b = std::max(out.b, std::abs(coeffs[i]) * params[i].b);
  }
  return out;
}

/// Sub-exponential parameter of Z^2 - E Z^2 for nu-sub-Gaussian Z.
inline double subexp_param_from_subgaussian(double nu) {
  if (nu < 0) throw InvalidArgument("subexp_param_from_subgaussian: nu must be >= 0");
  return 16.0 * nu;
}

/// X (n x d latent positions) with P = X X^T.
struct LatentModel {
  Matrix positions;
  SymmetricMatrix expectation;

  static LatentModel from_positions(Matrix x) {
    if (!x.allFinite()) throw InvalidArgument("latent positions must be finite");
    SymmetricMatrix p = SymmetricMatrix::from_upper(x * x.transpose());
    return LatentModel{std::move(x), std::move(p)};
  }

  Index n() const noexcept { return positions.rows(); }
  Index d() const noexcept { return positions.cols(); }
};

/// Block model: labels in [1, K] and community latent centers (K x d), so that
/// B = centers centers^T and P = Z B Z^T.
struct CommunityModel {
  int communities = 0;
  std::vector<int> labels;
  Matrix centers;

  static CommunityModel make(std::vector<int> labels, Matrix centers) {
    const int k = static_cast<int>(centers.rows());
    if (k < 1) throw InvalidArgument("community model needs at least one community");
    for (int l : labels) {
      if (l < 1 || l > k) {
        throw InvalidArgument("membership label " + std::to_string(l) + " outside [1, " +
                              std::to_string(k) + "]");
      }
    }
    return CommunityModel{k, std::move(labels), std::move(centers)};
  }

  Index n() const noexcept { return static_cast<Index>(labels.size()); }

  Matrix membership_matrix() const {
    Matrix z = Matrix::Zero(n(), communities);
    for (Index i = 0; i < n(); ++i) z(i, labels[i] - 1) = 1.0;
    return z;
  }

  SymmetricMatrix connectivity() const {
    return SymmetricMatrix::from_upper(centers * centers.transpose());
  }

  LatentModel latent() const {
    Matrix x(n(), centers.cols());
    for (Index i = 0; i < n(); ++i) x.row(i) = centers.row(labels[i] - 1);
    return LatentModel::from_positions(std::move(x));
  }

  std::vector<int> community_sizes() const {
    std::vector<int> sizes(communities, 0);
    for (int l : labels) ++sizes[l - 1];
    return sizes;
  }
};

/// N vertex-aligned networks, optionally tagged with the noise that produced them.
struct NetworkCollection {
  std::vector<SymmetricMatrix> networks;
  std::vector<NoiseSpec> specs;  // empty or one per network

  std::size_t size() const noexcept { return networks.size(); }
  Index vertex_count() const noexcept { return networks.empty() ? 0 : networks.front().size(); }

  void validate() const {
    if (networks.empty()) throw InvalidArgument("network collection is empty");
    for (const auto& a : networks) {
      if (a.size() != vertex_count()) throw InvalidArgument("networks differ in vertex count");
    }
    if (!specs.empty() && specs.size() != networks.size()) {
      throw InvalidArgument("noise metadata count does not match network count");
    }
  }
};

/// Rows i.i.d. N(mean, cov), sampled as mean + S z with S the symmetric PSD
/// square root of cov.
inline LatentModel generate_latent_gaussian(Index n, const Vector& mean, const Matrix& cov,
                                            RngStream& rng) {
  const Index d = mean.size();
  if (n < 1 || d < 1) throw InvalidArgument("generate_latent_gaussian: empty dimensions");
  if (cov.rows() != d || cov.cols() != d) throw InvalidArgument("covariance shape mismatch");
  if (!cov.allFinite() || (cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + cov.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("covariance must be finite and symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (cov + cov.transpose()));
  const Vector& lam = solver.eigenvalues();
  const double tol = 1e-10 * (1.0 + lam.cwiseAbs().maxCoeff());
  if (lam.minCoeff() < -tol) throw InvalidArgument("covariance is not positive semidefinite");
  const Matrix root =
      solver.eigenvectors() * lam.cwiseMax(0.0).cwiseSqrt().asDiagonal() * solver.eigenvectors().transpose();
  Matrix x(n, d);
  Vector z(d);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < d; ++k) z(k) = rng.normal();
    x.row(i) = (mean + root * z).transpose();
  }
  return LatentModel::from_positions(std::move(x));
}

/// A^(s) = P + E^(s); the upper triangle (diagonal included) of each E^(s) is
/// drawn independently from specs[s] and mirrored.
inline NetworkCollection generate_collection(const SymmetricMatrix& p, std::span<const NoiseSpec> specs,
                                             RngStream& rng) {
  if (specs.empty()) throw InvalidArgument("generate_collection: need at least one noise spec");
  const Index n = p.size();
  NetworkCollection out;
  out.specs.assign(specs.begin(), specs.end());
  out.networks.reserve(specs.size());
  for (const NoiseSpec& spec : specs) {
    Matrix a = p.dense();
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i <= j; ++i) {
        a(i, j) += spec.sample(rng);
      }
    }
    out.networks.push_back(SymmetricMatrix::from_upper(a));
  }
  return out;
}

inline NetworkCollection generate_collection(const LatentModel& model, std::span<const NoiseSpec> specs,
                                             RngStream& rng) {
  return generate_collection(model.expectation, specs, rng);
}

inline NetworkCollection generate_collection(const CommunityModel& model,
                                             std::span<const NoiseSpec> specs, RngStream& rng) {
  return generate_collection(model.latent().expectation, specs, rng);
}

/// Vertex i (1-based) goes to community 1 + (i - 1) mod K.
inline std::vector<int> make_balanced_memberships(Index n, int k) {
  if (k < 1 || k > n) {
    throw InvalidArgument("make_balanced_memberships: K=" + std::to_string(k) + " with n=" +
                          std::to_string(n));
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) labels[i] = 1 + static_cast<int>(i % k);
  return labels;
}

}  // namespace specnet

#endif  // SPECNET_NOISE_HPP
