#ifndef SPECNET_CLUSTERING_HPP
#define SPECNET_CLUSTERING_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "specnet/error.hpp"
#include "specnet/estimation.hpp"
#include "specnet/matrix.hpp"
#include "specnet/rng.hpp"

namespace specnet {

/// Labels are 1-based: every label lies in [1, K].
struct Clustering {
  std::vector<int> labels;
  Matrix centers;
  double objective = 0.0;
};

struct KMeansOptions {
  int restarts = 20;
  int max_iter = 300;
};

struct KMeansRun {
  Clustering result;
  /// Objective after every assignment + update step.
  std::vector<double> objective_trace;
  int iterations = 0;
};

namespace detail {

inline double squared_distance(const Matrix& points, Index i, const Matrix& centers, Index k) {
  return (points.row(i) - centers.row(k)).squaredNorm();
}

inline double clustering_objective(const Matrix& points, const std::vector<int>& labels,
                                   const Matrix& centers) {
  double total = 0.0;
  for (Index i = 0; i < points.rows(); ++i) total += squared_distance(points, i, centers, labels[i] - 1);
  return total;
}

// Distance-weighted (k-means++) seeding.
inline Matrix seed_centers(const Matrix& points, int k, RngStream& rng) {
  const Index n = points.rows();
  Matrix centers(k, points.cols());
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  Index first = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
  centers.row(0) = points.row(first);
  chosen[first] = 1;
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) dist[i] = squared_distance(points, i, centers, 0);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : dist) total += v;
    Index pick = -1;
    if (total > 0) {
      const double target = rng.uniform() * total;
      double run = 0.0;
      for (Index i = 0; i < n; ++i) {
        run += dist[i];
        if (run >= target && dist[i] > 0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        for (Index i = n - 1; i >= 0; --i) {
          if (dist[i] > 0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Fewer distinct points than clusters; take the next unused index.
      for (Index i = 0; i < n; ++i) {
        if (!chosen[i]) {
          pick = i;
          break;
        }
      }
    }
    centers.row(c) = points.row(pick);
    chosen[pick] = 1;
    for (Index i = 0; i < n; ++i) dist[i] = std::min(dist[i], squared_distance(points, i, centers, c));
  }
  return centers;
}

// Nearest center, ties to the lowest index.
inline int nearest_center(const Matrix& points, Index i, const Matrix& centers) {
  int best = 0;
  double best_d = squared_distance(points, i, centers, 0);
  for (Index k = 1; k < centers.rows(); ++k) {
    const double dk = squared_distance(points, i, centers, k);
    if (dk < best_d) {
      best_d = dk;
      best = static_cast<int>(k);
    }
  }
  return best + 1;
}

inline void check_kmeans_args(const Matrix& points, int k) {
  if (k < 1 || k > points.rows()) {
    throw InvalidArgument("kmeans: K=" + std::to_string(k) + " with " +
                          std::to_string(points.rows()) + " points");
  }
  if (!points.allFinite()) throw InvalidArgument("kmeans: non-finite points");
}

}  // namespace detail

/// One Lloyd run from k-means++ seeding. Stops at an assignment fixpoint or
/// after max_iter updates. An empty cluster takes over the point farthest from
/// its current center.
inline KMeansRun kmeans_single_run(const Matrix& points, int k, int max_iter, RngStream& rng) {
  detail::check_kmeans_args(points, k);
  const Index n = points.rows();
  KMeansRun run;
  Matrix centers = detail::seed_centers(points, k, rng);
  std::vector<int> labels(static_cast<std::size_t>(n), 0);

  for (int iter = 0; iter < std::max(1, max_iter); ++iter) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      const int l = detail::nearest_center(points, i, centers);
      if (l != labels[i]) {
        labels[i] = l;
        changed = true;
      }
    }
    if (!changed) break;
    ++run.iterations;

    Matrix sums = Matrix::Zero(k, points.cols());
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(labels[i] - 1) += points.row(i);
      ++counts[labels[i] - 1];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      Index far = -1;
      double far_d = -1.0;
      for (Index i = 0; i < n; ++i) {
        if (counts[labels[i] - 1] < 2) continue;
        const double di = detail::squared_distance(points, i, centers, labels[i] - 1);
        if (di > far_d) {
          far_d = di;
          far = i;
        }
      }
      if (far < 0) break;
      // Move the point out and recompute its old cluster's mean.
      const int old = labels[far] - 1;
      sums.row(old) -= points.row(far);
      --counts[old];
      centers.row(old) = sums.row(old) / static_cast<double>(counts[old]);
      labels[far] = c + 1;
      sums.row(c) = points.row(far);
      counts[c] = 1;
      centers.row(c) = points.row(far);
    }
    run.objective_trace.push_back(detail::clustering_objective(points, labels, centers));
  }

  run.result.objective = detail::clustering_objective(points, labels, centers);
  run.result.labels = std::move(labels);
  run.result.centers = std::move(centers);
  return run;
}

/// Best of `restarts` Lloyd runs; restart r draws from rng.derive(r). Ties keep
/// the earliest restart.
inline Clustering kmeans(const Matrix& points, int k, const KMeansOptions& opts, RngStream& rng) {
  detail::check_kmeans_args(points, k);
  if (opts.restarts < 1) throw InvalidArgument("kmeans: restarts must be >= 1");
  Clustering best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    RngStream sub = rng.derive(static_cast<std::uint64_t>(r));
    KMeansRun run = kmeans_single_run(points, k, opts.max_iter, sub);
    if (run.result.objective < best.objective) best = std::move(run.result);
  }
  return best;
}

/// perm[i] is the column assigned to row i (0-based).
struct Assignment {
  std::vector<int> perm;
  double cost = 0.0;
};

/// Exact minimum-cost perfect matching on a square cost matrix (Kuhn-Munkres
/// with potentials, O(K^3)).
inline Assignment hungarian(const Matrix& cost) {
  if (cost.rows() != cost.cols()) throw InvalidArgument("hungarian: cost matrix must be square");
  if (!cost.allFinite()) throw InvalidArgument("hungarian: non-finite cost");
  const int k = static_cast<int>(cost.rows());
  Assignment out;
  if (k == 0) return out;
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual start.
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0), minv(k + 1);
  std::vector<int> match(k + 1, 0), way(k + 1, 0);
  std::vector<char> used(k + 1);
  for (int i = 1; i <= k; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  out.perm.assign(k, 0);
  for (int j = 1; j <= k; ++j) out.perm[match[j] - 1] = j - 1;
  for (int i = 0; i < k; ++i) out.cost += cost(i, out.perm[i]);
  return out;
}

/// Fraction of vertices labelled differently after the best relabelling of
/// `c_prime`. Labels are 1-based; `k` = 0 uses the largest label present.
inline double discrepancy(const std::vector<int>& c, const std::vector<int>& c_prime, int k = 0) {
  if (c.size() != c_prime.size()) throw InvalidArgument("discrepancy: label vectors differ in length");
  if (c.empty()) throw InvalidArgument("discrepancy: empty labelling");
  int kk = k;
  if (kk == 0) {
    for (std::size_t i = 0; i < c.size(); ++i) kk = std::max({kk, c[i], c_prime[i]});
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 1 || c[i] > kk || c_prime[i] < 1 || c_prime[i] > kk) {
      throw InvalidArgument("discrepancy: label outside [1, " + std::to_string(kk) + "]");
    }
  }
  // cost(b, a) = #{i : c'_i = b, c_i != a}; unused labels leave zero rows.
  Matrix cost = Matrix::Zero(kk, kk);
  std::vector<double> count_prime(static_cast<std::size_t>(kk), 0.0);
  Matrix agree = Matrix::Zero(kk, kk);
  for (std::size_t i = 0; i < c.size(); ++i) {
    count_prime[c_prime[i] - 1] += 1.0;
    agree(c_prime[i] - 1, c[i] - 1) += 1.0;
  }
  for (int b = 0; b < kk; ++b) {
    for (int a = 0; a < kk; ++a) cost(b, a) = count_prime[b] - agree(b, a);
  }
  return hungarian(cost).cost / static_cast<double>(c.size());
}

struct RecoveryResult {
  Clustering clustering;
  Embedding embedding;
  WeightVector weights;
};

/// Plug-in weighted ASE followed by k-means on the embedding rows.
inline RecoveryResult recover_communities(const NetworkCollection& networks, int d, int k,
                                          RhoVariant variant, const KMeansOptions& opts,
                                          RngStream& rng) {
  PluginResult plug = plugin_embedding(networks, d, variant);
  RecoveryResult out;
  out.clustering = kmeans(plug.embedding.coords, k, opts, rng);
  out.embedding = std::move(plug.embedding);
  out.weights = std::move(plug.weights);
  return out;
}

}  // namespace specnet

#endif  // SPECNET_CLUSTERING_HPP
