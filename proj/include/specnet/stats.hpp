#ifndef SPECNET_STATS_HPP
#define SPECNET_STATS_HPP

// Cell-level two-sample testing between two estimated networks under a vertex
// parcellation, with Benjamini-Hochberg / Benjamini-Yekutieli FDR control.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "specnet/error.hpp"
#include "specnet/matrix.hpp"

namespace specnet {

/// Region labels in [1, K] per vertex; every region nonempty.
struct Parcellation {
  int regions = 0;
  std::vector<int> assignment;
  std::vector<std::string> names;  // empty or one per region

  static Parcellation make(std::vector<int> assignment, std::vector<std::string> names = {}) {
    if (assignment.empty()) throw InvalidArgument("parcellation has no vertices");
    int k = 0;
    for (int r : assignment) {
      if (r < 1) throw InvalidArgument("parcellation region labels must be >= 1");
      k = std::max(k, r);
    }
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int r : assignment) ++sizes[r - 1];
    for (int r = 0; r < k; ++r) {
      if (sizes[r] == 0) throw InvalidArgument("parcellation region " + std::to_string(r + 1) + " is empty");
    }
    if (!names.empty() && static_cast<int>(names.size()) != k) {
      throw InvalidArgument("parcellation names do not match region count");
    }
    return Parcellation{k, std::move(assignment), std::move(names)};
  }

  Index vertex_count() const noexcept { return static_cast<Index>(assignment.size()); }

  std::vector<Index> members(int region) const {
    std::vector<Index> out;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (assignment[i] == region) out.push_back(static_cast<Index>(i));
    }
    return out;
  }
};

/// Entries of cell (k, l), 1 <= k <= l <= K. Off-diagonal cells take the full
/// rectangular block; diagonal cells the upper triangle with the diagonal.
inline std::vector<double> cell_entries(const SymmetricMatrix& p_hat, const Parcellation& parc, int k,
                                        int l) {
  if (p_hat.size() != parc.vertex_count()) throw InvalidArgument("cell_entries: size mismatch");
  if (k < 1 || l < k || l > parc.regions) {
    throw InvalidArgument("cell_entries: need 1 <= k <= l <= " + std::to_string(parc.regions));
  }
  const auto rows = parc.members(k);
  std::vector<double> out;
  if (k == l) {
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t b = a; b < rows.size(); ++b) out.push_back(p_hat(rows[a], rows[b]));
    }
  } else {
    const auto cols = parc.members(l);
    out.reserve(rows.size() * cols.size());
    for (Index i : rows) {
      for (Index j : cols) out.push_back(p_hat(i, j));
    }
  }
  return out;
}

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  double df = 0.0;
};

/// Welch's unequal-variance t-test, two-sided, Welch-Satterthwaite degrees of
/// freedom. The t CDF is evaluated through the regularized incomplete beta
/// function.
inline TTestResult welch_ttest(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) throw DegenerateSample("welch_ttest: each sample needs >= 2 values");
  auto moments = [](std::span<const double> v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double e : v) ss += (e - mean) * (e - mean);
    return std::pair{mean, ss / static_cast<double>(v.size() - 1)};
  };
  const auto [mx, vx] = moments(x);
  const auto [my, vy] = moments(y);
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  const double ax = vx / nx;
  const double ay = vy / ny;
  const double se2 = ax + ay;
  if (!(se2 > 0)) throw DegenerateSample("welch_ttest: both samples have zero variance");
  TTestResult r;
  r.t = (mx - my) / std::sqrt(se2);
  r.df = se2 * se2 / (ax * ax / (nx - 1) + ay * ay / (ny - 1));
  if (r.t == 0) {
    r.p = 1.0;
  } else {
    const boost::math::students_t dist(r.df);
    r.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
  }
  return r;
}

enum class FdrMethod { bh, by };

inline std::string_view to_string(FdrMethod m) { return m == FdrMethod::bh ? "bh" : "by"; }

inline FdrMethod parse_fdr_method(std::string_view s) {
  if (s == "bh" || s == "BH") return FdrMethod::bh;
  if (s == "by" || s == "BY") return FdrMethod::by;
  throw InvalidArgument("unknown FDR method '" + std::string(s) + "'");
}

namespace detail {

inline void check_fdr_inputs(std::span<const double> p, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("FDR level alpha must lie in (0, 1)");
  for (double v : p) {
    if (!(v >= 0 && v <= 1)) throw InvalidArgument("p-values must lie in [0, 1]");
  }
}

// Rejects the k* smallest p-values, k* = max{k : p_(k) <= k level / m}.
inline std::vector<bool> step_up(std::span<const double> p, double level) {
  const std::size_t m = p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  std::size_t k_star = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    if (p[order[k - 1]] <= static_cast<double>(k) * level / static_cast<double>(m)) k_star = k;
  }
  std::vector<bool> out(m, false);
  for (std::size_t k = 0; k < k_star; ++k) out[order[k]] = true;
  return out;
}

}  // namespace detail

inline std::vector<bool> bh_adjust(std::span<const double> p, double alpha) {
  detail::check_fdr_inputs(p, alpha);
  return detail::step_up(p, alpha);
}

/// BH at alpha / H_m, H_m the m-th harmonic number.
inline std::vector<bool> by_adjust(std::span<const double> p, double alpha) {
  detail::check_fdr_inputs(p, alpha);
  double harmonic = 0.0;
  for (std::size_t i = 1; i <= p.size(); ++i) harmonic += 1.0 / static_cast<double>(i);
  return detail::step_up(p, p.empty() ? alpha : alpha / harmonic);
}

inline std::vector<bool> fdr_adjust(std::span<const double> p, double alpha, FdrMethod method) {
  return method == FdrMethod::bh ? bh_adjust(p, alpha) : by_adjust(p, alpha);
}

struct CellResult {
  int k = 0;
  int l = 0;
  double t_stat = 0.0;
  double p_value = 1.0;
  bool rejected = false;
  /// Too few entries or zero variance: excluded from the FDR family.
  bool degenerate = false;
};

struct CellTestReport {
  std::vector<CellResult> cells;
  FdrMethod method = FdrMethod::bh;
  double alpha = 0.05;

  std::size_t rejections() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const CellResult& c) { return c.rejected; }));
  }
};

/// Welch test on every cell (k <= l), then FDR control across the testable cells.
inline CellTestReport cell_test_report(const SymmetricMatrix& p_hat_a, const SymmetricMatrix& p_hat_b,
                                       const Parcellation& parc, double alpha, FdrMethod method) {
  if (p_hat_a.size() != p_hat_b.size()) throw InvalidArgument("cell_test_report: size mismatch");
  if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("FDR level alpha must lie in (0, 1)");
  CellTestReport report;
  report.method = method;
  report.alpha = alpha;
  std::vector<double> pvals;
  std::vector<std::size_t> tested;
  for (int k = 1; k <= parc.regions; ++k) {
    for (int l = k; l <= parc.regions; ++l) {
      CellResult cell;
      cell.k = k;
      cell.l = l;
      const auto xa = cell_entries(p_hat_a, parc, k, l);
      const auto xb = cell_entries(p_hat_b, parc, k, l);
      try {
        const TTestResult t = welch_ttest(xa, xb);
        cell.t_stat = t.t;
        cell.p_value = t.p;
        tested.push_back(report.cells.size());
        pvals.push_back(t.p);
      } catch (const DegenerateSample&) {
        cell.degenerate = true;
      }
      report.cells.push_back(cell);
    }
  }
  const auto flags = fdr_adjust(pvals, alpha, method);
  for (std::size_t i = 0; i < tested.size(); ++i) report.cells[tested[i]].rejected = flags[i];
  return report;
}

}  // namespace specnet

#endif  // SPECNET_STATS_HPP
