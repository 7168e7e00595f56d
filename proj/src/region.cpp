#include "regenlab/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "regenlab/errors.hpp"

namespace regenlab {

namespace {

constexpr double kEps = 1e-9;

double rel_tol(double scale) { return kEps * std::max(1.0, std::abs(scale)); }

// sigma_j for all j at once: prefix sums of the sorted vector.
std::vector<double> sigma_prefix(const RepairVector& beta) {
  std::vector<double> s(beta);
  std::sort(s.begin(), s.end());
  std::vector<double> pre(s.size() + 1, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) pre[i + 1] = pre[i] + s[i];
  return pre;
}

}  // namespace

double sigma(const RepairVector& beta, int j, int k) {
  const int d = static_cast<int>(beta.size());
  if (j < 1 || j > k || k > d) throw Error(Errc::InvalidParams, "sigma: need 1 <= j <= k <= d");
  std::vector<double> s(beta);
  std::sort(s.begin(), s.end());
  return std::accumulate(s.begin(), s.begin() + (d - k + j), 0.0);
}

bool contains(const FeasibleRegion& region, const RepairVector& beta) {
  const int d = static_cast<int>(beta.size());
  const int k = region.k();
  if (k > d) throw Error(Errc::InvalidParams, "contains: k exceeds vector length");
  const std::vector<double> pre = sigma_prefix(beta);
  for (int j = 1; j <= k; ++j) {
    if (pre[d - k + j] < region.x[j - 1] - rel_tol(region.x[j - 1])) return false;
  }
  return true;
}

FeasibleRegion msr_region(double M, int k) {
  if (k < 1) throw Error(Errc::InvalidParams, "msr_region: k must be positive");
  return FeasibleRegion{std::vector<double>(k, M / k)};
}

FeasibleRegion heuristic_region(double alpha, double beta_conv, int d, int k) {
  FeasibleRegion r;
  r.x.reserve(k);
  for (int j = 1; j <= k; ++j) r.x.push_back(std::min((d - k + j) * beta_conv, alpha));
  return r;
}

double conventional_beta(double alpha, int d, int k, double M) {
  if (k < 1 || d < k) throw Error(Errc::InvalidParams, "conventional_beta: need 1 <= k <= d");
  if (alpha * k < M - rel_tol(M)) throw Error(Errc::Infeasible, "alpha below M/k");
  // Term i = min((d-i+1) beta, alpha) caps first for small i. With the first
  // c terms capped, beta = (M - c*alpha) / sum_{i=c+1..k} (d-i+1).
  for (int c = 0; c <= k; ++c) {
    if (c == k) return alpha / (d - k + 1);  // k*alpha == M
    double slope = 0;
    for (int i = c + 1; i <= k; ++i) slope += d - i + 1;
    const double beta = (M - c * alpha) / slope;
    if (beta < -rel_tol(M)) continue;
    const bool prev_capped = c == 0 || (d - c + 1) * beta >= alpha - rel_tol(alpha);
    const bool next_uncapped = (d - c) * beta <= alpha + rel_tol(alpha);
    if (prev_capped && next_uncapped) return std::max(beta, 0.0);
  }
  throw Error(Errc::Infeasible, "conventional_beta: no regime matched");
}

RepairVector round_up(const RepairVector& beta) {
  RepairVector out(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) out[i] = std::ceil(beta[i] - kEps);
  return out;
}

RepairVector trim_to_region(const FeasibleRegion& region, RepairVector beta) {
  std::vector<std::size_t> order(beta.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (beta[a] != beta[b]) return beta[a] > beta[b];
    return a < b;
  });
  for (std::size_t idx : order) {
    double lo = 0.0, hi = beta[idx];
    RepairVector probe = beta;
    probe[idx] = lo;
    if (contains(region, probe)) {
      beta[idx] = lo;
      continue;
    }
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      probe[idx] = mid;
      if (contains(region, probe)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    beta[idx] = hi;  // feasible side of the bracket
  }
  return beta;
}

FrSolution fr_solve(const FeasibleRegion& region, const CapacityVector& c, double alpha) {
  const int d = static_cast<int>(c.size());
  const int k = region.k();
  if (k > d) throw Error(Errc::InvalidParams, "fr_solve: k exceeds provider count");
  double cmin = std::numeric_limits<double>::infinity();
  for (double ci : c) {
    if (ci <= 0) throw Error(Errc::InvalidParams, "fr_solve: capacities must be positive");
    cmin = std::min(cmin, ci);
  }

  auto beta_at = [&](double t) {
    RepairVector b(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) b[i] = std::min(t * c[i], alpha);
    return b;
  };

  // Without the alpha cap the optimum is max_j x_j / sigma_j(c); the cap can
  // only push t upward, so this is the lower end of the bracket.
  const std::vector<double> pre = sigma_prefix(c);
  double t = 0;
  for (int j = 1; j <= k; ++j) {
    const double sj = pre[d - k + j];
    if (region.x[j - 1] <= 0) continue;
    if (sj <= 0) throw Error(Errc::Infeasible, "fr_solve: zero sigma against positive bound");
    t = std::max(t, region.x[j - 1] / sj);
  }

  if (!contains(region, beta_at(t))) {
    double lo = t, hi = std::max(t, alpha / cmin);
    if (!contains(region, beta_at(hi)))
      throw Error(Errc::Infeasible, "fr_solve: region not reachable under the alpha cap");
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (contains(region, beta_at(mid))) {
        hi = mid;
      } else {
        lo = mid;
      }
      if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    }
    t = hi;
  }

  FrSolution out;
  out.t = t;
  out.beta = trim_to_region(region, beta_at(t));
  return out;
}

RepairVector msr_closed_form(const CapacityVector& c, double M, int k) {
  const int d = static_cast<int>(c.size());
  if (k < 1 || k > d) throw Error(Errc::InvalidParams, "msr_closed_form: need 1 <= k <= d");
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (c[a] != c[b]) return c[a] < c[b];
    return a < b;
  });
  const int m = d - k + 1;
  double denom = 0;
  for (int j = 0; j < m; ++j) denom += c[order[j]];
  const double scale = M / (k * denom);
  RepairVector beta(c.size());
  const double level = c[order[m - 1]] * scale;
  for (int j = 0; j < d; ++j) beta[order[j]] = j < m ? c[order[j]] * scale : level;
  return beta;
}

}  // namespace regenlab
