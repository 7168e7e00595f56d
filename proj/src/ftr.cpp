#include "regenlab/ftr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "regenlab/errors.hpp"
#include "regenlab/util.hpp"

namespace regenlab {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Sum of the m smallest among rates[1..d].
double sigma1_all(const std::vector<double>& rates, int m) {
  std::vector<double> v(rates.begin() + 1, rates.end());
  std::sort(v.begin(), v.end());
  double s = 0;
  for (int i = 0; i < m && i < static_cast<int>(v.size()); ++i) s += v[i];
  return s;
}

// Subtree rate sums over a raw parent array (parent[0] == -1).
std::vector<double> subtree_sums(const std::vector<int>& parent, const std::vector<double>& rates) {
  const int d = static_cast<int>(parent.size()) - 1;
  std::vector<double> sum(d + 1, 0.0);
  for (int u = 1; u <= d; ++u) sum[u] = rates[u];
  // Repeatedly push leaves upward; parent arrays here are guaranteed acyclic.
  std::vector<int> order;
  {
    std::vector<int> depth(d + 1, 0);
    for (int u = 1; u <= d; ++u) {
      int x = u, h = 0;
      while (x != 0) {
        x = parent[x];
        ++h;
      }
      depth[u] = h;
    }
    order.resize(d);
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
  }
  for (int u : order) {
    if (parent[u] != 0) sum[parent[u]] += sum[u];
  }
  return sum;
}

// Attaching u under new_parent is circular iff u already lies on
// new_parent's chain to the root.
bool creates_cycle(const std::vector<int>& parent, int u, int new_parent) {
  if (new_parent == u) return true;
  for (int x = new_parent; x > 0; x = parent[x]) {
    if (x == u) return true;
  }
  return false;
}

double threshold_of(const std::vector<double>& rates, double alpha, double beta_conv, int d,
                    int k) {
  return alpha * sigma1_all(rates, d - k + 1) / ((d - k + 1) * beta_conv);
}

}  // namespace

bool theorem5_check(const RepairVector& beta, double beta_conv, double alpha, int k) {
  const int d = static_cast<int>(beta.size());
  if (k < 1 || k > d) throw Error(Errc::InvalidParams, "theorem5_check: need 1 <= k <= d");
  std::vector<double> s(beta);
  std::sort(s.begin(), s.end());
  double pre = 0;
  int idx = 0;
  for (int j = 1; j <= k; ++j) {
    while (idx < d - k + j) pre += s[idx++];
    const double bound = std::min((d - k + j) * beta_conv, alpha);
    if (pre < bound - kEps * std::max(1.0, bound)) return false;
  }
  return true;
}

double time_for_alloc(const std::vector<double>& provider_rates, double beta_conv, int k) {
  const int d = static_cast<int>(provider_rates.size());
  if (k < 1 || k > d) throw Error(Errc::InvalidParams, "time_for_alloc: need 1 <= k <= d");
  std::vector<double> padded(provider_rates);
  padded.insert(padded.begin(), 0.0);
  const double s1 = sigma1_all(padded, d - k + 1);
  if (s1 <= kEps) throw Error(Errc::DegenerateAllocation, "sigma_1 of the allocation is zero");
  return (d - k + 1) * beta_conv / s1;
}

namespace {

// Builds the final solution from a tree and a rate vector: LP time from the
// tightened MDS constraint, constraint repair, trimming, flows and the
// achieved transmission time.
FtrSolution finalize_solution(const OverlayNetwork& net, std::vector<int> parent,
                              std::vector<double> rates, double alpha, double beta_conv,
                              int k) {
  const int d = net.providers();
  const int m = d - k + 1;
  FtrSolution sol;

  // Constraint on every tree edge: cap >= min(threshold, subtree sum).
  // Violations are repaired by shaving the largest rate inside the subtree.
  for (int pass = 0; pass < 100; ++pass) {
    const double thr = threshold_of(rates, alpha, beta_conv, d, k);
    const std::vector<double> sums = subtree_sums(parent, rates);
    int bad = -1;
    for (int u = 1; u <= d; ++u) {
      const double cap = net.cap(u, parent[u]);
      if (cap + kEps < thr && cap + kEps < sums[u]) {
        bad = u;
        break;
      }
    }
    if (bad < 0) break;
    const double excess = sums[bad] - net.cap(bad, parent[bad]);
    // largest rate within S(bad)
    int victim = -1;
    std::vector<int> stack{bad};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      if (victim < 0 || rates[x] > rates[victim]) victim = x;
      for (int w = 1; w <= d; ++w) {
        if (parent[w] == x) stack.push_back(w);
      }
    }
    rates[victim] = std::max(0.0, rates[victim] - excess);
  }

  const double s1 = sigma1_all(rates, m);
  if (s1 <= kEps) return sol;  // degenerate, invalid
  const double t_lp = (d - k + 1) * beta_conv / s1;
  {
    const double thr = alpha / t_lp;
    const std::vector<double> sums = subtree_sums(parent, rates);
    for (int u = 1; u <= d; ++u) {
      const double cap = net.cap(u, parent[u]);
      if (cap + 1e-6 < thr && cap + 1e-6 < sums[u]) return sol;  // still violated
    }
  }

  sol.tree = RegenerationTree(std::move(parent));
  sol.rates = std::move(rates);
  sol.beta_raw.resize(d);
  for (int u = 1; u <= d; ++u) sol.beta_raw[u - 1] = t_lp * sol.rates[u];
  sol.beta = trim_to_region(heuristic_region(alpha, beta_conv, d, k), sol.beta_raw);

  sol.flows.assign(d + 1, 0.0);
  double worst = 0;
  for (int u : sol.tree.bottom_up()) {
    double sum = 0;
    for (int x : sol.tree.subtree(u)) sum += sol.beta[x - 1];
    sol.flows[u] = std::min(sum, alpha);
    sol.bandwidth += sol.flows[u];
    const double cap = net.cap(u, sol.tree.parent(u));
    if (cap <= 0) {
      if (sol.flows[u] > kEps) return sol;  // dead edge with traffic
      continue;
    }
    worst = std::max(worst, sol.flows[u] / cap);
  }
  sol.t = worst;
  sol.valid = theorem5_check(sol.beta, beta_conv, alpha, k);
  return sol;
}

}  // namespace

FtrSolution algorithm2(const OverlayNetwork& net, int core_links, double alpha,
                       double beta_conv, int k, const FtrOptions& opts) {
  const int d = net.providers();
  if (core_links < 0 || core_links > d)
    throw Error(Errc::InvalidParams, "algorithm2: core_links out of range");
  if (k < 1 || k > d) throw Error(Errc::InvalidParams, "algorithm2: need 1 <= k <= d");
  const int m = d - k + 1;

  std::vector<int> parent(d + 1, -1);
  std::vector<bool> in_core(d + 1, false);
  std::vector<bool> core_provider(d + 1, false);
  in_core[0] = true;

  // Phase 1: greedily add the largest-capacity link in the cut.
  for (int step = 0; step < core_links; ++step) {
    double best = 0;
    int bu = -1, bv = -1;
    for (int u = 1; u <= d; ++u) {
      if (in_core[u]) continue;
      for (int v = 0; v <= d; ++v) {
        if (!in_core[v]) continue;
        if (net.cap(u, v) > best + kEps) {
          best = net.cap(u, v);
          bu = u;
          bv = v;
        }
      }
    }
    if (bu < 0) break;  // no usable link left to grow the core
    parent[bu] = bv;
    in_core[bu] = true;
    core_provider[bu] = true;
  }

  std::vector<double> rates(d + 1, 0.0);
  for (int u = 1; u <= d; ++u) {
    if (!core_provider[u]) continue;
    double bottleneck = kInf;
    for (int x = u; x != 0; x = parent[x]) bottleneck = std::min(bottleneck, net.cap(x, parent[x]));
    rates[u] = bottleneck;
  }

  // Phase 2: hook every remaining provider to its best link into the core.
  for (int u = 1; u <= d; ++u) {
    if (in_core[u]) continue;
    double best = -1;
    int bv = 0;
    for (int v = 0; v <= d; ++v) {
      if (!in_core[v]) continue;
      if (net.cap(u, v) > best + kEps) {
        best = net.cap(u, v);
        bv = v;
      }
    }
    parent[u] = bv;
    rates[u] = std::max(0.0, net.cap(u, bv));
  }

  auto considered = [&]() {
    std::vector<int> ids;
    for (int u = 1; u <= d; ++u) {
      if (opts.sigma_over_all || !core_provider[u]) ids.push_back(u);
    }
    return ids;
  }();

  auto p2_ok = [&](const std::vector<int>& par, const std::vector<double>& r) {
    const double thr = threshold_of(r, alpha, beta_conv, d, k);
    const std::vector<double> sums = subtree_sums(par, r);
    for (int u = 1; u <= d; ++u) {
      const double allowed =
          core_provider[u] ? std::max(net.cap(u, par[u]), thr) : net.cap(u, par[u]);
      if (sums[u] > allowed + kEps) return false;
    }
    return true;
  };

  // Largest admissible value for rates[x] with everything else fixed: the
  // tightest slack among the edges on x's path to the root.
  auto raise_limit = [&](const std::vector<int>& par, const std::vector<double>& r, int x) {
    const double thr = threshold_of(r, alpha, beta_conv, d, k);
    const std::vector<double> sums = subtree_sums(par, r);
    double limit = kInf;
    for (int a = x; a != 0; a = par[a]) {
      const double allowed =
          core_provider[a] ? std::max(net.cap(a, par[a]), thr) : net.cap(a, par[a]);
      limit = std::min(limit, allowed - (sums[a] - r[x]));
    }
    return limit;
  };

  for (int sweep = 0; sweep < 200; ++sweep) {
    // Allocations above the m-th smallest level cannot enlarge sigma_1.
    if (static_cast<int>(considered.size()) >= m) {
      std::vector<double> vals;
      for (int u : considered) vals.push_back(rates[u]);
      std::nth_element(vals.begin(), vals.begin() + (m - 1), vals.end());
      const double level = vals[m - 1];
      for (int u : considered) rates[u] = std::min(rates[u], level);
    }
    // Clamping can leave relayed subtrees over capacity; shave them back.
    for (int pass = 0; pass < 4 * d * d; ++pass) {
      const std::vector<double> sums = subtree_sums(parent, rates);
      int bad = -1;
      for (int u = 1; u <= d; ++u) {
        if (!core_provider[u] && sums[u] > net.cap(u, parent[u]) + kEps) {
          bad = u;
          break;
        }
      }
      if (bad < 0) break;
      int victim = -1;
      std::vector<int> stack{bad};
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        if (victim < 0 || rates[x] > rates[victim]) victim = x;
        for (int w = 1; w <= d; ++w) {
          if (parent[w] == x) stack.push_back(w);
        }
      }
      rates[victim] = std::max(0.0, rates[victim] - (sums[bad] - net.cap(bad, parent[bad])));
    }

    bool changed = false;
    for (int u = 1; u <= d; ++u) {
      if (in_core[u]) continue;
      const int old_parent = parent[u];
      for (int v = 0; v <= d; ++v) {
        if (v == u || v == old_parent || net.cap(u, v) <= 0) continue;
        if (creates_cycle(parent, u, v)) continue;
        parent[u] = v;
        if (!p2_ok(parent, rates)) {
          parent[u] = old_parent;
          continue;
        }
        // Try to push one of the m smallest rates upward in the new tree.
        std::vector<int> order = considered;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
          if (rates[a] != rates[b]) return rates[a] < rates[b];
          return a < b;
        });
        bool raised = false;
        for (int j = 0; j < m && j < static_cast<int>(order.size()); ++j) {
          const int x = order[j];
          if (core_provider[x]) continue;
          const double limit = raise_limit(parent, rates, x);
          if (limit > rates[x] + 1e-6) {
            rates[x] = limit;
            raised = true;
            break;
          }
        }
        if (raised) {
          changed = true;
          break;  // keep the pivot, move to the next provider
        }
        parent[u] = old_parent;
      }
    }
    if (!changed) break;
  }

  return finalize_solution(net, parent, rates, alpha, beta_conv, k);
}

FtrSolution ftr_solve(const OverlayNetwork& net, double alpha, double beta_conv, int k,
                      const FtrOptions& opts) {
  const int d = net.providers();
  FtrSolution best;
  auto offer = [&](FtrSolution cand) {
    if (!cand.valid) return;
    if (!best.valid || cand.t < best.t - 1e-12) best = std::move(cand);
  };

  for (int i = 0; i <= d; ++i) offer(algorithm2(net, i, alpha, beta_conv, k, opts));

  // Flexible-star seed: scheduling the star solution through the tree
  // machinery can only tie or improve it, and it pins t(FTR) <= t(FR).
  {
    const CapacityVector direct = net.direct_capacities();
    if (std::all_of(direct.begin(), direct.end(), [](double c) { return c > 0; })) {
      const FrSolution fr = fr_solve(heuristic_region(alpha, beta_conv, d, k), direct, alpha);
      if (fr.t > 0) {
        std::vector<int> parent(d + 1, 0);
        parent[0] = -1;
        std::vector<double> rates(d + 1, 0.0);
        for (int u = 1; u <= d; ++u) rates[u] = fr.beta[u - 1] / fr.t;
        offer(finalize_solution(net, std::move(parent), std::move(rates), alpha, beta_conv, k));
      }
    }
  }
  // Constant-traffic tree seed, same argument against the tree scheme.
  {
    const RegenerationTree tr = algorithm1(net, alpha, beta_conv);
    const double t_tr = regen_time_or_inf(tr, tr_flows(tr, beta_conv, alpha), net);
    if (std::isfinite(t_tr) && t_tr > 0) {
      std::vector<double> rates(d + 1, beta_conv / t_tr);
      rates[0] = 0;
      offer(finalize_solution(net, tr.parents(), std::move(rates), alpha, beta_conv, k));
    }
  }

  if (!best.valid)
    throw Error(Errc::Infeasible, "ftr_solve: no MDS-preserving schedule found");
  return best;
}

namespace {

// max c^T x subject to A x <= b, x >= 0 with b >= 0 (slack basis feasible).
// Bland's rule; tiny dense tableau, plenty for the d <= 6 oracle.
double simplex_max(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                   const std::vector<double>& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = b[i];
  }
  for (int j = 0; j < n; ++j) t[m][j] = -c[j];
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (int iter = 0; iter < 20000; ++iter) {
    int e = -1;
    for (int j = 0; j < n + m; ++j) {
      if (t[m][j] < -1e-9) {
        e = j;
        break;
      }
    }
    if (e < 0) break;
    int l = -1;
    double best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (t[i][e] > 1e-9) {
        const double ratio = t[i][n + m] / t[i][e];
        if (l < 0 || ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && basis[i] < basis[l])) {
          l = i;
          best_ratio = ratio;
        }
      }
    }
    if (l < 0) return kInf;  // unbounded
    const double piv = t[l][e];
    for (double& v : t[l]) v /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == l || t[i][e] == 0) continue;
      const double f = t[i][e];
      for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[l][j];
    }
    basis[l] = e;
  }
  return t[m][n + m];
}

}  // namespace

double oracle_ftr_small(const OverlayNetwork& net, const RegenerationTree& tree, double alpha,
                        double beta_conv, int k) {
  const int d = net.providers();
  if (d > 6) throw Error(Errc::TooLarge, "oracle_ftr_small: too many providers");
  if (k < 1 || k > d) throw Error(Errc::InvalidParams, "oracle_ftr_small: need 1 <= k <= d");
  const int m = d - k + 1;
  const double K = m * beta_conv;
  const double big = 1e6 * std::max(1.0, net.max_capacity());

  double best = kInf;
  for (int mask = 0; mask < (1 << d); ++mask) {
    double t_floor = 0;
    bool usable = true;
    std::vector<int> flow_edges;
    for (int u = 1; u <= d; ++u) {
      const double cap = net.cap(u, tree.parent(u));
      if (mask & (1 << (u - 1))) {
        // Guaranteed through the re-encoding branch: t*cap >= alpha.
        if (cap <= 0) {
          usable = false;
          break;
        }
        t_floor = std::max(t_floor, alpha / cap);
      } else {
        flow_edges.push_back(u);
      }
    }
    if (!usable) continue;

    // maximize z = sigma_1 of the d rates subject to the flow-branch caps.
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for_each_combination(d, m, [&](std::span<const int> J) {
      std::vector<double> row(d + 1, 0.0);
      row[d] = 1;
      for (int j : J) row[j] = -1;
      A.push_back(std::move(row));
      b.push_back(0);
      return true;
    });
    for (int u : flow_edges) {
      std::vector<double> row(d + 1, 0.0);
      for (int x : tree.subtree(u)) row[x - 1] = 1;
      A.push_back(std::move(row));
      b.push_back(net.cap(u, tree.parent(u)));
    }
    for (int j = 0; j < d; ++j) {
      std::vector<double> row(d + 1, 0.0);
      row[j] = 1;
      A.push_back(std::move(row));
      b.push_back(big);
    }
    std::vector<double> obj(d + 1, 0.0);
    obj[d] = 1;
    const double s1 = simplex_max(A, b, obj);
    if (s1 <= 1e-12) continue;
    best = std::min(best, std::max(t_floor, K / s1));
  }
  if (!std::isfinite(best))
    throw Error(Errc::Infeasible, "oracle_ftr_small: tree admits no schedule");
  return best;
}

}  // namespace regenlab
