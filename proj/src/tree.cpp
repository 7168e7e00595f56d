#include "regenlab/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "regenlab/errors.hpp"

namespace regenlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;
}  // namespace

RegenerationTree::RegenerationTree(std::vector<int> parent) : parent_(std::move(parent)) {
  const int n = static_cast<int>(parent_.size());
  if (n < 2 || parent_[0] != -1)
    throw Error(Errc::InvalidParams, "tree: node 0 must be the parentless root");
  children_.assign(n, {});
  for (int u = 1; u < n; ++u) {
    if (parent_[u] < 0 || parent_[u] >= n || parent_[u] == u)
      throw Error(Errc::InvalidParams, "tree: parent index out of range");
    children_[parent_[u]].push_back(u);
  }
  // Walk every chain to the root; a cycle never reaches it.
  for (int u = 1; u < n; ++u) {
    int steps = 0, x = u;
    while (x != 0) {
      x = parent_[x];
      if (++steps > n) throw Error(Errc::InvalidParams, "tree: cycle detected");
    }
  }
  std::vector<int> top_down;
  top_down.reserve(n);
  top_down.push_back(0);
  for (std::size_t i = 0; i < top_down.size(); ++i) {
    for (int c : children_[top_down[i]]) top_down.push_back(c);
  }
  m_.assign(n, 1);
  bottom_up_.clear();
  for (auto it = top_down.rbegin(); it != top_down.rend(); ++it) {
    if (*it == 0) continue;
    bottom_up_.push_back(*it);
    m_[parent_[*it]] += m_[*it];
  }
}

RegenerationTree RegenerationTree::star(int providers) {
  std::vector<int> parent(providers + 1, 0);
  parent[0] = -1;
  return RegenerationTree(std::move(parent));
}

std::vector<int> RegenerationTree::subtree(int u) const {
  std::vector<int> out{u};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int c : children_[out[i]]) out.push_back(c);
  }
  return out;
}

bool RegenerationTree::in_subtree(int node, int root) const {
  int x = node;
  while (x != -1) {
    if (x == root) return true;
    x = parent_[x];
  }
  return false;
}

FlowAssignment tr_flows(const RegenerationTree& t, double beta, double alpha) {
  FlowAssignment f(t.providers() + 1, 0.0);
  for (int u = 1; u <= t.providers(); ++u) f[u] = std::min(t.subtree_size(u) * beta, alpha);
  return f;
}

double regen_time_or_inf(const RegenerationTree& t, const FlowAssignment& f,
                         const OverlayNetwork& net) {
  double worst = 0;
  for (int u = 1; u <= t.providers(); ++u) {
    const double c = net.cap(u, t.parent(u));
    if (c <= 0) {
      if (f[u] > 0) return kInf;
      continue;
    }
    worst = std::max(worst, f[u] / c);
  }
  return worst;
}

double regen_time(const RegenerationTree& t, const FlowAssignment& f, const OverlayNetwork& net) {
  for (int u = 1; u <= t.providers(); ++u) {
    if (net.cap(u, t.parent(u)) <= 0 && f[u] > 0)
      throw Error(Errc::UnusableEdge, "tree edge with zero capacity");
  }
  return regen_time_or_inf(t, f, net);
}

namespace {

// Regeneration time of a partially built tree given parent assignments for
// the `attached` node set (node 0 implicit).
double partial_time(const OverlayNetwork& net, const std::vector<int>& parent,
                    const std::vector<int>& attached, double alpha, double beta) {
  const int n = net.nodes();
  std::vector<int> m(n, 0);
  for (int u : attached) m[u] = 1;
  for (int u : attached) {
    for (int a = parent[u]; a > 0; a = parent[a]) ++m[a];
  }
  double worst = 0;
  for (int u : attached) {
    const double f = std::min(m[u] * beta, alpha);
    const double c = net.cap(u, parent[u]);
    if (c <= 0) {
      if (f > 0) return kInf;
      continue;
    }
    worst = std::max(worst, f / c);
  }
  return worst;
}

}  // namespace

RegenerationTree algorithm1(const OverlayNetwork& net, double alpha, double beta) {
  const int d = net.providers();
  std::vector<int> parent(d + 1, -1);
  std::vector<int> attached;
  std::vector<bool> in_tree(d + 1, false);
  in_tree[0] = true;

  for (int step = 0; step < d; ++step) {
    double best = kInf;
    int best_v = -1, best_u = -1;
    for (int v = 1; v <= d; ++v) {
      if (in_tree[v]) continue;
      for (int u = 0; u <= d; ++u) {
        if (!in_tree[u]) continue;
        parent[v] = u;
        attached.push_back(v);
        const double t = partial_time(net, parent, attached, alpha, beta);
        attached.pop_back();
        parent[v] = -1;
        if (best_v < 0 || t < best - kEps) {
          best = t;
          best_v = v;
          best_u = u;
        }
      }
    }
    parent[best_v] = best_u;
    attached.push_back(best_v);
    in_tree[best_v] = true;
  }
  return RegenerationTree(std::move(parent));
}

namespace {

// Decodes a Pruefer sequence over labels 0..n-1 into a parent array rooted
// at node 0.
std::vector<int> pruefer_to_parents(const std::vector<int>& seq, int n) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  std::vector<int> deg(n, 1);
  for (int x : seq) ++deg[x];
  std::vector<int> work = deg;
  for (int x : seq) {
    int leaf = -1;
    for (int i = 0; i < n; ++i) {
      if (work[i] == 1) {
        leaf = i;
        break;
      }
    }
    edges.emplace_back(leaf, x);
    work[leaf] = 0;
    --work[x];
  }
  int a = -1, b = -1;
  for (int i = 0; i < n; ++i) {
    if (work[i] == 1) (a < 0 ? a : b) = i;
  }
  edges.emplace_back(a, b);

  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> parent(n, -1), stack{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = u;
        stack.push_back(v);
      }
    }
  }
  return parent;
}

}  // namespace

RegenerationTree brute_force_ort(const OverlayNetwork& net, double alpha, double beta) {
  const int d = net.providers();
  if (d > 7) throw Error(Errc::TooLarge, "brute_force_ort: too many providers to enumerate");
  const int n = d + 1;
  if (d == 1) return RegenerationTree::star(1);

  double best = kInf;
  std::vector<int> best_parent;
  std::vector<int> seq(n - 2, 0);
  while (true) {
    std::vector<int> parent = pruefer_to_parents(seq, n);
    RegenerationTree t(std::move(parent));
    const double time = regen_time_or_inf(t, tr_flows(t, beta, alpha), net);
    // Sequences enumerate in lexicographic order; the first optimum wins.
    if (best_parent.empty() || time < best) {
      best = time;
      best_parent = t.parents();
    }
    int i = 0;
    for (; i < n - 2; ++i) {
      if (++seq[i] < n) break;
      seq[i] = 0;
    }
    if (i == n - 2) break;
  }
  return RegenerationTree(std::move(best_parent));
}

namespace {

struct ThresholdSearch {
  const OverlayNetwork& net;
  double alpha, beta, threshold;
  std::vector<std::vector<int>> cand;  // candidate parents per node
  std::vector<int> order;              // providers, children before parents
  std::vector<double> m;               // accumulated subtree sizes
  std::vector<bool> assigned;
  long long budget = 50'000'000;

  bool edge_ok(int u, int p, double mu) const {
    return std::min(mu * beta, alpha) <= threshold * net.cap(u, p) + kEps;
  }

  // One-level lower-bound prune: every unassigned node must still have a
  // usable parent once the loads forced into it by single-option nodes are
  // counted.
  bool prune() {
    const int d = net.providers();
    std::vector<double> pending(d + 1, 0.0);
    for (int x = 1; x <= d; ++x) {
      if (assigned[x]) continue;
      int only = -1, options = 0;
      for (int p : cand[x]) {
        if (edge_ok(x, p, m[x])) {
          ++options;
          only = p;
        }
      }
      if (options == 0) return true;
      if (options == 1) pending[only] += m[x];
    }
    for (int q = 1; q <= d; ++q) {
      if (assigned[q] || pending[q] == 0) continue;
      bool ok = false;
      for (int p : cand[q]) {
        if (edge_ok(q, p, m[q] + pending[q])) {
          ok = true;
          break;
        }
      }
      if (!ok) return true;
    }
    return false;
  }

  bool dfs(std::size_t i) {
    if (--budget <= 0) throw Error(Errc::TooLarge, "ort_time_at_most: search budget exceeded");
    if (i == order.size()) return true;
    if (prune()) return false;
    const int u = order[i];
    for (int p : cand[u]) {
      if (!edge_ok(u, p, m[u])) continue;
      assigned[u] = true;
      m[p] += m[u];
      if (dfs(i + 1)) return true;
      m[p] -= m[u];
      assigned[u] = false;
    }
    return false;
  }
};

}  // namespace

bool ort_time_at_most(const OverlayNetwork& net, double alpha, double beta, double threshold) {
  const int d = net.providers();
  std::vector<std::vector<int>> cand(d + 1);
  for (int u = 1; u <= d; ++u) {
    for (int p = 0; p <= d; ++p) {
      if (p != u && net.cap(u, p) > 0) cand[u].push_back(p);
    }
    if (cand[u].empty()) return false;  // u cannot send anything anywhere
  }

  // Children must be placed before their potential parents, so order nodes
  // topologically over the positive-capacity digraph.
  std::vector<int> order;
  {
    std::vector<int> indeg(d + 1, 0);
    for (int u = 1; u <= d; ++u) {
      for (int p : cand[u]) {
        if (p != 0) ++indeg[p];
      }
    }
    std::vector<bool> done(d + 1, false);
    for (int step = 0; step < d; ++step) {
      int pick = -1;
      for (int u = 1; u <= d; ++u) {
        if (!done[u] && indeg[u] == 0) {
          pick = u;
          break;
        }
      }
      if (pick < 0) break;  // cyclic
      done[pick] = true;
      order.push_back(pick);
      for (int p : cand[pick]) {
        if (p != 0) --indeg[p];
      }
    }
  }

  if (static_cast<int>(order.size()) != d) {
    if (d > 7)
      throw Error(Errc::TooLarge, "ort_time_at_most: cyclic link structure with d > 7");
    RegenerationTree best = brute_force_ort(net, alpha, beta);
    return regen_time_or_inf(best, tr_flows(best, beta, alpha), net) <= threshold + kEps;
  }

  ThresholdSearch s{net, alpha, beta, threshold, std::move(cand), std::move(order),
                    std::vector<double>(d + 1, 1.0), std::vector<bool>(d + 1, false)};
  return s.dfs(0);
}

RegenerationTree rctree_tree(const OverlayNetwork& net, double beta, int min_root_degree) {
  const int d = net.providers();
  const int need = std::min(min_root_degree, d);
  std::vector<int> parent(d + 1, -1);
  std::vector<bool> in_tree(d + 1, false);
  in_tree[0] = true;
  int root_children = 0;
  int remaining = d;
  double cur = 0;

  for (int step = 0; step < d; ++step) {
    double best = kInf;
    int best_v = -1, best_u = -1;
    for (int v = 1; v <= d; ++v) {
      if (in_tree[v]) continue;
      for (int u = 0; u <= d; ++u) {
        if (!in_tree[u]) continue;
        // A relay attachment must leave enough unplaced providers to reach
        // the required newcomer degree.
        if (u != 0 && root_children + remaining - 1 < need) continue;
        const double c = net.cap(v, u);
        const double t = c > 0 ? std::max(cur, beta / c) : kInf;
        if (best_v < 0 || t < best - kEps) {
          best = t;
          best_v = v;
          best_u = u;
        }
      }
    }
    parent[best_v] = best_u;
    in_tree[best_v] = true;
    if (best_u == 0) ++root_children;
    --remaining;
    cur = best == kInf ? cur : std::max(cur, best);
  }
  return RegenerationTree(std::move(parent));
}

VcReduction vc_reduction(const VcInstance& g, int cover_size) {
  if (g.vertices < 1) throw Error(Errc::InvalidParams, "vc_reduction: empty graph");
  for (auto [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= g.vertices || b >= g.vertices || a == b)
      throw Error(Errc::InvalidParams, "vc_reduction: bad edge");
  }
  const int V = g.vertices;
  const int E = static_cast<int>(g.edges.size());
  const int d = 2 + V + E;  // a, b, vertex layer, edge layer

  VcReduction r{OverlayNetwork(d)};
  r.a_node = 1;
  r.b_node = 2;
  r.vertex_base = 3;
  r.edge_base = 3 + V;
  const double a_cap = cover_size + E + 1;
  const double unlimited = a_cap + V + 1;  // sum of all finite capacities + 1

  r.net.set_cap(r.a_node, 0, a_cap);
  r.net.set_cap(r.b_node, 0, unlimited);
  for (int v = 0; v < V; ++v) {
    r.net.set_cap(r.vertex_base + v, r.a_node, unlimited);
    r.net.set_cap(r.vertex_base + v, r.b_node, 1);
  }
  for (int e = 0; e < E; ++e) {
    r.net.set_cap(r.edge_base + e, r.vertex_base + g.edges[e].first, unlimited);
    r.net.set_cap(r.edge_base + e, r.vertex_base + g.edges[e].second, unlimited);
  }
  r.beta = 1;
  r.alpha = d + 2;  // never binds: subtree sizes cannot exceed d+1
  r.threshold = 1;
  return r;
}

}  // namespace regenlab
