#include "regenlab/info_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "regenlab/errors.hpp"
#include "regenlab/util.hpp"

namespace regenlab {

namespace {

constexpr double kEps = 1e-9;

// Plain Dinic over an explicit residual edge list. Graphs here are tiny
// (hundreds of vertices), so no scaling tricks are needed.
class Dinic {
 public:
  explicit Dinic(int n) : head_(n, -1), level_(n), it_(n) {}

  void add_edge(int u, int v, double cap) {
    edges_.push_back({v, head_[u], cap});
    head_[u] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({u, head_[v], 0.0});
    head_[v] = static_cast<int>(edges_.size()) - 1;
  }

  double max_flow(int s, int t) {
    double flow = 0;
    while (bfs(s, t)) {
      it_ = head_;
      double f;
      while ((f = dfs(s, t, std::numeric_limits<double>::infinity())) > kEps) flow += f;
    }
    return flow;
  }

 private:
  struct E {
    int to, next;
    double cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > kEps && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(int u, int t, double pushed) {
    if (u == t) return pushed;
    for (int& e = it_[u]; e != -1; e = edges_[e].next) {
      const int v = edges_[e].to;
      if (edges_[e].cap > kEps && level_[v] == level_[u] + 1) {
        const double f = dfs(v, t, std::min(pushed, edges_[e].cap));
        if (f > kEps) {
          edges_[e].cap -= f;
          edges_[e ^ 1].cap += f;
          return f;
        }
      }
    }
    return 0;
  }

  std::vector<E> edges_;
  std::vector<int> head_, level_, it_;
};

}  // namespace

RepairEvent RepairEvent::star(int failed, std::vector<int> providers, std::vector<double> beta) {
  RepairEvent e;
  e.failed = failed;
  e.providers = std::move(providers);
  e.parent.assign(e.providers.size(), -1);
  e.flow = std::move(beta);
  return e;
}

InfoFlowGraph InfoFlowGraph::build(int initial_nodes, double alpha, const RepairHistory& history) {
  if (initial_nodes < 1) throw Error(Errc::InvalidHistory, "need at least one initial node");
  InfoFlowGraph g;
  g.n_ = initial_nodes;
  g.alpha_ = alpha;
  g.names_.push_back("s");
  g.vertex_count_ = 1;
  g.live_out_.assign(initial_nodes, -1);

  auto new_pair = [&](int node, int version) {
    const int in = g.vertex_count_++;
    const int out = g.vertex_count_++;
    g.names_.push_back("n" + std::to_string(node) + "v" + std::to_string(version) + ".in");
    g.names_.push_back("n" + std::to_string(node) + "v" + std::to_string(version) + ".out");
    g.edges_.push_back({in, out, alpha, false});
    return std::pair{in, out};
  };

  for (int u = 0; u < initial_nodes; ++u) {
    auto [in, out] = new_pair(u, 0);
    g.edges_.push_back({0, in, 0.0, true});  // source feeds every initial node
    g.live_out_[u] = out;
  }

  std::vector<int> version(initial_nodes, 0);
  for (const RepairEvent& ev : history) {
    const std::size_t d = ev.providers.size();
    if (ev.failed < 0 || ev.failed >= initial_nodes)
      throw Error(Errc::InvalidHistory, "failed node id out of range");
    if (ev.parent.size() != d || ev.flow.size() != d)
      throw Error(Errc::InvalidHistory, "event arrays must align with providers");
    std::vector<bool> seen(initial_nodes, false);
    for (std::size_t i = 0; i < d; ++i) {
      const int p = ev.providers[i];
      if (p < 0 || p >= initial_nodes || p == ev.failed || seen[p])
        throw Error(Errc::InvalidHistory, "bad provider list");
      seen[p] = true;
      if (ev.flow[i] < 0) throw Error(Errc::InvalidHistory, "negative flow");
      if (ev.parent[i] != -1 &&
          (ev.parent[i] < 0 || ev.parent[i] >= static_cast<int>(d) ||
           ev.parent[i] == static_cast<int>(i)))
        throw Error(Errc::InvalidHistory, "bad parent index");
    }
    // Parent chains must reach the newcomer.
    for (std::size_t i = 0; i < d; ++i) {
      int hops = 0, x = static_cast<int>(i);
      while (ev.parent[x] != -1) {
        x = ev.parent[x];
        if (++hops > static_cast<int>(d)) throw Error(Errc::InvalidHistory, "repair tree cycle");
      }
    }

    auto [in, out] = new_pair(ev.failed, ++version[ev.failed]);
    for (std::size_t i = 0; i < d; ++i) {
      const int from = g.live_out_[ev.providers[i]];
      const int to = ev.parent[i] == -1 ? in : g.live_out_[ev.providers[ev.parent[i]]];
      g.edges_.push_back({from, to, ev.flow[i], false});
    }
    g.live_out_[ev.failed] = out;
  }
  return g;
}

double InfoFlowGraph::min_cut(std::span<const int> collectors) const {
  double finite_sum = 0;
  for (const Edge& e : edges_) {
    if (!e.infinite) finite_sum += e.cap;
  }
  const double inf_cap = finite_sum + 1.0;

  Dinic dinic(vertex_count_ + 1);
  const int dc = vertex_count_;
  for (const Edge& e : edges_) dinic.add_edge(e.from, e.to, e.infinite ? inf_cap : e.cap);
  std::vector<bool> seen(n_, false);
  for (int id : collectors) {
    if (id < 0 || id >= n_ || seen[id])
      throw Error(Errc::InvalidParams, "min_cut: bad collector set");
    seen[id] = true;
    dinic.add_edge(live_out_[id], dc, inf_cap);
  }
  return dinic.max_flow(0, dc);
}

std::string InfoFlowGraph::dump_edges() const {
  std::ostringstream os;
  for (int v = 0; v < vertex_count_; ++v) os << "# " << v << " " << names_[v] << "\n";
  for (const Edge& e : edges_) {
    os << e.from << " " << e.to << " ";
    if (e.infinite) {
      os << "inf";
    } else {
      os << e.cap;
    }
    os << "\n";
  }
  return os.str();
}

bool min_cut_condition(const FeasibleRegion& region, double alpha, double M) {
  double total = 0;
  for (double xj : region.x) total += std::min(xj, alpha);
  return total >= M - kEps * std::max(1.0, M);
}

MinCutReport verify_scheme_min_cut(int initial_nodes, double alpha, double M, int k,
                                   const RepairHistory& history,
                                   std::optional<int> sample_count, std::uint64_t seed) {
  const InfoFlowGraph g = InfoFlowGraph::build(initial_nodes, alpha, history);
  MinCutReport report;
  report.worst_cut = std::numeric_limits<double>::infinity();

  auto consider = [&](std::span<const int> subset) {
    const double cut = g.min_cut(subset);
    ++report.subsets_checked;
    if (cut < report.worst_cut) {
      report.worst_cut = cut;
      report.worst_subset.assign(subset.begin(), subset.end());
    }
  };

  if (sample_count) {
    Rng rng(seed);
    std::vector<int> ids(initial_nodes);
    for (int i = 0; i < initial_nodes; ++i) ids[i] = i;
    for (int s = 0; s < *sample_count; ++s) {
      std::vector<int> subset = sample_distinct(ids, k, rng);
      std::sort(subset.begin(), subset.end());
      consider(subset);
    }
  } else {
    for_each_combination(initial_nodes, k, [&](std::span<const int> subset) {
      consider(subset);
      return true;
    });
  }
  report.ok = report.worst_cut >= M - 1e-6;
  return report;
}

}  // namespace regenlab
