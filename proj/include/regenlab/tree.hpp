#pragma once

#include <utility>
#include <vector>

#include "regenlab/overlay.hpp"

namespace regenlab {

// Spanning tree over an overlay, rooted at the newcomer (node 0).
// parent[0] == -1; every provider reaches 0. Subtree sizes m_u and child
// lists are derived once at construction.
class RegenerationTree {
 public:
  explicit RegenerationTree(std::vector<int> parent);
  static RegenerationTree star(int providers);

  int providers() const { return static_cast<int>(parent_.size()) - 1; }
  int parent(int u) const { return parent_[u]; }
  const std::vector<int>& parents() const { return parent_; }
  int subtree_size(int u) const { return m_[u]; }
  const std::vector<int>& children(int u) const { return children_[u]; }
  // Providers in S(u), the subtree rooted at u.
  std::vector<int> subtree(int u) const;
  // Providers ordered children-before-parent.
  const std::vector<int>& bottom_up() const { return bottom_up_; }
  bool in_subtree(int node, int root) const;

 private:
  std::vector<int> parent_;
  std::vector<int> m_;
  std::vector<std::vector<int>> children_;
  std::vector<int> bottom_up_;
};

// flow[u] is the traffic on the uplink of provider u; flow[0] is unused.
using FlowAssignment = std::vector<double>;

// f(u, parent(u)) = min(m_u * beta, alpha).
FlowAssignment tr_flows(const RegenerationTree& t, double beta, double alpha);

// max over tree edges of f/c. Throws Errc::UnusableEdge if a tree edge with
// positive flow has zero capacity.
double regen_time(const RegenerationTree& t, const FlowAssignment& f, const OverlayNetwork& net);
// Same, but zero-capacity edges yield +inf (used by tree searches).
double regen_time_or_inf(const RegenerationTree& t, const FlowAssignment& f,
                         const OverlayNetwork& net);

// Iterative best-position insertion: every round tries each (remaining
// provider, tree node) pair and commits the insertion with the smallest
// resulting regeneration time. Ties resolve to the lowest provider id, then
// the lowest attach point.
RegenerationTree algorithm1(const OverlayNetwork& net, double alpha, double beta);

// Exact optimum by enumerating all (d+1)^(d-1) rooted labeled trees through
// Pruefer sequences. Throws Errc::TooLarge for d > 7.
RegenerationTree brute_force_ort(const OverlayNetwork& net, double alpha, double beta);

// Exact decision "does some spanning tree have regeneration time <= threshold"
// for networks whose positive-capacity child->parent digraph is acyclic
// (pruned exhaustive search in topological order). Falls back to the Pruefer
// enumeration otherwise; throws Errc::TooLarge when neither route is viable.
bool ort_time_at_most(const OverlayNetwork& net, double alpha, double beta, double threshold);

// Greedy tree for the constant-per-edge baseline: every edge carries exactly
// beta, and the newcomer keeps at least min_root_degree direct children.
RegenerationTree rctree_tree(const OverlayNetwork& net, double beta, int min_root_degree);

// Undirected graph instance for the cover reduction, vertices 0..vertices-1.
struct VcInstance {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

struct VcReduction {
  OverlayNetwork net;
  double beta = 1;       // unit traffic
  double alpha = 0;      // large enough that min(m_u*beta, alpha) = m_u
  double threshold = 1;  // decision bound on the regeneration time
  int a_node = 0, b_node = 0;
  int vertex_base = 0, edge_base = 0;
};

// Four-layer overlay: root 0, relay a with cap(a,0) = cover_size+|E|+1, relay
// b with unlimited cap, one node per vertex (unlimited to a, capacity 1 to b),
// one node per edge (unlimited to both endpoints). Unmentioned links are zero.
VcReduction vc_reduction(const VcInstance& g, int cover_size);

}  // namespace regenlab
