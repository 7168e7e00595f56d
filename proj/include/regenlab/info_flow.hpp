#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regenlab/region.hpp"

namespace regenlab {

// One completed repair. The newcomer replaces `failed` and pulls from the
// listed providers along a regeneration topology: parent[i] indexes into
// `providers` (-1 means a direct link to the newcomer) and flow[i] is the
// traffic on the uplink of providers[i] (blocks in coded mode, Mb in fluid
// mode). A star repair is simply parent[i] == -1 for all i.
struct RepairEvent {
  int failed = -1;
  std::vector<int> providers;
  std::vector<int> parent;
  std::vector<double> flow;

  static RepairEvent star(int failed, std::vector<int> providers, std::vector<double> beta);
};

using RepairHistory = std::vector<RepairEvent>;

// Layered DAG: source, one in/out vertex pair per storage-node version, and
// a data collector attached per query. Graphs are immutable after build;
// min_cut works on a local copy, so concurrent queries are safe.
class InfoFlowGraph {
 public:
  // Throws Errc::InvalidHistory on malformed events.
  static InfoFlowGraph build(int initial_nodes, double alpha, const RepairHistory& history);

  // Max-flow from the source to a collector wired to the current out-vertex
  // of each listed node id with unbounded edges.
  double min_cut(std::span<const int> collectors) const;

  int initial_nodes() const { return n_; }
  double alpha() const { return alpha_; }
  int vertex_count() const { return vertex_count_; }

  // "u v capacity" per line; unbounded edges print "inf". Lines starting
  // with '#' name the vertices.
  std::string dump_edges() const;

 private:
  struct Edge {
    int from, to;
    double cap;
    bool infinite;
  };

  InfoFlowGraph() = default;

  int n_ = 0;
  double alpha_ = 0;
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> live_out_;  // current out-vertex per node id
  std::vector<std::string> names_;
};

// True iff sum_j min(x_j, alpha) >= M for a canonical region.
bool min_cut_condition(const FeasibleRegion& region, double alpha, double M);

struct MinCutReport {
  bool ok = true;
  double worst_cut = 0;
  std::vector<int> worst_subset;
  std::size_t subsets_checked = 0;
};

// Runs min_cut over k-subsets of the live nodes: all of them, or
// `sample_count` seeded draws when provided.
MinCutReport verify_scheme_min_cut(int initial_nodes, double alpha, double M, int k,
                                   const RepairHistory& history,
                                   std::optional<int> sample_count = std::nullopt,
                                   std::uint64_t seed = 0);

}  // namespace regenlab
