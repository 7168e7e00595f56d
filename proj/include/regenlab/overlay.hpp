#pragma once

#include <string>
#include <vector>

#include "regenlab/region.hpp"

namespace regenlab {

// Complete weighted digraph over the newcomer (node 0) and providers 1..d.
// Capacities are in Mbps; zero means the link is unusable.
class OverlayNetwork {
 public:
  explicit OverlayNetwork(int providers);

  int providers() const { return d_; }
  int nodes() const { return d_ + 1; }

  double cap(int from, int to) const { return c_[idx(from, to)]; }
  void set_cap(int from, int to, double mbps);
  void set_sym(int a, int b, double mbps);

  // c(i, 0) for i = 1..d.
  CapacityVector direct_capacities() const;
  double max_capacity() const;

  // Plain-text matrix format: first line is the node count d+1, then a
  // (d+1) x (d+1) capacity matrix in Mbps, row = source.
  std::string to_text() const;
  static OverlayNetwork from_text(const std::string& text);

 private:
  std::size_t idx(int from, int to) const;
  int d_;
  std::vector<double> c_;
};

// Named topologies used by the CLI demos ("fig1", "fig9", "example1").
OverlayNetwork builtin_topology(const std::string& name);

}  // namespace regenlab
