#pragma once

#include <vector>

#include "regenlab/overlay.hpp"
#include "regenlab/region.hpp"
#include "regenlab/tree.hpp"

namespace regenlab {

struct FtrOptions {
  // The sigma_1 objective, clamp and time formula range over all d end-to-end
  // rates. The alternative restricts the objective and clamp to the providers
  // attached in phase 2, for comparison.
  bool sigma_over_all = true;
};

struct FtrSolution {
  RegenerationTree tree{std::vector<int>{-1, 0}};
  std::vector<double> rates;  // end-to-end rate per node, index 1..d; [0] unused
  double t = 0;               // achieved time: max over tree edges of f/c
  RepairVector beta_raw;      // t_lp * c_u before trimming, index 0..d-1 = provider 1..d
  RepairVector beta;          // trimmed traffic vector, still MDS-sufficient
  FlowAssignment flows;       // min(sum_{x in S(u)} beta_x, alpha) per node
  double bandwidth = 0;       // sum of flows
  bool valid = false;
};

// Sufficient MDS condition on a traffic vector: the d-k+j smallest components
// must sum to at least min((d-k+j)*beta_conv, alpha) for every j = 1..k.
bool theorem5_check(const RepairVector& beta, double beta_conv, double alpha, int k);

// t = (d-k+1)*beta_conv / sigma_1(rates). Throws Errc::DegenerateAllocation
// when sigma_1 vanishes.
double time_for_alloc(const std::vector<double>& provider_rates, double beta_conv, int k);

// One candidate construction: grow a relay core of `core_links` maximum-
// capacity links, attach the rest over their best direct links, then improve
// by pivot moves while any of the d-k+1 smallest rates can be raised.
FtrSolution algorithm2(const OverlayNetwork& net, int core_links, double alpha,
                       double beta_conv, int k, const FtrOptions& opts = {});

// Best candidate over core_links = 0..d plus the flexible-star and
// constant-traffic-tree seeds (so the result never loses to either).
FtrSolution ftr_solve(const OverlayNetwork& net, double alpha, double beta_conv, int k,
                      const FtrOptions& opts = {});

// Exact optimal time for a fixed tree: enumerates, per tree edge, which
// branch of min(alpha, sum of subtree rates) is guaranteed, and solves each
// case's rate LP. Throws Errc::TooLarge for d > 6.
double oracle_ftr_small(const OverlayNetwork& net, const RegenerationTree& tree, double alpha,
                        double beta_conv, int k);

}  // namespace regenlab
