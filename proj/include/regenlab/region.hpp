#pragma once

#include <vector>

namespace regenlab {

// Per-provider repair traffic, blocks (or Mb in fluid mode). Length d.
using RepairVector = std::vector<double>;
// End-to-end provider-to-newcomer capacities, Mbps. Length d, all > 0.
using CapacityVector = std::vector<double>;

// Canonical maximal region {beta | sigma_j(beta) >= x[j-1], j = 1..k} with
// 0 <= x_1 <= ... <= x_k.
struct FeasibleRegion {
  std::vector<double> x;
  int k() const { return static_cast<int>(x.size()); }
};

// Sum of the d-k+j smallest components of beta, d = beta.size(), 1 <= j <= k.
double sigma(const RepairVector& beta, int j, int k);

bool contains(const FeasibleRegion& region, const RepairVector& beta);

// Minimum-storage region: every bound equals M/k (valid for alpha = M/k).
FeasibleRegion msr_region(double M, int k);

// x_j = min((d-k+j) * beta_conv, alpha). Always satisfies the min-cut
// condition with equality by the definition of beta_conv.
FeasibleRegion heuristic_region(double alpha, double beta_conv, int d, int k);

// The unique beta solving sum_{i=1..k} min((d-i+1) beta, alpha) = M.
// Throws Errc::Infeasible when alpha < M/k.
double conventional_beta(double alpha, int d, int k, double M);

struct FrSolution {
  double t = 0;        // minimal regeneration time
  RepairVector beta;   // a minimal traffic vector attaining t
};

// min over beta in region of max_i beta_i / c_i, with beta_i capped at alpha.
// Feasibility of beta(t) = min(t*c_i, alpha) is monotone in t, so the solver
// evaluates the uncapped closed form max_j x_j / sigma_j(c) first and falls
// back to bisection only when a cap binds. The returned beta is trimmed
// greedily (largest components first) to the region boundary.
FrSolution fr_solve(const FeasibleRegion& region, const CapacityVector& c, double alpha);

// Explicit optimum for the minimum-storage region. Output is aligned with the
// input capacity order; internally sorts ascending and maps back.
RepairVector msr_closed_form(const CapacityVector& c, double M, int k);

// Component-wise ceiling; sigma_j is monotone in each component, so
// containment in any region is preserved.
RepairVector round_up(const RepairVector& beta);

// Reduces components of beta (largest first) as far as region containment
// allows. Used by both the flexible star and flexible tree solvers.
RepairVector trim_to_region(const FeasibleRegion& region, RepairVector beta);

}  // namespace regenlab
