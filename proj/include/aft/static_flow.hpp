#pragma once

#include <vector>

#include "aft/core_model.hpp"

namespace aft {

// A weight per path, indexed like the network's path family.
struct WeightFunction {
  std::vector<Rational> weights;
};

// Horizon weights r(P) = T - (total transit of P).  Values can be zero or
// negative for slow paths; such paths simply cannot carry positive optimal
// weight.  Requires horizon >= 1.
WeightFunction build_horizon_weights(const AbstractNetwork& net,
                                     TimeStep horizon);

// One failure of supermodularity at an ordered triple: the switched pair of
// paths has strictly smaller total weight than the original pair.
struct SupermodularityViolation {
  int p = -1;
  int q = -1;
  int pivot = -1;
  Rational switched_sum;  // w(P ×_e Q) + w(Q ×_e P)
  Rational original_sum;  // w(P) + w(Q)
};

// Checks w(P ×_e Q) + w(Q ×_e P) >= w(P) + w(Q) for every pair of paths and
// shared element, using the canonical switch in both directions.  The
// inequality is symmetric in P and Q, so each pair is reported once with
// p < q.  Requires a valid network.  Horizon weights on a valid network
// never violate this; an arbitrary weight function may.
std::vector<SupermodularityViolation> check_supermodular(
    const AbstractNetwork& net, const WeightFunction& weights);

struct StaticSolution {
  std::vector<Rational> flow;     // x̃ per path; integral if requested
  std::vector<long long> dual;    // ỹ per element; always integral
  Rational objective;             // Σ_P w(P)·x̃(P) = Σ_e c(e)·ỹ(e)
};

struct SolveOptions {
  // When set (and all capacities are integral), the returned flow is an
  // integral optimal solution instead of a basic rational one.
  bool integral_primal = false;
};

// Solves max Σ w(P)x(P) s.t. Σ_{P ∋ e} x(P) <= c(e), x >= 0 exactly, and
// returns an optimal *integral* dual: the feasible integral dual of minimal
// ℓ1 norm matching the optimal value, lexicographically smallest in the
// canonical element order.  Total dual integrality guarantees existence for
// integral supermodular weights on a valid network; if the bounded search is
// exhausted anyway, TdiViolationError is thrown.  Requires integral weights
// (std::invalid_argument otherwise; likewise for integral_primal without
// integral capacities).
StaticSolution solve_weighted_abstract_flow(const AbstractNetwork& net,
                                            const WeightFunction& weights,
                                            const SolveOptions& options = {});

}  // namespace aft
