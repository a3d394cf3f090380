#pragma once

#include <cstdint>

#include "aft/bounds.hpp"
#include "aft/instance_io.hpp"

namespace aft {

// Parameters for the DAG generator.  Capacities, transit times and the
// horizon are drawn uniformly from the given closed ranges.
struct DagOptions {
  int nodes = 6;
  int arcs = 8;
  std::uint64_t seed = 0;
  int capacity_min = 1;
  int capacity_max = 5;
  TimeStep transit_min = 0;
  TimeStep transit_max = 2;
  TimeStep horizon_min = 3;
  TimeStep horizon_max = 8;
};

// Random source-sink DAG whose arcs are the elements and whose path family
// is the set of ALL source-sink paths in arc order (guaranteeing the
// switching property; re-validated before returning).  A guaranteed random
// source-sink spine keeps the family nonempty; extra arcs are sampled on top
// until `arcs` is reached or no pair is left.  More source-sink paths than
// bounds.dag_paths is a GenerationError.
InstanceDocument generate_dag(const DagOptions& options,
                              const SizeBounds& bounds = SizeBounds::from_env());

// The closure fixpoint used by generate_closure, exposed for direct use:
// while some ordered triple (P, Q, e) lacks a switching witness, the
// concatenation of closed_prefix(P, e) with open_suffix(Q, e) (duplicates
// dropped, first occurrence kept) is appended.  Deterministic: always
// resolves the first violation in (p, q, pivot) order.  Growing past
// max_paths throws GenerationError.
std::vector<std::vector<int>> close_under_switching(
    std::vector<std::vector<int>> paths, std::size_t universe,
    std::size_t max_paths);

struct ClosureOptions {
  std::uint64_t seed = 0;
  int universe_min = 3;
  int universe_max = 6;
  int seed_path_count_min = 2;
  int seed_path_count_max = 4;
  int seed_path_length_min = 2;
  int seed_path_length_max = 4;
  int capacity_min = 1;
  int capacity_max = 5;
  TimeStep transit_min = 0;
  TimeStep transit_max = 2;
  TimeStep horizon_min = 3;
  TimeStep horizon_max = 8;
};

// Random ordered seed paths closed under the switching rule: while some
// ordered triple (P, Q, e) lacks a witness, the concatenation of
// closed_prefix(P, e) with open_suffix(Q, e) (duplicates dropped, first
// occurrence kept) is added as a new path.  Stops at a fixpoint, which then
// passes validate_switching by construction (re-validated anyway); exceeding
// bounds.closure_paths before the fixpoint is a GenerationError.
InstanceDocument generate_closure(
    const ClosureOptions& options,
    const SizeBounds& bounds = SizeBounds::from_env());

}  // namespace aft
