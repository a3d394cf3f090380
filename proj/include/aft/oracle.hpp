#pragma once

#include <utility>
#include <vector>

#include "aft/bounds.hpp"
#include "aft/core_model.hpp"
#include "aft/time_expansion.hpp"

namespace aft {

enum class OracleMode { strict, waiting };

// Result of a brute-force optimum computation on the time expansion.  The
// argument (an optimal flow) is reported in the representation matching the
// mode; its feasibility is re-checked before returning.
struct OracleResult {
  OracleMode mode = OracleMode::strict;
  Rational optimum;
  std::vector<std::pair<TemporalPath, Rational>> strict_argument;
  std::vector<std::pair<WaitingSchedule, Rational>> waiting_argument;
};

// Maximum flow over time without waiting: one LP variable per admissible
// temporal path, one capacity row per used temporal copy, solved exactly by a
// dense-tableau simplex that shares no code with the static solver.  Throws
// ScaleError when the expansion exceeds bounds.oracle_strict.
OracleResult oracle_strict(const AbstractNetwork& net, const Horizon& horizon,
                           const SizeBounds& bounds = SizeBounds::from_env());

// Same, over all admissible waiting schedules (deduplicated by the set of
// temporal copies they visit).  Throws ScaleError past bounds.oracle_waiting.
OracleResult oracle_waiting(const AbstractNetwork& net, const Horizon& horizon,
                            const SizeBounds& bounds = SizeBounds::from_env());

// All admissible waiting schedules for the horizon, deterministic order
// (path index, then lexicographic waiting vector), deduplicated by visited
// temporal copies.  Unbounded enumeration; callers enforce their own caps.
std::vector<WaitingSchedule> enumerate_waiting_schedules(
    const AbstractNetwork& net, const Horizon& horizon);

// Classical maximum flow over time for a path family that was generated from
// a digraph: reconstructs the digraph by gluing path positions (consecutive
// elements share a node, all first elements leave the source, all last
// elements enter the sink), then solves the standard problem via a min-cost
// circulation.  Throws std::invalid_argument if the family does not glue
// consistently.
Rational classical_max_flow_over_time(const AbstractNetwork& net,
                                      const Horizon& horizon);

}  // namespace aft
