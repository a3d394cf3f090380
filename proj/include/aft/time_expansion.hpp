#pragma once

#include <utility>
#include <vector>

#include "aft/core_model.hpp"

namespace aft {

// Discrete time horizon: steps 0, 1, ..., steps-1.
struct Horizon {
  TimeStep steps;
  explicit Horizon(TimeStep t);
};

// One copy (element, time step) of a ground element in the time expansion.
struct TemporalElement {
  int element = -1;
  TimeStep time = 0;
  auto operator<=>(const TemporalElement&) const = default;
};

// The copy of a base path that starts at time `start` and enters each element
// without waiting; admissible for horizon T iff start + total transit < T.
struct TemporalPath {
  int path = -1;
  TimeStep start = 0;
  auto operator<=>(const TemporalPath&) const = default;
};

// A traversal of a base path that may wait wait[i] >= 0 steps immediately
// before entering the i-th element.  A TemporalPath at start t is the special
// case wait = (t, 0, ..., 0).
struct WaitingSchedule {
  int path = -1;
  std::vector<TimeStep> wait;
  bool operator==(const WaitingSchedule&) const = default;
};

// Entry time of an element on a traversal: the sum of all waiting and transit
// that happens strictly before it (plus the element's own waiting, for
// schedules).  Throws std::invalid_argument if the element is not on the path.
TimeStep entry_time(const AbstractNetwork& net, const TemporalPath& tp,
                    int element);
TimeStep entry_time(const AbstractNetwork& net, const WaitingSchedule& ws,
                    int element);

// Completion time: entry time of the last element plus its transit.
TimeStep arrival_time(const AbstractNetwork& net, const TemporalPath& tp);
TimeStep arrival_time(const AbstractNetwork& net, const WaitingSchedule& ws);

// The temporal copies visited, in traversal order.
std::vector<TemporalElement> temporal_elements(const AbstractNetwork& net,
                                               const TemporalPath& tp);
std::vector<TemporalElement> temporal_elements(const AbstractNetwork& net,
                                               const WaitingSchedule& ws);

// All admissible temporal paths for the horizon, ordered by (path index,
// start time).
std::vector<TemporalPath> expand(const AbstractNetwork& net,
                                 const Horizon& horizon);

// A flow assigning rational values to admissible temporal paths.
struct FlowOverTime {
  std::vector<std::pair<TemporalPath, Rational>> values;
  Rational total_value() const;
};

// A set of temporal copies removed from service.
struct CutOverTime {
  std::vector<TemporalElement> members;
  bool contains(const TemporalElement& te) const;
};

struct ExpansionViolation {
  TemporalPath p;
  TemporalPath q;
  TemporalElement pivot;
  bool operator==(const ExpansionViolation&) const = default;
};

struct ExpansionSwitchingReport {
  std::vector<ExpansionViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the switching property of the expanded family over the universe of
// temporal copies.  The expansion of a valid network need not be valid; the
// violations returned are exactly the failures of closure under switching.
ExpansionSwitchingReport check_expansion_switching(const AbstractNetwork& net,
                                                   const Horizon& horizon);

// True iff total flow value <= number of cut members (weighted by element
// capacity).  Preconditions are enforced: the flow must be nonnegative,
// admissible and capacity-respecting per temporal copy, and the cut must
// cover every admissible temporal path; a violation throws
// std::invalid_argument naming a witness.
bool check_weak_duality(const FlowOverTime& flow, const CutOverTime& cut,
                        const AbstractNetwork& net, const Horizon& horizon);

}  // namespace aft
