#pragma once

#include <optional>
#include <vector>

#include "aft/bounds.hpp"
#include "aft/core_model.hpp"
#include "aft/static_flow.hpp"
#include "aft/time_expansion.hpp"

namespace aft {

// A static flow repeated at every admissible start time; value equals
// Σ_P (T - transit(P)) · x̃(P) over paths with transit < T.
struct TemporallyRepeatedFlow {
  std::vector<Rational> static_flow;  // per path
  TimeStep horizon = 0;
  Rational value;
};

// Requires the static flow to be primal-feasible (nonnegative, within
// capacities); violations throw std::invalid_argument.
TemporallyRepeatedFlow build_temporally_repeated(const StaticSolution& sol,
                                                 const AbstractNetwork& net,
                                                 const Horizon& horizon);

// The explicit copies of the repeated flow on the time expansion.
FlowOverTime expand_flow(const TemporallyRepeatedFlow& flow,
                         const AbstractNetwork& net);

// Cut over time induced by an integral dual ỹ: element e is removed during
// [α(e), α(e) + ỹ(e)), where α(e) is the earliest time any path can reach e
// if every earlier element e' on the path delays by transit(e') + ỹ(e').
struct CutSchedule {
  // α per element; empty when the element lies on no path (never removed —
  // unless its dual is positive, which build_cut_schedule rejects).
  std::vector<std::optional<TimeStep>> alpha;
  std::vector<long long> duration;  // the dual values ỹ

  // The members {(e, θ) : α(e) <= θ < α(e) + ỹ(e), θ < T}, clipped to the
  // horizon.
  CutOverTime members(const AbstractNetwork& net, const Horizon& horizon) const;
  // Σ_e c(e)·ỹ(e); counts full durations even when clipping discarded copies.
  Rational capacity(const AbstractNetwork& net) const;
  // Elements whose removal interval starts at or beyond the horizon while
  // ỹ(e) > 0: their capacity is paid but no copy is removed.  Surfaced as a
  // warning by callers.
  std::vector<int> out_of_horizon(const AbstractNetwork& net,
                                  const Horizon& horizon) const;
};

// Throws std::invalid_argument when an element with positive dual lies on no
// path (its α is undefined and the dual wastes capacity unrecoverably).
CutSchedule build_cut_schedule(const std::vector<long long>& dual,
                               const AbstractNetwork& net);

struct StrictCoverageReport {
  std::vector<TemporalPath> uncovered;
  bool ok() const { return uncovered.empty(); }
};

// Every admissible temporal path (no waiting) must meet a removed copy.
StrictCoverageReport verify_cut_covers_strict(const CutSchedule& cut,
                                              const AbstractNetwork& net,
                                              const Horizon& horizon);

struct WaitingCoverageReport {
  // At most one avoiding schedule is reported per base path (the
  // lexicographically smallest waiting vector).
  std::vector<WaitingSchedule> avoiding;
  bool ok() const { return avoiding.empty(); }
};

// Every admissible waiting schedule must meet a removed copy.  Decided by a
// per-path reachability sweep over (position, entry time) states rather than
// enumeration, so it stays polynomial in |P|·T per path.
WaitingCoverageReport verify_cut_covers_waiting(const CutSchedule& cut,
                                                const AbstractNetwork& net,
                                                const Horizon& horizon);

struct CertifyOptions {
  bool integral_primal = false;
  // Whether to also run the waiting-schedule oracle: off, on (ScaleError
  // propagates), or automatic (skip silently when above bounds).
  enum class Waiting { automatic, on, off };
  Waiting waiting = Waiting::automatic;
  SizeBounds bounds = SizeBounds::from_env();
};

struct Certificate {
  TimeStep horizon = 0;
  ValidationReport validation;  // ok by construction; carries warnings
  StaticSolution static_solution;
  TemporallyRepeatedFlow flow;
  CutSchedule cut;
  Rational flow_value;
  Rational cut_capacity;
  Rational oracle_strict_optimum;
  std::optional<Rational> oracle_waiting_optimum;  // empty iff skipped
  StrictCoverageReport strict_coverage;
  WaitingCoverageReport waiting_coverage;
  std::vector<int> out_of_horizon_warnings;
  std::vector<int> zero_transit_warnings;
  // True iff flow value = cut capacity = strict oracle optimum and, when
  // computed, the waiting optimum agrees.  Coverage results are reported
  // separately in the reports above.
  bool all_equal = false;
};

// Full pipeline: validate, build horizon weights, solve, repeat in time,
// build the cut schedule, verify both coverages, and compare against the
// brute-force optimum.  Stage failures are rethrown with a "stage:" prefix on
// the message; a switching violation in stage "validate" means the instance
// is not an abstract network.
Certificate certify(const AbstractNetwork& net, const Horizon& horizon,
                    const CertifyOptions& options = {});

}  // namespace aft
