#include "aft/dynamic_flow.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "aft/errors.hpp"
#include "aft/oracle.hpp"

namespace aft {

namespace {

// Whether the temporal copy (element, time) is removed by the schedule.
bool removed(const CutSchedule& cut, int element, TimeStep time) {
  const auto& alpha = cut.alpha[static_cast<std::size_t>(element)];
  if (!alpha.has_value()) return false;
  const long long duration = cut.duration[static_cast<std::size_t>(element)];
  return *alpha <= time && time < *alpha + duration;
}

// Rethrows the current exception with a stage prefix, preserving its type
// for the error taxonomy the callers rely on.
template <typename F>
auto stage(const std::string& name, F&& body) {
  auto prefix = [&](const std::exception& e) { return name + ": " + e.what(); };
  try {
    return body();
  } catch (const SwitchingViolationError& e) {
    throw SwitchingViolationError(prefix(e));
  } catch (const StructuralInconsistencyError& e) {
    throw StructuralInconsistencyError(prefix(e));
  } catch (const TdiViolationError& e) {
    throw TdiViolationError(prefix(e));
  } catch (const ScaleError& e) {
    throw ScaleError(prefix(e));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(prefix(e));
  }
}

}  // namespace

TemporallyRepeatedFlow build_temporally_repeated(const StaticSolution& sol,
                                                 const AbstractNetwork& net,
                                                 const Horizon& horizon) {
  if (sol.flow.size() != net.path_count()) {
    throw std::invalid_argument("static flow size mismatch");
  }
  std::vector<Rational> load(net.element_count(), Rational(0));
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    if (sol.flow[p] < 0) {
      throw std::invalid_argument("negative static flow on path " +
                                  net.path_label(static_cast<int>(p)));
    }
    for (int e : net.path(static_cast<int>(p)).elements) {
      load[static_cast<std::size_t>(e)] += sol.flow[p];
    }
  }
  for (std::size_t e = 0; e < net.element_count(); ++e) {
    if (load[e] > net.element(static_cast<int>(e)).capacity) {
      throw std::invalid_argument(
          "static flow exceeds capacity of element '" +
          net.element(static_cast<int>(e)).id + "'");
    }
  }

  TemporallyRepeatedFlow flow;
  flow.static_flow = sol.flow;
  flow.horizon = horizon.steps;
  flow.value = 0;
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    const TimeStep transit = net.total_transit(static_cast<int>(p));
    if (transit < horizon.steps) {
      flow.value += Rational(horizon.steps - transit) * sol.flow[p];
    }
  }
  return flow;
}

FlowOverTime expand_flow(const TemporallyRepeatedFlow& flow,
                         const AbstractNetwork& net) {
  FlowOverTime out;
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    if (flow.static_flow[p] == 0) continue;
    const TimeStep transit = net.total_transit(static_cast<int>(p));
    for (TimeStep t = 0; t + transit < flow.horizon; ++t) {
      out.values.push_back({{static_cast<int>(p), t}, flow.static_flow[p]});
    }
  }
  return out;
}

CutSchedule build_cut_schedule(const std::vector<long long>& dual,
                               const AbstractNetwork& net) {
  if (dual.size() != net.element_count()) {
    throw std::invalid_argument("dual size mismatch");
  }
  for (long long v : dual) {
    if (v < 0) throw std::invalid_argument("negative dual value");
  }

  CutSchedule cut;
  cut.alpha.assign(net.element_count(), std::nullopt);
  cut.duration = dual;

  // α(e) = min over paths through e of the delayed entry time, where every
  // earlier element e' on the path contributes transit(e') + ỹ(e').
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    TimeStep delayed = 0;
    for (int e : net.path(static_cast<int>(p)).elements) {
      auto& alpha = cut.alpha[static_cast<std::size_t>(e)];
      if (!alpha.has_value() || delayed < *alpha) alpha = delayed;
      delayed += net.element(e).transit + dual[static_cast<std::size_t>(e)];
    }
  }

  for (std::size_t e = 0; e < net.element_count(); ++e) {
    if (!cut.alpha[e].has_value() && dual[e] > 0) {
      throw std::invalid_argument(
          "element '" + net.element(static_cast<int>(e)).id +
          "' carries positive dual but lies on no path");
    }
  }
  return cut;
}

CutOverTime CutSchedule::members(const AbstractNetwork& net,
                                 const Horizon& horizon) const {
  CutOverTime out;
  for (std::size_t e = 0; e < net.element_count(); ++e) {
    if (!alpha[e].has_value()) continue;
    const TimeStep from = *alpha[e];
    const TimeStep to =
        std::min<TimeStep>(from + duration[e], horizon.steps);
    for (TimeStep t = from; t < to; ++t) {
      out.members.push_back({static_cast<int>(e), t});
    }
  }
  return out;
}

Rational CutSchedule::capacity(const AbstractNetwork& net) const {
  Rational total = 0;
  for (std::size_t e = 0; e < net.element_count(); ++e) {
    total += net.element(static_cast<int>(e)).capacity * Rational(duration[e]);
  }
  return total;
}

std::vector<int> CutSchedule::out_of_horizon(const AbstractNetwork& net,
                                             const Horizon& horizon) const {
  std::vector<int> out;
  for (std::size_t e = 0; e < net.element_count(); ++e) {
    if (alpha[e].has_value() && *alpha[e] >= horizon.steps && duration[e] > 0) {
      out.push_back(static_cast<int>(e));
    }
  }
  return out;
}

StrictCoverageReport verify_cut_covers_strict(const CutSchedule& cut,
                                              const AbstractNetwork& net,
                                              const Horizon& horizon) {
  StrictCoverageReport report;
  for (const TemporalPath& tp : expand(net, horizon)) {
    bool covered = false;
    for (const TemporalElement& te : temporal_elements(net, tp)) {
      if (removed(cut, te.element, te.time)) {
        covered = true;
        break;
      }
    }
    if (!covered) report.uncovered.push_back(tp);
  }
  return report;
}

WaitingCoverageReport verify_cut_covers_waiting(const CutSchedule& cut,
                                                const AbstractNetwork& net,
                                                const Horizon& horizon) {
  WaitingCoverageReport report;
  const TimeStep T = horizon.steps;
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    const auto& elems = net.path(static_cast<int>(p)).elements;
    const std::size_t len = elems.size();

    // can[i][θ]: entering element i at time θ avoids the cut there and can
    // still be completed into an admissible traversal avoiding the cut.
    std::vector<std::vector<bool>> can(
        len, std::vector<bool>(static_cast<std::size_t>(T), false));
    for (std::size_t i = len; i-- > 0;) {
      const int e = elems[i];
      const TimeStep transit = net.element(e).transit;
      if (i + 1 == len) {
        for (TimeStep t = 0; t < T; ++t) {
          can[i][static_cast<std::size_t>(t)] =
              !removed(cut, e, t) && t + transit < T;
        }
      } else {
        // successor_possible[t]: some θ' >= t admits the rest of the path.
        std::vector<bool> successor_possible(static_cast<std::size_t>(T) + 1,
                                             false);
        for (TimeStep t = T; t-- > 0;) {
          successor_possible[static_cast<std::size_t>(t)] =
              successor_possible[static_cast<std::size_t>(t) + 1] ||
              can[i + 1][static_cast<std::size_t>(t)];
        }
        for (TimeStep t = 0; t < T; ++t) {
          const TimeStep next = t + transit;
          can[i][static_cast<std::size_t>(t)] =
              !removed(cut, e, t) && next <= T &&
              successor_possible[static_cast<std::size_t>(next)];
        }
      }
    }

    // Reconstruct the lexicographically smallest avoiding waiting vector, if
    // any: greedily take the earliest admissible entry at each position.
    TimeStep earliest = 0;
    std::vector<TimeStep> wait;
    bool found = true;
    for (std::size_t i = 0; i < len && found; ++i) {
      found = false;
      for (TimeStep t = earliest; t < T; ++t) {
        if (can[i][static_cast<std::size_t>(t)]) {
          wait.push_back(t - earliest);
          earliest = t + net.element(elems[i]).transit;
          found = true;
          break;
        }
      }
    }
    if (found) {
      report.avoiding.push_back({static_cast<int>(p), wait});
    }
  }
  return report;
}

Certificate certify(const AbstractNetwork& net, const Horizon& horizon,
                    const CertifyOptions& options) {
  Certificate cert;
  cert.horizon = horizon.steps;

  cert.validation = stage("validate", [&] {
    ValidationReport report = validate_switching(net);
    if (!report.ok()) {
      const SwitchTriple& t = report.violations.front();
      throw SwitchingViolationError(
          "not an abstract network; first violation at (" +
          net.path_label(t.p) + ", " + net.path_label(t.q) + ", '" +
          net.element(t.pivot).id + "')");
    }
    return report;
  });
  cert.zero_transit_warnings = cert.validation.zero_transit_paths;

  const WeightFunction weights = stage(
      "weights", [&] { return build_horizon_weights(net, horizon.steps); });

  stage("supermodularity", [&] {
    const auto violations = check_supermodular(net, weights);
    if (!violations.empty()) {
      throw StructuralInconsistencyError(
          "horizon weights are not supermodular on a valid network (" +
          std::to_string(violations.size()) + " violations)");
    }
    return 0;
  });

  cert.static_solution = stage("solve", [&] {
    return solve_weighted_abstract_flow(net, weights,
                                        {.integral_primal =
                                             options.integral_primal});
  });

  cert.flow = stage("repeat", [&] {
    return build_temporally_repeated(cert.static_solution, net, horizon);
  });
  cert.flow_value = cert.flow.value;

  cert.cut = stage(
      "cut", [&] { return build_cut_schedule(cert.static_solution.dual, net); });
  cert.cut_capacity = cert.cut.capacity(net);
  cert.out_of_horizon_warnings = cert.cut.out_of_horizon(net, horizon);

  cert.strict_coverage = stage("coverage", [&] {
    return verify_cut_covers_strict(cert.cut, net, horizon);
  });
  cert.waiting_coverage = stage("coverage", [&] {
    return verify_cut_covers_waiting(cert.cut, net, horizon);
  });

  cert.oracle_strict_optimum = stage("oracle", [&] {
    return oracle_strict(net, horizon, options.bounds).optimum;
  });
  if (options.waiting == CertifyOptions::Waiting::on) {
    cert.oracle_waiting_optimum = stage("oracle", [&] {
      return oracle_waiting(net, horizon, options.bounds).optimum;
    });
  } else if (options.waiting == CertifyOptions::Waiting::automatic) {
    try {
      cert.oracle_waiting_optimum =
          oracle_waiting(net, horizon, options.bounds).optimum;
    } catch (const ScaleError&) {
      // Skipped; recorded by the empty optional.
    }
  }

  cert.all_equal = cert.flow_value == cert.cut_capacity &&
                   cert.cut_capacity == cert.oracle_strict_optimum &&
                   (!cert.oracle_waiting_optimum.has_value() ||
                    *cert.oracle_waiting_optimum == cert.oracle_strict_optimum);
  return cert;
}

}  // namespace aft
