#include "aft/time_expansion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "aft/errors.hpp"

namespace aft {

namespace {

std::string temporal_label(const AbstractNetwork& net,
                           const TemporalElement& te) {
  return "(" + net.element(te.element).id + "," + std::to_string(te.time) +
         ")";
}

void require_schedule_shape(const AbstractNetwork& net,
                            const WaitingSchedule& ws) {
  if (ws.path < 0 || static_cast<std::size_t>(ws.path) >= net.path_count()) {
    throw std::invalid_argument("waiting schedule references unknown path");
  }
  if (ws.wait.size() != net.path(ws.path).size()) {
    throw std::invalid_argument(
        "waiting schedule for path " + net.path_label(ws.path) + " has " +
        std::to_string(ws.wait.size()) + " entries, expected " +
        std::to_string(net.path(ws.path).size()));
  }
  for (TimeStep w : ws.wait) {
    if (w < 0) {
      throw std::invalid_argument("negative waiting time on path " +
                                  net.path_label(ws.path));
    }
  }
}

}  // namespace

Horizon::Horizon(TimeStep t) : steps(t) {
  if (t < 1) {
    throw std::invalid_argument("horizon must be at least 1, got " +
                                std::to_string(t));
  }
}

TimeStep entry_time(const AbstractNetwork& net, const TemporalPath& tp,
                    int element) {
  const AbstractPath& path = net.path(tp.path);
  int pos = path.position_of(element);
  if (pos < 0) {
    throw std::invalid_argument("element '" + net.element(element).id +
                                "' is not on path " + net.path_label(tp.path));
  }
  TimeStep t = tp.start;
  for (int i = 0; i < pos; ++i) t += net.element(path.elements[i]).transit;
  return t;
}

TimeStep entry_time(const AbstractNetwork& net, const WaitingSchedule& ws,
                    int element) {
  require_schedule_shape(net, ws);
  const AbstractPath& path = net.path(ws.path);
  int pos = path.position_of(element);
  if (pos < 0) {
    throw std::invalid_argument("element '" + net.element(element).id +
                                "' is not on path " + net.path_label(ws.path));
  }
  TimeStep t = 0;
  for (int i = 0; i < pos; ++i) {
    t += ws.wait[i] + net.element(path.elements[i]).transit;
  }
  return t + ws.wait[pos];
}

TimeStep arrival_time(const AbstractNetwork& net, const TemporalPath& tp) {
  return tp.start + net.total_transit(tp.path);
}

TimeStep arrival_time(const AbstractNetwork& net, const WaitingSchedule& ws) {
  require_schedule_shape(net, ws);
  TimeStep t = 0;
  const AbstractPath& path = net.path(ws.path);
  for (std::size_t i = 0; i < path.size(); ++i) {
    t += ws.wait[i] + net.element(path.elements[i]).transit;
  }
  return t;
}

std::vector<TemporalElement> temporal_elements(const AbstractNetwork& net,
                                               const TemporalPath& tp) {
  std::vector<TemporalElement> out;
  const AbstractPath& path = net.path(tp.path);
  TimeStep t = tp.start;
  for (int e : path.elements) {
    out.push_back({e, t});
    t += net.element(e).transit;
  }
  return out;
}

std::vector<TemporalElement> temporal_elements(const AbstractNetwork& net,
                                               const WaitingSchedule& ws) {
  require_schedule_shape(net, ws);
  std::vector<TemporalElement> out;
  const AbstractPath& path = net.path(ws.path);
  TimeStep t = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    t += ws.wait[i];
    out.push_back({path.elements[i], t});
    t += net.element(path.elements[i]).transit;
  }
  return out;
}

std::vector<TemporalPath> expand(const AbstractNetwork& net,
                                 const Horizon& horizon) {
  std::vector<TemporalPath> out;
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    const TimeStep transit = net.total_transit(static_cast<int>(p));
    for (TimeStep t = 0; t + transit < horizon.steps; ++t) {
      out.push_back({static_cast<int>(p), t});
    }
  }
  return out;
}

Rational FlowOverTime::total_value() const {
  Rational total = 0;
  for (const auto& [tp, value] : values) total += value;
  return total;
}

bool CutOverTime::contains(const TemporalElement& te) const {
  return std::find(members.begin(), members.end(), te) != members.end();
}

ExpansionSwitchingReport check_expansion_switching(const AbstractNetwork& net,
                                                   const Horizon& horizon) {
  const std::vector<TemporalPath> expanded = expand(net, horizon);
  const TimeStep T = horizon.steps;

  // Temporal copy (e, θ) ↦ integer e*T + θ for the generic switching engine.
  const std::size_t universe =
      net.element_count() * static_cast<std::size_t>(T);
  std::vector<std::vector<int>> raw;
  raw.reserve(expanded.size());
  for (const TemporalPath& tp : expanded) {
    std::vector<int> seq;
    for (const TemporalElement& te : temporal_elements(net, tp)) {
      seq.push_back(static_cast<int>(te.element * T + te.time));
    }
    raw.push_back(std::move(seq));
  }

  ExpansionSwitchingReport report;
  for (const SwitchTriple& triple : find_switching_violations(universe, raw)) {
    ExpansionViolation v;
    v.p = expanded[static_cast<std::size_t>(triple.p)];
    v.q = expanded[static_cast<std::size_t>(triple.q)];
    v.pivot = {static_cast<int>(triple.pivot / T),
               static_cast<TimeStep>(triple.pivot % T)};
    report.violations.push_back(v);
  }
  return report;
}

bool check_weak_duality(const FlowOverTime& flow, const CutOverTime& cut,
                        const AbstractNetwork& net, const Horizon& horizon) {
  const TimeStep T = horizon.steps;

  // Flow preconditions: nonnegative, admissible temporal paths, no duplicate
  // keys, per-copy loads within capacity.
  std::set<TemporalPath> seen;
  std::map<TemporalElement, Rational> load;
  for (const auto& [tp, value] : flow.values) {
    if (tp.path < 0 || static_cast<std::size_t>(tp.path) >= net.path_count()) {
      throw std::invalid_argument("flow references unknown path index " +
                                  std::to_string(tp.path));
    }
    if (value < 0) {
      throw std::invalid_argument("negative flow on " + net.path_label(tp.path) +
                                  " at start " + std::to_string(tp.start));
    }
    if (tp.start < 0 || arrival_time(net, tp) >= T) {
      throw std::invalid_argument(
          "flow on inadmissible temporal path: " + net.path_label(tp.path) +
          " at start " + std::to_string(tp.start) + " (horizon " +
          std::to_string(T) + ")");
    }
    if (!seen.insert(tp).second) {
      throw std::invalid_argument("duplicate flow entry for " +
                                  net.path_label(tp.path) + " at start " +
                                  std::to_string(tp.start));
    }
    for (const TemporalElement& te : temporal_elements(net, tp)) {
      load[te] += value;
    }
  }
  for (const auto& [te, used] : load) {
    if (used > net.element(te.element).capacity) {
      throw std::invalid_argument(
          "capacity exceeded at temporal copy " + temporal_label(net, te) +
          ": " + format_rational(used) + " > " +
          format_rational(net.element(te.element).capacity));
    }
  }

  // Cut precondition: every admissible temporal path meets the cut.
  std::set<TemporalElement> members(cut.members.begin(), cut.members.end());
  for (const TemporalPath& tp : expand(net, horizon)) {
    bool covered = false;
    for (const TemporalElement& te : temporal_elements(net, tp)) {
      if (members.count(te)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      throw std::invalid_argument("cut misses temporal path " +
                                  net.path_label(tp.path) + " at start " +
                                  std::to_string(tp.start));
    }
  }

  Rational cut_capacity = 0;
  for (const TemporalElement& te : members) {
    cut_capacity += net.element(te.element).capacity;
  }
  return flow.total_value() <= cut_capacity;
}

}  // namespace aft
