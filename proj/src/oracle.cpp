#include "aft/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "aft/errors.hpp"

namespace aft {

namespace {

// ---------------------------------------------------------------------------
// Dense-tableau simplex, written independently of the static solver on
// purpose: the two never share results they could both get wrong the same
// way.  Solves max c'x s.t. Ax <= b, x >= 0 with b >= 0; A is handed over as
// rows of (column, coefficient) pairs implicitly via the dense tableau built
// by the caller.
// ---------------------------------------------------------------------------

struct TableauResult {
  Rational objective;
  std::vector<Rational> primal;
};

TableauResult run_tableau_simplex(std::vector<std::vector<Rational>>& rows,
                                  std::vector<Rational>& objective_row,
                                  std::size_t n, std::size_t m) {
  // rows[i] has n+m+1 entries (structural, slacks, rhs); objective_row has
  // n+m+1 entries with the negated objective coefficients and current value
  // in the last slot.  basic[i] is the variable owning row i.
  std::vector<std::size_t> basic(m);
  for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;

  while (true) {
    std::size_t entering = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (objective_row[j] < 0) {
        entering = j;
        break;
      }
    }
    if (entering == n + m) break;

    std::size_t leaving = m;
    Rational best_ratio = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i][entering] <= 0) continue;
      Rational ratio = rows[i][n + m] / rows[i][entering];
      if (leaving == m || ratio < best_ratio ||
          (ratio == best_ratio && basic[i] < basic[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving == m) {
      throw std::invalid_argument("oracle lp is unbounded");
    }

    const Rational pivot = rows[leaving][entering];
    for (auto& v : rows[leaving]) v /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leaving || rows[i][entering] == 0) continue;
      const Rational factor = rows[i][entering];
      for (std::size_t j = 0; j <= n + m; ++j) {
        rows[i][j] -= factor * rows[leaving][j];
      }
    }
    if (objective_row[entering] != 0) {
      const Rational factor = objective_row[entering];
      for (std::size_t j = 0; j <= n + m; ++j) {
        objective_row[j] -= factor * rows[leaving][j];
      }
    }
    basic[leaving] = entering;
  }

  TableauResult result;
  result.objective = objective_row[n + m];
  result.primal.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basic[i] < n) result.primal[basic[i]] = rows[i][n + m];
  }
  return result;
}

// Maximizes total value over "columns", each column being the set of temporal
// copies one traversal occupies.  Returns the optimum and per-column values.
TableauResult solve_expansion_lp(const AbstractNetwork& net,
                                 const std::vector<std::vector<TemporalElement>>&
                                     columns) {
  // Rows: one per temporal copy that occurs in some column.
  std::map<TemporalElement, std::size_t> row_of;
  for (const auto& col : columns) {
    for (const TemporalElement& te : col) {
      row_of.emplace(te, row_of.size());
    }
  }
  const std::size_t n = columns.size();
  const std::size_t m = row_of.size();

  std::vector<std::vector<Rational>> rows(
      m, std::vector<Rational>(n + m + 1, Rational(0)));
  for (const auto& [te, i] : row_of) {
    rows[i][n + i] = 1;
    rows[i][n + m] = net.element(te.element).capacity;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (const TemporalElement& te : columns[j]) {
      rows[row_of.at(te)][j] = 1;
    }
  }
  std::vector<Rational> objective_row(n + m + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) objective_row[j] = -1;

  TableauResult result = run_tableau_simplex(rows, objective_row, n, m);

  // Re-check the argument before handing it out: nonnegative, within
  // capacity on every copy, and the claimed value.
  Rational total = 0;
  std::map<TemporalElement, Rational> load;
  for (std::size_t j = 0; j < n; ++j) {
    if (result.primal[j] < 0) {
      throw StructuralInconsistencyError("oracle produced negative flow");
    }
    total += result.primal[j];
    for (const TemporalElement& te : columns[j]) {
      load[te] += result.primal[j];
    }
  }
  for (const auto& [te, used] : load) {
    if (used > net.element(te.element).capacity) {
      throw StructuralInconsistencyError("oracle produced infeasible flow");
    }
  }
  if (total != result.objective) {
    throw StructuralInconsistencyError("oracle objective mismatch");
  }
  return result;
}

// Enumerates schedules path by path (waiting vectors in lexicographic
// order), deduplicating on the fly by the set of temporal copies visited;
// first occurrence wins.  Exceeding max_count throws ScaleError.
std::vector<WaitingSchedule> enumerate_waiting_schedules_capped(
    const AbstractNetwork& net, const Horizon& horizon,
    std::size_t max_count) {
  std::vector<WaitingSchedule> out;
  std::set<std::set<TemporalElement>> seen;
  std::vector<TimeStep> partial;

  auto emit = [&](int path) {
    WaitingSchedule ws{path, partial};
    const auto copies = temporal_elements(net, ws);
    std::set<TemporalElement> key(copies.begin(), copies.end());
    if (!seen.insert(std::move(key)).second) return;
    if (out.size() == max_count) {
      throw ScaleError("horizon admits more than " +
                       std::to_string(max_count) +
                       " distinct waiting schedules");
    }
    out.push_back(std::move(ws));
  };

  auto dfs = [&](auto&& self, int path, TimeStep slack) -> void {
    if (partial.size() == net.path(path).size()) {
      emit(path);
      return;
    }
    for (TimeStep w = 0; w <= slack; ++w) {
      partial.push_back(w);
      self(self, path, slack - w);
      partial.pop_back();
    }
  };

  for (std::size_t p = 0; p < net.path_count(); ++p) {
    const TimeStep slack =
        horizon.steps - 1 - net.total_transit(static_cast<int>(p));
    if (slack < 0) continue;
    dfs(dfs, static_cast<int>(p), slack);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical flow over time on a reconstructed digraph.
// ---------------------------------------------------------------------------

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

struct ResidualArc {
  std::size_t to;
  BigInt capacity;
  BigInt cost;
  std::size_t reverse;  // index of the paired arc in graph[to]
};

// Cancels negative cycles until none remain; graph capacities are integral,
// so each round reduces total cost by at least one and the loop terminates.
BigInt cancel_negative_cycles(std::vector<std::vector<ResidualArc>>& graph) {
  const std::size_t n = graph.size();
  BigInt total_cost = 0;
  while (true) {
    // Bellman-Ford from a virtual source connected to every node.
    std::vector<BigInt> dist(n, BigInt(0));
    std::vector<std::pair<std::size_t, std::size_t>> pred(
        n, {SIZE_MAX, SIZE_MAX});  // (node, arc index into graph[node])
    std::size_t updated = SIZE_MAX;
    for (std::size_t round = 0; round < n; ++round) {
      updated = SIZE_MAX;
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t k = 0; k < graph[u].size(); ++k) {
          const ResidualArc& arc = graph[u][k];
          if (arc.capacity == 0) continue;
          if (dist[u] + arc.cost < dist[arc.to]) {
            dist[arc.to] = dist[u] + arc.cost;
            pred[arc.to] = {u, k};
            updated = arc.to;
          }
        }
      }
      if (updated == SIZE_MAX) break;
    }
    if (updated == SIZE_MAX) break;

    // Walk predecessors n steps to guarantee landing inside a cycle, then
    // collect it.
    std::size_t node = updated;
    for (std::size_t i = 0; i < n; ++i) node = pred[node].first;
    std::vector<std::pair<std::size_t, std::size_t>> cycle;
    std::size_t cur = node;
    do {
      auto [prev, arc_index] = pred[cur];
      cycle.push_back({prev, arc_index});
      cur = prev;
    } while (cur != node);

    BigInt bottleneck = -1;
    for (auto [u, k] : cycle) {
      if (bottleneck < 0 || graph[u][k].capacity < bottleneck) {
        bottleneck = graph[u][k].capacity;
      }
    }
    for (auto [u, k] : cycle) {
      ResidualArc& arc = graph[u][k];
      arc.capacity -= bottleneck;
      graph[arc.to][arc.reverse].capacity += bottleneck;
      total_cost += bottleneck * arc.cost;
    }
  }
  return total_cost;
}

void add_arc(std::vector<std::vector<ResidualArc>>& graph, std::size_t from,
             std::size_t to, const BigInt& capacity, const BigInt& cost) {
  graph[from].push_back({to, capacity, cost, graph[to].size()});
  graph[to].push_back({from, BigInt(0), -cost, graph[from].size() - 1});
}

}  // namespace

std::vector<WaitingSchedule> enumerate_waiting_schedules(
    const AbstractNetwork& net, const Horizon& horizon) {
  return enumerate_waiting_schedules_capped(
      net, horizon, std::numeric_limits<std::size_t>::max());
}

OracleResult oracle_strict(const AbstractNetwork& net, const Horizon& horizon,
                           const SizeBounds& bounds) {
  // Count before materializing, so an absurd horizon fails fast.
  BigInt count = 0;
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    const TimeStep transit = net.total_transit(static_cast<int>(p));
    if (transit < horizon.steps) count += BigInt(horizon.steps - transit);
  }
  if (count > BigInt(bounds.oracle_strict)) {
    throw ScaleError("time expansion has " + count.str() +
                     " temporal paths, above the oracle bound " +
                     std::to_string(bounds.oracle_strict));
  }
  const std::vector<TemporalPath> expansion = expand(net, horizon);
  std::vector<std::vector<TemporalElement>> columns;
  columns.reserve(expansion.size());
  for (const TemporalPath& tp : expansion) {
    columns.push_back(temporal_elements(net, tp));
  }
  TableauResult lp = solve_expansion_lp(net, columns);

  OracleResult result;
  result.mode = OracleMode::strict;
  result.optimum = lp.objective;
  for (std::size_t j = 0; j < expansion.size(); ++j) {
    if (lp.primal[j] != 0) {
      result.strict_argument.push_back({expansion[j], lp.primal[j]});
    }
  }
  return result;
}

OracleResult oracle_waiting(const AbstractNetwork& net, const Horizon& horizon,
                            const SizeBounds& bounds) {
  const std::vector<WaitingSchedule> schedules =
      enumerate_waiting_schedules_capped(net, horizon, bounds.oracle_waiting);
  std::vector<std::vector<TemporalElement>> columns;
  columns.reserve(schedules.size());
  for (const WaitingSchedule& ws : schedules) {
    columns.push_back(temporal_elements(net, ws));
  }
  TableauResult lp = solve_expansion_lp(net, columns);

  OracleResult result;
  result.mode = OracleMode::waiting;
  result.optimum = lp.objective;
  for (std::size_t j = 0; j < schedules.size(); ++j) {
    if (lp.primal[j] != 0) {
      result.waiting_argument.push_back({schedules[j], lp.primal[j]});
    }
  }
  return result;
}

Rational classical_max_flow_over_time(const AbstractNetwork& net,
                                      const Horizon& horizon) {
  if (net.path_count() == 0) return 0;

  // Junction (p, i) sits before position i on path p; glue shared elements
  // and the common source/sink.
  std::vector<std::size_t> first_junction(net.path_count());
  std::size_t total = 0;
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    first_junction[p] = total;
    total += net.path(static_cast<int>(p)).size() + 1;
  }
  UnionFind uf(total);
  std::vector<std::pair<std::size_t, std::size_t>> element_ends(
      net.element_count(), {SIZE_MAX, SIZE_MAX});  // (tail, head) junctions
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    const auto& elems = net.path(static_cast<int>(p)).elements;
    uf.unite(first_junction[p], first_junction[0]);  // shared source
    uf.unite(first_junction[p] + elems.size(),
             first_junction[0] + net.path(0).size());  // shared sink
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const std::size_t tail = first_junction[p] + i;
      const std::size_t head = first_junction[p] + i + 1;
      auto& ends = element_ends[static_cast<std::size_t>(elems[i])];
      if (ends.first == SIZE_MAX) {
        ends = {tail, head};
      } else {
        uf.unite(tail, ends.first);
        uf.unite(head, ends.second);
      }
    }
  }

  std::map<std::size_t, std::size_t> node_of_class;
  auto node_of = [&](std::size_t junction) {
    const std::size_t root = uf.find(junction);
    auto [it, _] = node_of_class.emplace(root, node_of_class.size());
    return it->second;
  };
  const std::size_t source = node_of(first_junction[0]);
  const std::size_t sink = node_of(first_junction[0] + net.path(0).size());
  if (source == sink) {
    throw std::invalid_argument(
        "path family does not glue into a digraph with distinct source and "
        "sink");
  }

  // Scale capacities to integers so cycle canceling terminates.
  BigInt scale = 1;
  for (const Element& e : net.elements()) {
    scale = boost::multiprecision::lcm(scale, BigInt(denominator(e.capacity)));
  }

  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  std::vector<BigInt> capacities;
  std::vector<BigInt> costs;
  BigInt cap_sum = 0;
  for (std::size_t e = 0; e < net.element_count(); ++e) {
    const auto& ends = element_ends[e];
    if (ends.first == SIZE_MAX) continue;  // element on no path
    BigInt cap = BigInt(numerator(net.element(static_cast<int>(e)).capacity)) *
                 (scale / BigInt(denominator(
                              net.element(static_cast<int>(e)).capacity)));
    arcs.push_back({node_of(ends.first), node_of(ends.second)});
    capacities.push_back(cap);
    costs.push_back(BigInt(net.element(static_cast<int>(e)).transit));
    cap_sum += cap;
  }

  std::vector<std::vector<ResidualArc>> graph(node_of_class.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    // Gluing can identify an arc's endpoints; a self-loop with nonnegative
    // cost can never be part of a negative cycle, so drop it.
    if (arcs[a].first == arcs[a].second) continue;
    add_arc(graph, arcs[a].first, arcs[a].second, capacities[a], costs[a]);
  }
  // Return arc: each unit circulating along an s-t path P gains T - transit(P).
  add_arc(graph, sink, source, cap_sum, BigInt(-horizon.steps));

  const BigInt min_cost = cancel_negative_cycles(graph);
  return Rational(-min_cost, scale);
}

}  // namespace aft
