#include "aft/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aft/errors.hpp"

namespace aft {

namespace {

long long draw(std::mt19937_64& rng, long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("empty random range");
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

void attach_random_data(InstanceDocument& doc, std::mt19937_64& rng,
                        int capacity_min, int capacity_max,
                        TimeStep transit_min, TimeStep transit_max,
                        TimeStep horizon_min, TimeStep horizon_max) {
  for (InstanceElement& e : doc.elements) {
    e.capacity = Rational(draw(rng, capacity_min, capacity_max));
    e.transit = draw(rng, transit_min, transit_max);
  }
  doc.horizon = draw(rng, horizon_min, horizon_max);
}

void require_valid(const InstanceDocument& doc, const char* generator) {
  const AbstractNetwork net = to_network(doc);
  if (!validate_switching(net).ok()) {
    throw GenerationError(std::string(generator) +
                          " produced a family failing the switching property "
                          "(generator bug)");
  }
}

}  // namespace

InstanceDocument generate_dag(const DagOptions& options,
                              const SizeBounds& bounds) {
  if (options.nodes < 2) {
    throw std::invalid_argument("dag generator needs at least 2 nodes");
  }
  std::mt19937_64 rng(options.seed);
  const int n = options.nodes;

  // Nodes 0..n-1 in topological order; 0 is the source, n-1 the sink.  A
  // random increasing spine keeps at least one source-sink path.
  std::vector<int> spine{0};
  for (int v = 1; v < n - 1; ++v) {
    if (draw(rng, 0, 1) == 1) spine.push_back(v);
  }
  spine.push_back(n - 1);

  std::set<std::pair<int, int>> arcs;
  for (std::size_t i = 0; i + 1 < spine.size(); ++i) {
    arcs.insert({spine[i], spine[i + 1]});
  }
  std::vector<std::pair<int, int>> candidates;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!arcs.count({u, v})) candidates.push_back({u, v});
    }
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (const auto& arc : candidates) {
    if (static_cast<int>(arcs.size()) >= options.arcs) break;
    arcs.insert(arc);
  }

  InstanceDocument doc;
  std::map<std::pair<int, int>, std::string> name_of;
  for (const auto& [u, v] : arcs) {
    const std::string name = std::to_string(u) + "-" + std::to_string(v);
    name_of[{u, v}] = name;
    doc.elements.push_back({name, Rational(1), 0});
  }

  // All source-sink paths, as arc-name sequences in traversal order.
  std::vector<std::vector<int>> out_neighbours(static_cast<std::size_t>(n));
  for (const auto& [u, v] : arcs) {
    out_neighbours[static_cast<std::size_t>(u)].push_back(v);
  }
  std::vector<std::string> current;
  auto dfs = [&](auto&& self, int node) -> void {
    if (node == n - 1) {
      if (doc.paths.size() == bounds.dag_paths) {
        throw GenerationError("dag has more than " +
                              std::to_string(bounds.dag_paths) +
                              " source-sink paths");
      }
      doc.paths.push_back(current);
      return;
    }
    for (int next : out_neighbours[static_cast<std::size_t>(node)]) {
      current.push_back(name_of.at({node, next}));
      self(self, next);
      current.pop_back();
    }
  };
  dfs(dfs, 0);

  attach_random_data(doc, rng, options.capacity_min, options.capacity_max,
                     options.transit_min, options.transit_max,
                     options.horizon_min, options.horizon_max);
  canonicalize_instance(doc);
  require_valid(doc, "dag generator");
  return doc;
}

std::vector<std::vector<int>> close_under_switching(
    std::vector<std::vector<int>> paths, std::size_t universe,
    std::size_t max_paths) {
  std::set<std::vector<int>> seen(paths.begin(), paths.end());
  while (true) {
    const auto violations = find_switching_violations(universe, paths);
    if (violations.empty()) return paths;
    const SwitchTriple& t = violations.front();
    const std::vector<int>& p = paths[static_cast<std::size_t>(t.p)];
    const std::vector<int>& q = paths[static_cast<std::size_t>(t.q)];
    std::vector<int> merged;
    std::set<int> used;
    for (int e : p) {
      merged.push_back(e);
      used.insert(e);
      if (e == t.pivot) break;
    }
    bool past_pivot = false;
    for (int e : q) {
      if (past_pivot && !used.count(e)) {
        merged.push_back(e);
        used.insert(e);
      }
      if (e == t.pivot) past_pivot = true;
    }
    // The merged path is itself a witness for (p, q, pivot), so it cannot be
    // in the family already.
    if (!seen.insert(merged).second) {
      throw GenerationError(
          "closure revisited an existing path (generator bug)");
    }
    paths.push_back(std::move(merged));
    if (paths.size() > max_paths) {
      throw GenerationError("closure exceeded " + std::to_string(max_paths) +
                            " paths before reaching a fixpoint");
    }
  }
}

InstanceDocument generate_closure(const ClosureOptions& options,
                                  const SizeBounds& bounds) {
  if (options.universe_min < 1 || options.universe_max > 26 ||
      options.universe_min > options.universe_max) {
    throw std::invalid_argument("closure universe must fit within 1..26");
  }
  std::mt19937_64 rng(options.seed);
  const int universe = static_cast<int>(
      draw(rng, options.universe_min, options.universe_max));

  std::set<std::vector<int>> family_set;
  std::vector<std::vector<int>> family;
  const int path_count = static_cast<int>(
      draw(rng, options.seed_path_count_min, options.seed_path_count_max));
  for (int i = 0; i < path_count; ++i) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      const int len = static_cast<int>(
          std::min<long long>(draw(rng, options.seed_path_length_min,
                                   options.seed_path_length_max),
                              universe));
      std::vector<int> pool(static_cast<std::size_t>(universe));
      std::iota(pool.begin(), pool.end(), 0);
      std::shuffle(pool.begin(), pool.end(), rng);
      std::vector<int> path(pool.begin(), pool.begin() + len);
      if (family_set.insert(path).second) {
        family.push_back(path);
        break;
      }
    }
  }

  family = close_under_switching(std::move(family),
                                 static_cast<std::size_t>(universe),
                                 bounds.closure_paths);

  InstanceDocument doc;
  for (int e = 0; e < universe; ++e) {
    doc.elements.push_back(
        {std::string(1, static_cast<char>('a' + e)), Rational(1), 0});
  }
  for (const auto& path : family) {
    std::vector<std::string> names;
    for (int e : path) {
      names.push_back(std::string(1, static_cast<char>('a' + e)));
    }
    doc.paths.push_back(std::move(names));
  }
  attach_random_data(doc, rng, options.capacity_min, options.capacity_max,
                     options.transit_min, options.transit_max,
                     options.horizon_min, options.horizon_max);
  canonicalize_instance(doc);
  require_valid(doc, "closure generator");
  return doc;
}

}  // namespace aft
