#include <stdexcept>
#include <string>
#include <vector>

#include "aft/bounds.hpp"
#include "aft/core_model.hpp"
#include "aft/errors.hpp"
#include "aft/generators.hpp"
#include "aft/instance_io.hpp"
#include "aft/oracle.hpp"
#include "aft/time_expansion.hpp"
#include "doctest.h"

using namespace aft;

namespace {

AbstractNetwork unit_net(const std::vector<std::string>& ids,
                         const std::vector<std::vector<std::string>>& paths,
                         TimeStep transit = 1) {
  std::vector<Element> elements;
  for (const auto& id : ids) elements.push_back({id, Rational(1), transit});
  return AbstractNetwork(std::move(elements), paths);
}

AbstractNetwork chain2() { return unit_net({"e1", "e2"}, {{"e1", "e2"}}); }

AbstractNetwork example1() {
  return unit_net({"1", "2", "3", "4", "a", "b", "c", "d"},
                  {{"1", "2", "3", "4"},
                   {"a", "2", "c"},
                   {"b", "3", "d"},
                   {"1", "c"},
                   {"1", "d"},
                   {"a", "4"},
                   {"b", "4"}});
}

AbstractNetwork example2() {
  return unit_net({"s", "a", "b", "t"},
                  {{"s", "a", "b", "t"},
                   {"s", "b", "a", "t"},
                   {"s", "a", "t"},
                   {"s", "b", "t"}});
}

}  // namespace

TEST_CASE("the strict oracle reproduces the frozen optima") {
  const OracleResult tiny = oracle_strict(chain2(), Horizon(4));
  CHECK(tiny.optimum == 2);
  CHECK(tiny.mode == OracleMode::strict);
  Rational carried(0);
  for (const auto& [tp, v] : tiny.strict_argument) carried += v;
  CHECK(carried == 2);

  CHECK(oracle_strict(chain2(), Horizon(3)).optimum == 1);
  CHECK(oracle_strict(example2(), Horizon(5)).optimum == 2);
  CHECK(oracle_strict(example2(), Horizon(6)).optimum == 3);
  CHECK(oracle_strict(example1(), Horizon(6)).optimum == 11);
}

TEST_CASE("the waiting oracle can never do worse, and here does no better") {
  CHECK(oracle_waiting(chain2(), Horizon(4)).optimum == 2);
  CHECK(oracle_waiting(chain2(), Horizon(3)).optimum == 1);
  CHECK(oracle_waiting(example2(), Horizon(5)).optimum == 2);
  CHECK(oracle_waiting(example2(), Horizon(6)).optimum == 3);

  const OracleResult waiting = oracle_waiting(example1(), Horizon(6));
  CHECK(waiting.optimum == 11);
  CHECK(waiting.mode == OracleMode::waiting);
  Rational carried(0);
  for (const auto& [ws, v] : waiting.waiting_argument) carried += v;
  CHECK(carried == 11);
}

TEST_CASE("waiting schedules are enumerated in lexicographic order") {
  const auto schedules = enumerate_waiting_schedules(chain2(), Horizon(4));
  REQUIRE(schedules.size() == 3);
  CHECK(schedules[0] == WaitingSchedule{0, {0, 0}});
  CHECK(schedules[1] == WaitingSchedule{0, {0, 1}});
  CHECK(schedules[2] == WaitingSchedule{0, {1, 0}});

  // Every enumerated schedule is admissible for the horizon.
  for (const auto& ws : schedules) {
    CHECK(arrival_time(chain2(), ws) <= 3);
  }
}

TEST_CASE("size bounds turn oversized instances into scale errors") {
  CHECK_THROWS_AS(
      oracle_strict(example1(), Horizon(6), SizeBounds{.oracle_strict = 1}),
      ScaleError);
  CHECK_THROWS_AS(
      oracle_waiting(example1(), Horizon(6), SizeBounds{.oracle_waiting = 1}),
      ScaleError);
  // Generous bounds leave the result untouched.
  CHECK(oracle_strict(example1(), Horizon(6), SizeBounds{}).optimum == 11);
}

TEST_CASE("classical flow over time agrees with the oracle on digraphs") {
  const AbstractNetwork loop = unit_net({"a"}, {{"a"}});
  CHECK(classical_max_flow_over_time(loop, Horizon(3)) == 2);
  CHECK(oracle_strict(loop, Horizon(3)).optimum == 2);

  // Two disjoint length-2 paths: a diamond with separate middles.
  const AbstractNetwork diamond =
      unit_net({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
  CHECK(classical_max_flow_over_time(diamond, Horizon(4)) == 4);
  CHECK(oracle_strict(diamond, Horizon(4)).optimum == 4);

  CHECK(classical_max_flow_over_time(chain2(), Horizon(4)) == 2);
}

TEST_CASE("families that do not glue into a digraph are rejected") {
  const AbstractNetwork bad = unit_net({"a", "b"}, {{"a", "b"}, {"a"}, {"b"}});
  CHECK_THROWS_AS(classical_max_flow_over_time(bad, Horizon(4)),
                  std::invalid_argument);
}

TEST_CASE("generated DAG instances satisfy the classical equivalence") {
  DagOptions options;
  options.nodes = 5;
  options.arcs = 7;
  options.seed = 7;
  const InstanceDocument doc = generate_dag(options);
  const AbstractNetwork net = to_network(doc);
  const Horizon horizon(doc.horizon);
  const Rational classical = classical_max_flow_over_time(net, horizon);
  CHECK(classical == oracle_strict(net, horizon).optimum);
}
