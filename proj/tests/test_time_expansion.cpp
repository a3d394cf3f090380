#include <stdexcept>
#include <string>
#include <vector>

#include "aft/core_model.hpp"
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

AbstractNetwork example2() {
  return unit_net({"s", "a", "b", "t"},
                  {{"s", "a", "b", "t"},
                   {"s", "b", "a", "t"},
                   {"s", "a", "t"},
                   {"s", "b", "t"}});
}

}  // namespace

TEST_CASE("horizons must be positive") {
  CHECK_THROWS_AS(Horizon(0), std::invalid_argument);
  CHECK_THROWS_AS(Horizon(-3), std::invalid_argument);
  CHECK(Horizon(1).steps == 1);
}

TEST_CASE("entry and arrival times of a shifted copy") {
  const AbstractNetwork net =
      unit_net({"e1", "e2", "x"}, {{"e1", "e2"}});
  const TemporalPath tp{0, 2};
  CHECK(entry_time(net, tp, net.element_index("e1")) == 2);
  CHECK(entry_time(net, tp, net.element_index("e2")) == 3);
  CHECK(arrival_time(net, tp) == 4);
  CHECK_THROWS_AS(entry_time(net, tp, net.element_index("x")),
                  std::invalid_argument);

  const auto copies = temporal_elements(net, tp);
  REQUIRE(copies.size() == 2);
  CHECK(copies[0] == TemporalElement{net.element_index("e1"), 2});
  CHECK(copies[1] == TemporalElement{net.element_index("e2"), 3});
}

TEST_CASE("waiting shifts entry times by the accumulated delays") {
  const AbstractNetwork net = chain2();
  const WaitingSchedule ws{0, {1, 2}};
  // Enter e1 after waiting 1; traverse (transit 1); wait 2 more; enter e2.
  CHECK(entry_time(net, ws, net.element_index("e1")) == 1);
  CHECK(entry_time(net, ws, net.element_index("e2")) == 4);
  CHECK(arrival_time(net, ws) == 5);

  CHECK_THROWS_AS(entry_time(net, WaitingSchedule{0, {1}}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(entry_time(net, WaitingSchedule{0, {-1, 0}}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(entry_time(net, WaitingSchedule{5, {0, 0}}, 0),
                  std::invalid_argument);
}

TEST_CASE("a start-only schedule is the shifted copy") {
  const AbstractNetwork net = example2();
  for (int p = 0; p < 4; ++p) {
    for (TimeStep t : {0, 1, 2}) {
      const TemporalPath tp{p, t};
      const WaitingSchedule ws{
          p, std::vector<TimeStep>(net.path(p).size(), 0)};
      WaitingSchedule shifted = ws;
      shifted.wait[0] = t;
      CHECK(temporal_elements(net, tp) == temporal_elements(net, shifted));
      CHECK(arrival_time(net, tp) == arrival_time(net, shifted));
    }
  }
}

TEST_CASE("expansion lists admissible copies by path then start") {
  const AbstractNetwork net = chain2();
  const auto copies = expand(net, Horizon(4));
  CHECK(copies == std::vector<TemporalPath>{{0, 0}, {0, 1}});

  // Canonical paths of the second example: 0=(s,a,b,t), 1=(s,a,t),
  // 2=(s,b,a,t), 3=(s,b,t); transit sums 4, 3, 4, 3.
  const auto ex2 = expand(example2(), Horizon(6));
  CHECK(ex2 == std::vector<TemporalPath>{{0, 0},
                                         {0, 1},
                                         {1, 0},
                                         {1, 1},
                                         {1, 2},
                                         {2, 0},
                                         {2, 1},
                                         {3, 0},
                                         {3, 1},
                                         {3, 2}});

  // A too-short horizon admits nothing.
  CHECK(expand(net, Horizon(2)).empty());
}

TEST_CASE("the expanded family can lose the switching property") {
  const AbstractNetwork net = example2();
  // At horizon 6 the copies (s,a,b,t)@0 and (s,b,a,t)@1 share only the copy
  // (b,2); no admissible temporal path fits inside the switching union, in
  // either orientation.  Elements: a=0, b=1.
  const auto report = check_expansion_switching(net, Horizon(6));
  REQUIRE(report.violations.size() == 2);
  CHECK(report.violations[0] ==
        ExpansionViolation{{0, 0}, {2, 1}, {1, 2}});
  CHECK(report.violations[1] ==
        ExpansionViolation{{2, 0}, {0, 1}, {0, 2}});

  // One step less and the offending shifted pair is gone.
  CHECK(check_expansion_switching(net, Horizon(5)).ok());
  CHECK(check_expansion_switching(chain2(), Horizon(6)).ok());
}

TEST_CASE("weak duality accepts a feasible flow against a covering cut") {
  const AbstractNetwork net = chain2();
  const Horizon horizon(4);
  FlowOverTime flow;
  flow.values = {{{0, 0}, Rational(1)}, {{0, 1}, Rational(1)}};
  CHECK(flow.total_value() == 2);

  CutOverTime tight;
  tight.members = {{1, 1}, {1, 2}};  // e2 at times 1 and 2
  CHECK(check_weak_duality(flow, tight, net, horizon));

  CutOverTime everything;
  for (int e = 0; e < 2; ++e) {
    for (TimeStep t = 0; t < 4; ++t) everything.members.push_back({e, t});
  }
  CHECK(everything.contains({0, 3}));
  CHECK_FALSE(everything.contains({0, 4}));
  CHECK(check_weak_duality(flow, everything, net, horizon));
}

TEST_CASE("weak duality rejects malformed flows and cuts") {
  const AbstractNetwork net = chain2();
  const Horizon horizon(4);
  CutOverTime everything;
  for (int e = 0; e < 2; ++e) {
    for (TimeStep t = 0; t < 4; ++t) everything.members.push_back({e, t});
  }

  FlowOverTime unknown;
  unknown.values = {{{7, 0}, Rational(1)}};
  CHECK_THROWS_AS(check_weak_duality(unknown, everything, net, horizon),
                  std::invalid_argument);

  FlowOverTime negative;
  negative.values = {{{0, 0}, Rational(-1)}};
  CHECK_THROWS_AS(check_weak_duality(negative, everything, net, horizon),
                  std::invalid_argument);

  FlowOverTime late;  // start 2 arrives at 4, outside horizon 4
  late.values = {{{0, 2}, Rational(1)}};
  CHECK_THROWS_AS(check_weak_duality(late, everything, net, horizon),
                  std::invalid_argument);

  FlowOverTime doubled;
  doubled.values = {{{0, 0}, Rational(1, 2)}, {{0, 0}, Rational(1, 2)}};
  CHECK_THROWS_AS(check_weak_duality(doubled, everything, net, horizon),
                  std::invalid_argument);

  FlowOverTime overload;  // exceeds the unit capacity of (e1, 0)
  overload.values = {{{0, 0}, Rational(2)}};
  CHECK_THROWS_AS(check_weak_duality(overload, everything, net, horizon),
                  std::invalid_argument);

  FlowOverTime fine;
  fine.values = {{{0, 0}, Rational(1)}};
  CutOverTime missing;  // covers the start-0 copy only
  missing.members = {{1, 1}};
  CHECK_THROWS_AS(check_weak_duality(fine, missing, net, horizon),
                  std::invalid_argument);
  CutOverTime empty;
  CHECK_THROWS_AS(check_weak_duality(fine, empty, net, horizon),
                  std::invalid_argument);
}
