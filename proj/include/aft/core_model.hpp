#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aft/rational.hpp"

namespace aft {

// Times (transit, horizons, entry times) are integral throughout.
using TimeStep = long long;

struct Element {
  std::string id;
  Rational capacity;  // >= 0
  TimeStep transit;   // >= 0
};

// An ordered, duplicate-free sequence of element indices; the sequence order
// is the path's linear order.
struct AbstractPath {
  std::vector<int> elements;

  bool contains(int element) const;
  // Position in the order, or -1 if the element is not on the path.
  int position_of(int element) const;
  std::size_t size() const { return elements.size(); }
  bool operator==(const AbstractPath&) const = default;
};

// Ground set plus a family of ordered paths.  Construction canonicalizes
// (elements sorted by id, paths sorted lexicographically by their element
// index sequences) and validates basic shape: ids unique and nonempty, paths
// nonempty, duplicate-free, referencing declared elements only, no duplicate
// path sequences, capacities >= 0, transit times >= 0.  Violations throw
// std::invalid_argument.  Whether the family satisfies the switching property
// is a separate question answered by validate_switching().
class AbstractNetwork {
 public:
  AbstractNetwork(std::vector<Element> elements,
                  const std::vector<std::vector<std::string>>& paths);

  std::size_t element_count() const { return elements_.size(); }
  std::size_t path_count() const { return paths_.size(); }
  const Element& element(int i) const { return elements_.at(i); }
  const std::vector<Element>& elements() const { return elements_; }
  const AbstractPath& path(int i) const { return paths_.at(i); }
  const std::vector<AbstractPath>& paths() const { return paths_; }

  // Index of an element id, or -1 if not declared.
  int element_index(const std::string& id) const;
  // Index of a path given by element ids, or -1 if not in the family.
  int path_index(const std::vector<std::string>& ids) const;

  std::vector<std::string> path_ids(int i) const;
  std::string path_label(int i) const;  // "(a,b,t)" style, for messages
  TimeStep total_transit(int path) const;

 private:
  std::vector<Element> elements_;
  std::vector<AbstractPath> paths_;
  std::map<std::string, int> index_of_id_;
};

// Order-respecting slices around an element on a path.  All four throw
// std::invalid_argument if the element does not lie on the path.
std::vector<int> closed_prefix(const AbstractPath& path, int element);
std::vector<int> open_prefix(const AbstractPath& path, int element);
std::vector<int> closed_suffix(const AbstractPath& path, int element);
std::vector<int> open_suffix(const AbstractPath& path, int element);

// An ordered triple (P, Q, e) with e on both paths for which no path of the
// family lies inside closed_prefix(P, e) ∪ closed_suffix(Q, e).
struct SwitchTriple {
  int p = -1;
  int q = -1;
  int pivot = -1;
  bool operator==(const SwitchTriple&) const = default;
};

// Core switching check over an arbitrary ordered family: for every ordered
// pair of paths and every shared element, some path must be contained in the
// union of the first path's closed prefix and the second's closed suffix at
// that element.  Returns all violating triples, ordered by (p, q, pivot).
// Works on any universe of consecutive integers, so the time expansion can
// reuse it.
std::vector<SwitchTriple> find_switching_violations(
    std::size_t universe, const std::vector<std::vector<int>>& paths);

struct ValidationReport {
  std::vector<SwitchTriple> violations;
  // Paths whose total transit time is zero; legal, but flagged because such a
  // path repeats at every time step of any horizon.
  std::vector<int> zero_transit_paths;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_switching(const AbstractNetwork& net);

// Result of applying the switching property at (P, Q, pivot): the canonical
// witness path plus its split into the part drawn from closed_prefix(P, pivot)
// and the part drawn from closed_suffix(Q, pivot).  Elements of the witness in
// both slices are attributed to the prefix part.
struct SwitchWitness {
  int p = -1;
  int q = -1;
  int pivot = -1;
  int result = -1;  // path index of the witness
  std::vector<int> prefix_part;
  std::vector<int> suffix_part;
};

// Picks, among all witness paths for (p, q, pivot), one that minimizes the
// number of elements outside closed_prefix(p, pivot); ties are broken by the
// lexicographically smallest element index sequence.  Throws
// SwitchingViolationError when no witness exists and StructuralInconsistencyError
// if the chosen witness fails to split cleanly into prefix-part followed by
// suffix-part (impossible for a minimizer, so this guards against bugs).
SwitchWitness canonical_switch(const AbstractNetwork& net, int p, int q,
                               int pivot);

// Removes every path that contains another path of the family with agreeing
// order, iterating to a fixpoint.  Purely structural: does not require or
// check the switching property.
AbstractNetwork reduce_assumption2(const AbstractNetwork& net);

// True iff no path strictly order-agreeingly contains another (the state
// reduce_assumption2 establishes).  When false and `counterexamples` is given,
// each (p, q) with path q contained in path p is appended.
bool check_no_inclusion(const AbstractNetwork& net,
                        std::vector<std::pair<int, int>>* counterexamples =
                            nullptr);

// One broken instance of the order-preservation lemma at a canonical switch:
// elements `first`, `second` appear in the witness in an order contradicting
// the order of P (prefix side) or Q (suffix side).
struct OrderViolation {
  int p = -1;
  int q = -1;
  int pivot = -1;
  int first = -1;
  int second = -1;
  bool in_prefix = false;
};

struct OrderPreservationReport {
  std::vector<OrderViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks, for every ordered pair of paths and every shared element, that the
// canonical witness keeps prefix-part elements in P's order and suffix-part
// elements in Q's order.  Requires a valid network (every triple must have a
// witness); a missing witness propagates as SwitchingViolationError.
OrderPreservationReport check_order_preservation(const AbstractNetwork& net);

}  // namespace aft
