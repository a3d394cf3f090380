#include "aft/static_flow.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "aft/errors.hpp"
#include "aft/exact_lp.hpp"

namespace aft {

namespace {

constexpr long long kWeightLimit = 1000000000000LL;  // sanity cap for searches

long long weight_as_long(const Rational& w) {
  if (!is_integer(w)) {
    throw std::invalid_argument("weight " + format_rational(w) +
                                " is not integral");
  }
  BigInt v = to_integer(w);
  if (v > kWeightLimit || v < -kWeightLimit) {
    throw std::invalid_argument("weight " + v.str() +
                                " is too large for the integral dual search");
  }
  return v.convert_to<long long>();
}

long long capacity_as_long(const Rational& cap) {
  BigInt v = to_integer(cap);
  if (v > kWeightLimit) {
    throw std::invalid_argument("capacity " + v.str() +
                                " is too large for the integral flow search");
  }
  return v.convert_to<long long>();
}

// Depth-first enumeration of integral duals with a fixed ℓ1 norm, assigning
// elements in canonical order, smallest value first; the first success is the
// lexicographically smallest optimal dual of that norm.
//
// Per-element value bounds: every exact-cost dual of minimal norm satisfies
// y(e) <= B(e) := max(0, max over paths P containing e of r(P)).  For
// c(e) > 0, reducing y(e) to B(e) keeps every constraint satisfied (the
// element alone covers each containing path's weight) and strictly lowers the
// cost below the LP optimum — impossible.  For c(e) = 0 the same reduction
// keeps the cost and lowers the norm, contradicting norm minimality.
// Elements on no path get B(e) = 0.
class DualSearch {
 public:
  DualSearch(const AbstractNetwork& net, const std::vector<long long>& weights,
             const Rational& target)
      : net_(net), target_(target) {
    const std::size_t m = net.element_count();
    const std::size_t n = net.path_count();
    paths_with_.resize(m);
    for (std::size_t p = 0; p < n; ++p) {
      for (int e : net.path(static_cast<int>(p)).elements) {
        paths_with_[static_cast<std::size_t>(e)].push_back(
            static_cast<int>(p));
      }
    }
    element_bound_.assign(m, 0);
    for (std::size_t e = 0; e < m; ++e) {
      for (int p : paths_with_[e]) {
        element_bound_[e] =
            std::max(element_bound_[e], weights[static_cast<std::size_t>(p)]);
      }
    }
    need_.resize(n);
    remaining_bound_on_path_.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      need_[p] = weights[p];
      remaining_bound_on_path_[p] = 0;
      for (int e : net.path(static_cast<int>(p)).elements) {
        remaining_bound_on_path_[p] += element_bound_[static_cast<std::size_t>(e)];
      }
    }
    value_.assign(m, 0);
    // Suffix aggregates over elements i..m-1: how much norm they can absorb,
    // and the cheapest/dearest capacity among those that can hold a unit.
    absorb_.assign(m + 1, 0);
    cheapest_.assign(m + 1, Rational(0));
    dearest_.assign(m + 1, Rational(0));
    for (std::size_t i = m; i-- > 0;) {
      absorb_[i] = absorb_[i + 1] + element_bound_[i];
      cheapest_[i] = cheapest_[i + 1];
      dearest_[i] = dearest_[i + 1];
      if (element_bound_[i] > 0) {
        const Rational& c = net.element(static_cast<int>(i)).capacity;
        if (absorb_[i + 1] == 0) {
          cheapest_[i] = dearest_[i] = c;
        } else {
          cheapest_[i] = std::min(cheapest_[i], c);
          dearest_[i] = std::max(dearest_[i], c);
        }
      }
    }
  }

  long long max_norm() const { return absorb_[0]; }
  // Cheapest/dearest capacity among elements that can carry dual value at
  // all; zero rationals when there are none.
  const Rational& cheapest_capacity() const { return cheapest_[0]; }
  const Rational& dearest_capacity() const { return dearest_[0]; }

  bool run(long long norm, std::vector<long long>& out) {
    norm_left_ = norm;
    cost_ = 0;
    if (dfs(0)) {
      out = value_;
      return true;
    }
    return false;
  }

 private:
  bool dfs(std::size_t e) {
    const std::size_t m = net_.element_count();
    if (e == m) {
      return norm_left_ == 0 && cost_ == target_;
    }
    if (norm_left_ > absorb_[e]) return false;
    // Whatever is still needed on a path must come out of the remaining norm
    // budget; equivalently, the norm already spent off a path may not exceed
    // the path's slack norm - need.
    for (std::size_t p = 0; p < need_.size(); ++p) {
      if (need_[p] > norm_left_) return false;
    }
    if (norm_left_ == 0) {
      // Remaining values are forced to zero; the cost is already final.
      if (cost_ != target_) return false;
    } else {
      // Every remaining unit costs between the cheapest and the dearest
      // remaining capacity, so the final cost lies in a known window.
      if (cost_ + Rational(norm_left_) * dearest_[e] < target_) return false;
      if (cost_ + Rational(norm_left_) * cheapest_[e] > target_) return false;
    }

    const long long cap = std::min(element_bound_[e], norm_left_);
    for (long long v = 0; v <= cap; ++v) {
      if (!apply(e, v)) {
        undo(e, v);
        continue;
      }
      if (dfs(e + 1)) return true;
      undo(e, v);
    }
    return false;
  }

  // Assigns value_[e] = v and updates incrementals; returns false if some
  // path is already provably infeasible under the partial assignment.
  bool apply(std::size_t e, long long v) {
    value_[e] = v;
    norm_left_ -= v;
    cost_ += net_.element(static_cast<int>(e)).capacity * Rational(v);
    bool feasible = true;
    for (int p : paths_with_[e]) {
      need_[static_cast<std::size_t>(p)] -= v;
      remaining_bound_on_path_[static_cast<std::size_t>(p)] -= element_bound_[e];
      if (need_[static_cast<std::size_t>(p)] >
          remaining_bound_on_path_[static_cast<std::size_t>(p)]) {
        feasible = false;
      }
    }
    return feasible;
  }

  void undo(std::size_t e, long long v) {
    for (int p : paths_with_[e]) {
      need_[static_cast<std::size_t>(p)] += v;
      remaining_bound_on_path_[static_cast<std::size_t>(p)] += element_bound_[e];
    }
    cost_ -= net_.element(static_cast<int>(e)).capacity * Rational(v);
    norm_left_ += v;
    value_[e] = 0;
  }

  const AbstractNetwork& net_;
  Rational target_;
  std::vector<std::vector<int>> paths_with_;
  std::vector<long long> element_bound_;
  std::vector<long long> need_;
  std::vector<long long> remaining_bound_on_path_;
  std::vector<long long> value_;
  std::vector<long long> absorb_;
  std::vector<Rational> cheapest_;
  std::vector<Rational> dearest_;
  long long norm_left_ = 0;
  Rational cost_;
};

long long ceil_ratio(const Rational& r) {  // r >= 0
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  BigInt q = num / den;
  if (q * den != num) q += 1;
  return q.convert_to<long long>();
}

long long floor_ratio(const Rational& r) {  // r >= 0
  return BigInt(numerator(r) / denominator(r)).convert_to<long long>();
}

std::vector<long long> find_integral_dual(const AbstractNetwork& net,
                                          const std::vector<long long>& weights,
                                          const Rational& optimum) {
  long long bound = 0;
  for (long long w : weights) bound = std::max(bound, w);

  DualSearch search(net, weights, optimum);
  // Norm window for any exact-cost dual of minimal norm: a path of weight
  // `bound` forces at least that much total dual value, each unit of norm
  // costs at most the dearest eligible capacity (so the norm must reach the
  // optimum) and at least the cheapest one (so it must not overshoot).
  long long lo = bound;
  long long hi = search.max_norm();
  const Rational cmax = search.dearest_capacity();
  const Rational cmin = search.cheapest_capacity();
  if (cmax > 0) {
    lo = std::max(lo, ceil_ratio(optimum / cmax));
  } else if (optimum != 0) {
    throw TdiViolationError(
        "no element can carry dual value, yet the optimum is " +
        format_rational(optimum) + "; no integral optimal dual exists");
  }
  if (cmin > 0) hi = std::min(hi, floor_ratio(optimum / cmin));

  std::vector<long long> result;
  // Complete by the elementwise bounds argument above the search class: the
  // minimal-norm duals all live in the searched box and norm window.
  for (long long norm = lo; norm <= hi; ++norm) {
    if (search.run(norm, result)) return result;
  }
  throw TdiViolationError(
      "no integral optimal dual with entries up to " + std::to_string(bound) +
      " exists; the instance violates total dual integrality");
}

// Depth-first search for an integral optimal flow, guided by complementary
// slackness against the integral dual: paths with positive dual slack are
// fixed to zero, elements with positive dual value must end up saturated.
class PrimalSearch {
 public:
  PrimalSearch(const AbstractNetwork& net, const std::vector<long long>& weights,
               const std::vector<long long>& dual, const Rational& target)
      : net_(net), weights_(weights), target_(target) {
    const std::size_t n = net.path_count();
    const std::size_t m = net.element_count();
    remaining_.resize(m);
    tight_.resize(m);
    for (std::size_t e = 0; e < m; ++e) {
      remaining_[e] = capacity_as_long(net.element(static_cast<int>(e)).capacity);
      tight_[e] = dual[e] > 0;
    }
    forced_zero_.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      long long dual_on_path = 0;
      for (int e : net.path(static_cast<int>(p)).elements) {
        dual_on_path += dual[static_cast<std::size_t>(e)];
      }
      forced_zero_[p] = dual_on_path > weights[p];
    }
    value_.assign(n, 0);
  }

  std::vector<long long> run() {
    objective_ = 0;
    std::vector<long long> out;
    if (!dfs(0, out)) {
      throw TdiViolationError(
          "no integral optimal flow compatible with the integral dual exists");
    }
    return out;
  }

 private:
  bool dfs(std::size_t p, std::vector<long long>& out) {
    if (p == net_.path_count()) {
      if (objective_ != target_) return false;
      for (std::size_t e = 0; e < net_.element_count(); ++e) {
        if (tight_[e] && remaining_[e] != 0) return false;
      }
      out = value_;
      return true;
    }
    long long cap = std::numeric_limits<long long>::max();
    for (int e : net_.path(static_cast<int>(p)).elements) {
      cap = std::min(cap, remaining_[static_cast<std::size_t>(e)]);
    }
    if (forced_zero_[p]) cap = 0;
    for (long long v = cap; v >= 0; --v) {
      value_[p] = v;
      objective_ += Rational(weights_[p]) * Rational(v);
      for (int e : net_.path(static_cast<int>(p)).elements) {
        remaining_[static_cast<std::size_t>(e)] -= v;
      }
      if (plausible(p + 1) && dfs(p + 1, out)) return true;
      for (int e : net_.path(static_cast<int>(p)).elements) {
        remaining_[static_cast<std::size_t>(e)] += v;
      }
      objective_ -= Rational(weights_[p]) * Rational(v);
      value_[p] = 0;
    }
    return false;
  }

  // Cheap reachability bounds for the remaining suffix of paths.
  bool plausible(std::size_t next) {
    Rational optimistic = objective_;
    for (std::size_t p = next; p < net_.path_count(); ++p) {
      if (weights_[p] <= 0 || forced_zero_[p]) continue;
      long long cap = std::numeric_limits<long long>::max();
      for (int e : net_.path(static_cast<int>(p)).elements) {
        cap = std::min(cap, remaining_[static_cast<std::size_t>(e)]);
      }
      optimistic += Rational(weights_[p]) * Rational(cap);
    }
    if (optimistic < target_) return false;
    for (std::size_t e = 0; e < net_.element_count(); ++e) {
      if (!tight_[e] || remaining_[e] == 0) continue;
      bool reachable = false;
      for (std::size_t p = next; p < net_.path_count(); ++p) {
        if (!forced_zero_[p] &&
            net_.path(static_cast<int>(p)).contains(static_cast<int>(e))) {
          reachable = true;
          break;
        }
      }
      if (!reachable) return false;
    }
    return true;
  }

  const AbstractNetwork& net_;
  const std::vector<long long>& weights_;
  Rational target_;
  std::vector<long long> remaining_;
  std::vector<bool> tight_;
  std::vector<bool> forced_zero_;
  std::vector<long long> value_;
  Rational objective_;
};

}  // namespace

WeightFunction build_horizon_weights(const AbstractNetwork& net,
                                     TimeStep horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("horizon must be at least 1, got " +
                                std::to_string(horizon));
  }
  WeightFunction w;
  w.weights.reserve(net.path_count());
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    w.weights.emplace_back(horizon - net.total_transit(static_cast<int>(p)));
  }
  return w;
}

std::vector<SupermodularityViolation> check_supermodular(
    const AbstractNetwork& net, const WeightFunction& weights) {
  if (weights.weights.size() != net.path_count()) {
    throw std::invalid_argument("weight function size mismatch");
  }
  std::vector<SupermodularityViolation> violations;
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    for (std::size_t q = p + 1; q < net.path_count(); ++q) {
      for (int pivot : net.path(static_cast<int>(p)).elements) {
        if (!net.path(static_cast<int>(q)).contains(pivot)) continue;
        SwitchWitness forward =
            canonical_switch(net, static_cast<int>(p), static_cast<int>(q),
                             pivot);
        SwitchWitness backward =
            canonical_switch(net, static_cast<int>(q), static_cast<int>(p),
                             pivot);
        Rational switched =
            weights.weights[static_cast<std::size_t>(forward.result)] +
            weights.weights[static_cast<std::size_t>(backward.result)];
        Rational original = weights.weights[p] + weights.weights[q];
        if (switched < original) {
          violations.push_back({static_cast<int>(p), static_cast<int>(q),
                                pivot, switched, original});
        }
      }
    }
  }
  return violations;
}

StaticSolution solve_weighted_abstract_flow(const AbstractNetwork& net,
                                            const WeightFunction& weights,
                                            const SolveOptions& options) {
  const std::size_t n = net.path_count();
  const std::size_t m = net.element_count();
  if (weights.weights.size() != n) {
    throw std::invalid_argument("weight function size mismatch");
  }
  std::vector<long long> w;
  w.reserve(n);
  for (const Rational& weight : weights.weights) {
    w.push_back(weight_as_long(weight));
  }
  if (options.integral_primal) {
    for (const Element& e : net.elements()) {
      if (!is_integer(e.capacity)) {
        throw std::invalid_argument(
            "integral flows require integral capacities; element '" + e.id +
            "' has capacity " + format_rational(e.capacity));
      }
    }
  }

  StaticSolution sol;
  if (n == 0) {
    sol.flow.clear();
    sol.dual.assign(m, 0);
    sol.objective = 0;
    return sol;
  }

  RationalMatrix A = RationalMatrix::Zero(static_cast<Eigen::Index>(m),
                                          static_cast<Eigen::Index>(n));
  RationalVector b(static_cast<Eigen::Index>(m));
  RationalVector c(static_cast<Eigen::Index>(n));
  for (std::size_t e = 0; e < m; ++e) {
    b(static_cast<Eigen::Index>(e)) = net.element(static_cast<int>(e)).capacity;
  }
  for (std::size_t p = 0; p < n; ++p) {
    c(static_cast<Eigen::Index>(p)) = weights.weights[p];
    for (int e : net.path(static_cast<int>(p)).elements) {
      A(e, static_cast<Eigen::Index>(p)) = 1;
    }
  }

  PackingLpSolution lp = solve_packing_lp(A, b, c);
  sol.objective = lp.objective;
  sol.dual = find_integral_dual(net, w, lp.objective);

  if (options.integral_primal) {
    PrimalSearch search(net, w, sol.dual, lp.objective);
    std::vector<long long> x = search.run();
    sol.flow.reserve(n);
    for (long long v : x) sol.flow.emplace_back(v);
  } else {
    sol.flow.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
      sol.flow.push_back(lp.primal(static_cast<Eigen::Index>(p)));
    }
  }
  return sol;
}

}  // namespace aft
