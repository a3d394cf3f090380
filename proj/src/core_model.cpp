#include "aft/core_model.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "aft/errors.hpp"

namespace aft {

namespace {

// Dense bitset over a small universe, used for subset tests.
class Mask {
 public:
  explicit Mask(std::size_t universe) : words_((universe + 63) / 64, 0) {}

  void set(std::size_t bit) { words_[bit / 64] |= std::uint64_t{1} << (bit % 64); }
  bool test(std::size_t bit) const {
    return (words_[bit / 64] >> (bit % 64)) & 1;
  }

  // this ⊆ other
  bool subset_of(const Mask& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  Mask united(const Mask& other) const {
    Mask out(*this);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

Mask mask_of(std::size_t universe, const std::vector<int>& elements) {
  Mask m(universe);
  for (int e : elements) m.set(static_cast<std::size_t>(e));
  return m;
}

int require_position(const AbstractPath& path, int element) {
  int pos = path.position_of(element);
  if (pos < 0) {
    throw std::invalid_argument("element index " + std::to_string(element) +
                                " does not lie on the path");
  }
  return pos;
}

// True iff `inner` is a proper subsequence of `outer` (set containment with
// agreeing order).
bool proper_subsequence(const std::vector<int>& inner,
                        const std::vector<int>& outer) {
  if (inner.size() >= outer.size()) return false;
  std::size_t j = 0;
  for (int e : outer) {
    if (j < inner.size() && inner[j] == e) ++j;
  }
  return j == inner.size();
}

}  // namespace

bool AbstractPath::contains(int element) const {
  return position_of(element) >= 0;
}

int AbstractPath::position_of(int element) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == element) return static_cast<int>(i);
  }
  return -1;
}

AbstractNetwork::AbstractNetwork(
    std::vector<Element> elements,
    const std::vector<std::vector<std::string>>& paths) {
  for (const Element& e : elements) {
    if (e.id.empty()) throw std::invalid_argument("empty element id");
    if (e.capacity < 0) {
      throw std::invalid_argument("element '" + e.id +
                                  "' has negative capacity");
    }
    if (e.transit < 0) {
      throw std::invalid_argument("element '" + e.id +
                                  "' has negative transit time");
    }
  }
  std::sort(elements.begin(), elements.end(),
            [](const Element& a, const Element& b) { return a.id < b.id; });
  elements_ = std::move(elements);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    auto [_, inserted] =
        index_of_id_.emplace(elements_[i].id, static_cast<int>(i));
    if (!inserted) {
      throw std::invalid_argument("duplicate element id '" + elements_[i].id +
                                  "'");
    }
  }

  paths_.reserve(paths.size());
  for (const auto& ids : paths) {
    if (ids.empty()) throw std::invalid_argument("empty path");
    AbstractPath path;
    std::set<int> seen;
    for (const std::string& id : ids) {
      int idx = element_index(id);
      if (idx < 0) {
        throw std::invalid_argument("path references undeclared element '" +
                                    id + "'");
      }
      if (!seen.insert(idx).second) {
        throw std::invalid_argument("element '" + id +
                                    "' repeats within a path");
      }
      path.elements.push_back(idx);
    }
    paths_.push_back(std::move(path));
  }
  std::sort(paths_.begin(), paths_.end(),
            [](const AbstractPath& a, const AbstractPath& b) {
              return a.elements < b.elements;
            });
  for (std::size_t i = 1; i < paths_.size(); ++i) {
    if (paths_[i - 1].elements == paths_[i].elements) {
      throw std::invalid_argument("duplicate path " +
                                  path_label(static_cast<int>(i)));
    }
  }
}

int AbstractNetwork::element_index(const std::string& id) const {
  auto it = index_of_id_.find(id);
  return it == index_of_id_.end() ? -1 : it->second;
}

int AbstractNetwork::path_index(const std::vector<std::string>& ids) const {
  std::vector<int> seq;
  seq.reserve(ids.size());
  for (const std::string& id : ids) {
    int idx = element_index(id);
    if (idx < 0) return -1;
    seq.push_back(idx);
  }
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    if (paths_[i].elements == seq) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::string> AbstractNetwork::path_ids(int i) const {
  std::vector<std::string> out;
  out.reserve(path(i).size());
  for (int e : path(i).elements) out.push_back(element(e).id);
  return out;
}

std::string AbstractNetwork::path_label(int i) const {
  std::string out = "(";
  const auto ids = path_ids(i);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k > 0) out += ",";
    out += ids[k];
  }
  out += ")";
  return out;
}

TimeStep AbstractNetwork::total_transit(int path_index) const {
  TimeStep total = 0;
  for (int e : path(path_index).elements) total += element(e).transit;
  return total;
}

std::vector<int> closed_prefix(const AbstractPath& path, int element) {
  int pos = require_position(path, element);
  return {path.elements.begin(), path.elements.begin() + pos + 1};
}

std::vector<int> open_prefix(const AbstractPath& path, int element) {
  int pos = require_position(path, element);
  return {path.elements.begin(), path.elements.begin() + pos};
}

std::vector<int> closed_suffix(const AbstractPath& path, int element) {
  int pos = require_position(path, element);
  return {path.elements.begin() + pos, path.elements.end()};
}

std::vector<int> open_suffix(const AbstractPath& path, int element) {
  int pos = require_position(path, element);
  return {path.elements.begin() + pos + 1, path.elements.end()};
}

std::vector<SwitchTriple> find_switching_violations(
    std::size_t universe, const std::vector<std::vector<int>>& paths) {
  const std::size_t n = paths.size();
  std::vector<Mask> full_masks;
  full_masks.reserve(n);
  for (const auto& p : paths) full_masks.push_back(mask_of(universe, p));

  // prefix_masks[p][i]: elements of paths[p] at positions <= i (closed
  // prefix); suffix_masks[p][i]: positions >= i (closed suffix).
  std::vector<std::vector<Mask>> prefix_masks(n), suffix_masks(n);
  for (std::size_t p = 0; p < n; ++p) {
    Mask acc(universe);
    for (int e : paths[p]) {
      acc.set(static_cast<std::size_t>(e));
      prefix_masks[p].push_back(acc);
    }
    Mask acc2(universe);
    suffix_masks[p].resize(paths[p].size(), Mask(universe));
    for (std::size_t i = paths[p].size(); i-- > 0;) {
      acc2.set(static_cast<std::size_t>(paths[p][i]));
      suffix_masks[p][i] = acc2;
    }
  }

  std::vector<SwitchTriple> violations;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t i = 0; i < paths[p].size(); ++i) {
        const int pivot = paths[p][i];
        const auto& qpath = paths[q];
        const auto it = std::find(qpath.begin(), qpath.end(), pivot);
        if (it == qpath.end()) continue;
        const std::size_t j = static_cast<std::size_t>(it - qpath.begin());
        const Mask allowed = prefix_masks[p][i].united(suffix_masks[q][j]);
        bool witnessed = false;
        for (std::size_t r = 0; r < n; ++r) {
          if (full_masks[r].subset_of(allowed)) {
            witnessed = true;
            break;
          }
        }
        if (!witnessed) {
          violations.push_back({static_cast<int>(p), static_cast<int>(q),
                                pivot});
        }
      }
    }
  }
  return violations;
}

ValidationReport validate_switching(const AbstractNetwork& net) {
  ValidationReport report;
  std::vector<std::vector<int>> raw;
  raw.reserve(net.path_count());
  for (const auto& p : net.paths()) raw.push_back(p.elements);
  report.violations = find_switching_violations(net.element_count(), raw);
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    if (net.total_transit(static_cast<int>(p)) == 0) {
      report.zero_transit_paths.push_back(static_cast<int>(p));
    }
  }
  return report;
}

SwitchWitness canonical_switch(const AbstractNetwork& net, int p, int q,
                               int pivot) {
  const AbstractPath& pp = net.path(p);
  const AbstractPath& qq = net.path(q);
  if (!pp.contains(pivot) || !qq.contains(pivot)) {
    throw std::invalid_argument("pivot element '" + net.element(pivot).id +
                                "' must lie on both paths");
  }
  const std::size_t universe = net.element_count();
  const Mask prefix = mask_of(universe, closed_prefix(pp, pivot));
  const Mask suffix = mask_of(universe, closed_suffix(qq, pivot));
  const Mask allowed = prefix.united(suffix);

  // Candidates are scanned in the family's canonical (lexicographic) order,
  // so the first path achieving the minimal number of elements outside
  // closed_prefix(p, pivot) is the canonical choice.
  int best = -1;
  std::size_t best_outside = 0;
  for (std::size_t r = 0; r < net.path_count(); ++r) {
    const Mask rmask = mask_of(universe, net.path(static_cast<int>(r)).elements);
    if (!rmask.subset_of(allowed)) continue;
    std::size_t outside = 0;
    for (int e : net.path(static_cast<int>(r)).elements) {
      if (!prefix.test(static_cast<std::size_t>(e))) ++outside;
    }
    if (best < 0 || outside < best_outside) {
      best = static_cast<int>(r);
      best_outside = outside;
    }
  }
  if (best < 0) {
    throw SwitchingViolationError(
        "no switching witness for (" + net.path_label(p) + ", " +
        net.path_label(q) + ") at element '" + net.element(pivot).id + "'");
  }

  SwitchWitness w;
  w.p = p;
  w.q = q;
  w.pivot = pivot;
  w.result = best;
  bool suffix_started = false;
  for (int e : net.path(best).elements) {
    if (prefix.test(static_cast<std::size_t>(e))) {
      if (suffix_started) {
        // A minimizer never interleaves: a prefix element after a suffix
        // element would allow a second switch with strictly fewer outside
        // elements.
        throw StructuralInconsistencyError(
            "canonical switch witness " + net.path_label(best) +
            " interleaves prefix and suffix parts at element '" +
            net.element(e).id + "'");
      }
      w.prefix_part.push_back(e);
    } else {
      suffix_started = true;
      w.suffix_part.push_back(e);
    }
  }
  return w;
}

AbstractNetwork reduce_assumption2(const AbstractNetwork& net) {
  std::vector<std::vector<int>> sequences;
  for (const auto& p : net.paths()) sequences.push_back(p.elements);

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<int>> kept;
    for (const auto& candidate : sequences) {
      bool contains_other = false;
      for (const auto& other : sequences) {
        if (proper_subsequence(other, candidate)) {
          contains_other = true;
          break;
        }
      }
      if (contains_other) {
        changed = true;
      } else {
        kept.push_back(candidate);
      }
    }
    sequences = std::move(kept);
  }

  std::vector<std::vector<std::string>> id_paths;
  for (const auto& seq : sequences) {
    std::vector<std::string> ids;
    for (int e : seq) ids.push_back(net.element(e).id);
    id_paths.push_back(std::move(ids));
  }
  return AbstractNetwork(net.elements(), id_paths);
}

bool check_no_inclusion(const AbstractNetwork& net,
                        std::vector<std::pair<int, int>>* counterexamples) {
  bool ok = true;
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    for (std::size_t q = 0; q < net.path_count(); ++q) {
      if (p == q) continue;
      if (proper_subsequence(net.path(static_cast<int>(q)).elements,
                             net.path(static_cast<int>(p)).elements)) {
        ok = false;
        if (counterexamples) {
          counterexamples->push_back({static_cast<int>(p),
                                      static_cast<int>(q)});
        }
      }
    }
  }
  return ok;
}

OrderPreservationReport check_order_preservation(const AbstractNetwork& net) {
  OrderPreservationReport report;
  for (std::size_t p = 0; p < net.path_count(); ++p) {
    for (std::size_t q = 0; q < net.path_count(); ++q) {
      for (int pivot : net.path(static_cast<int>(p)).elements) {
        if (!net.path(static_cast<int>(q)).contains(pivot)) continue;
        SwitchWitness w = canonical_switch(net, static_cast<int>(p),
                                           static_cast<int>(q), pivot);
        auto check_part = [&](const std::vector<int>& part,
                              const AbstractPath& reference, bool in_prefix) {
          for (std::size_t a = 0; a < part.size(); ++a) {
            for (std::size_t b = a + 1; b < part.size(); ++b) {
              if (reference.position_of(part[a]) >
                  reference.position_of(part[b])) {
                report.violations.push_back({static_cast<int>(p),
                                             static_cast<int>(q), pivot,
                                             part[a], part[b], in_prefix});
              }
            }
          }
        };
        check_part(w.prefix_part, net.path(static_cast<int>(p)), true);
        check_part(w.suffix_part, net.path(static_cast<int>(q)), false);
      }
    }
  }
  return report;
}

}  // namespace aft
