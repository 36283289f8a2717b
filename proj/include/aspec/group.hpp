#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aspec/errors.hpp"
#include "aspec/permutation.hpp"

namespace aspec {

/// Index of an element in its group's canonical element list.
using ElemId = std::uint32_t;

inline constexpr std::size_t kDefaultElementCap = 200000;

/// Groups up to this order carry a full multiplication table.
inline constexpr std::size_t kTableThreshold = 1024;

/**
 * A fully enumerated permutation group.
 *
 * Elements are stored in canonical order (lexicographic on image sequences), so
 * element ids compare the same way the permutations do and identity is always id 0.
 * Every element also records a factorization word over the generators through a
 * breadth-first spanning tree. Immutable once built.
 */
class FiniteGroup {
 public:
  static std::shared_ptr<const FiniteGroup> close(std::size_t degree, std::vector<Permutation> gens,
                                                  std::size_t cap = kDefaultElementCap) {
    for (const auto& g : gens)
      if (g.degree() != degree)
        throw InputError("generator degree " + std::to_string(g.degree()) + " does not match " +
                         std::to_string(degree));
    return std::shared_ptr<const FiniteGroup>(new FiniteGroup(degree, std::move(gens), cap));
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(ElemId id) const { return elements_[id]; }
  static constexpr ElemId identity() noexcept { return 0; }

  std::optional<ElemId> find(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ElemId id_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw InputError("permutation " + p.to_cycle_string() + " is not in the group");
    return it->second;
  }

  bool contains(const Permutation& p) const { return index_.count(p) != 0; }

  ElemId mul(ElemId a, ElemId b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
    return index_.at(elements_[a] * elements_[b]);
  }

  ElemId inv(ElemId a) const { return inverse_[a]; }

  ElemId pow(ElemId a, std::uint64_t e) const {
    ElemId acc = identity();
    ElemId base = a;
    while (e) {
      if (e & 1u) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1u;
    }
    return acc;
  }

  ElemId comm(ElemId a, ElemId b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  /// x^g = g^-1 x g.
  ElemId conj(ElemId x, ElemId g) const { return mul(mul(inv(g), x), g); }

  std::uint64_t element_order(ElemId a) const { return orders_[a]; }

  /// Word over generator indices whose product (left to right) equals the element.
  std::vector<std::size_t> word(ElemId a) const {
    std::vector<std::size_t> w;
    while (a != identity()) {
      w.push_back(tree_[a].second);
      a = tree_[a].first;
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

 private:
  FiniteGroup(std::size_t degree, std::vector<Permutation> gens, std::size_t cap)
      : degree_(degree), generators_(std::move(gens)) {
    // Breadth-first closure; right multiplication by generators.
    std::vector<Permutation> found{Permutation::identity(degree)};
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> seen{{found[0], 0}};
    std::vector<std::pair<std::uint32_t, std::size_t>> parent{{0, 0}};
    for (std::size_t head = 0; head < found.size(); ++head) {
      for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
        Permutation next = found[head] * generators_[gi];
        if (seen.count(next)) continue;
        if (found.size() >= cap)
          throw OverflowError("group closure exceeds element cap " + std::to_string(cap) +
                                  " (projected order at least " + std::to_string(found.size() + 1) + ")",
                              found.size() + 1);
        seen.emplace(next, static_cast<std::uint32_t>(found.size()));
        parent.emplace_back(static_cast<std::uint32_t>(head), gi);
        found.push_back(std::move(next));
      }
    }
    std::vector<std::uint32_t> perm(found.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return found[a] < found[b]; });
    std::vector<ElemId> new_id(found.size());
    for (std::size_t i = 0; i < perm.size(); ++i) new_id[perm[i]] = static_cast<ElemId>(i);

    elements_.reserve(found.size());
    tree_.resize(found.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      elements_.push_back(std::move(found[perm[i]]));
      tree_[i] = {new_id[parent[perm[i]].first], parent[perm[i]].second};
    }
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], static_cast<ElemId>(i));

    const std::size_t n = elements_.size();
    if (n <= kTableThreshold) {
      table_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table_[a * n + b] = index_.at(elements_[a] * elements_[b]);
    }
    inverse_.resize(n);
    orders_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      inverse_[a] = index_.at(elements_[a].inverse());
      orders_[a] = elements_[a].order();
    }
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElemId, PermutationHash> index_;
  std::vector<std::pair<ElemId, std::size_t>> tree_;
  std::vector<ElemId> table_;
  std::vector<ElemId> inverse_;
  std::vector<std::uint64_t> orders_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// close_generators: the group generated by `gens`, fully enumerated.
inline GroupPtr close_generators(std::size_t degree, std::vector<Permutation> gens,
                                 std::size_t cap = kDefaultElementCap) {
  return FiniteGroup::close(degree, std::move(gens), cap);
}

/**
 * A subgroup of an ambient FiniteGroup, held as the sorted list of member ids
 * together with a generating set. Value type; cheap enough to copy at desk scale.
 */
class Subgroup {
 public:
  Subgroup() = default;

  /// Subgroup generated by `gens` (ids in `parent`).
  static Subgroup generated(GroupPtr parent, std::vector<ElemId> gens) {
    Subgroup s;
    s.parent_ = std::move(parent);
    const auto& G = *s.parent_;
    s.member_.assign(G.order(), false);
    std::erase(gens, FiniteGroup::identity());
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    s.elements_.push_back(FiniteGroup::identity());
    s.member_[FiniteGroup::identity()] = true;
    for (std::size_t head = 0; head < s.elements_.size(); ++head) {
      for (ElemId g : gens) {
        ElemId y = G.mul(s.elements_[head], g);
        if (!s.member_[y]) {
          s.member_[y] = true;
          s.elements_.push_back(y);
        }
      }
    }
    std::sort(s.elements_.begin(), s.elements_.end());
    s.generators_ = std::move(gens);
    return s;
  }

  static Subgroup whole(GroupPtr parent) {
    std::vector<ElemId> gens;
    for (const auto& g : parent->generators()) gens.push_back(parent->id_of(g));
    Subgroup s = generated(parent, std::move(gens));
    return s;
  }

  static Subgroup trivial(GroupPtr parent) { return generated(std::move(parent), {}); }

  /**
   * Wraps an element set already known to be a subgroup and picks a small
   * generating set greedily in canonical order. The set is checked for closure.
   */
  static Subgroup from_elements(GroupPtr parent, std::vector<ElemId> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    std::vector<bool> member(parent->order(), false);
    for (ElemId e : elements) member[e] = true;
    std::vector<ElemId> gens;
    Subgroup current = trivial(parent);
    for (ElemId e : elements) {
      if (current.contains(e)) continue;
      gens.push_back(e);
      current = generated(parent, gens);
      if (current.order() > elements.size()) break;
    }
    if (current.elements_ != elements) throw InputError("element set is not a subgroup");
    return current;
  }

  const GroupPtr& parent() const noexcept { return parent_; }
  const FiniteGroup& group() const noexcept { return *parent_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<ElemId>& elements() const noexcept { return elements_; }
  const std::vector<ElemId>& generators() const noexcept { return generators_; }
  bool contains(ElemId e) const { return member_[e]; }
  bool is_trivial() const noexcept { return elements_.size() == 1; }

  bool same_parent(const Subgroup& other) const noexcept { return parent_ == other.parent_; }

  bool is_subgroup_of(const Subgroup& other) const {
    if (!same_parent(other)) throw InputError("subgroups live in different ambient groups");
    if (order() > other.order()) return false;
    for (ElemId e : elements_)
      if (!other.contains(e)) return false;
    return true;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.elements_ == b.elements_;
  }

  std::vector<Permutation> generator_permutations() const {
    std::vector<Permutation> out;
    for (ElemId g : generators_) out.push_back(parent_->element(g));
    return out;
  }

 private:
  GroupPtr parent_;
  std::vector<ElemId> elements_;
  std::vector<bool> member_;
  std::vector<ElemId> generators_;
};

inline void require_same_parent(const Subgroup& a, const Subgroup& b) {
  if (!a.same_parent(b)) throw InputError("subgroups live in different ambient groups");
}

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  std::vector<ElemId> common;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(common));
  return Subgroup::from_elements(a.parent(), std::move(common));
}

/// The subgroup generated by a family of subgroups of a common parent.
inline Subgroup join(const GroupPtr& parent, std::span<const Subgroup> parts) {
  std::vector<ElemId> gens;
  for (const auto& s : parts) {
    if (s.parent() != parent) throw InputError("subgroups live in different ambient groups");
    gens.insert(gens.end(), s.generators().begin(), s.generators().end());
  }
  Subgroup j = Subgroup::generated(parent, std::move(gens));
  // Re-minimize the generating set so downstream closures stay cheap.
  return Subgroup::from_elements(parent, j.elements());
}

inline Subgroup join(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  std::vector<Subgroup> parts{a, b};
  return join(a.parent(), parts);
}

/// Smallest subgroup of `within` containing `seeds` and normalized by `within`.
inline Subgroup normal_closure(const Subgroup& within, std::vector<ElemId> seeds) {
  const auto& G = within.group();
  Subgroup n = Subgroup::generated(within.parent(), seeds);
  bool grown = true;
  while (grown) {
    grown = false;
    for (ElemId x : within.generators()) {
      for (ElemId g : n.generators()) {
        ElemId c = G.conj(g, x);
        if (!n.contains(c)) {
          auto gens = n.generators();
          gens.push_back(c);
          n = Subgroup::generated(within.parent(), std::move(gens));
          grown = true;
          break;
        }
      }
      if (grown) break;
    }
  }
  return Subgroup::from_elements(within.parent(), n.elements());
}

inline bool is_normal_in(const Subgroup& n, const Subgroup& g) {
  require_same_parent(n, g);
  if (!n.is_subgroup_of(g)) return false;
  const auto& G = g.group();
  for (ElemId x : g.generators())
    for (ElemId h : n.generators())
      if (!n.contains(G.conj(h, x))) return false;
  return true;
}

}  // namespace aspec
