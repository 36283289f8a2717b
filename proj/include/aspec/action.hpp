#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aspec/group.hpp"
#include "aspec/group_ops.hpp"
#include "aspec/verdict.hpp"

namespace aspec {

/// An element of F_q^r encoded as the integer sum c_i q^i.
using AVec = std::uint32_t;

/// A = F_q^r with a fixed coordinate basis.
class ElementaryAbelianGroup {
 public:
  ElementaryAbelianGroup() = default;
  ElementaryAbelianGroup(std::uint32_t q, std::uint32_t r) : q_(q), r_(r) {
    if (!is_prime(q)) throw InputError("q = " + std::to_string(q) + " is not prime");
    if (r < 1) throw InputError("rank r must be at least 1");
    size_ = 1;
    for (std::uint32_t i = 0; i < r; ++i) size_ *= q;
  }

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t r() const noexcept { return r_; }
  std::uint32_t order() const noexcept { return size_; }

  std::vector<std::uint32_t> coords(AVec v) const {
    std::vector<std::uint32_t> c(r_);
    for (std::uint32_t i = 0; i < r_; ++i) {
      c[i] = v % q_;
      v /= q_;
    }
    return c;
  }

  AVec encode(const std::vector<std::uint32_t>& c) const {
    AVec v = 0;
    for (std::uint32_t i = r_; i-- > 0;) v = v * q_ + (c[i] % q_);
    return v;
  }

  AVec add(AVec a, AVec b) const {
    auto x = coords(a), y = coords(b);
    for (std::uint32_t i = 0; i < r_; ++i) x[i] = (x[i] + y[i]) % q_;
    return encode(x);
  }

  AVec scale(AVec a, std::uint32_t k) const {
    auto x = coords(a);
    for (auto& c : x) c = (c * k) % q_;
    return encode(x);
  }

  AVec basis_vector(std::uint32_t i) const {
    std::vector<std::uint32_t> c(r_, 0);
    c[i] = 1;
    return encode(c);
  }

  std::string to_string(AVec v) const {
    auto c = coords(v);
    std::string s = "(";
    for (std::uint32_t i = 0; i < r_; ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
  }

 private:
  std::uint32_t q_ = 2;
  std::uint32_t r_ = 1;
  std::uint32_t size_ = 2;
};

/// A subgroup B <= A, i.e. an F_q-subspace.
struct ActionSubgroup {
  std::vector<AVec> basis;
  std::vector<AVec> elements;  // sorted

  std::size_t order() const { return elements.size(); }
  bool contains(AVec v) const { return std::binary_search(elements.begin(), elements.end(), v); }
  friend bool operator==(const ActionSubgroup& a, const ActionSubgroup& b) { return a.elements == b.elements; }
};

/// Span of a set of vectors, with a basis chosen greedily in the given order.
inline ActionSubgroup span(const ElementaryAbelianGroup& A, const std::vector<AVec>& vectors) {
  ActionSubgroup B;
  std::set<AVec> current{0};
  for (AVec v : vectors) {
    if (current.count(v)) continue;
    B.basis.push_back(v);
    std::set<AVec> grown;
    for (AVec x : current)
      for (std::uint32_t k = 0; k < A.q(); ++k) grown.insert(A.add(x, A.scale(v, k)));
    current = std::move(grown);
  }
  B.elements.assign(current.begin(), current.end());
  return B;
}

enum class ActionFailure {
  not_coprime,
  not_automorphism,
  order_not_dividing_q,
  not_commuting,
  not_normalizing,
  wrong_generator_count,
};

inline std::string_view to_string(ActionFailure f) {
  switch (f) {
    case ActionFailure::not_coprime: return "coprimality violated";
    case ActionFailure::not_automorphism: return "image is not an automorphism";
    case ActionFailure::order_not_dividing_q: return "order does not divide q";
    case ActionFailure::not_commuting: return "generator images do not commute";
    case ActionFailure::not_normalizing: return "conjugating permutation does not normalize the group";
    case ActionFailure::wrong_generator_count: return "number of generator images differs from r";
  }
  return "invalid action";
}

class ActionValidationError : public InputError {
 public:
  ActionValidationError(ActionFailure kind, const std::string& witness)
      : InputError(std::string(to_string(kind)) + ": " + witness), kind_(kind) {}
  ActionFailure kind() const noexcept { return kind_; }

 private:
  ActionFailure kind_;
};

/**
 * A coprime action of A = F_q^r on a finite group G by automorphisms.
 *
 * Every element of A carries its automorphism as an element-level bijection on
 * the ids of G. Immutable after validation.
 */
class CoprimeAction {
 public:
  /// Validates generator images given as element-level maps on `target`.
  static CoprimeAction from_element_maps(GroupPtr target, std::uint32_t q, std::uint32_t r,
                                         std::vector<std::vector<ElemId>> gen_maps) {
    CoprimeAction act;
    act.target_ = std::move(target);
    act.A_ = ElementaryAbelianGroup(q, r);
    const auto& G = *act.target_;
    const std::size_t n = G.order();
    if (std::gcd<std::uint64_t, std::uint64_t>(q, n) != 1)
      throw ActionValidationError(ActionFailure::not_coprime,
                                  "q = " + std::to_string(q) + ", |G| = " + std::to_string(n));
    if (gen_maps.size() != r)
      throw ActionValidationError(ActionFailure::wrong_generator_count,
                                  std::to_string(gen_maps.size()) + " maps for r = " + std::to_string(r));

    std::vector<ElemId> gens;
    for (const auto& g : G.generators()) gens.push_back(G.id_of(g));
    for (std::size_t i = 0; i < gen_maps.size(); ++i) {
      const auto& m = gen_maps[i];
      const std::string who = "A-generator " + std::to_string(i + 1);
      if (m.size() != n) throw ActionValidationError(ActionFailure::not_automorphism, who + " has wrong map size");
      std::vector<bool> hit(n, false);
      for (ElemId y : m) {
        if (y >= n || hit[y]) throw ActionValidationError(ActionFailure::not_automorphism, who + " is not bijective");
        hit[y] = true;
      }
      // phi(x s) = phi(x) phi(s) over all x and all generators s forces a homomorphism.
      for (ElemId x = 0; x < n; ++x)
        for (ElemId s : gens)
          if (m[G.mul(x, s)] != G.mul(m[x], m[s]))
            throw ActionValidationError(ActionFailure::not_automorphism,
                                        who + " fails on " + G.element(x).to_cycle_string() + " * " +
                                            G.element(s).to_cycle_string());
      auto power = m;
      for (std::uint32_t k = 1; k < q; ++k)
        for (ElemId x = 0; x < n; ++x) power[x] = m[power[x]];
      for (ElemId x = 0; x < n; ++x)
        if (power[x] != x)
          throw ActionValidationError(ActionFailure::order_not_dividing_q,
                                      who + " moves " + G.element(x).to_cycle_string() + " after q steps");
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        for (ElemId x = 0; x < n; ++x)
          if (gen_maps[i][gen_maps[j][x]] != gen_maps[j][gen_maps[i][x]])
            throw ActionValidationError(ActionFailure::not_commuting, "A-generators " + std::to_string(i + 1) +
                                                                          " and " + std::to_string(j + 1));
    act.gen_maps_ = std::move(gen_maps);

    // Automorphism of every element of A: composed powers of the generator maps.
    const auto& A = act.A_;
    act.maps_.resize(A.order());
    for (AVec v = 0; v < A.order(); ++v) {
      std::vector<ElemId> m(n);
      std::iota(m.begin(), m.end(), ElemId{0});
      auto c = A.coords(v);
      for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint32_t k = 0; k < c[i]; ++k)
          for (ElemId x = 0; x < n; ++x) m[x] = act.gen_maps_[i][m[x]];
      act.maps_[v] = std::move(m);
    }
    // A -> Aut(G) is a homomorphism on the full multiplication table of A.
    for (AVec a = 0; a < A.order(); ++a)
      for (AVec b = 0; b < A.order(); ++b) {
        const auto& ma = act.maps_[a];
        const auto& mb = act.maps_[b];
        const auto& mab = act.maps_[A.add(a, b)];
        for (ElemId x = 0; x < n; ++x)
          if (mab[x] != ma[mb[x]])
            throw ActionValidationError(ActionFailure::not_commuting, "A -> Aut(G) fails at " + A.to_string(a) +
                                                                          " + " + A.to_string(b));
      }
    for (AVec a = 1; a < A.order(); ++a) {
      bool trivial = true;
      for (ElemId x = 0; x < n && trivial; ++x) trivial = act.maps_[a][x] == x;
      if (trivial) act.kernel_.push_back(a);
    }
    return act;
  }

  /// Each A-generator acts by g -> x^-1 g x for a permutation x normalizing G.
  static CoprimeAction by_conjugation(GroupPtr target, std::uint32_t q, std::uint32_t r,
                                      const std::vector<Permutation>& conjugators) {
    const auto& G = *target;
    if (conjugators.size() != r)
      throw ActionValidationError(ActionFailure::wrong_generator_count,
                                  std::to_string(conjugators.size()) + " conjugators for r = " + std::to_string(r));
    std::vector<std::vector<ElemId>> maps;
    for (std::size_t i = 0; i < conjugators.size(); ++i) {
      const auto& x = conjugators[i];
      if (x.degree() != G.degree()) throw InputError("conjugator degree mismatch");
      const Permutation xi = x.inverse();
      for (const auto& g : G.generators())
        if (!G.contains(xi * g * x))
          throw ActionValidationError(ActionFailure::not_normalizing,
                                      x.to_cycle_string() + " maps " + g.to_cycle_string() + " outside G");
      std::vector<ElemId> m(G.order());
      for (ElemId e = 0; e < G.order(); ++e) m[e] = G.id_of(xi * G.element(e) * x);
      maps.push_back(std::move(m));
    }
    CoprimeAction act = from_element_maps(std::move(target), q, r, std::move(maps));
    act.conjugators_ = conjugators;
    return act;
  }

  /**
   * Each A-generator is given on a list of (source, image) pairs; the sources must
   * generate G. The map is extended along the Cayley graph and then validated.
   */
  static CoprimeAction by_generator_images(
      GroupPtr target, std::uint32_t q, std::uint32_t r,
      const std::vector<std::vector<std::pair<Permutation, Permutation>>>& images) {
    const auto& G = *target;
    if (images.size() != r)
      throw ActionValidationError(ActionFailure::wrong_generator_count,
                                  std::to_string(images.size()) + " image maps for r = " + std::to_string(r));
    std::vector<std::vector<ElemId>> maps;
    constexpr ElemId unset = ~ElemId{0};
    for (std::size_t i = 0; i < images.size(); ++i) {
      const std::string who = "A-generator " + std::to_string(i + 1);
      std::vector<std::pair<ElemId, ElemId>> pairs;
      for (const auto& [src, dst] : images[i]) {
        auto s = G.find(src);
        auto d = G.find(dst);
        if (!s || !d)
          throw ActionValidationError(ActionFailure::not_automorphism,
                                      who + ": " + src.to_cycle_string() + " -> " + dst.to_cycle_string() +
                                          " leaves G");
        pairs.emplace_back(*s, *d);
      }
      std::vector<ElemId> m(G.order(), unset);
      m[FiniteGroup::identity()] = FiniteGroup::identity();
      std::vector<ElemId> queue{FiniteGroup::identity()};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        ElemId x = queue[head];
        for (auto [s, d] : pairs) {
          ElemId y = G.mul(x, s);
          ElemId img = G.mul(m[x], d);
          if (m[y] == unset) {
            m[y] = img;
            queue.push_back(y);
          } else if (m[y] != img) {
            throw ActionValidationError(ActionFailure::not_automorphism,
                                        who + " is not well defined at " + G.element(y).to_cycle_string());
          }
        }
      }
      if (queue.size() != G.order())
        throw ActionValidationError(ActionFailure::not_automorphism, who + ": source elements do not generate G");
      maps.push_back(std::move(m));
    }
    return from_element_maps(std::move(target), q, r, std::move(maps));
  }

  const GroupPtr& target() const noexcept { return target_; }
  const FiniteGroup& group() const noexcept { return *target_; }
  const ElementaryAbelianGroup& A() const noexcept { return A_; }
  std::uint32_t q() const noexcept { return A_.q(); }
  std::uint32_t r() const noexcept { return A_.r(); }

  /// Automorphism of a in A as an element-level map.
  const std::vector<ElemId>& map(AVec a) const { return maps_.at(a); }
  ElemId apply(AVec a, ElemId g) const { return maps_.at(a)[g]; }
  const std::vector<std::vector<ElemId>>& generator_maps() const noexcept { return gen_maps_; }

  /// Conjugating permutations when built in conjugation mode.
  const std::optional<std::vector<Permutation>>& conjugators() const noexcept { return conjugators_; }

  bool faithful() const noexcept { return kernel_.empty(); }
  /// Nontrivial elements of A acting trivially.
  const std::vector<AVec>& kernel() const noexcept { return kernel_; }

  /// A^#: all nontrivial elements of A.
  std::vector<AVec> nontrivial_elements() const {
    std::vector<AVec> out(A_.order() - 1);
    std::iota(out.begin(), out.end(), AVec{1});
    return out;
  }

 private:
  GroupPtr target_;
  ElementaryAbelianGroup A_;
  std::vector<std::vector<ElemId>> gen_maps_;
  std::vector<std::vector<ElemId>> maps_;
  std::vector<AVec> kernel_;
  std::optional<std::vector<Permutation>> conjugators_;
};

// ---------------------------------------------------------------------------

enum class SubgroupMode { maximal, all };

/**
 * Subgroups of A. Maximal mode lists the (q^r - 1)/(q - 1) hyperplanes, one per
 * normalized functional (first nonzero coordinate 1) in increasing code order.
 * All mode lists every subspace, largest first.
 */
inline std::vector<ActionSubgroup> subgroups_of_A(const ElementaryAbelianGroup& A, SubgroupMode mode) {
  std::vector<ActionSubgroup> out;
  if (mode == SubgroupMode::maximal) {
    for (AVec f = 1; f < A.order(); ++f) {
      auto fc = A.coords(f);
      auto lead = std::find_if(fc.begin(), fc.end(), [](auto c) { return c != 0; });
      if (*lead != 1) continue;
      std::vector<AVec> kernel;
      for (AVec v = 0; v < A.order(); ++v) {
        auto vc = A.coords(v);
        std::uint32_t dot = 0;
        for (std::uint32_t i = 0; i < A.r(); ++i) dot = (dot + fc[i] * vc[i]) % A.q();
        if (dot == 0) kernel.push_back(v);
      }
      out.push_back(span(A, kernel));
    }
    return out;
  }
  std::set<std::vector<AVec>> seen;
  std::vector<ActionSubgroup> queue{span(A, {})};
  seen.insert(queue[0].elements);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (AVec v = 1; v < A.order(); ++v) {
      if (queue[head].contains(v)) continue;
      auto gens = queue[head].basis;
      gens.push_back(v);
      ActionSubgroup next = span(A, gens);
      if (seen.insert(next.elements).second) queue.push_back(std::move(next));
    }
  }
  // Re-derive bases greedily in code order so they do not depend on discovery order.
  for (auto& b : queue) b = span(A, b.elements);
  std::stable_sort(queue.begin(), queue.end(), [](const ActionSubgroup& a, const ActionSubgroup& b) {
    if (a.order() != b.order()) return a.order() > b.order();
    return a.elements < b.elements;
  });
  return queue;
}

inline std::vector<ActionSubgroup> subgroups_of_A(const CoprimeAction& action, SubgroupMode mode) {
  return subgroups_of_A(action.A(), mode);
}

/// C_G(a).
inline Subgroup fixed_points(const CoprimeAction& action, AVec a) {
  const auto& m = action.map(a);
  std::vector<ElemId> keep;
  for (ElemId g = 0; g < m.size(); ++g)
    if (m[g] == g) keep.push_back(g);
  return Subgroup::from_elements(action.target(), std::move(keep));
}

/// C_G(B), computed from B's basis.
inline Subgroup fixed_points(const CoprimeAction& action, const ActionSubgroup& B) {
  std::vector<ElemId> keep;
  for (ElemId g = 0; g < action.group().order(); ++g) {
    bool fixed = std::all_of(B.basis.begin(), B.basis.end(), [&](AVec b) { return action.apply(b, g) == g; });
    if (fixed) keep.push_back(g);
  }
  return Subgroup::from_elements(action.target(), std::move(keep));
}

inline bool is_invariant(const CoprimeAction& action, const Subgroup& H) {
  if (H.parent() != action.target()) throw InputError("subgroup does not live in the acted-on group");
  for (const auto& m : action.generator_maps())
    for (ElemId h : H.generators())
      if (!H.contains(m[h])) return false;
  return true;
}

/// C_G(A_i) for every maximal subgroup A_i, in subgroups_of_A order.
inline std::vector<Subgroup> maximal_centralizers(const CoprimeAction& action) {
  std::vector<Subgroup> out;
  for (const auto& Ai : subgroups_of_A(action, SubgroupMode::maximal)) out.push_back(fixed_points(action, Ai));
  return out;
}

/// The action restricted to an A-invariant subgroup H, with H materialized as its own group.
inline CoprimeAction restrict_action(const CoprimeAction& action, const Subgroup& H) {
  if (!is_invariant(action, H)) throw InputError("restrict_action: subgroup is not A-invariant");
  const auto& G = action.group();
  GroupPtr sub = close_generators(G.degree(), H.generator_permutations(), H.order() + 1);
  std::vector<std::vector<ElemId>> maps;
  for (const auto& m : action.generator_maps()) {
    std::vector<ElemId> local(sub->order());
    for (ElemId e = 0; e < sub->order(); ++e) local[e] = sub->id_of(G.element(m[G.id_of(sub->element(e))]));
    maps.push_back(std::move(local));
  }
  return CoprimeAction::from_element_maps(sub, action.q(), action.r(), std::move(maps));
}

/// A subgroup of G transported into the group of a restricted action.
inline Subgroup transport(const Subgroup& H, const GroupPtr& into) {
  std::vector<ElemId> gens;
  for (const auto& g : H.generator_permutations()) gens.push_back(into->id_of(g));
  return Subgroup::generated(into, std::move(gens));
}

// ---------------------------------------------------------------------------

struct InducedAction {
  Quotient quotient;
  CoprimeAction action;
};

/// The action induced on G/N for an A-invariant normal subgroup N.
inline InducedAction induced_action(const CoprimeAction& action, const Subgroup& N,
                                    std::size_t cap = kDefaultElementCap) {
  if (!is_invariant(action, N)) throw InputError("N is not A-invariant");
  Quotient Q = quotient(action.target(), N, cap);
  const auto& G = action.group();
  std::vector<std::vector<ElemId>> maps;
  for (const auto& m : action.generator_maps()) {
    std::vector<ElemId> induced(Q.group->order());
    for (ElemId g = 0; g < G.order(); ++g) induced[Q.projection[g]] = Q.projection[m[g]];
    maps.push_back(std::move(induced));
  }
  CoprimeAction qa = CoprimeAction::from_element_maps(Q.group, action.q(), action.r(), std::move(maps));
  return InducedAction{std::move(Q), std::move(qa)};
}

/// C_{G/N}(a) = C_G(a)N/N for every a in A^# (which also covers B = A).
inline Verdict quotient_action_check(const CoprimeAction& action, const Subgroup& N) {
  Subgroup whole = Subgroup::whole(action.target());
  if (!is_normal_in(N, whole)) throw InputError("quotient_action_check: N is not normal");
  auto induced = induced_action(action, N);
  Verdict v;
  auto compare = [&](const Subgroup& lhs, const Subgroup& rhs, const std::string& label) {
    if (lhs == rhs) return;
    for (ElemId x : lhs.elements())
      if (!rhs.contains(x)) {
        v.fail(label + ": coset " + induced.quotient.group->element(x).to_cycle_string() +
               " fixed in G/N but not the image of a fixed element");
        return;
      }
    v.fail(label + ": image of C_G larger than C_{G/N}");
  };
  ActionSubgroup all = span(action.A(), action.nontrivial_elements());
  compare(fixed_points(induced.action, all), induced.quotient.image(fixed_points(action, all)), "A");
  for (AVec a : action.nontrivial_elements())
    compare(fixed_points(induced.action, a), induced.quotient.image(fixed_points(action, a)),
            "a = " + action.A().to_string(a));
  v.values["quotient_order"] = induced.quotient.group->order();
  return v;
}

// ---------------------------------------------------------------------------

inline constexpr std::size_t kConjugateCap = 100000;

/**
 * An A-invariant Sylow p-subgroup of `ambient` (optionally one containing `inside`),
 * found by filtering the conjugates of one Sylow subgroup. Coprime action theory
 * guarantees a hit, so exhausting the conjugates raises InternalError.
 */
inline Subgroup invariant_sylow(const CoprimeAction& action, const Subgroup& ambient, std::uint64_t p,
                                const std::optional<Subgroup>& inside = std::nullopt) {
  if (!is_invariant(action, ambient)) throw InputError("invariant_sylow: ambient is not A-invariant");
  const auto& G = action.group();
  Subgroup P = sylow(ambient, p);
  if (P.order() == ambient.order() && (!inside || inside->is_subgroup_of(P))) return P;
  Subgroup N = normalizer(ambient, P);
  // One conjugate per right coset N g.
  std::vector<bool> covered(G.order(), false);
  std::size_t seen = 0;
  std::vector<bool> mask(G.order(), false);
  for (ElemId g : ambient.elements()) {
    if (covered[g]) continue;
    for (ElemId n : N.elements()) covered[G.mul(n, g)] = true;
    if (++seen > kConjugateCap)
      throw OverflowError("invariant_sylow: conjugate count exceeds cap", seen);
    std::vector<ElemId> els;
    els.reserve(P.order());
    for (ElemId x : P.elements()) {
      ElemId y = G.conj(x, g);
      els.push_back(y);
      mask[y] = true;
    }
    bool ok = true;
    for (ElemId x : P.generators()) {
      ElemId y = G.conj(x, g);
      for (const auto& m : action.generator_maps())
        if (!mask[m[y]]) ok = false;
    }
    if (ok && inside)
      for (ElemId h : inside->elements())
        if (!mask[h]) ok = false;
    for (ElemId y : els) mask[y] = false;
    if (ok) return Subgroup::from_elements(action.target(), std::move(els));
  }
  throw InternalError("no A-invariant Sylow " + std::to_string(p) + "-subgroup among the conjugates");
}

/// H = <C_H(A_1), ..., C_H(A_s)>, and H = prod C_H(A_i) when H is nilpotent.
inline Verdict fg2_check(const CoprimeAction& action, const Subgroup& H) {
  if (action.r() < 2) return Verdict::not_applicable("rank r < 2");
  if (!is_invariant(action, H)) throw InputError("fg2_check: H is not A-invariant");
  auto parts = intersect_each(H, maximal_centralizers(action));
  Verdict v;
  v.values["order"] = H.order();
  if (!generated_by(H, parts)) {
    v.fail("H of order " + std::to_string(H.order()) + " is not generated by the C_H(A_i)");
    return v;
  }
  if (is_nilpotent(H)) {
    v.values["nilpotent"] = true;
    if (auto gap = product_gap(H, parts))
      v.fail("element " + H.group().element(*gap).to_cycle_string() + " missing from prod C_H(A_i)");
    std::vector<Subgroup> shuffled = parts;
    std::mt19937_64 rng(0x5eed);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    if (auto gap = product_gap(H, shuffled))
      v.fail("element " + H.group().element(*gap).to_cycle_string() + " missing from reordered product");
  }
  return v;
}

inline bool is_simple(const Subgroup& G) {
  if (G.is_trivial()) return false;
  if (is_abelian(G)) return is_prime(G.order());
  if (!is_perfect(G)) return false;
  for (ElemId x : G.elements()) {
    if (x == FiniteGroup::identity()) continue;
    if (!(normal_closure(G, {x}) == G)) return false;
  }
  return true;
}

/// Spot check: a coprime group of automorphisms of a simple group is cyclic.
inline Verdict simple_action_cyclic_check(const CoprimeAction& action) {
  Subgroup G = Subgroup::whole(action.target());
  if (!is_simple(G)) return Verdict::not_applicable("G is not simple");
  std::vector<AVec> kernel = action.kernel();
  ActionSubgroup K = span(action.A(), kernel);
  Verdict v;
  std::size_t image_order = action.A().order() / K.order();
  v.values["image_order"] = image_order;
  if (!is_power_of(image_order, action.q()) || (image_order != 1 && image_order != action.q()))
    v.fail("image of A in Aut(G) has order " + std::to_string(image_order) + " and is not cyclic");
  return v;
}

}  // namespace aspec
