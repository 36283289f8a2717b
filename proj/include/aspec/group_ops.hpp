#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "aspec/group.hpp"
#include "aspec/verdict.hpp"

namespace aspec {

// ---------------------------------------------------------------------------
// Arithmetic helpers

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Largest power of p dividing n.
inline std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_power_of(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

// ---------------------------------------------------------------------------
// Commutators and series

/// [H, K] as the normal closure in <H, K> of the commutators of generator pairs.
inline Subgroup commutator_subgroup(const Subgroup& H, const Subgroup& K) {
  require_same_parent(H, K);
  const auto& G = H.group();
  std::vector<ElemId> seeds;
  for (ElemId h : H.generators())
    for (ElemId k : K.generators()) {
      ElemId c = G.comm(h, k);
      if (c != FiniteGroup::identity()) seeds.push_back(c);
    }
  if (seeds.empty()) return Subgroup::trivial(H.parent());
  std::vector<ElemId> both = H.generators();
  both.insert(both.end(), K.generators().begin(), K.generators().end());
  Subgroup hk = Subgroup::generated(H.parent(), std::move(both));
  return normal_closure(hk, std::move(seeds));
}

/// [H, K] as the subgroup generated by all |H|*|K| commutators; for cross-validation.
inline Subgroup commutator_subgroup_exhaustive(const Subgroup& H, const Subgroup& K) {
  require_same_parent(H, K);
  const auto& G = H.group();
  std::vector<bool> seen(G.order(), false);
  std::vector<ElemId> comms;
  for (ElemId h : H.elements())
    for (ElemId k : K.elements()) {
      ElemId c = G.comm(h, k);
      if (!seen[c]) {
        seen[c] = true;
        comms.push_back(c);
      }
    }
  Subgroup s = Subgroup::generated(H.parent(), std::move(comms));
  return Subgroup::from_elements(H.parent(), s.elements());
}

enum class SeriesKind { derived, lower_central };

/**
 * Derived series G, G', G'', ... or lower central series gamma_1 = G,
 * gamma_{i+1} = [gamma_i, G], listed until the first repetition (the repeated
 * term is not listed twice).
 */
inline std::vector<Subgroup> series(const Subgroup& G, SeriesKind kind) {
  std::vector<Subgroup> out{G};
  for (;;) {
    const Subgroup& last = out.back();
    Subgroup next = kind == SeriesKind::derived ? commutator_subgroup(last, last) : commutator_subgroup(last, G);
    if (next == last) break;
    out.push_back(std::move(next));
  }
  return out;
}

/// G^(d), extending past stabilization by repetition.
inline Subgroup derived_term(const Subgroup& G, std::size_t d) {
  auto s = series(G, SeriesKind::derived);
  return s[std::min(d, s.size() - 1)];
}

/// gamma_k(G), k >= 1.
inline Subgroup lower_central_term(const Subgroup& G, std::size_t k) {
  if (k == 0) throw InputError("lower central series is indexed from 1");
  auto s = series(G, SeriesKind::lower_central);
  return s[std::min(k - 1, s.size() - 1)];
}

inline bool is_nilpotent(const Subgroup& G) { return series(G, SeriesKind::lower_central).back().is_trivial(); }
inline bool is_abelian(const Subgroup& G) { return commutator_subgroup(G, G).is_trivial(); }
inline bool is_perfect(const Subgroup& G) { return commutator_subgroup(G, G) == G; }

// ---------------------------------------------------------------------------
// Centralizers, normalizers, Sylow subgroups

/// {g in G : g s = s g for all s in S}; S need not lie in G.
inline Subgroup centralizer(const Subgroup& G, std::span<const Permutation> S) {
  const auto& parent = G.group();
  for (const auto& s : S)
    if (s.degree() != parent.degree()) throw InputError("centralizer: degree mismatch");
  std::vector<ElemId> keep;
  for (ElemId g : G.elements()) {
    const Permutation& x = parent.element(g);
    bool ok = std::all_of(S.begin(), S.end(), [&](const Permutation& s) { return x * s == s * x; });
    if (ok) keep.push_back(g);
  }
  return Subgroup::from_elements(G.parent(), std::move(keep));
}

inline Subgroup centralizer(const Subgroup& G, const Subgroup& S) {
  require_same_parent(G, S);
  const auto& parent = G.group();
  std::vector<ElemId> keep;
  for (ElemId g : G.elements()) {
    bool ok = std::all_of(S.generators().begin(), S.generators().end(),
                          [&](ElemId s) { return parent.mul(g, s) == parent.mul(s, g); });
    if (ok) keep.push_back(g);
  }
  return Subgroup::from_elements(G.parent(), std::move(keep));
}

/// {g in G : g^-1 H g = H}.
inline Subgroup normalizer(const Subgroup& G, const Subgroup& H) {
  if (!H.is_subgroup_of(G)) throw InputError("normalizer: H is not a subgroup of G");
  const auto& parent = G.group();
  std::vector<ElemId> keep;
  for (ElemId g : G.elements()) {
    bool ok = std::all_of(H.generators().begin(), H.generators().end(),
                          [&](ElemId h) { return H.contains(parent.conj(h, g)); });
    if (ok) keep.push_back(g);
  }
  return Subgroup::from_elements(G.parent(), std::move(keep));
}

/// g^-1 H g as a subgroup.
inline Subgroup conjugate(const Subgroup& H, ElemId g) {
  const auto& parent = H.group();
  std::vector<ElemId> els;
  els.reserve(H.order());
  for (ElemId h : H.elements()) els.push_back(parent.conj(h, g));
  return Subgroup::from_elements(H.parent(), std::move(els));
}

/**
 * A Sylow p-subgroup by the normalizer climb: starting from 1, repeatedly adjoin
 * the first (canonical order) p-element of N_G(H) \ H.
 */
inline Subgroup sylow(const Subgroup& G, std::uint64_t p) {
  if (!is_prime(p)) throw InputError("sylow: " + std::to_string(p) + " is not prime");
  const auto& parent = G.group();
  const std::uint64_t target = p_part(G.order(), p);
  Subgroup H = Subgroup::trivial(G.parent());
  while (H.order() < target) {
    Subgroup N = normalizer(G, H);
    std::optional<ElemId> pick;
    for (ElemId x : N.elements()) {
      if (!H.contains(x) && is_power_of(parent.element_order(x), p)) {
        pick = x;
        break;
      }
    }
    if (!pick) throw InternalError("sylow climb stalled below the p-part of |G|");
    auto gens = H.generators();
    gens.push_back(*pick);
    H = Subgroup::from_elements(G.parent(), Subgroup::generated(G.parent(), gens).elements());
  }
  return H;
}

// ---------------------------------------------------------------------------
// Quotients

/// G/N materialized as the regular permutation action on the cosets of N.
struct Quotient {
  GroupPtr group;
  /// projection[g] for every element id g of the source group.
  std::vector<ElemId> projection;

  Subgroup image(const Subgroup& H) const {
    std::vector<ElemId> gens;
    for (ElemId h : H.generators()) gens.push_back(projection[h]);
    Subgroup s = Subgroup::generated(group, std::move(gens));
    return Subgroup::from_elements(group, s.elements());
  }
};

/**
 * Quotient of the ambient group by a normal subgroup. When N is trivial the
 * ambient group already is a faithful permutation representation of G/N and is
 * returned with the identity projection.
 */
inline Quotient quotient(const GroupPtr& G, const Subgroup& N, std::size_t cap = kDefaultElementCap) {
  if (N.parent() != G) throw InputError("quotient: N does not live in G");
  Subgroup whole = Subgroup::whole(G);
  if (!is_normal_in(N, whole)) throw InputError("quotient: N is not normal in G");
  Quotient q;
  if (N.is_trivial()) {
    q.group = G;
    q.projection.resize(G->order());
    std::iota(q.projection.begin(), q.projection.end(), ElemId{0});
    return q;
  }
  const std::size_t n = G->order();
  constexpr ElemId unset = ~ElemId{0};
  std::vector<ElemId> coset(n, unset);
  std::vector<ElemId> reps;
  for (ElemId g = 0; g < n; ++g) {
    if (coset[g] != unset) continue;
    auto label = static_cast<ElemId>(reps.size());
    reps.push_back(g);
    for (ElemId x : N.elements()) coset[G->mul(g, x)] = label;
  }
  const std::size_t index = reps.size();
  auto action_of = [&](ElemId g) {
    std::vector<Point> images(index);
    for (std::size_t c = 0; c < index; ++c) images[c] = coset[G->mul(reps[c], g)];
    return Permutation::from_images(std::move(images));
  };
  std::vector<Permutation> gens;
  for (const auto& g : G->generators()) gens.push_back(action_of(G->id_of(g)));
  q.group = close_generators(index, std::move(gens), cap);
  q.projection.resize(n);
  // Elements of one coset share an image, so compute it once per coset.
  std::vector<ElemId> per_coset(index);
  for (std::size_t c = 0; c < index; ++c) per_coset[c] = q.group->id_of(action_of(reps[c]));
  for (ElemId g = 0; g < n; ++g) q.projection[g] = per_coset[coset[g]];
  return q;
}

// ---------------------------------------------------------------------------
// Exponents and p-group facts

struct ExponentInfo {
  std::uint64_t exponent = 1;
  /// Element orders aligned with the subgroup's element list.
  std::vector<std::uint64_t> orders;
};

inline ExponentInfo exponent_and_orders(const Subgroup& G) {
  ExponentInfo info;
  info.orders.reserve(G.order());
  for (ElemId g : G.elements()) {
    std::uint64_t o = G.group().element_order(g);
    info.orders.push_back(o);
    info.exponent = std::lcm(info.exponent, o);
  }
  return info;
}

inline std::uint64_t exponent(const Subgroup& G) { return exponent_and_orders(G).exponent; }

/// <x^n : x in H>.
inline Subgroup power_subgroup(const Subgroup& H, std::uint64_t n) {
  const auto& G = H.group();
  std::vector<bool> seen(G.order(), false);
  std::vector<ElemId> powers;
  for (ElemId x : H.elements()) {
    ElemId y = G.pow(x, n);
    if (!seen[y]) {
      seen[y] = true;
      powers.push_back(y);
    }
  }
  Subgroup s = Subgroup::generated(H.parent(), std::move(powers));
  return Subgroup::from_elements(H.parent(), s.elements());
}

struct PGroupFacts {
  bool is_p_group = false;
  std::optional<bool> is_powerful;
  std::optional<Subgroup> frattini;
  std::optional<Subgroup> agemo;  // P^p
};

inline PGroupFacts p_group_facts(const Subgroup& P, std::uint64_t p) {
  PGroupFacts f;
  f.is_p_group = is_prime(p) && is_power_of(P.order(), p);
  if (!f.is_p_group) return f;
  Subgroup derived = commutator_subgroup(P, P);
  Subgroup agemo = power_subgroup(P, p);
  Subgroup bound = p == 2 ? power_subgroup(P, 4) : agemo;
  f.is_powerful = derived.is_subgroup_of(bound);
  f.frattini = join(agemo, derived);
  f.agemo = std::move(agemo);
  return f;
}

// ---------------------------------------------------------------------------
// Generation and set products

inline bool generated_by(const Subgroup& target, std::span<const Subgroup> parts) {
  return join(target.parent(), parts) == target;
}

/// Membership mask of the set product X_1 X_2 ... X_t taken in the given order.
inline std::vector<bool> set_product(const GroupPtr& parent, std::span<const Subgroup> parts) {
  const auto& G = *parent;
  std::vector<bool> mask(G.order(), false);
  std::vector<ElemId> current{FiniteGroup::identity()};
  mask[FiniteGroup::identity()] = true;
  for (const auto& part : parts) {
    if (part.is_trivial()) continue;
    std::vector<bool> next_mask(G.order(), false);
    std::vector<ElemId> next;
    for (ElemId x : current)
      for (ElemId y : part.elements()) {
        ElemId z = G.mul(x, y);
        if (!next_mask[z]) {
          next_mask[z] = true;
          next.push_back(z);
        }
      }
    current = std::move(next);
    mask = std::move(next_mask);
  }
  return mask;
}

/// First element of `target` missing from the product, if any.
inline std::optional<ElemId> product_gap(const Subgroup& target, std::span<const Subgroup> parts) {
  auto mask = set_product(target.parent(), parts);
  for (ElemId g : target.elements())
    if (!mask[g]) return g;
  return std::nullopt;
}

inline std::vector<Subgroup> intersect_each(const Subgroup& K, std::span<const Subgroup> parts) {
  std::vector<Subgroup> out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(intersection(K, p));
  return out;
}

/// Keeps the first occurrence of each distinct subgroup.
inline std::vector<Subgroup> distinct(std::vector<Subgroup> parts) {
  std::vector<Subgroup> out;
  for (auto& p : parts)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  return out;
}

/**
 * Nilpotent product decomposition: for nilpotent G generated by the parts with
 * gamma_i(G) = <gamma_i(G) cap G_j> for every i, checks G = G_1 G_2 ... G_t in the
 * supplied order and in one seeded random reordering.
 */
inline Verdict nilpotent_product_check(const Subgroup& G, std::span<const Subgroup> parts,
                                       std::uint64_t shuffle_seed = 0x5eed) {
  for (const auto& p : parts)
    if (!p.is_subgroup_of(G)) throw InputError("nilpotent_product_check: part is not a subgroup of G");
  auto lcs = series(G, SeriesKind::lower_central);
  if (!lcs.back().is_trivial()) return Verdict::not_applicable("G is not nilpotent");
  if (!generated_by(G, parts)) return Verdict::not_applicable("parts do not generate G");

  Verdict v;
  for (std::size_t i = 1; i < lcs.size(); ++i) {
    auto pieces = intersect_each(lcs[i], parts);
    if (!generated_by(lcs[i], pieces))
      v.fail("gamma_" + std::to_string(i + 1) + "(G) is not generated by its intersections with the parts");
  }
  if (!v.passed()) return v;

  if (auto gap = product_gap(G, parts)) {
    v.fail("element " + G.group().element(*gap).to_cycle_string() + " missing from the ordered product");
    return v;
  }
  std::vector<Subgroup> shuffled(parts.begin(), parts.end());
  std::mt19937_64 rng(shuffle_seed);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  if (auto gap = product_gap(G, shuffled))
    v.fail("element " + G.group().element(*gap).to_cycle_string() + " missing from the reordered product");
  v.values["nilpotency_class"] = lcs.size() - 1;
  return v;
}

}  // namespace aspec
