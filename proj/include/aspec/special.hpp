#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aspec/action.hpp"
#include "aspec/group_ops.hpp"
#include "aspec/verdict.hpp"

namespace aspec {

/// Derived flavor starts at degree 0; gamma flavor at degree 1.
enum class FamilyKind { derived, gamma };

inline std::string_view to_string(FamilyKind k) { return k == FamilyKind::derived ? "derived" : "gamma"; }

inline constexpr std::size_t kMaxSpecialDegree = 6;

/**
 * How a special subgroup arises. Base nodes record the maximal subgroup A_j with
 * H = C_G(A_j). Higher nodes record H = [J_left, X] cap C_G(A_j), where J_left is a
 * node of the previous degree and X is either another previous-degree node
 * (derived flavor) or C_G(A_right) (gamma flavor).
 */
struct Witness {
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  std::size_t j = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct SpecialNode {
  FamilyKind kind = FamilyKind::derived;
  std::size_t degree = 0;
  Subgroup subgroup;
  std::vector<Witness> witnesses;
};

struct SpecialFamily {
  FamilyKind kind = FamilyKind::derived;
  std::size_t degree = 0;
  std::vector<SpecialNode> nodes;

  std::size_t size() const noexcept { return nodes.size(); }

  std::vector<Subgroup> subgroups() const {
    std::vector<Subgroup> out;
    for (const auto& n : nodes) out.push_back(n.subgroup);
    return out;
  }
};

/**
 * Lazily built families of A-special (or gamma-A-special) subgroups of every
 * degree, each computed exhaustively from the previous degree and deduplicated
 * by element set. Holds its own copy of the action.
 */
class FamilyTower {
 public:
  FamilyTower(CoprimeAction action, FamilyKind kind) : action_(std::move(action)), kind_(kind) {
    if (action_.r() < 2) throw InputError("special families need rank r >= 2");
    maximal_ = subgroups_of_A(action_, SubgroupMode::maximal);
    for (const auto& Ai : maximal_) centralizers_.push_back(fixed_points(action_, Ai));
  }

  FamilyKind kind() const noexcept { return kind_; }
  std::size_t base_degree() const noexcept { return kind_ == FamilyKind::derived ? 0 : 1; }
  const CoprimeAction& action() const noexcept { return action_; }
  const std::vector<ActionSubgroup>& maximal_subgroups() const noexcept { return maximal_; }
  const std::vector<Subgroup>& centralizers() const noexcept { return centralizers_; }

  const SpecialFamily& level(std::size_t k) {
    if (k < base_degree()) throw InputError("gamma-special degrees start at 1");
    if (k > kMaxSpecialDegree) throw InputError("special degree above cap " + std::to_string(kMaxSpecialDegree));
    while (levels_.size() <= k - base_degree()) build_next();
    return levels_[k - base_degree()];
  }

  /// Recomputes a node from one of its witnesses.
  Subgroup rebuild(std::size_t k, const Witness& w) {
    if (k == base_degree()) return centralizers_.at(w.j);
    const auto& prev = level(k - 1);
    const Subgroup& left = prev.nodes.at(*w.left).subgroup;
    const Subgroup& right = kind_ == FamilyKind::derived ? prev.nodes.at(*w.right).subgroup : centralizers_.at(*w.right);
    return intersection(commutator_subgroup(left, right), centralizers_.at(w.j));
  }

 private:
  void build_next() {
    SpecialFamily fam;
    fam.kind = kind_;
    fam.degree = base_degree() + levels_.size();
    std::map<std::vector<ElemId>, std::size_t> index;
    auto add = [&](Subgroup H, Witness w) {
      auto [it, fresh] = index.emplace(H.elements(), fam.nodes.size());
      if (fresh) fam.nodes.push_back(SpecialNode{kind_, fam.degree, std::move(H), {}});
      fam.nodes[it->second].witnesses.push_back(w);
    };
    // Intersections with C_G(A_j) are memoized per distinct commutator.
    std::map<std::vector<ElemId>, std::vector<Subgroup>> cut_cache;
    auto cuts = [&](const Subgroup& C) -> const std::vector<Subgroup>& {
      auto it = cut_cache.find(C.elements());
      if (it != cut_cache.end()) return it->second;
      return cut_cache.emplace(C.elements(), intersect_each(C, centralizers_)).first->second;
    };

    if (levels_.empty()) {
      for (std::size_t j = 0; j < centralizers_.size(); ++j) add(centralizers_[j], Witness{std::nullopt, std::nullopt, j});
    } else {
      const auto& prev = levels_.back();
      for (std::size_t a = 0; a < prev.nodes.size(); ++a) {
        if (kind_ == FamilyKind::derived) {
          for (std::size_t b = a; b < prev.nodes.size(); ++b) {
            Subgroup C = commutator_subgroup(prev.nodes[a].subgroup, prev.nodes[b].subgroup);
            const auto& pieces = cuts(C);
            for (std::size_t j = 0; j < pieces.size(); ++j) add(pieces[j], Witness{a, b, j});
          }
        } else {
          for (std::size_t i = 0; i < centralizers_.size(); ++i) {
            Subgroup C = commutator_subgroup(prev.nodes[a].subgroup, centralizers_[i]);
            const auto& pieces = cuts(C);
            for (std::size_t j = 0; j < pieces.size(); ++j) add(pieces[j], Witness{a, i, j});
          }
        }
      }
    }
    levels_.push_back(std::move(fam));
  }

  CoprimeAction action_;
  FamilyKind kind_;
  std::vector<ActionSubgroup> maximal_;
  std::vector<Subgroup> centralizers_;
  std::deque<SpecialFamily> levels_;
};

inline SpecialFamily special_family(const CoprimeAction& action, std::size_t k, FamilyKind kind) {
  if (kind == FamilyKind::gamma && k == 0) throw InputError("gamma-special subgroups have degree >= 1");
  FamilyTower tower(action, kind);
  return tower.level(k);
}

/// Per node: degree, order, generators, witnesses; `containing_B` is the matching entry of a centralizer witness run.
inline nlohmann::json family_to_json(const SpecialFamily& fam, const nlohmann::json& containing_B = nullptr) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < fam.nodes.size(); ++i) {
    const auto& n = fam.nodes[i];
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : n.subgroup.generator_permutations()) gens.push_back(g.to_cycle_string());
    nlohmann::json wit = nlohmann::json::array();
    for (const auto& w : n.witnesses) {
      nlohmann::json e{{"j", w.j}};
      if (w.left) e["left"] = *w.left;
      if (w.right) e["right"] = *w.right;
      wit.push_back(e);
    }
    nlohmann::json node{{"degree", n.degree}, {"order", n.subgroup.order()}, {"generators", gens}, {"witnesses", wit}};
    if (containing_B.is_array() && i < containing_B.size()) node["containing_B"] = containing_B[i];
    nodes.push_back(node);
  }
  return {{"kind", to_string(fam.kind)}, {"degree", fam.degree}, {"nodes", nodes}};
}

/// G^(k) for the derived flavor, gamma_k(G) for the gamma flavor.
inline Subgroup flavor_term(const Subgroup& G, FamilyKind kind, std::size_t k) {
  return kind == FamilyKind::derived ? derived_term(G, k) : lower_central_term(G, k);
}

/**
 * Largest degree worth checking: one past the point where the relevant series
 * stabilizes, capped at kMaxSpecialDegree.
 */
inline std::size_t max_checked_degree(const Subgroup& G, FamilyKind kind) {
  auto s = series(G, kind == FamilyKind::derived ? SeriesKind::derived : SeriesKind::lower_central);
  std::size_t stable = kind == FamilyKind::derived ? s.size() - 1 : s.size();
  return std::min(stable + 1, kMaxSpecialDegree);
}

// ---------------------------------------------------------------------------
// Per-item checks shared by both flavors

/// Every degree-k node lies in some degree-(k-1) node.
inline Verdict containment_check(FamilyTower& tower, std::size_t k) {
  if (k <= tower.base_degree()) return Verdict::not_applicable("needs k above the base degree");
  const auto& fam = tower.level(k);
  const auto& prev = tower.level(k - 1);
  Verdict v;
  for (std::size_t i = 0; i < fam.nodes.size(); ++i) {
    bool inside = std::any_of(prev.nodes.begin(), prev.nodes.end(),
                              [&](const SpecialNode& n) { return fam.nodes[i].subgroup.is_subgroup_of(n.subgroup); });
    if (!inside) v.fail("degree-" + std::to_string(k) + " node " + std::to_string(i) + " lies in no degree-" +
                        std::to_string(k - 1) + " node");
  }
  return v;
}

/// R_k = <degree-k family> equals G^(k) (resp. gamma_k(G)).
inline Verdict generation_check(FamilyTower& tower, std::size_t k) {
  const auto& fam = tower.level(k);
  Subgroup G = Subgroup::whole(tower.action().target());
  Subgroup term = flavor_term(G, tower.kind(), k);
  auto subs = fam.subgroups();
  Subgroup R = join(G.parent(), subs);
  Verdict v;
  v.values["s_k"] = fam.size();
  v.values["R_k_order"] = R.order();
  v.values["term_order"] = term.order();
  if (!(R == term))
    v.fail("R_" + std::to_string(k) + " has order " + std::to_string(R.order()) + " but the series term has order " +
           std::to_string(term.order()));
  return v;
}

/// Every node recomputed from each of its witnesses reproduces its element set.
inline Verdict witness_check(FamilyTower& tower, std::size_t k) {
  const auto& fam = tower.level(k);
  Verdict v;
  for (std::size_t i = 0; i < fam.nodes.size(); ++i)
    for (const auto& w : fam.nodes[i].witnesses)
      if (!(tower.rebuild(k, w) == fam.nodes[i].subgroup))
        v.fail("node " + std::to_string(i) + " is not reproduced by one of its witnesses");
  return v;
}

/**
 * Every degree-k node H satisfies H <= G_B where G_B is C_G(B)^(k) (derived) or
 * gamma_k(C_G(B)) (gamma) for some B <= A with |A/B| <= q^bound. Subgroups B are
 * tried largest first; the first hit is reported.
 */
inline Verdict centralizer_witness_check(FamilyTower& tower, std::size_t k) {
  const auto& action = tower.action();
  const std::size_t r = action.r();
  std::size_t bound = 0;
  if (tower.kind() == FamilyKind::derived) {
    if ((std::size_t{1} << k) > r - 1) return Verdict::not_applicable("needs 2^k <= r - 1");
    bound = std::size_t{1} << k;
  } else {
    if (k > r - 1) return Verdict::not_applicable("needs k <= r - 1");
    bound = k;
  }
  std::uint64_t max_index = 1;
  for (std::size_t i = 0; i < bound; ++i) max_index *= action.q();
  auto candidates = subgroups_of_A(action, SubgroupMode::all);
  std::vector<std::optional<Subgroup>> terms(candidates.size());
  const auto& fam = tower.level(k);
  Verdict v;
  nlohmann::json found = nlohmann::json::array();
  for (std::size_t i = 0; i < fam.nodes.size(); ++i) {
    std::optional<std::size_t> hit;
    for (std::size_t b = 0; b < candidates.size() && !hit; ++b) {
      if (action.A().order() / candidates[b].order() > max_index) continue;
      if (!terms[b]) terms[b] = flavor_term(fixed_points(action, candidates[b]), tower.kind(), k);
      if (fam.nodes[i].subgroup.is_subgroup_of(*terms[b])) hit = b;
    }
    if (!hit) {
      v.fail("node " + std::to_string(i) + " of degree " + std::to_string(k) + " has no witness B");
      found.push_back(nullptr);
      continue;
    }
    nlohmann::json basis = nlohmann::json::array();
    for (AVec e : candidates[*hit].basis) basis.push_back(action.A().to_string(e));
    found.push_back({{"node", i}, {"index", action.A().order() / candidates[*hit].order()}, {"basis", basis}});
  }
  v.values["containing_B"] = found;
  return v;
}

/**
 * For perfect G and A-invariant N = [N, G], N is generated by its intersections
 * with the degree-k family. N ranges over the supplied candidates.
 */
inline Verdict perfect_normal_check(FamilyTower& tower, std::size_t k, const std::vector<Subgroup>& candidates) {
  const auto& action = tower.action();
  Subgroup G = Subgroup::whole(action.target());
  if (!is_perfect(G)) return Verdict::not_applicable("G is not perfect");
  const auto subs = tower.level(k).subgroups();
  Verdict v;
  std::size_t tested = 0;
  for (const auto& N : candidates) {
    if (!is_invariant(action, N) || !(commutator_subgroup(N, G) == N)) continue;
    ++tested;
    auto pieces = intersect_each(N, subs);
    if (!generated_by(N, pieces))
      v.fail("N of order " + std::to_string(N.order()) + " not generated by its degree-" + std::to_string(k) +
             " intersections");
  }
  v.values["tested"] = tested;
  return v;
}

/**
 * Images of degree-k special subgroups in G/N are special subgroups of G/N of the
 * same degree, compared as sets against the family built natively on G/N.
 */
inline Verdict quotient_image_check(FamilyTower& tower, std::size_t k, const Subgroup& N) {
  const auto& action = tower.action();
  Subgroup G = Subgroup::whole(action.target());
  if (!is_normal_in(N, G) || !is_invariant(action, N))
    throw InputError("quotient image check needs an A-invariant normal N");
  auto induced = induced_action(action, N);
  FamilyTower native(induced.action, tower.kind());
  const auto& there = native.level(k);
  const auto& here = tower.level(k);
  Verdict v;
  for (std::size_t i = 0; i < here.nodes.size(); ++i) {
    Subgroup img = induced.quotient.image(here.nodes[i].subgroup);
    bool found = std::any_of(there.nodes.begin(), there.nodes.end(),
                             [&](const SpecialNode& n) { return n.subgroup == img; });
    if (!found)
      v.fail("image of degree-" + std::to_string(k) + " node " + std::to_string(i) + " in G/N (|N| = " +
             std::to_string(N.order()) + ") is not special");
  }
  return v;
}

/**
 * If K = <K cap H : H of degree k> then K' = <K' cap J : J of degree k+1>.
 * The hypothesis failing yields not-applicable.
 */
inline Verdict derived_transfer_check(FamilyTower& tower, std::size_t k, const Subgroup& K) {
  if (tower.kind() != FamilyKind::derived) throw InputError("derived transfer applies to the derived flavor");
  if (!is_invariant(tower.action(), K)) throw InputError("K must be A-invariant");
  auto here = intersect_each(K, tower.level(k).subgroups());
  if (!generated_by(K, here)) return Verdict::not_applicable("K is not generated by its degree-k intersections");
  Subgroup Kp = commutator_subgroup(K, K);
  auto next = intersect_each(Kp, tower.level(k + 1).subgroups());
  Verdict v;
  v.values["K_order"] = K.order();
  v.values["K_prime_order"] = Kp.order();
  if (!generated_by(Kp, next))
    v.fail("K' of order " + std::to_string(Kp.order()) + " not generated by degree-" + std::to_string(k + 1) +
           " intersections");
  return v;
}

/// Candidate normal subgroups: distinct derived and lower central terms of G.
inline std::vector<Subgroup> series_normal_subgroups(const Subgroup& G) {
  std::vector<Subgroup> all = series(G, SeriesKind::derived);
  auto lcs = series(G, SeriesKind::lower_central);
  all.insert(all.end(), lcs.begin(), lcs.end());
  all.push_back(Subgroup::trivial(G.parent()));
  return distinct(std::move(all));
}

struct ItemInputs {
  std::optional<Subgroup> K;  // item (2)
  std::optional<Subgroup> N;  // items (5)/(6) and gamma (4)/(5)
};

/**
 * Items of the derived-flavor check: (1) containment, (2) transfer to K',
 * (3) R_k = G^(k), (4) centralizer witness, (5) perfect-group generation,
 * (6) quotient images.
 */
inline Verdict prop32_check(FamilyTower& tower, int item, std::size_t k, const ItemInputs& aux = {}) {
  if (tower.kind() != FamilyKind::derived) throw InputError("prop32_check needs a derived-flavor tower");
  Subgroup G = Subgroup::whole(tower.action().target());
  switch (item) {
    case 1: return containment_check(tower, k);
    case 2: return derived_transfer_check(tower, k, aux.K.value_or(G));
    case 3: return generation_check(tower, k);
    case 4: return centralizer_witness_check(tower, k);
    case 5: return perfect_normal_check(tower, k, aux.N ? std::vector<Subgroup>{*aux.N} : series_normal_subgroups(G));
    case 6: {
      if (aux.N) return quotient_image_check(tower, k, *aux.N);
      Verdict v;
      for (const auto& N : series_normal_subgroups(G)) v.absorb(quotient_image_check(tower, k, N));
      return v;
    }
    default: throw InputError("prop32 item must be 1..6");
  }
}

/// Gamma-flavor items: (1) containment, (2) R_k = gamma_k(G), (3) centralizer
/// witness, (4) perfect-group generation, (5) quotient images.
inline Verdict prop72_check(FamilyTower& tower, int item, std::size_t k, const ItemInputs& aux = {}) {
  if (tower.kind() != FamilyKind::gamma) throw InputError("prop72_check needs a gamma-flavor tower");
  if (k < 1) throw InputError("gamma-special degrees start at 1");
  Subgroup G = Subgroup::whole(tower.action().target());
  switch (item) {
    case 1: return containment_check(tower, k);
    case 2: return generation_check(tower, k);
    case 3: return centralizer_witness_check(tower, k);
    case 4: return perfect_normal_check(tower, k, aux.N ? std::vector<Subgroup>{*aux.N} : series_normal_subgroups(G));
    case 5: {
      if (aux.N) return quotient_image_check(tower, k, *aux.N);
      Verdict v;
      for (const auto& N : series_normal_subgroups(G)) v.absorb(quotient_image_check(tower, k, N));
      return v;
    }
    default: throw InputError("prop72 item must be 1..5");
  }
}

// ---------------------------------------------------------------------------

/**
 * For each prime p dividing |T| (T = G^(d), or gamma_{r-1}(G) for the gamma flavor
 * with d = r - 1): an A-invariant Sylow P of T is generated by, and is the ordered
 * product of, its intersections P_j with the degree-d family. For the derived
 * flavor the same is checked for every nontrivial P^(l) against P^(l) cap P_j.
 */
inline Verdict sylow_generation_check(FamilyTower& tower, std::size_t d) {
  const auto& action = tower.action();
  if (action.r() < 2) return Verdict::not_applicable("rank r < 2");
  if (tower.kind() == FamilyKind::gamma && d != action.r() - 1)
    return Verdict::not_applicable("gamma flavor is checked at degree r - 1 only");
  Subgroup G = Subgroup::whole(action.target());
  Subgroup T = flavor_term(G, tower.kind(), d);
  const auto family = tower.level(d).subgroups();
  Verdict v;
  v.values["degree"] = d;
  v.values["term_order"] = T.order();
  nlohmann::json primes = nlohmann::json::array();
  for (std::uint64_t p : prime_divisors(T.order())) {
    Subgroup P = invariant_sylow(action, T, p);
    auto parts = distinct(intersect_each(P, family));
    nlohmann::json rec{{"p", p}, {"sylow_order", P.order()}, {"parts", parts.size()}};
    const std::string tag = "p = " + std::to_string(p) + ": ";
    if (!generated_by(P, parts)) {
      v.fail(tag + "P is not generated by the P cap H");
      rec["generation"] = false;
      primes.push_back(rec);
      continue;
    }
    rec["generation"] = true;
    Verdict prod = nilpotent_product_check(P, parts);
    rec["product"] = prod.status == Status::pass;
    for (const auto& w : prod.witnesses) v.fail(tag + w);
    if (prod.status == Status::not_applicable) v.fail(tag + "product check not applicable to a Sylow subgroup");

    if (tower.kind() == FamilyKind::derived) {
      auto dseries = series(P, SeriesKind::derived);
      std::size_t l = 1;
      for (; l < dseries.size(); ++l) {
        const Subgroup& Pl = dseries[l];
        if (Pl.is_trivial()) break;
        auto pieces = distinct(intersect_each(Pl, parts));
        if (!generated_by(Pl, pieces)) {
          v.fail(tag + "P^(" + std::to_string(l) + ") not generated by P^(l) cap P_j");
          continue;
        }
        Verdict sub = nilpotent_product_check(Pl, pieces);
        for (const auto& w : sub.witnesses) v.fail(tag + "P^(" + std::to_string(l) + "): " + w);
      }
      rec["derived_length"] = dseries.back().is_trivial() ? dseries.size() - 1 : dseries.size();
    }
    primes.push_back(rec);
  }
  v.values["primes"] = primes;
  return v;
}

/**
 * Instance-level exponent data: m = lcm over a in A^# of exp(C_G(a)^(d)) (or
 * exp(gamma_{r-1}(C_G(a)))) and e = exp(G^(d)) (or exp(gamma_{r-1}(G))). Divisibility
 * e | m is asserted only when G is a powerful p-group; otherwise it is reported.
 */
inline Verdict exponent_instance_report(const CoprimeAction& action, std::size_t d, FamilyKind kind) {
  const std::size_t r = action.r();
  if (r < 2) return Verdict::not_applicable("rank r < 2");
  if (kind == FamilyKind::derived && (std::size_t{1} << d) > r - 1)
    return Verdict::not_applicable("needs 2^d <= r - 1");
  const std::size_t k = kind == FamilyKind::derived ? d : r - 1;
  Subgroup G = Subgroup::whole(action.target());
  std::uint64_t m = 1;
  for (AVec a : action.nontrivial_elements()) m = std::lcm(m, exponent(flavor_term(fixed_points(action, a), kind, k)));
  std::uint64_t e = exponent(flavor_term(G, kind, k));
  Verdict v;
  v.values["degree"] = k;
  v.values["m"] = m;
  v.values["e"] = e;
  v.values["e_divides_m"] = m % e == 0;
  bool powerful = false;
  auto primes = prime_divisors(G.order());
  if (primes.size() == 1) powerful = p_group_facts(G, primes[0]).is_powerful.value_or(false);
  v.values["asserted"] = powerful;
  if (powerful && m % e != 0)
    v.fail("powerful p-group: exponent " + std::to_string(e) + " does not divide m = " + std::to_string(m));
  return v;
}

}  // namespace aspec
