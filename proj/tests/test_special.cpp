#include <catch2/catch_amalgamated.hpp>

#include "aspec/corpus.hpp"
#include "aspec/special.hpp"
#include "support.hpp"

using namespace aspec;
using namespace testing_support;

namespace {

CoprimeAction plane_action() {
  auto G = close_generators(9, translation_gens(2, 3));
  return CoprimeAction::by_conjugation(G, 2, 2, {affine(diag({-1, 1}), {}, 3), affine(diag({1, -1}), {}, 3)});
}

CoprimeAction builtin(const std::string& name) { return select_builtin(name).at(0).build(); }

/// Trivial action of F_5^2 on S4.
CoprimeAction trivial_on_s4() {
  auto G = close_generators(4, symmetric_gens(4));
  return CoprimeAction::by_conjugation(G, 5, 2, {Permutation::identity(4), Permutation::identity(4)});
}

/// Elements fixed by every element of B, straight from the element maps.
std::set<Images> brute_fixed(const CoprimeAction& act, const ActionSubgroup& B) {
  std::set<Images> out;
  const auto& G = act.group();
  for (ElemId g = 0; g < G.order(); ++g) {
    bool fixed = true;
    for (AVec b : B.elements) fixed = fixed && act.apply(b, g) == g;
    if (fixed) out.insert(G.element(g).images());
  }
  return out;
}

std::set<Images> intersect(const std::set<Images>& a, const std::set<Images>& b) {
  std::set<Images> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

std::uint64_t brute_exponent(const std::set<Images>& H) {
  std::uint64_t e = 1;
  for (const auto& x : H) e = std::lcm(e, brute_order(x));
  return e;
}

}  // namespace

TEST_CASE("degree-0 family is the distinct centralizers of maximal subgroups") {
  auto act = plane_action();
  FamilyTower tower(act, FamilyKind::derived);
  const auto& fam = tower.level(0);
  std::set<std::set<Images>> expected;
  for (const auto& Ai : subgroups_of_A(act.A(), SubgroupMode::maximal)) expected.insert(brute_fixed(act, Ai));
  std::set<std::set<Images>> got;
  for (const auto& n : fam.nodes) got.insert(elements_of(n.subgroup));
  CHECK(got == expected);
  CHECK(fam.size() == 3);
  std::multiset<std::size_t> orders;
  for (const auto& n : fam.nodes) orders.insert(n.subgroup.order());
  CHECK(orders == std::multiset<std::size_t>{1, 3, 3});
}

TEST_CASE("trivial action gives the series terms") {
  auto act = trivial_on_s4();
  Subgroup G = Subgroup::whole(act.target());
  FamilyTower derived(act, FamilyKind::derived);
  for (std::size_t k = 0; k <= 3; ++k) {
    const auto& fam = derived.level(k);
    REQUIRE(fam.size() == 1);
    CHECK(fam.nodes[0].subgroup == derived_term(G, k));
  }
  FamilyTower gamma(act, FamilyKind::gamma);
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto& fam = gamma.level(k);
    REQUIRE(fam.size() == 1);
    CHECK(fam.nodes[0].subgroup == lower_central_term(G, k));
  }
}

TEST_CASE("extraspecial degree-1 nodes lie in the centre and match a brute recompute") {
  auto act = builtin("extraspecial");
  Subgroup G = Subgroup::whole(act.target());
  CHECK(G.order() == 27);
  Subgroup Z = centralizer(G, G);
  CHECK(Z.order() == 3);
  FamilyTower tower(act, FamilyKind::derived);
  const auto& base = tower.level(0);
  const auto& fam = tower.level(1);

  std::vector<std::set<Images>> cents;
  for (const auto& Ai : subgroups_of_A(act.A(), SubgroupMode::maximal)) cents.push_back(brute_fixed(act, Ai));
  std::set<std::set<Images>> expected;
  for (const auto& a : base.nodes)
    for (const auto& b : base.nodes) {
      auto C = brute_commutator(elements_of(a.subgroup), elements_of(b.subgroup), 9);
      for (const auto& Cj : cents) expected.insert(intersect(C, Cj));
    }
  std::set<std::set<Images>> got;
  for (const auto& n : fam.nodes) {
    CHECK(n.subgroup.is_subgroup_of(Z));
    got.insert(elements_of(n.subgroup));
  }
  CHECK(got == expected);
}

TEST_CASE("witnesses reproduce their nodes") {
  for (const auto& name : {"extraspecial", "gl-veA-n3-r2", "mixed-solvable"}) {
    auto act = builtin(name);
    for (auto kind : {FamilyKind::derived, FamilyKind::gamma}) {
      FamilyTower tower(act, kind);
      for (std::size_t k = tower.base_degree(); k <= tower.base_degree() + 2; ++k) {
        CHECK(witness_check(tower, k).passed());
        for (const auto& n : tower.level(k).nodes) CHECK_FALSE(n.witnesses.empty());
      }
    }
  }
}

TEST_CASE("family sizes grow at most quadratically per degree") {
  for (const auto& name : {"extraspecial", "gl-veA-n3-r3", "mixed-solvable", "ut-heis-3"}) {
    auto act = builtin(name);
    for (auto kind : {FamilyKind::derived, FamilyKind::gamma}) {
      FamilyTower tower(act, kind);
      const std::size_t s = tower.level(tower.base_degree()).size();
      CHECK(s <= tower.maximal_subgroups().size());
      for (std::size_t k = tower.base_degree() + 1; k <= tower.base_degree() + 2; ++k) {
        const std::size_t prev = tower.level(k - 1).size();
        const std::size_t bound = kind == FamilyKind::derived ? prev * prev * s : prev * s * s;
        CHECK(tower.level(k).size() <= bound);
      }
    }
  }
}

TEST_CASE("derived-flavor items on small actions") {
  for (const auto& name : {"extraspecial", "gl-veA-n2-r2", "mixed-solvable", "ut-heis-3"}) {
    auto act = builtin(name);
    FamilyTower tower(act, FamilyKind::derived);
    Subgroup G = Subgroup::whole(act.target());
    for (std::size_t k = 0; k <= 2; ++k) {
      INFO(name << " k = " << k);
      auto c = prop32_check(tower, 1, k);
      CHECK((k == 0 ? c.status == Status::not_applicable : c.passed()));
      CHECK(prop32_check(tower, 3, k).passed());
      CHECK(prop32_check(tower, 4, k).status != Status::fail);
      CHECK(prop32_check(tower, 5, k).status == Status::not_applicable);
      CHECK(prop32_check(tower, 6, k).passed());
      CHECK(prop32_check(tower, 2, k, ItemInputs{G, std::nullopt}).status != Status::fail);
    }
  }
}

TEST_CASE("gamma-flavor items on small actions") {
  for (const auto& name : {"extraspecial", "ut-heis-3", "mixed-solvable"}) {
    auto act = builtin(name);
    FamilyTower tower(act, FamilyKind::gamma);
    for (std::size_t k = 1; k <= 3; ++k) {
      INFO(name << " k = " << k);
      auto c = prop72_check(tower, 1, k);
      CHECK((k == 1 ? c.status == Status::not_applicable : c.passed()));
      CHECK(prop72_check(tower, 2, k).passed());
      CHECK(prop72_check(tower, 3, k).status != Status::fail);
      CHECK(prop72_check(tower, 5, k).passed());
    }
  }
}

TEST_CASE("generation check values") {
  auto act = plane_action();
  FamilyTower tower(act, FamilyKind::derived);
  Verdict v = generation_check(tower, 0);
  CHECK(v.passed());
  CHECK(v.values["s_k"] == 3);
  CHECK(v.values["R_k_order"] == 9);
  Verdict w = generation_check(tower, 1);
  CHECK(w.values["term_order"] == 1);
}

TEST_CASE("centralizer witness respects the index bound") {
  auto act = builtin("gl-veA-n3-r3");
  FamilyTower tower(act, FamilyKind::derived);
  Verdict v = centralizer_witness_check(tower, 1);
  REQUIRE(v.passed());
  for (const auto& hit : v.values["containing_B"]) CHECK(hit["index"].get<std::size_t>() <= 4);
  CHECK(centralizer_witness_check(tower, 2).status == Status::not_applicable);
}

TEST_CASE("perfect group item on A5") {
  auto act = builtin("a5-trivial");
  FamilyTower derived(act, FamilyKind::derived);
  for (std::size_t k = 0; k <= 2; ++k) {
    Verdict v = prop32_check(derived, 5, k);
    CHECK(v.passed());
    CHECK(v.values["tested"].get<std::size_t>() >= 1);
  }
  FamilyTower gamma(act, FamilyKind::gamma);
  CHECK(prop72_check(gamma, 4, 1).passed());
}

TEST_CASE("transfer item is not applicable when its hypothesis fails") {
  auto act = plane_action();
  FamilyTower tower(act, FamilyKind::derived);
  Subgroup G = Subgroup::whole(act.target());
  // degree-1 nodes are trivial, so G is not generated by them
  CHECK(derived_transfer_check(tower, 1, G).status == Status::not_applicable);
  CHECK(derived_transfer_check(tower, 0, G).passed());
}

TEST_CASE("sylow generation") {
  for (const auto& name : {"extraspecial", "gl-veA-n3-r2", "mixed-solvable", "s3-wreath"}) {
    auto act = builtin(name);
    FamilyTower tower(act, FamilyKind::derived);
    INFO(name);
    CHECK(sylow_generation_check(tower, 0).passed());
  }
  auto act = builtin("ut-heis-3");
  FamilyTower gamma(act, FamilyKind::gamma);
  CHECK(sylow_generation_check(gamma, 2).passed());
  CHECK(sylow_generation_check(gamma, 1).status == Status::not_applicable);
}

TEST_CASE("exponent report against brute force") {
  for (const auto& name : {"extraspecial", "gl-veA-n2-r2", "ut-heis-3"}) {
    auto act = builtin(name);
    INFO(name);
    Verdict v = exponent_instance_report(act, 0, FamilyKind::derived);
    std::uint64_t m = 1;
    for (AVec a : act.nontrivial_elements()) m = std::lcm(m, brute_exponent(brute_fixed(act, span(act.A(), {a}))));
    CHECK(v.values["m"] == m);
    CHECK(v.values["e"] == exponent(Subgroup::whole(act.target())));
  }
  auto wreath = builtin("s3-wreath");
  Verdict w = exponent_instance_report(wreath, 0, FamilyKind::derived);
  CHECK(w.values["m"] == 6);
  CHECK(w.values["e"] == 6);
  CHECK(w.values["asserted"] == false);
  CHECK(exponent_instance_report(wreath, 1, FamilyKind::derived).status == Status::not_applicable);

  auto pab = builtin("powerful-ab");
  Verdict p = exponent_instance_report(pab, 0, FamilyKind::derived);
  CHECK(p.values["asserted"] == true);
  CHECK(p.passed());
}

TEST_CASE("degree cap and argument checks") {
  auto act = plane_action();
  FamilyTower derived(act, FamilyKind::derived);
  FamilyTower gamma(act, FamilyKind::gamma);
  CHECK_THROWS_AS(derived.level(kMaxSpecialDegree + 1), InputError);
  CHECK_THROWS_AS(gamma.level(0), InputError);
  CHECK_THROWS_AS(prop32_check(gamma, 1, 1), InputError);
  CHECK_THROWS_AS(prop72_check(derived, 1, 1), InputError);
  CHECK_THROWS_AS(prop32_check(derived, 7, 1), InputError);
  CHECK_THROWS_AS(prop72_check(gamma, 6, 1), InputError);
  auto G1 = close_generators(9, translation_gens(2, 3));
  auto rank1 = CoprimeAction::by_conjugation(G1, 2, 1, {affine(diag({-1, 1}), {}, 3)});
  CHECK_THROWS_AS(FamilyTower(rank1, FamilyKind::derived), InputError);
  CHECK(max_checked_degree(Subgroup::whole(act.target()), FamilyKind::derived) == 2);
}

TEST_CASE("family JSON export") {
  auto act = plane_action();
  FamilyTower tower(act, FamilyKind::derived);
  auto j = family_to_json(tower.level(0));
  CHECK(j["kind"] == "derived");
  CHECK(j["degree"] == 0);
  REQUIRE(j["nodes"].size() == 3);
  for (const auto& n : j["nodes"]) {
    CHECK(n["degree"] == 0);
    CHECK_FALSE(n["witnesses"].empty());
    CHECK_FALSE(n.contains("containing_B"));
    auto gens = n["generators"].get<std::vector<std::string>>();
    std::vector<Permutation> perms;
    for (const auto& g : gens) perms.push_back(P(g, 9));
    CHECK(closure(perms, 9).size() == n["order"].get<std::size_t>());
  }
  Verdict w = centralizer_witness_check(tower, 0);
  auto k = family_to_json(tower.level(0), w.values["containing_B"]);
  for (const auto& n : k["nodes"]) CHECK(n.contains("containing_B"));
}
