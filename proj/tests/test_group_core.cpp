#include <catch2/catch_amalgamated.hpp>

#include "aspec/group_ops.hpp"
#include "support.hpp"

using namespace aspec;
using namespace testing_support;

namespace {

Subgroup whole(std::size_t n, std::vector<Permutation> gens) { return Subgroup::whole(close_generators(n, std::move(gens))); }

Subgroup sub(const Subgroup& G, const std::vector<Permutation>& gens) {
  std::vector<ElemId> ids;
  for (const auto& g : gens) ids.push_back(G.group().id_of(g));
  return Subgroup::generated(G.parent(), ids);
}

}  // namespace

TEST_CASE("permutation parsing and printing") {
  auto p = P("(1 2 3)(4 5)", 5);
  CHECK(p.to_cycle_string() == "(1 2 3)(4 5)");
  CHECK(p.order() == 6);
  CHECK(P("()", 4).is_identity());
  CHECK(P("()", 4).to_cycle_string() == "()");
  CHECK(P("(1,2,3)", 3) == P("(1 2 3)", 3));
  // cycles compose left to right: (1 2) then (2 3) sends 1 -> 2 -> 3
  CHECK(P("(1 2)(2 3)", 3)[0] == 2);
  CHECK_THROWS_AS(P("(1 4)", 3), InputError);
  CHECK_THROWS_AS(P("(1 1)", 3), InputError);
  CHECK_THROWS_AS(P("1 2", 3), InputError);
  CHECK_THROWS_AS(P("(1 2", 3), InputError);
  CHECK_THROWS_AS(P("", 3), InputError);
  CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), InputError);
}

TEST_CASE("products act on the right") {
  auto a = P("(1 2)", 3), b = P("(2 3)", 3);
  // (a*b)(x) = b(a(x))
  for (Point x = 0; x < 3; ++x) CHECK((a * b)[x] == b[a[x]]);
  CHECK(commutator(a, b) == a.inverse() * b.inverse() * a * b);
  CHECK(a.pow(2).is_identity());
  CHECK(P("(1 2 3 4)", 4).pow(-1) == P("(1 4 3 2)", 4));
}

TEST_CASE("closure examples") {
  CHECK(close_generators(3, {})->order() == 1);
  CHECK(close_generators(3, {P("(1 2)", 3), P("(1 2 3)", 3)})->order() == 6);
  CHECK(close_generators(8, q8_gens())->order() == 8);
  CHECK(close_generators(5, symmetric_gens(5))->order() == 120);
  CHECK_THROWS_AS(close_generators(4, {P("(1 2)", 3)}), InputError);
}

TEST_CASE("closure overflow names a lower bound") {
  try {
    close_generators(7, symmetric_gens(7), 1000);
    FAIL("expected overflow");
  } catch (const OverflowError& e) {
    CHECK(e.lower_bound() > 1000);
  }
}

TEST_CASE("canonical order and words") {
  auto G = close_generators(4, symmetric_gens(4));
  CHECK(G->element(0).is_identity());
  for (ElemId i = 1; i < G->order(); ++i) CHECK(G->element(i - 1) < G->element(i));
  for (ElemId i = 0; i < G->order(); ++i) {
    Permutation w = Permutation::identity(4);
    for (auto k : G->word(i)) w = w * G->generators()[k];
    CHECK(w == G->element(i));
  }
}

TEST_CASE("commutator subgroup examples") {
  auto S3 = whole(3, symmetric_gens(3));
  CHECK(commutator_subgroup(S3, Subgroup::trivial(S3.parent())).is_trivial());
  CHECK(commutator_subgroup(S3, S3).order() == 3);
  auto Q8 = whole(8, q8_gens());
  auto Z = commutator_subgroup(Q8, Q8);
  CHECK(Z.order() == 2);
  CHECK(Z.contains(Q8.group().id_of(q8_element(0, true))));
}

TEST_CASE("commutator subgroup agrees with all-pairs enumeration") {
  auto S4 = whole(4, symmetric_gens(4));
  auto A4 = sub(S4, alternating_gens(4));
  auto V = sub(S4, {P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)});
  auto D8 = sub(S4, {P("(1 2 3 4)", 4), P("(1 3)", 4)});
  for (const auto& [H, K] : std::vector<std::pair<Subgroup, Subgroup>>{{S4, S4}, {A4, S4}, {V, D8}, {D8, A4}}) {
    auto fast = commutator_subgroup(H, K);
    CHECK(fast == commutator_subgroup_exhaustive(H, K));
    CHECK(elements_of(fast) == brute_commutator(elements_of(H), elements_of(K), 4));
  }
}

TEST_CASE("series examples") {
  auto S4 = whole(4, symmetric_gens(4));
  std::vector<std::size_t> orders;
  for (const auto& t : series(S4, SeriesKind::derived)) orders.push_back(t.order());
  CHECK(orders == std::vector<std::size_t>{24, 12, 4, 1});

  auto UT = whole(27, unitriangular_gens(3, 3));
  orders.clear();
  for (const auto& t : series(UT, SeriesKind::lower_central)) orders.push_back(t.order());
  CHECK(orders == std::vector<std::size_t>{27, 3, 1});

  auto Ab = whole(9, translation_gens(2, 3));
  CHECK(series(Ab, SeriesKind::derived).size() == 2);
  CHECK(lower_central_term(Ab, 2).is_trivial());
  CHECK(is_nilpotent(UT));
  CHECK_FALSE(is_nilpotent(S4));
  CHECK(is_perfect(whole(5, alternating_gens(5))));
}

TEST_CASE("centralizer examples") {
  auto S3 = whole(3, symmetric_gens(3));
  std::vector<Permutation> id{Permutation::identity(3)};
  CHECK(centralizer(S3, id) == S3);
  std::vector<Permutation> c{P("(1 2 3)", 3)};
  CHECK(centralizer(S3, c).order() == 3);
  auto Q8 = whole(8, q8_gens());
  CHECK(centralizer(Q8, Q8).order() == 2);
  std::vector<Permutation> bad{P("(1 2)", 4)};
  CHECK_THROWS_AS(centralizer(S3, bad), InputError);
}

TEST_CASE("normalizer examples") {
  auto S3 = whole(3, symmetric_gens(3));
  CHECK(normalizer(S3, S3) == S3);
  CHECK(normalizer(S3, sub(S3, {P("(1 2)", 3)})).order() == 2);
  auto S4 = whole(4, symmetric_gens(4));
  auto P2 = sylow(S4, 2);
  CHECK(normalizer(S4, P2) == P2);
  auto A4 = sub(S4, alternating_gens(4));
  CHECK_THROWS_AS(normalizer(A4, sub(S4, {P("(1 2)", 4)})), InputError);
}

TEST_CASE("sylow examples") {
  auto S4 = whole(4, symmetric_gens(4));
  CHECK(sylow(S4, 5).is_trivial());
  CHECK(sylow(S4, 2).order() == 8);
  CHECK(sylow(S4, 3).order() == 3);
  auto S3xS3 = whole(6, {P("(1 2 3)", 6), P("(1 2)", 6), P("(4 5 6)", 6), P("(4 5)", 6)});
  CHECK(sylow(S3xS3, 3).order() == 9);
  CHECK_THROWS_AS(sylow(S4, 4), InputError);
  // deterministic
  CHECK(sylow(S4, 2) == sylow(S4, 2));
}

TEST_CASE("quotient examples") {
  auto S3 = whole(3, symmetric_gens(3));
  auto A3 = commutator_subgroup(S3, S3);
  CHECK(quotient(S3.parent(), S3).group->order() == 1);
  CHECK(quotient(S3.parent(), A3).group->order() == 2);
  auto Q8 = whole(8, q8_gens());
  auto Z = commutator_subgroup(Q8, Q8);
  auto Q = quotient(Q8.parent(), Z);
  auto QG = Subgroup::whole(Q.group);
  CHECK(QG.order() == 4);
  CHECK(exponent(QG) == 2);
  CHECK_THROWS_AS(quotient(S3.parent(), sub(S3, {P("(1 2)", 3)})), InputError);
  auto same = quotient(S3.parent(), Subgroup::trivial(S3.parent()));
  CHECK(same.group->order() == 6);
}

TEST_CASE("exponent examples") {
  CHECK(exponent(whole(9, translation_gens(2, 3))) == 3);
  CHECK(exponent(whole(8, q8_gens())) == 4);
  CHECK(exponent(whole(3, symmetric_gens(3))) == 6);
  auto info = exponent_and_orders(whole(8, q8_gens()));
  CHECK(std::set<std::uint64_t>(info.orders.begin(), info.orders.end()) == std::set<std::uint64_t>{1, 2, 4});
}

TEST_CASE("p-group facts") {
  auto Ab = whole(9, translation_gens(2, 3));
  auto f = p_group_facts(Ab, 3);
  CHECK(f.is_p_group);
  CHECK(f.is_powerful == true);
  CHECK(f.frattini->is_trivial());

  auto Q8 = whole(8, q8_gens());
  auto g = p_group_facts(Q8, 2);
  CHECK(g.is_powerful == false);
  CHECK(g.agemo->order() == 2);
  CHECK(g.frattini->order() == 2);

  auto Z9 = whole(9, {P("(1 2 3 4 5 6 7 8 9)", 9)});
  CHECK(p_group_facts(Z9, 3).is_powerful == true);

  auto S3 = whole(3, symmetric_gens(3));
  auto h = p_group_facts(S3, 3);
  CHECK_FALSE(h.is_p_group);
  CHECK_FALSE(h.is_powerful.has_value());
  CHECK_FALSE(h.frattini.has_value());
}

TEST_CASE("nilpotent product check") {
  auto Ab = whole(9, translation_gens(2, 3));
  std::vector<Subgroup> single{Ab};
  CHECK(nilpotent_product_check(Ab, single).passed());
  auto gens = translation_gens(2, 3);
  std::vector<Subgroup> coords{sub(Ab, {gens[0]}), sub(Ab, {gens[1]})};
  CHECK(nilpotent_product_check(Ab, coords).passed());

  auto S3 = whole(3, symmetric_gens(3));
  std::vector<Subgroup> s3parts{S3};
  CHECK(nilpotent_product_check(S3, s3parts).status == Status::not_applicable);

  // UT(3,3): the subgroups of the two root elements generate but their product misses the centre.
  auto UT = whole(27, unitriangular_gens(3, 3));
  auto ug = unitriangular_gens(3, 3);
  std::vector<Subgroup> roots{sub(UT, {ug[0]}), sub(UT, {ug[1]})};
  Verdict v = nilpotent_product_check(UT, roots);
  CHECK(v.status == Status::fail);
  CHECK_FALSE(v.witnesses.empty());
}
