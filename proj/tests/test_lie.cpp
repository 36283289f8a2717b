#include <catch2/catch_amalgamated.hpp>

#include "aspec/corpus.hpp"
#include "aspec/lie.hpp"
#include "support.hpp"

using namespace aspec;
using namespace testing_support;

namespace {

Subgroup q8() { return Subgroup::whole(close_generators(8, q8_gens())); }

ElemId id_in(const Subgroup& G, const Permutation& x) { return G.group().id_of(x); }

/// Subgroup generated by all commutators and p-th powers, from raw images.
std::set<Images> brute_frattini(const std::set<Images>& G, std::size_t n, std::uint64_t p) {
  std::vector<Images> gens;
  for (const auto& x : G) {
    Images y = ident(n);
    for (std::uint64_t k = 0; k < p; ++k) y = compose(y, x);
    gens.push_back(y);
    for (const auto& z : G) gens.push_back(comm(x, z));
  }
  return closure(gens, n);
}

}  // namespace

TEST_CASE("series and algebra of Q8") {
  Subgroup G = q8();
  auto s = jlz_series(G, 2);
  CHECK(s.orders() == std::vector<std::size_t>{8, 2, 1});
  CHECK(elements_of(s.term(2)) == brute_frattini(elements_of(G), 8, 2));
  CHECK(s.term(7).is_trivial());
  CHECK(validate_np_series(s).passed());

  auto L = graded_algebra(s);
  CHECK(L.dims() == std::vector<std::size_t>{2, 1});
  CHECK(L.dim() == 3);
  ElemId i = id_in(G, q8_element(1)), j = id_in(G, q8_element(2)), minus = id_in(G, q8_element(0, true));
  CHECK(L.weight(i) == 1);
  CHECK(L.weight(minus) == 2);
  CHECK(L.weight(FiniteGroup::identity()) == 0);
  FpVec b = L.bracket(L.star(i), L.star(j));
  CHECK_FALSE(is_zero(b));
  CHECK(b == L.star(minus));
  CHECK(L.bracket(L.star(i), L.star(i)) == L.zero());
}

TEST_CASE("Heisenberg algebra from UT(3,3)") {
  Subgroup G = Subgroup::whole(close_generators(27, unitriangular_gens(3, 3)));
  auto L = graded_algebra(jlz_series(G, 3));
  CHECK(L.series().orders() == std::vector<std::size_t>{27, 3, 1});
  CHECK(L.dims() == std::vector<std::size_t>{2, 1});
  // [e1, e2] spans the degree-2 line and the line is central
  FpVec c = L.basis_bracket(0, 1);
  CHECK(c[0] == 0);
  CHECK(c[1] == 0);
  CHECK(c[2] != 0);
  CHECK(L.basis_bracket(1, 0) == fp_scale(c, 2, 3));
  for (std::size_t a = 0; a < 3; ++a) CHECK(is_zero(L.basis_bracket(a, 2)));
  CHECK(L.degree_of_basis(0) == 1);
  CHECK(L.degree_of_basis(2) == 2);
}

TEST_CASE("bracket agrees with group commutators") {
  for (const auto& name : {"ut-heis-4", "extraspecial"}) {
    auto act = select_builtin(name).at(0).build();
    Subgroup G = Subgroup::whole(act.target());
    auto L = graded_algebra(jlz_series(G, 3));
    const auto& grp = L.group();
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      ElemId x = std::uniform_int_distribution<ElemId>(0, grp.order() - 1)(rng);
      ElemId y = std::uniform_int_distribution<ElemId>(0, grp.order() - 1)(rng);
      std::size_t i = std::max<std::size_t>(L.weight(x), 1), j = std::max<std::size_t>(L.weight(y), 1);
      ElemId c = grp.id_of(commutator(grp.element(x), grp.element(y)));
      REQUIRE(L.series().term(i + j).contains(c));
      FpVec lhs = L.bracket(L.coords(x, i), L.coords(y, j));
      FpVec rhs = L.series().term(i + j).is_trivial() ? L.zero() : L.coords(c, i + j);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("Jacobi and alternation on every basis triple") {
  auto act = select_builtin("ut-heis-4").at(0).build();
  auto L = graded_algebra(jlz_series(Subgroup::whole(act.target()), 3));
  const std::uint32_t p = L.p();
  for (std::size_t a = 0; a < L.dim(); ++a) {
    CHECK(is_zero(L.basis_bracket(a, a)));
    for (std::size_t b = 0; b < L.dim(); ++b)
      for (std::size_t c = 0; c < L.dim(); ++c) {
        FpVec x = L.unit(a), y = L.unit(b), z = L.unit(c);
        FpVec sum = fp_add(fp_add(L.bracket(L.bracket(x, y), z), L.bracket(L.bracket(y, z), x), p),
                           L.bracket(L.bracket(z, x), y), p);
        CHECK(is_zero(sum));
      }
  }
  std::size_t total = 0;
  for (auto d : L.dims()) total += d;
  CHECK(total == 6);
}

TEST_CASE("a corrupted series is rejected") {
  Subgroup G = q8();
  NpSeries bad{2, {G, Subgroup::generated(G.parent(), {id_in(G, q8_element(1))}), Subgroup::trivial(G.parent())}};
  CHECK_FALSE(validate_np_series(bad).passed());
  CHECK_THROWS_AS(graded_algebra(bad), InputError);
  NpSeries rising{2, {Subgroup::trivial(G.parent()), G}};
  CHECK_FALSE(validate_np_series(rising).passed());
  CHECK_THROWS_AS(jlz_series(Subgroup::whole(close_generators(3, symmetric_gens(3))), 3), InputError);
}

TEST_CASE("abelian groups give abelian algebras") {
  Subgroup G = Subgroup::whole(close_generators(9, translation_gens(2, 3)));
  auto L = graded_algebra(jlz_series(G, 3));
  CHECK(L.dims() == std::vector<std::size_t>{2});
  for (std::size_t a = 0; a < L.dim(); ++a)
    for (std::size_t b = 0; b < L.dim(); ++b) CHECK(is_zero(L.basis_bracket(a, b)));
  CHECK(L.to_json()["triples"].empty());
}

TEST_CASE("subalgebras from subgroups") {
  Subgroup G = q8();
  auto L = graded_algebra(jlz_series(G, 2));
  Subgroup Z = centralizer(G, G);
  Subspace LZ = subalgebra_from_subgroup(L, Z, SubalgebraMode::full);
  CHECK(LZ.dim() == 1);
  CHECK(LZ.contains(L.star(id_in(G, q8_element(0, true)))));
  CHECK(lp_subalgebra(L).dim() == 3);
  CHECK(subalgebra_from_subgroup(L, G, SubalgebraMode::lp).dim() == 3);
  Subgroup I = Subgroup::generated(G.parent(), {id_in(G, q8_element(1))});
  CHECK(subalgebra_from_subgroup(L, I, SubalgebraMode::full).dim() == 2);
  CHECK(is_subalgebra(L, generated_subalgebra(L, {L.unit(0)})));
  CHECK(generated_subalgebra(L, {L.unit(0), L.unit(1)}).dim() == 3);
}

TEST_CASE("Lazard relation") {
  Subgroup G = q8();
  auto L = graded_algebra(jlz_series(G, 2));
  Verdict v = lazard_check(L);
  CHECK(v.passed());
  CHECK(v.values["max_index"] == 2);
  for (const auto& rec : v.values["basis"])
    if (rec["degree"] == 1) CHECK(rec["index"] == 2);
  CHECK(lazard_check(L, true).passed());
  CHECK(lazard_check(L, true).values["checked"] == 7);

  auto act = select_builtin("ut-heis-4").at(0).build();
  auto L4 = graded_algebra(jlz_series(Subgroup::whole(act.target()), 3));
  CHECK(lazard_check(L4, true).passed());
}

TEST_CASE("centralizer equalities") {
  Subgroup G = q8();
  auto gens = q8_gens();
  // i -> j -> k -> i has order 3
  std::vector<std::vector<std::pair<Permutation, Permutation>>> cyc{{{gens[0], gens[1]}, {gens[1], q8_element(3)}}};
  auto act = CoprimeAction::by_generator_images(G.parent(), 3, 1, cyc);
  auto L = graded_algebra(jlz_series(G, 2));
  Verdict v = centralizer_equalities(L, act);
  CHECK(v.passed());
  CHECK(v.values["fixed_dims"] == nlohmann::json::array({1, 1}));

  auto triv = CoprimeAction::by_conjugation(G.parent(), 3, 1, {Permutation::identity(8)});
  CHECK(centralizer_equalities(L, triv).values["fixed_dims"] == nlohmann::json::array({3, 3}));

  auto T = close_generators(9, translation_gens(2, 3));
  auto neg = CoprimeAction::by_conjugation(T, 2, 1, {affine(diag({-1, -1}), {}, 3)});
  auto LT = graded_algebra(jlz_series(Subgroup::whole(T), 3));
  Verdict w = centralizer_equalities(LT, neg);
  CHECK(w.passed());
  CHECK(w.values["fixed_dims"] == nlohmann::json::array({0}));

  CHECK_THROWS_AS(centralizer_equalities(LT, act), InputError);
}

TEST_CASE("Lie polynomial parsing") {
  auto f = LiePolynomial::parse("[[x1,x2],[x3,x4]]");
  CHECK(f.variables() == 4);
  CHECK(f.is_multilinear());
  CHECK(LiePolynomial::parse("2[x1,x2] - [x2,x1]").variables() == 2);
  CHECK_FALSE(LiePolynomial::parse("[x1,x1]").is_multilinear());
  CHECK_THROWS_AS(LiePolynomial::parse("[x1,"), InputError);
  CHECK_THROWS_AS(LiePolynomial::parse("[x0,x1]"), InputError);
  CHECK_THROWS_AS(LiePolynomial::parse(""), InputError);
}

TEST_CASE("multilinear identities") {
  auto L = graded_algebra(jlz_series(q8(), 2));
  CHECK(satisfies_multilinear_identity(L, LiePolynomial::parse("[[x1,x2],[x3,x4]]")).passed());
  CHECK(satisfies_multilinear_identity(L, LiePolynomial::parse("[x1,x2] + [x2,x1]")).passed());
  Verdict v = satisfies_multilinear_identity(L, LiePolynomial::parse("[x1,x2]"));
  REQUIRE(v.status == Status::fail);
  // tuples run with the first slot fastest; (1,1) vanishes, (2,1) does not
  CHECK(v.witnesses.front() == "basis tuple (2,1)");
  Subspace centre(2, 3);
  centre.insert(L.unit(2));
  CHECK(satisfies_multilinear_identity(L, LiePolynomial::parse("[x1,x2]"), centre).passed());
  CHECK_THROWS_AS(satisfies_multilinear_identity(L, LiePolynomial::parse("[x1,[x1,x2]]")), InputError);
}

TEST_CASE("annihilation index") {
  auto L = graded_algebra(jlz_series(q8(), 2));
  CHECK(annihilation_index(L, Subspace::full(2, 3)) == std::optional<std::size_t>(2));
  Subspace centre(2, 3);
  centre.insert(L.unit(2));
  CHECK(annihilation_index(L, centre) == std::optional<std::size_t>(1));
  auto A = graded_algebra(jlz_series(Subgroup::whole(close_generators(9, translation_gens(2, 3))), 3));
  CHECK(annihilation_index(A, Subspace::full(3, 2)) == std::optional<std::size_t>(1));
}

TEST_CASE("powerful exponent") {
  auto act = select_builtin("powerful-ab").at(0).build();
  Subgroup P = Subgroup::whole(act.target());
  std::vector<ElemId> gens;
  for (const auto& g : P.group().generators()) gens.push_back(P.group().id_of(g));
  Verdict v = powerful_exponent_check(P, gens, 9);
  CHECK(v.passed());
  CHECK(v.values["exponent"] == 9);
  CHECK_THROWS_AS(powerful_exponent_check(P, gens, 3), InputError);
  Subgroup Q = q8();
  CHECK(powerful_exponent_check(Q, {id_in(Q, q8_element(1)), id_in(Q, q8_element(2))}, 4).status ==
        Status::not_applicable);
  Subgroup S3 = Subgroup::whole(close_generators(3, symmetric_gens(3)));
  CHECK(powerful_exponent_check(S3, {}, 6).status == Status::not_applicable);
}

TEST_CASE("algebra JSON export") {
  auto L = graded_algebra(jlz_series(q8(), 2));
  auto j = L.to_json();
  CHECK(j["p"] == 2);
  CHECK(j["dims"] == nlohmann::json::parse(R"([{"degree":1,"dim":2},{"degree":2,"dim":1}])"));
  REQUIRE(j["triples"].size() == 1);
  CHECK(j["triples"][0]["i"] == 0);
  CHECK(j["triples"][0]["j"] == 1);
  CHECK(j["triples"][0]["coeffs"] == nlohmann::json::array({0, 0, 1}));
}
