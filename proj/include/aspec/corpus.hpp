#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aspec/action.hpp"
#include "aspec/group.hpp"
#include "json.hpp"

namespace aspec {

/// Every check a scenario may request, in report order.
inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"centralizer_equalities",
                               "expected_values",
                               "exponent_report",
                               "exponent_report_gamma",
                               "fg2",
                               "invariant_sylow",
                               "lazard",
                               "lie_series",
                               "powerful_exponent"};
    for (int i = 1; i <= 6; ++i) n.push_back("prop32_" + std::to_string(i));
    for (int i = 1; i <= 5; ++i) n.push_back("prop72_" + std::to_string(i));
    n.insert(n.end(), {"quotient_centralizer", "simple_action_cyclic", "sylow_generation", "sylow_generation_gamma"});
    std::sort(n.begin(), n.end());
    return n;
  }();
  return names;
}

inline bool is_check_name(std::string_view name) {
  const auto& n = check_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

/// A value a check must reproduce: `pointer` is a JSON pointer into that check's values.
struct ExpectedValue {
  std::string check;
  std::string pointer;
  nlohmann::json value;
  std::string provenance;

  friend bool operator==(const ExpectedValue&, const ExpectedValue&) = default;
};

struct ScenarioParams {
  /// Largest degree examined by the family checks; unset means "until the series stabilizes".
  std::optional<std::size_t> d;
  std::vector<std::uint64_t> primes;
  std::vector<ExpectedValue> expected;

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

enum class ActionKind { conjugation, images };

/**
 * A self-contained test case: a permutation group, an action of (Z/q)^r on it, and
 * the checks to run. Stored as plain data so that it round-trips through JSON; the
 * group and action are materialized by build().
 */
struct Scenario {
  std::string name;
  std::string family;
  std::size_t degree = 0;
  std::vector<Permutation> group_generators;
  std::uint32_t q = 2;
  std::uint32_t r = 1;
  ActionKind action_kind = ActionKind::conjugation;
  std::vector<Permutation> conjugators;  // conjugation mode
  std::vector<std::vector<std::pair<Permutation, Permutation>>> images;  // images mode
  std::vector<std::string> checks;
  ScenarioParams params;

  CoprimeAction build(std::size_t cap = kDefaultElementCap) const {
    GroupPtr G = close_generators(degree, group_generators, cap);
    if (action_kind == ActionKind::conjugation) return CoprimeAction::by_conjugation(G, q, r, conjugators);
    return CoprimeAction::by_generator_images(G, q, r, images);
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const Scenario& s) {
  using nlohmann::json;
  json gens = json::array();
  for (const auto& g : s.group_generators) gens.push_back(g.to_cycle_string());
  json action;
  if (s.action_kind == ActionKind::conjugation) {
    json c = json::array();
    for (const auto& x : s.conjugators) c.push_back(x.to_cycle_string());
    action = {{"kind", "conjugation"}, {"generators", c}};
  } else {
    json maps = json::array();
    for (const auto& m : s.images) {
      json pairs = json::array();
      for (const auto& [src, dst] : m) pairs.push_back({src.to_cycle_string(), dst.to_cycle_string()});
      maps.push_back(pairs);
    }
    action = {{"kind", "images"}, {"maps", maps}};
  }
  json params = json::object();
  if (s.params.d) params["d"] = *s.params.d;
  if (!s.params.primes.empty()) params["primes"] = s.params.primes;
  if (!s.params.expected.empty()) {
    json ex = json::array();
    for (const auto& e : s.params.expected)
      ex.push_back({{"check", e.check}, {"pointer", e.pointer}, {"value", e.value}, {"provenance", e.provenance}});
    params["expected"] = ex;
  }
  json out = {{"name", s.name},       {"degree", s.degree}, {"group_generators", gens}, {"q", s.q},
              {"r", s.r},             {"action", action},   {"checks", s.checks},       {"params", params}};
  if (!s.family.empty()) out["family"] = s.family;
  return out;
}

/// Parses and structurally validates a scenario document; throws InputError on any defect.
inline Scenario scenario_from_json(const nlohmann::json& j) {
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("scenario is missing \"") + key + "\"");
    return j.at(key);
  };
  try {
    Scenario s;
    s.name = need("name").get<std::string>();
    if (s.name.empty()) throw InputError("scenario name is empty");
    s.family = j.value("family", std::string{});
    s.degree = need("degree").get<std::size_t>();
    if (s.degree == 0) throw InputError("degree must be positive");
    for (const auto& g : need("group_generators")) s.group_generators.push_back(Permutation::parse(g.get<std::string>(), s.degree));
    s.q = need("q").get<std::uint32_t>();
    s.r = need("r").get<std::uint32_t>();
    if (!is_prime(s.q)) throw InputError("q must be prime");
    if (s.r == 0) throw InputError("r must be positive");
    const auto& action = need("action");
    const auto kind = action.at("kind").get<std::string>();
    if (kind == "conjugation") {
      s.action_kind = ActionKind::conjugation;
      for (const auto& x : action.at("generators")) s.conjugators.push_back(Permutation::parse(x.get<std::string>(), s.degree));
    } else if (kind == "images") {
      s.action_kind = ActionKind::images;
      for (const auto& m : action.at("maps")) {
        std::vector<std::pair<Permutation, Permutation>> pairs;
        for (const auto& pr : m) {
          if (!pr.is_array() || pr.size() != 2) throw InputError("image map entries are [source, image] pairs");
          pairs.emplace_back(Permutation::parse(pr[0].get<std::string>(), s.degree),
                             Permutation::parse(pr[1].get<std::string>(), s.degree));
        }
        s.images.push_back(std::move(pairs));
      }
    } else {
      throw InputError("unknown action kind \"" + kind + "\"");
    }
    for (const auto& c : need("checks")) {
      auto name = c.get<std::string>();
      if (name == "all") {
        s.checks = check_names();
        break;
      }
      if (!is_check_name(name)) throw InputError("unknown check \"" + name + "\"");
      s.checks.push_back(name);
    }
    if (j.contains("params")) {
      const auto& p = j.at("params");
      if (!p.is_object()) throw InputError("params must be an object");
      if (p.contains("d")) s.params.d = p.at("d").get<std::size_t>();
      if (p.contains("primes")) s.params.primes = p.at("primes").get<std::vector<std::uint64_t>>();
      if (p.contains("expected"))
        for (const auto& e : p.at("expected")) {
          ExpectedValue ev{e.at("check").get<std::string>(), e.at("pointer").get<std::string>(), e.at("value"),
                           e.at("provenance").get<std::string>()};
          if (!is_check_name(ev.check)) throw InputError("expected value names unknown check \"" + ev.check + "\"");
          if (ev.provenance.empty()) throw InputError("expected value without provenance");
          s.params.expected.push_back(std::move(ev));
        }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed scenario: ") + e.what());
  }
}

inline Scenario parse_scenario(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

// ---------------------------------------------------------------------------
// Builders

/// Square matrix over F_p, row-major.
using IntMatrix = std::vector<std::vector<std::int64_t>>;

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

/// Points of F_p^n are numbered sum_i v_i p^i.
inline std::vector<std::int64_t> point_coords(std::size_t x, std::uint32_t p, std::size_t n) {
  std::vector<std::int64_t> v(n);
  for (std::size_t i = 0; i < n; ++i, x /= p) v[i] = static_cast<std::int64_t>(x % p);
  return v;
}

inline std::size_t point_index(const std::vector<std::int64_t>& v, std::uint32_t p) {
  std::size_t x = 0;
  for (std::size_t i = v.size(); i-- > 0;) x = x * p + static_cast<std::size_t>(mod(v[i], p));
  return x;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

/// The permutation v -> M v + w of F_p^n.
inline Permutation affine_map(const IntMatrix& M, const std::vector<std::int64_t>& w, std::uint32_t p) {
  const std::size_t n = M.size();
  const std::size_t N = ipow(p, n);
  std::vector<Point> images(N);
  for (std::size_t x = 0; x < N; ++x) {
    auto v = point_coords(x, p, n);
    std::vector<std::int64_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t acc = w.empty() ? 0 : w[i];
      for (std::size_t j = 0; j < n; ++j) acc += M[i][j] * v[j];
      out[i] = mod(acc, p);
    }
    images[x] = static_cast<Point>(point_index(out, p));
  }
  try {
    return Permutation::from_images(std::move(images));
  } catch (const InputError&) {
    throw InputError("matrix is not invertible over F_" + std::to_string(p));
  }
}

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix diagonal(std::vector<std::int64_t> d) {
  IntMatrix m = identity_matrix(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

inline std::vector<std::int64_t> unit_vector(std::size_t n, std::size_t k) {
  std::vector<std::int64_t> e(n, 0);
  e[k] = 1;
  return e;
}

/// diag(1,...,1) with -1 at position k.
inline IntMatrix sign_flip(std::size_t n, std::size_t k) {
  std::vector<std::int64_t> d(n, 1);
  d[k] = -1;
  return diagonal(d);
}

}  // namespace detail

/**
 * G = translations of F_p^n acting on its p^n points; each A-generator is a matrix
 * acting on the points, hence by conjugation on the translations. Validates the action.
 */
inline Scenario build_gl_scenario(std::uint32_t p, std::size_t n, std::uint32_t q, const std::vector<IntMatrix>& matrices,
                                  std::string name = "gl", std::size_t cap = kDefaultElementCap) {
  if (!is_prime(p) || !is_prime(q)) throw InputError("p and q must be prime");
  Scenario s;
  s.name = std::move(name);
  s.degree = detail::ipow(p, n);
  s.q = q;
  s.r = static_cast<std::uint32_t>(matrices.size());
  const IntMatrix I = detail::identity_matrix(n);
  for (std::size_t k = 0; k < n; ++k) s.group_generators.push_back(detail::affine_map(I, detail::unit_vector(n, k), p));
  for (const auto& M : matrices) {
    if (M.size() != n) throw InputError("matrix size does not match n");
    s.conjugators.push_back(detail::affine_map(M, {}, p));
  }
  s.checks = check_names();
  s.build(cap);
  return s;
}

/**
 * G = base^copies on disjoint blocks of points; each A-generator permutes the
 * blocks according to a permutation of {1..copies}. Refuses up front when the
 * projected order |base|^copies exceeds the cap.
 */
inline Scenario build_direct_power_scenario(const FiniteGroup& base, std::size_t copies, std::uint32_t q, std::uint32_t r,
                                            const std::vector<Permutation>& coordinate_action,
                                            std::string name = "direct-power", std::size_t cap = kDefaultElementCap) {
  if (copies == 0) throw InputError("need at least one copy");
  if (coordinate_action.size() != r) throw InputError("one coordinate permutation per A-generator is required");
  std::size_t projected = 1;
  for (std::size_t c = 0; c < copies; ++c) {
    if (projected > cap / std::max<std::size_t>(base.order(), 1)) {
      double exact = std::pow(static_cast<double>(base.order()), static_cast<double>(copies));
      std::size_t bound = exact >= static_cast<double>(std::numeric_limits<std::size_t>::max())
                              ? std::numeric_limits<std::size_t>::max()
                              : static_cast<std::size_t>(exact);
      throw OverflowError("direct power of order " + std::to_string(base.order()) + "^" + std::to_string(copies) +
                              " exceeds element cap " + std::to_string(cap),
                          bound);
    }
    projected *= base.order();
  }
  const std::size_t m = base.degree();
  Scenario s;
  s.name = std::move(name);
  s.degree = m * copies;
  s.q = q;
  s.r = r;
  for (std::size_t c = 0; c < copies; ++c)
    for (const auto& g : base.generators()) {
      std::vector<Point> images(s.degree);
      std::iota(images.begin(), images.end(), Point{0});
      for (std::size_t x = 0; x < m; ++x) images[c * m + x] = static_cast<Point>(c * m + g[static_cast<Point>(x)]);
      s.group_generators.push_back(Permutation::from_images(std::move(images)));
    }
  for (const auto& sigma : coordinate_action) {
    if (sigma.degree() != copies) throw InputError("coordinate permutation degree must equal the number of copies");
    std::vector<Point> images(s.degree);
    for (std::size_t c = 0; c < copies; ++c)
      for (std::size_t x = 0; x < m; ++x) images[c * m + x] = static_cast<Point>(sigma[static_cast<Point>(c)] * m + x);
    s.conjugators.push_back(Permutation::from_images(std::move(images)));
  }
  s.checks = check_names();
  s.build(cap);
  return s;
}

// ---------------------------------------------------------------------------
// Built-in suite

namespace detail {

inline Scenario gl_ve(std::size_t n, std::size_t r) {
  std::vector<IntMatrix> mats;
  for (std::size_t k = 0; k < r; ++k) mats.push_back(sign_flip(n, k));
  Scenario s = build_gl_scenario(3, n, 2, mats, "gl-veA-n" + std::to_string(n) + "-r" + std::to_string(r));
  s.family = "gl-veA";
  return s;
}

/// UT(n,3) acting linearly on F_3^n; A flips the sign of the first three coordinates.
inline Scenario ut_heis(std::size_t n) {
  Scenario s;
  s.name = "ut-heis-" + std::to_string(n);
  s.family = "ut-heis";
  s.degree = ipow(3, n);
  s.q = 2;
  s.r = 3;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    IntMatrix M = identity_matrix(n);
    M[i][i + 1] = 1;
    s.group_generators.push_back(affine_map(M, {}, 3));
  }
  for (std::size_t k = 0; k < 3; ++k) s.conjugators.push_back(affine_map(sign_flip(n, k), {}, 3));
  s.checks = check_names();
  return s;
}

/// Exponent-3 extraspecial group of order 27 as affine maps x -> [[1,t],[0,1]] x + w of F_3^2.
inline Scenario extraspecial() {
  Scenario s;
  s.name = "extraspecial";
  s.degree = 9;
  s.q = 2;
  s.r = 2;
  const IntMatrix I = identity_matrix(2);
  s.group_generators = {affine_map(I, {1, 0}, 3), affine_map(I, {0, 1}, 3), affine_map({{1, 1}, {0, 1}}, {}, 3)};
  s.conjugators = {affine_map(sign_flip(2, 0), {}, 3), affine_map(sign_flip(2, 1), {}, 3)};
  s.checks = check_names();
  return s;
}

/// (Z/7)^2 extended by diag(2,4) of order 3, with the two coordinate sign flips.
inline Scenario mixed_solvable() {
  Scenario s;
  s.name = "mixed-solvable";
  s.degree = 49;
  s.q = 2;
  s.r = 2;
  const IntMatrix I = identity_matrix(2);
  s.group_generators = {affine_map(I, {1, 0}, 7), affine_map(I, {0, 1}, 7), affine_map(diagonal({2, 4}), {}, 7)};
  s.conjugators = {affine_map(sign_flip(2, 0), {}, 7), affine_map(sign_flip(2, 1), {}, 7)};
  s.checks = check_names();
  return s;
}

/// Z/9 x Z/9 on two 9-point blocks; A inverts each block separately.
inline Scenario powerful_ab() {
  Scenario s;
  s.name = "powerful-ab";
  s.degree = 18;
  s.q = 2;
  s.r = 2;
  for (std::size_t b = 0; b < 2; ++b) {
    std::vector<Point> rot(18), refl(18);
    std::iota(rot.begin(), rot.end(), Point{0});
    std::iota(refl.begin(), refl.end(), Point{0});
    for (Point j = 0; j < 9; ++j) {
      rot[9 * b + j] = static_cast<Point>(9 * b + (j + 1) % 9);
      refl[9 * b + j] = static_cast<Point>(9 * b + (9 - j) % 9);
    }
    s.group_generators.push_back(Permutation::from_images(rot));
    s.conjugators.push_back(Permutation::from_images(refl));
  }
  s.checks = check_names();
  s.params.expected = {
      {"exponent_report", "/runs/0/m", 9, "hand computation: C_G(a) is one Z/9 factor or trivial"},
      {"exponent_report", "/runs/0/e", 9, "hand computation: exponent of Z/9 x Z/9"},
      {"exponent_report", "/runs/0/asserted", true, "hand computation: abelian groups are powerful"},
  };
  return s;
}

inline Scenario s3_wreath() {
  auto S3 = close_generators(3, {Permutation::parse("(1 2 3)", 3), Permutation::parse("(1 2)", 3)});
  Scenario s = build_direct_power_scenario(*S3, 5, 5, 2,
                                           {Permutation::parse("(1 2 3 4 5)", 5), Permutation::identity(5)},
                                           "s3-wreath");
  s.params.expected = {
      {"exponent_report", "/runs/0/m", 6, "hand computation: the diagonal centralizer is S_3"},
      {"exponent_report", "/runs/0/e", 6, "hand computation: exponent of S_3^5"},
      {"fg2", "/centralizer_orders", nlohmann::json::array({6, 6, 6, 6, 6, 7776}),
       "hand computation: diagonal S_3 for five hyperplanes, all of G for the one acting trivially"},
  };
  return s;
}

inline Scenario a5_trivial() {
  auto A5 = close_generators(5, {Permutation::parse("(1 2 3 4 5)", 5), Permutation::parse("(1 2 3)", 5)});
  Scenario s = build_direct_power_scenario(*A5, 1, 7, 2, {Permutation::identity(1), Permutation::identity(1)},
                                           "a5-trivial");
  return s;
}

}  // namespace detail

/// The fixed suite, sorted by name. Every scenario has been validated.
inline std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> out;
  for (auto [n, r] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 2}, {3, 3}, {4, 3}, {4, 4}})
    out.push_back(detail::gl_ve(n, r));
  out[0].params.expected = {
      {"fg2", "/centralizer_of_A", 1, "hand computation: only 0 is fixed by both sign flips"},
  };
  out.push_back(detail::extraspecial());
  out.push_back(detail::ut_heis(3));
  out.back().params.expected = {
      {"lie_series", "/runs/0/orders", nlohmann::json::array({27, 3, 1}), "hand computation: D_2 = Z(G), D_3 = 1"},
      {"lie_series", "/runs/0/dims", nlohmann::json::array({2, 1}), "hand computation: Heisenberg algebra"},
  };
  out.push_back(detail::ut_heis(4));
  out.push_back(detail::mixed_solvable());
  out.push_back(detail::powerful_ab());
  for (std::size_t i = out.size() - 4; i < out.size(); ++i) out[i].build();
  out.push_back(detail::s3_wreath());
  out.push_back(detail::a5_trivial());
  for (auto& s : out)
    if (s.family.empty()) s.family = s.name;
  std::sort(out.begin(), out.end(), [](const Scenario& a, const Scenario& b) { return a.name < b.name; });
  return out;
}

/// Builtins whose name or family equals `key`.
inline std::vector<Scenario> select_builtin(std::string_view key) {
  std::vector<Scenario> out;
  for (auto& s : builtin_scenarios())
    if (s.name == key || s.family == key) out.push_back(std::move(s));
  return out;
}

}  // namespace aspec
