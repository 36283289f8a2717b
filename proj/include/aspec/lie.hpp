#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aspec/action.hpp"
#include "aspec/fp_linear.hpp"
#include "aspec/group_ops.hpp"
#include "aspec/verdict.hpp"

namespace aspec {

/// A descending series terms[0] = G_1 >= G_2 >= ... of a p-group (index i stored at i - 1).
struct NpSeries {
  std::uint32_t p = 2;
  std::vector<Subgroup> terms;

  /// G_i, with G_i = 1 beyond the stored terms.
  Subgroup term(std::size_t i) const {
    if (i >= 1 && i <= terms.size()) return terms[i - 1];
    return Subgroup::trivial(terms.front().parent());
  }

  std::vector<std::size_t> orders() const {
    std::vector<std::size_t> out;
    for (const auto& t : terms) out.push_back(t.order());
    return out;
  }
};

/**
 * Dimension subgroups in characteristic p: D_i = prod over j p^k >= i of
 * gamma_j(P)^{p^k}, listed from D_1 = P until the first trivial term.
 */
inline NpSeries jlz_series(const Subgroup& P, std::uint32_t p) {
  if (!is_prime(p) || !is_power_of(P.order(), p)) throw InputError("jlz_series: not a p-group for p = " + std::to_string(p));
  NpSeries s;
  s.p = p;
  auto gamma = series(P, SeriesKind::lower_central);  // ends with the trivial group
  std::map<std::pair<std::size_t, std::uint64_t>, Subgroup> powers;
  for (std::size_t i = 1;; ++i) {
    std::vector<Subgroup> factors;
    for (std::size_t j = 1; j <= gamma.size(); ++j) {
      const Subgroup& gj = gamma[j - 1];
      if (gj.is_trivial()) break;
      std::uint64_t pk = 1;
      while (j * pk < i) pk *= p;
      if (pk > P.order()) continue;
      auto key = std::make_pair(j, pk);
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, power_subgroup(gj, pk)).first;
      factors.push_back(it->second);
    }
    Subgroup Di = factors.empty() ? Subgroup::trivial(P.parent()) : join(P.parent(), factors);
    s.terms.push_back(Di);
    if (Di.is_trivial()) break;
  }
  return s;
}

/// [G_i, G_j] <= G_{i+j} and G_i^p <= G_{pi} for all stored indices.
inline Verdict validate_np_series(const NpSeries& s) {
  Verdict v;
  const std::size_t L = s.terms.size();
  for (std::size_t i = 1; i <= L; ++i) {
    if (i > 1 && !s.term(i).is_subgroup_of(s.term(i - 1)))
      v.fail("series is not descending at index " + std::to_string(i));
    for (std::size_t j = i; j <= L; ++j) {
      if (!commutator_subgroup(s.term(i), s.term(j)).is_subgroup_of(s.term(i + j)))
        v.fail("[D_" + std::to_string(i) + ", D_" + std::to_string(j) + "] not in D_" + std::to_string(i + j));
    }
    if (!power_subgroup(s.term(i), s.p).is_subgroup_of(s.term(s.p * i)))
      v.fail("D_" + std::to_string(i) + "^p not in D_" + std::to_string(s.p * i));
  }
  return v;
}

/**
 * The graded Lie algebra L = sum_i D_i/D_{i+1} over F_p of an N_p-series.
 *
 * Each component gets a basis of coset representatives chosen greedily in
 * canonical element order; vectors live in the global coordinates obtained by
 * concatenating the components in degree order.
 */
class GradedLieAlgebra {
 public:
  struct Component {
    std::size_t degree = 0;
    std::size_t offset = 0;
    std::vector<ElemId> basis;  // representatives
    std::vector<ElemId> label;  // element of D_i -> coset label
    std::unordered_map<ElemId, FpVec> coords;  // coset label -> local coordinates
    std::size_t dim() const { return basis.size(); }
  };

  explicit GradedLieAlgebra(NpSeries series) : series_(std::move(series)) {
    if (series_.terms.empty()) throw InputError("empty series");
    const auto& G = series_.terms.front().group();
    p_ = series_.p;
    (void)G;
    const std::size_t L = series_.terms.size();
    for (std::size_t i = 1; i < L; ++i) build_component(i);
    dim_ = 0;
    for (auto& c : components_) {
      c.offset = dim_;
      dim_ += c.dim();
    }
    for (auto& c : components_)
      for (std::size_t b = 0; b < c.dim(); ++b) basis_degree_.push_back(c.degree);
    build_brackets();
    verify();
  }

  std::uint32_t p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return dim_; }
  const NpSeries& series() const noexcept { return series_; }
  const std::vector<Component>& components() const noexcept { return components_; }
  const GroupPtr& parent() const { return series_.terms.front().parent(); }
  const FiniteGroup& group() const { return series_.terms.front().group(); }

  /// Dimension of D_i/D_{i+1}, zero outside the series.
  std::size_t component_dim(std::size_t degree) const {
    const Component* c = component(degree);
    return c ? c->dim() : 0;
  }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& c : components_) out.push_back(c.dim());
    return out;
  }

  std::size_t degree_of_basis(std::size_t b) const { return basis_degree_.at(b); }

  /// Global basis representative of basis vector b.
  ElemId basis_rep(std::size_t b) const {
    for (const auto& c : components_)
      if (b < c.offset + c.dim()) return c.basis[b - c.offset];
    throw InputError("basis index out of range");
  }

  FpVec zero() const { return FpVec(dim_, 0); }

  /// Image of x in D_i/D_{i+1} as a global vector; x must lie in D_i.
  FpVec coords(ElemId x, std::size_t degree) const {
    FpVec v = zero();
    if (!series_.term(degree).contains(x))
      throw InputError("element is not in D_" + std::to_string(degree));
    const Component* c = component(degree);
    if (!c || c->dim() == 0) return v;
    const FpVec& local = c->coords.at(c->label[x]);
    for (std::size_t k = 0; k < local.size(); ++k) v[c->offset + k] = local[k];
    return v;
  }

  /// Largest i with x in D_i (0 for the identity).
  std::size_t weight(ElemId x) const {
    if (x == FiniteGroup::identity()) return 0;
    std::size_t i = 1;
    while (i < series_.terms.size() && series_.term(i + 1).contains(x)) ++i;
    return i;
  }

  /// x* = x D_{i+1} for i = weight(x).
  FpVec star(ElemId x) const {
    std::size_t w = weight(x);
    return w == 0 ? zero() : coords(x, w);
  }

  FpVec bracket(const FpVec& u, const FpVec& v) const {
    FpVec out = zero();
    for (std::size_t a = 0; a < dim_; ++a) {
      if (u[a] == 0) continue;
      for (std::size_t b = 0; b < dim_; ++b) {
        if (v[b] == 0) continue;
        std::uint32_t k = static_cast<std::uint32_t>((std::uint64_t{u[a]} * v[b]) % p_);
        out = fp_add(out, fp_scale(table_[a * dim_ + b], k, p_), p_);
      }
    }
    return out;
  }

  const FpVec& basis_bracket(std::size_t a, std::size_t b) const { return table_[a * dim_ + b]; }

  FpVec unit(std::size_t b) const {
    FpVec e = zero();
    e.at(b) = 1;
    return e;
  }

  /// Matrix of ad u : x -> [x, u]; column b holds [e_b, u].
  FpMatrix ad(const FpVec& u) const {
    FpMatrix m(dim_, FpVec(dim_, 0));
    for (std::size_t b = 0; b < dim_; ++b) {
      FpVec col = bracket(unit(b), u);
      for (std::size_t a = 0; a < dim_; ++a) m[a][b] = col[a];
    }
    return m;
  }

  /// Linear map induced on L by an automorphism of the group (element-level map).
  FpMatrix induced(const std::vector<ElemId>& automorphism) const {
    FpMatrix m(dim_, FpVec(dim_, 0));
    for (const auto& c : components_)
      for (std::size_t k = 0; k < c.dim(); ++k) {
        FpVec col = coords(automorphism[c.basis[k]], c.degree);
        for (std::size_t a = 0; a < dim_; ++a) m[a][c.offset + k] = col[a];
      }
    return m;
  }

  nlohmann::json to_json() const {
    nlohmann::json dims_json = nlohmann::json::array();
    for (const auto& c : components_) dims_json.push_back({{"degree", c.degree}, {"dim", c.dim()}});
    nlohmann::json triples = nlohmann::json::array();
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = a + 1; b < dim_; ++b)
        if (!is_zero(table_[a * dim_ + b])) triples.push_back({{"i", a}, {"j", b}, {"coeffs", table_[a * dim_ + b]}});
    return {{"p", p_}, {"dims", dims_json}, {"triples", triples}};
  }

 private:
  static constexpr ElemId kUnset = ~ElemId{0};

  const Component* component(std::size_t degree) const {
    for (const auto& c : components_)
      if (c.degree == degree) return &c;
    return nullptr;
  }

  void build_component(std::size_t i) {
    const auto& G = group();
    const Subgroup top = series_.term(i);
    const Subgroup below = series_.term(i + 1);
    if (!below.is_subgroup_of(top)) throw InputError("series is not descending at " + std::to_string(i));
    for (ElemId a : top.generators()) {
      if (!below.contains(G.pow(a, p_)))
        throw InputError("D_" + std::to_string(i) + "/D_" + std::to_string(i + 1) + " has exponent above p");
      for (ElemId b : top.generators())
        if (!below.contains(G.comm(a, b)))
          throw InputError("D_" + std::to_string(i) + "/D_" + std::to_string(i + 1) + " is not abelian");
    }
    Component comp;
    comp.degree = i;
    comp.label.assign(G.order(), kUnset);
    auto& label = comp.label;
    for (ElemId g : top.elements()) {
      if (label[g] != kUnset) continue;
      for (ElemId n : below.elements()) label[G.mul(g, n)] = g;
    }
    // Greedy basis: span labels grow by multiplying with powers of each new representative.
    std::vector<ElemId> span{FiniteGroup::identity()};
    std::vector<bool> in_span(G.order(), false);
    in_span[label[FiniteGroup::identity()]] = true;
    for (ElemId g : top.elements()) {
      if (in_span[label[g]]) continue;
      comp.basis.push_back(g);
      std::vector<ElemId> grown;
      for (ElemId s : span) {
        ElemId y = s;
        for (std::uint32_t k = 0; k < p_; ++k) {
          if (!in_span[label[y]] || k == 0) {
            in_span[label[y]] = true;
            grown.push_back(y);
          }
          y = G.mul(y, g);
        }
      }
      span = std::move(grown);
    }
    // Coordinates of every coset by enumerating b_1^{c_1} ... b_d^{c_d}.
    const std::size_t d = comp.basis.size();
    FpVec c(d, 0);
    for (;;) {
      ElemId x = FiniteGroup::identity();
      for (std::size_t k = 0; k < d; ++k) x = G.mul(x, G.pow(comp.basis[k], c[k]));
      comp.coords[label[x]] = c;
      std::size_t k = 0;
      while (k < d && ++c[k] == p_) c[k++] = 0;
      if (k == d) break;
    }
    if (comp.coords.size() * below.order() != top.order())
      throw InputError("D_" + std::to_string(i) + "/D_" + std::to_string(i + 1) + " is not elementary abelian");
    components_.push_back(std::move(comp));
  }

  void build_brackets() {
    const auto& G = group();
    table_.assign(dim_ * dim_, zero());
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b) {
        std::size_t deg = basis_degree_[a] + basis_degree_[b];
        ElemId c = G.comm(basis_rep(a), basis_rep(b));
        table_[a * dim_ + b] = coords(c, deg);
      }
  }

  /// Alternation and Jacobi on basis elements, and agreement of the bilinear
  /// bracket with group commutators on every pair of coset representatives.
  void verify() const {
    for (std::size_t a = 0; a < dim_; ++a) {
      if (!is_zero(table_[a * dim_ + a])) throw InternalError("bracket is not alternating");
      for (std::size_t b = 0; b < dim_; ++b)
        for (std::size_t c = 0; c < dim_; ++c) {
          FpVec ea = unit(a), eb = unit(b), ec = unit(c);
          FpVec j = fp_add(fp_add(bracket(bracket(ea, eb), ec), bracket(bracket(eb, ec), ea), p_),
                           bracket(bracket(ec, ea), eb), p_);
          if (!is_zero(j)) throw InternalError("Jacobi identity fails on a basis triple");
        }
    }
    const auto& G = group();
    for (const auto& ci : components_)
      for (const auto& cj : components_) {
        for (const auto& [xl, xv] : ci.coords)
          for (const auto& [yl, yv] : cj.coords) {
            FpVec u = zero(), w = zero();
            for (std::size_t k = 0; k < xv.size(); ++k) u[ci.offset + k] = xv[k];
            for (std::size_t k = 0; k < yv.size(); ++k) w[cj.offset + k] = yv[k];
            if (coords(G.comm(xl, yl), ci.degree + cj.degree) != bracket(u, w))
              throw InternalError("group commutator disagrees with the bilinear bracket");
          }
      }
  }

  NpSeries series_;
  std::uint32_t p_ = 2;
  std::vector<Component> components_;
  std::vector<std::size_t> basis_degree_;
  std::size_t dim_ = 0;
  std::vector<FpVec> table_;
};

inline GradedLieAlgebra graded_algebra(const NpSeries& s) {
  Verdict v = validate_np_series(s);
  if (!v.passed()) throw InputError("not an N_p-series: " + v.witnesses.front());
  return GradedLieAlgebra(s);
}

// ---------------------------------------------------------------------------

/// Smallest subalgebra containing `gens`.
inline Subspace generated_subalgebra(const GradedLieAlgebra& L, const std::vector<FpVec>& gens) {
  Subspace s(L.p(), L.dim());
  for (const auto& g : gens) s.insert(g);
  bool grown = true;
  while (grown) {
    grown = false;
    auto basis = s.basis();
    for (const auto& x : basis)
      for (const auto& y : basis)
        if (s.insert(L.bracket(x, y))) grown = true;
  }
  return s;
}

inline bool is_subalgebra(const GradedLieAlgebra& L, const Subspace& s) {
  for (const auto& x : s.basis())
    for (const auto& y : s.basis())
      if (!s.contains(L.bracket(x, y))) return false;
  return true;
}

/// L_p(G): the subalgebra generated by the degree-1 component.
inline Subspace lp_subalgebra(const GradedLieAlgebra& L) {
  std::vector<FpVec> gens;
  for (std::size_t b = 0; b < L.component_dim(1); ++b) gens.push_back(L.unit(b));
  return generated_subalgebra(L, gens);
}

enum class SubalgebraMode { full, lp };

/**
 * L(G, H): span of h D_{i+1} for h in D_i cap H over all i; in lp mode the
 * intersection with L_p(G). Closure under the bracket is verified.
 */
inline Subspace subalgebra_from_subgroup(const GradedLieAlgebra& L, const Subgroup& H, SubalgebraMode mode) {
  if (H.parent() != L.parent()) throw InputError("subgroup does not live in the algebra's group");
  Subspace s(L.p(), L.dim());
  for (const auto& c : L.components()) {
    Subgroup Di = L.series().term(c.degree);
    for (ElemId h : H.elements())
      if (Di.contains(h)) s.insert(L.coords(h, c.degree));
  }
  if (!is_subalgebra(L, s)) throw InternalError("L(G, H) is not closed under the bracket");
  if (mode == SubalgebraMode::lp) s = lp_subalgebra(L).intersect(s);
  return s;
}

/**
 * Lazard: (ad x*)^p = ad (x^p)* where (x^p)* is read in degree p * weight(x), and
 * x* is ad-nilpotent of index at most order(x). Runs over the basis representatives,
 * or over every nonidentity element when `all_elements` is set.
 */
inline Verdict lazard_check(const GradedLieAlgebra& L, bool all_elements = false) {
  const auto& G = L.group();
  std::vector<ElemId> subjects;
  if (all_elements) {
    for (ElemId x : L.series().terms.front().elements())
      if (x != FiniteGroup::identity()) subjects.push_back(x);
  } else {
    for (std::size_t b = 0; b < L.dim(); ++b) subjects.push_back(L.basis_rep(b));
  }
  Verdict v;
  std::size_t max_index = 0;
  nlohmann::json indices = nlohmann::json::array();
  for (ElemId x : subjects) {
    const std::size_t w = L.weight(x);
    FpMatrix ad_x = L.ad(L.star(x));
    FpMatrix power = fp_identity(L.dim());
    for (std::uint32_t k = 0; k < L.p(); ++k) power = fp_mul(power, ad_x, L.p());
    ElemId xp = G.pow(x, L.p());
    if (!L.series().term(L.p() * w).contains(xp)) {
      v.fail("x^p not in D_{p i} for x = " + G.element(x).to_cycle_string());
      continue;
    }
    FpMatrix rhs = L.ad(L.coords(xp, L.p() * w));
    if (power != rhs) v.fail("(ad x*)^p != ad (x^p)* for x = " + G.element(x).to_cycle_string());

    std::size_t index = 1;
    FpMatrix iter = ad_x;
    while (!is_zero(iter) && index <= L.dim() + 1) {
      iter = fp_mul(iter, ad_x, L.p());
      ++index;
    }
    std::uint64_t ord = G.element_order(x);
    if (!is_zero(iter) || index > ord)
      v.fail("ad-nilpotency index of x* exceeds order " + std::to_string(ord) + " for x = " +
             G.element(x).to_cycle_string());
    max_index = std::max(max_index, index);
    if (!all_elements) indices.push_back({{"degree", w}, {"order", ord}, {"index", index}});
  }
  v.values["checked"] = subjects.size();
  v.values["max_index"] = max_index;
  if (!all_elements) v.values["basis"] = indices;
  return v;
}

/**
 * For every a in A^#: C_L(a) equals the sum of (D_i cap C_G(a))D_{i+1}/D_{i+1},
 * and C_{L_p}(a) equals L_p(G, C_G(a)). The action must be on the algebra's group.
 */
inline Verdict centralizer_equalities(const GradedLieAlgebra& L, const CoprimeAction& action) {
  if (action.target() != L.parent()) throw InputError("action does not act on the algebra's group");
  if (!(L.series().terms.front() == Subgroup::whole(action.target())))
    throw InputError("the series must start at the acted-on group");
  if (action.q() == L.p()) throw InputError("action is not coprime to p");
  Subspace Lp = lp_subalgebra(L);
  Verdict v;
  nlohmann::json dims = nlohmann::json::array();
  for (AVec a : action.nontrivial_elements()) {
    Subspace fixed = fixed_subspace(L.induced(action.map(a)), L.p());
    Subgroup Ca = fixed_points(action, a);
    Subspace from_group = subalgebra_from_subgroup(L, Ca, SubalgebraMode::full);
    const std::string tag = "a = " + action.A().to_string(a) + ": ";
    if (!(fixed == from_group)) v.fail(tag + "C_L(a) differs from the image of C_G(a)");
    Subspace lhs = Lp.intersect(fixed);
    Subspace rhs = subalgebra_from_subgroup(L, Ca, SubalgebraMode::lp);
    if (!(lhs == rhs)) v.fail(tag + "C_{L_p}(a) differs from L_p(G, C_G(a))");
    dims.push_back(fixed.dim());
  }
  v.values["fixed_dims"] = dims;
  return v;
}

// ---------------------------------------------------------------------------

/**
 * A Lie polynomial: a sum of bracket monomials with F_p coefficients over
 * variables x1..xn. Parsed from text such as "[[x1,x2],[x3,x4]]" or
 * "[x1,x2] - 2[x2,x1]".
 */
class LiePolynomial {
 public:
  struct Node {
    int var = -1;  // >= 0 for a leaf
    int left = -1;
    int right = -1;
  };
  struct Monomial {
    long long coeff = 1;
    std::vector<Node> nodes;  // root is the last node
  };

  static LiePolynomial parse(std::string_view text) {
    LiePolynomial f;
    std::size_t i = 0;
    auto ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    long long sign = 1;
    ws();
    if (i < text.size() && text[i] == '-') {
      sign = -1;
      ++i;
    }
    for (;;) {
      ws();
      long long coeff = 1;
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coeff = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) coeff = coeff * 10 + (text[i++] - '0');
        ws();
        if (i < text.size() && text[i] == '*') ++i;
        ws();
      }
      Monomial m;
      m.coeff = sign * coeff;
      parse_term(text, i, m.nodes);
      f.monomials_.push_back(std::move(m));
      ws();
      if (i == text.size()) break;
      if (text[i] == '+') sign = 1;
      else if (text[i] == '-') sign = -1;
      else throw InputError("unexpected character in Lie polynomial: " + std::string(text));
      ++i;
    }
    f.vars_ = 0;
    for (const auto& m : f.monomials_)
      for (const auto& n : m.nodes)
        if (n.var >= 0) f.vars_ = std::max(f.vars_, static_cast<std::size_t>(n.var) + 1);
    return f;
  }

  std::size_t variables() const noexcept { return vars_; }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }

  /// Every monomial uses each variable exactly once.
  bool is_multilinear() const {
    for (const auto& m : monomials_) {
      std::vector<int> count(vars_, 0);
      for (const auto& n : m.nodes)
        if (n.var >= 0) ++count[n.var];
      for (int c : count)
        if (c != 1) return false;
    }
    return true;
  }

  FpVec evaluate(const GradedLieAlgebra& L, const std::vector<FpVec>& args) const {
    FpVec total = L.zero();
    for (const auto& m : monomials_) {
      std::vector<FpVec> val(m.nodes.size());
      for (std::size_t k = 0; k < m.nodes.size(); ++k) {
        const Node& n = m.nodes[k];
        val[k] = n.var >= 0 ? args.at(n.var) : L.bracket(val[n.left], val[n.right]);
      }
      long long c = ((m.coeff % static_cast<long long>(L.p())) + L.p()) % L.p();
      total = fp_add(total, fp_scale(val.back(), static_cast<std::uint32_t>(c), L.p()), L.p());
    }
    return total;
  }

 private:
  static void parse_term(std::string_view text, std::size_t& i, std::vector<Node>& nodes) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) throw InputError("truncated Lie polynomial");
    if (text[i] == 'x') {
      ++i;
      int v = 0;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) throw InputError("bad variable");
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      if (v < 1) throw InputError("variables are numbered from x1");
      nodes.push_back(Node{v - 1, -1, -1});
      return;
    }
    if (text[i] != '[') throw InputError("expected '[' or variable in Lie polynomial");
    ++i;
    parse_term(text, i, nodes);
    int left = static_cast<int>(nodes.size()) - 1;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != ',') throw InputError("expected ',' in Lie bracket");
    ++i;
    parse_term(text, i, nodes);
    int right = static_cast<int>(nodes.size()) - 1;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != ']') throw InputError("expected ']' in Lie bracket");
    ++i;
    nodes.push_back(Node{-1, left, right});
  }

  std::vector<Monomial> monomials_;
  std::size_t vars_ = 0;
};

/**
 * Checks a multilinear identity on every tuple of basis vectors of `where`
 * (the whole algebra when empty); multilinearity makes this complete.
 */
inline Verdict satisfies_multilinear_identity(const GradedLieAlgebra& L, const LiePolynomial& f,
                                              const std::optional<Subspace>& where = std::nullopt) {
  if (!f.is_multilinear()) throw InputError("identity is not multilinear");
  std::vector<FpVec> basis = where ? where->basis() : Subspace::full(L.p(), L.dim()).basis();
  Verdict v;
  const std::size_t n = f.variables();
  if (basis.empty()) return v;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<FpVec> args;
    for (auto k : idx) args.push_back(basis[k]);
    if (!is_zero(f.evaluate(L, args))) {
      std::string w = "basis tuple (";
      for (std::size_t k = 0; k < n; ++k) w += (k ? "," : "") + std::to_string(idx[k] + 1);
      v.fail(w + ")");
      return v;
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == basis.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return v;
}

/// Smallest u with [L, K, ..., K] (u copies) = 0, or nullopt if the iteration never vanishes.
inline std::optional<std::size_t> annihilation_index(const GradedLieAlgebra& L, const Subspace& K) {
  Subspace W = Subspace::full(L.p(), L.dim());
  for (std::size_t u = 1; u <= L.dim() + 1; ++u) {
    Subspace next(L.p(), L.dim());
    for (const auto& w : W.basis())
      for (const auto& k : K.basis()) next.insert(L.bracket(w, k));
    if (next.dim() == 0) return u;
    if (next == W) return std::nullopt;
    W = std::move(next);
  }
  return std::nullopt;
}

/// A powerful p-group generated by elements of order dividing e has exponent dividing e.
inline Verdict powerful_exponent_check(const Subgroup& P, const std::vector<ElemId>& gens, std::uint64_t e) {
  auto primes = prime_divisors(P.order());
  if (primes.size() > 1) return Verdict::not_applicable("not a p-group");
  if (primes.empty()) return Verdict{};
  auto facts = p_group_facts(P, primes[0]);
  if (!facts.is_powerful.value_or(false)) return Verdict::not_applicable("not powerful");
  for (ElemId g : gens) {
    if (!P.contains(g)) throw InputError("generator outside P");
    if (e % P.group().element_order(g) != 0) throw InputError("generator order does not divide e");
  }
  if (!(Subgroup::generated(P.parent(), gens) == P)) throw InputError("generators do not generate P");
  Verdict v;
  std::uint64_t exp = exponent(P);
  v.values["exponent"] = exp;
  v.values["e"] = e;
  if (e % exp != 0) v.fail("exponent " + std::to_string(exp) + " does not divide e = " + std::to_string(e));
  return v;
}

}  // namespace aspec
