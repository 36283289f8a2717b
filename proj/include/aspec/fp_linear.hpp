#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "aspec/errors.hpp"

namespace aspec {

using FpVec = std::vector<std::uint32_t>;
/// Row-major; matrix[i] is row i.
using FpMatrix = std::vector<FpVec>;

inline std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
    e >>= 1u;
  }
  return static_cast<std::uint32_t>(result);
}

inline bool is_zero(const FpVec& v) {
  return std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; });
}

inline FpVec fp_add(const FpVec& a, const FpVec& b, std::uint32_t p) {
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

inline FpVec fp_scale(const FpVec& a, std::uint32_t k, std::uint32_t p) {
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint32_t>((std::uint64_t{a[i]} * k) % p);
  return r;
}

inline FpVec fp_apply(const FpMatrix& m, const FpVec& v, std::uint32_t p) {
  FpVec r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += std::uint64_t{m[i][j]} * v[j];
    r[i] = static_cast<std::uint32_t>(acc % p);
  }
  return r;
}

inline FpMatrix fp_mul(const FpMatrix& a, const FpMatrix& b, std::uint32_t p) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  FpMatrix r(n, FpVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t t = 0; t < k; ++t) acc += std::uint64_t{a[i][t]} * b[t][j];
      r[i][j] = static_cast<std::uint32_t>(acc % p);
    }
  return r;
}

inline FpMatrix fp_identity(std::size_t n) {
  FpMatrix r(n, FpVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

inline bool is_zero(const FpMatrix& m) {
  return std::all_of(m.begin(), m.end(), [](const FpVec& row) { return is_zero(row); });
}

/// A subspace of F_p^n kept in reduced row echelon form.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::uint32_t p, std::size_t n) : p_(p), n_(n) {}

  static Subspace full(std::uint32_t p, std::size_t n) {
    Subspace s(p, n);
    for (std::size_t i = 0; i < n; ++i) {
      FpVec e(n, 0);
      e[i] = 1;
      s.insert(e);
    }
    return s;
  }

  std::uint32_t p() const noexcept { return p_; }
  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<FpVec>& basis() const noexcept { return rows_; }

  /// Residual of v after elimination against the echelon rows.
  FpVec reduce(FpVec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint32_t c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] = (v[j] + (p_ - c) * rows_[r][j]) % p_;
    }
    return v;
  }

  bool contains(const FpVec& v) const { return is_zero(reduce(v)); }

  /// Adds v; returns whether the dimension grew.
  bool insert(const FpVec& v) {
    if (v.size() != n_) throw InputError("vector length does not match the ambient dimension");
    FpVec w = reduce(v);
    auto lead = std::find_if(w.begin(), w.end(), [](auto c) { return c != 0; });
    if (lead == w.end()) return false;
    std::size_t piv = static_cast<std::size_t>(lead - w.begin());
    w = fp_scale(w, fp_inverse(*lead, p_), p_);
    for (auto& row : rows_) {
      std::uint32_t c = row[piv];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) row[j] = (row[j] + (p_ - c) * w[j]) % p_;
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
  }

  bool is_subspace_of(const Subspace& other) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const FpVec& v) { return other.contains(v); });
  }

  Subspace intersect(const Subspace& other) const {
    // Solve sum a_i u_i = sum b_j w_j; the u-part of each kernel vector spans the intersection.
    const std::size_t du = dim(), dw = other.dim();
    FpMatrix system(n_, FpVec(du + dw, 0));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t a = 0; a < du; ++a) system[i][a] = rows_[a][i];
      for (std::size_t b = 0; b < dw; ++b) system[i][du + b] = (p_ - other.rows_[b][i]) % p_;
    }
    Subspace result(p_, n_);
    for (const auto& k : kernel(system, du + dw)) {
      FpVec v(n_, 0);
      for (std::size_t a = 0; a < du; ++a) v = fp_add(v, fp_scale(rows_[a], k[a], p_), p_);
      result.insert(v);
    }
    return result;
  }

  Subspace sum(const Subspace& other) const {
    Subspace s = *this;
    for (const auto& v : other.rows_) s.insert(v);
    return s;
  }

  /// Null space basis of a (rows x cols) matrix.
  std::vector<FpVec> kernel(FpMatrix m, std::size_t cols) const {
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
      std::size_t sel = row;
      while (sel < m.size() && m[sel][c] == 0) ++sel;
      if (sel == m.size()) continue;
      std::swap(m[sel], m[row]);
      m[row] = fp_scale(m[row], fp_inverse(m[row][c], p_), p_);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == row || m[i][c] == 0) continue;
        std::uint32_t f = m[i][c];
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + (p_ - f) * m[row][j]) % p_;
      }
      pivot_cols.push_back(c);
      ++row;
    }
    std::vector<FpVec> out;
    for (std::size_t free = 0; free < cols; ++free) {
      if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
      FpVec v(cols, 0);
      v[free] = 1;
      for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = (p_ - m[r][free]) % p_;
      out.push_back(std::move(v));
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  std::uint32_t p_ = 2;
  std::size_t n_ = 0;
  std::vector<FpVec> rows_;
  std::vector<std::size_t> pivots_;
};

/// {v : M v = v} for a square matrix M.
inline Subspace fixed_subspace(const FpMatrix& m, std::uint32_t p) {
  const std::size_t n = m.size();
  FpMatrix shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted[i][i] = (shifted[i][i] + p - 1) % p;
  Subspace s(p, n);
  for (const auto& v : s.kernel(shifted, n)) s.insert(v);
  return s;
}

}  // namespace aspec
