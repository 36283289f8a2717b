#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aspec/errors.hpp"

namespace aspec {

using Point = std::uint32_t;

/**
 * A bijection of {1..n}, stored 0-based.
 *
 * Products act on the right: (g * h)(x) = h(g(x)), so g is applied first.
 * Commutators are [x, y] = x^-1 y^-1 x y.
 */
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  /// Takes 0-based images; throws InputError unless they form a bijection.
  static Permutation from_images(std::vector<Point> images) {
    std::vector<bool> seen(images.size(), false);
    for (Point x : images) {
      if (x >= images.size() || seen[x]) throw InputError("images do not form a bijection");
      seen[x] = true;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Parses disjoint-cycle notation with 1-based points, e.g. "(1 2 3)(4 5)" or "()".
  /// Commas are accepted as separators inside a cycle.
  static Permutation parse(std::string_view text, std::size_t degree) {
    Permutation result(degree);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw InputError("empty cycle string");
    while (i < text.size()) {
      if (text[i] != '(') throw InputError("expected '(' in cycle string: " + std::string(text));
      ++i;
      std::vector<Point> cycle;
      for (;;) {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
        if (i == text.size()) throw InputError("unterminated cycle: " + std::string(text));
        if (text[i] == ')') {
          ++i;
          break;
        }
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
          throw InputError("unexpected character in cycle string: " + std::string(text));
        std::size_t value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          value = value * 10 + static_cast<std::size_t>(text[i] - '0');
          if (value > (std::size_t{1} << 30)) throw InputError("point out of range");
          ++i;
        }
        if (value == 0 || value > degree)
          throw InputError("point " + std::to_string(value) + " outside 1.." + std::to_string(degree));
        cycle.push_back(static_cast<Point>(value - 1));
      }
      // Compose the cycle onto the running product (cycles applied left to right).
      std::vector<bool> in_cycle(degree, false);
      for (Point x : cycle) {
        if (in_cycle[x]) throw InputError("repeated point in cycle: " + std::string(text));
        in_cycle[x] = true;
      }
      if (cycle.size() > 1) {
        Permutation c(degree);
        for (std::size_t k = 0; k < cycle.size(); ++k) c.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
        result = result * c;
      }
      skip_ws();
    }
    return result;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  const std::vector<Point>& images() const noexcept { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& g, const Permutation& h) {
    if (g.degree() != h.degree()) throw InputError("degree mismatch in permutation product");
    Permutation r;
    r.images_.resize(g.degree());
    for (std::size_t x = 0; x < g.degree(); ++x) r.images_[x] = h.images_[g.images_[x]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(degree());
    for (std::size_t x = 0; x < degree(); ++x) r.images_[images_[x]] = static_cast<Point>(x);
    return r;
  }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Permutation acc(degree());
    while (n) {
      if (n & 1u) acc = acc * base;
      base = base * base;
      n >>= 1u;
    }
    return acc;
  }

  /// Order as the lcm of cycle lengths.
  std::uint64_t order() const {
    std::vector<bool> seen(degree(), false);
    std::uint64_t result = 1;
    for (std::size_t x = 0; x < degree(); ++x) {
      if (seen[x]) continue;
      std::uint64_t len = 0;
      for (Point y = static_cast<Point>(x); !seen[y]; y = images_[y]) {
        seen[y] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  std::string to_cycle_string() const {
    std::ostringstream out;
    std::vector<bool> seen(degree(), false);
    bool any = false;
    for (std::size_t x = 0; x < degree(); ++x) {
      if (seen[x] || images_[x] == x) continue;
      any = true;
      out << '(';
      Point y = static_cast<Point>(x);
      bool first = true;
      while (!seen[y]) {
        seen[y] = true;
        if (!first) out << ' ';
        out << (y + 1);
        first = false;
        y = images_[y];
      }
      out << ')';
    }
    return any ? out.str() : "()";
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  /// Lexicographic on image sequences: the canonical element order.
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<Point> images_;
};

inline Permutation commutator(const Permutation& x, const Permutation& y) {
  return x.inverse() * y.inverse() * x * y;
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace aspec
