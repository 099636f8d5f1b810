#ifndef FORMALFLOWS_MONOMIAL_HPP
#define FORMALFLOWS_MONOMIAL_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "formalflows/error.hpp"

namespace formalflows {

/// A monic monomial x^i in d variables: the exponent multi-index.
struct Monomial {
  std::vector<int> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}

  /// The unit monomial 1 in dimension d.
  static Monomial unit(int d) { return Monomial(std::vector<int>(d, 0)); }

  /// x_{i+1} (0-based index i) in dimension d.
  static Monomial var(int d, int i) {
    std::vector<int> e(d, 0);
    e[i] = 1;
    return Monomial(std::move(e));
  }

  int dim() const { return static_cast<int>(exponents.size()); }
  int degree() const {
    return std::accumulate(exponents.begin(), exponents.end(), 0);
  }
  bool is_unit() const { return degree() == 0; }

  bool operator==(const Monomial&) const = default;

  std::string str() const {
    if (is_unit()) return "1";
    std::string out;
    for (int i = 0; i < dim(); ++i) {
      if (exponents[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(i + 1);
      if (exponents[i] > 1) out += "^" + std::to_string(exponents[i]);
    }
    return out;
  }
};

inline void check_same_dim(const Monomial& a, const Monomial& b) {
  if (a.dim() != b.dim())
    throw precondition_error("monomial dimension mismatch");
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  check_same_dim(a, b);
  Monomial r = a;
  for (int i = 0; i < r.dim(); ++i) r.exponents[i] += b.exponents[i];
  return r;
}

inline bool mono_divides(const Monomial& m, const Monomial& p) {
  check_same_dim(m, p);
  for (int i = 0; i < m.dim(); ++i)
    if (m.exponents[i] > p.exponents[i]) return false;
  return true;
}

inline Monomial mono_div(const Monomial& p, const Monomial& m) {
  if (!mono_divides(m, p))
    throw precondition_error("monomial division: " + m.str() +
                             " does not divide " + p.str());
  Monomial r = p;
  for (int i = 0; i < r.dim(); ++i) r.exponents[i] -= m.exponents[i];
  return r;
}

/// Highest common factor of a nonempty set: componentwise exponent minimum.
template <typename Range>
Monomial mono_hcf(const Range& monomials) {
  auto it = std::begin(monomials);
  if (it == std::end(monomials))
    throw precondition_error("hcf of empty monomial set");
  Monomial r = *it;
  for (++it; it != std::end(monomials); ++it) {
    check_same_dim(r, *it);
    for (int i = 0; i < r.dim(); ++i)
      r.exponents[i] = std::min(r.exponents[i], it->exponents[i]);
  }
  return r;
}

/// Graded lexicographic order: lower total degree first; within a degree,
/// lexicographically larger exponent vector first (x1^2 before x1*x2).
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exponents > b.exponents;
  }
};

}  // namespace formalflows

#endif
