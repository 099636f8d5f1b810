#ifndef FORMALFLOWS_FRACITER_HPP
#define FORMALFLOWS_FRACITER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "formalflows/cadic.hpp"
#include "formalflows/map.hpp"
#include "formalflows/sumfn.hpp"

namespace formalflows {

namespace detail {

/// Newton (divided-difference) form of the unique polynomial of degree < n
/// through the points (0, v_0), ..., (n-1, v_{n-1}) over Q.  Exact
/// evaluation at any rational.
class NewtonPoly {
 public:
  explicit NewtonPoly(std::vector<Value> values) : coeffs_(std::move(values)) {
    const Ring Q = Ring::Q();
    // in-place divided-difference table at nodes 0..n-1
    const std::size_t n = coeffs_.size();
    for (std::size_t level = 1; level < n; ++level) {
      Value inv = Value::from_integer(Q, static_cast<std::int64_t>(level))
                      .unit_inverse();
      for (std::size_t i = n - 1; i >= level; --i)
        coeffs_[i] = (coeffs_[i] - coeffs_[i - 1]) * inv;
    }
  }

  Value eval(const Value& t) const {
    const Ring Q = Ring::Q();
    Value acc = Value::zero(Q);
    Value prod = Value::one(Q);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      acc = acc + coeffs_[j] * prod;
      prod = prod * (t - Value::from_integer(Q, static_cast<std::int64_t>(j)));
    }
    return acc;
  }

  /// Degree of the interpolated polynomial (index of last nonzero Newton
  /// coefficient); -1 for the zero polynomial.
  int degree() const {
    for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j)
      if (!coeffs_[j].is_zero()) return j;
    return -1;
  }

  const std::vector<Value>& newton_coeffs() const { return coeffs_; }

 private:
  std::vector<Value> coeffs_;
};

inline void require_tangent_char0(const FormalMap& g, const char* what) {
  if (!g.ring().char_zero())
    throw precondition_error(std::string(what) +
                             " needs characteristic 0 (see the c-adic path "
                             "for finite characteristic)");
  if (!g.is_tangent_identity())
    throw precondition_error(std::string(what) +
                             " needs a map tangent to the identity");
}

/// Iterates g^0, ..., g^{count-1} over the fraction field.
inline std::vector<FormalMap> iterate_table(const FormalMap& g, int count) {
  FormalMap gq = g.ring() == Ring::Q() ? g : g.to_fraction_field();
  std::vector<FormalMap> table;
  table.reserve(count);
  table.push_back(FormalMap::identity(gq.ring(), gq.dim(), gq.cap()));
  for (int k = 1; k < count; ++k)
    table.push_back(compose(gq, table.back()));
  return table;
}

}  // namespace detail

/// The interpolated coefficient polynomial P_m(t) of a tangent map: one
/// polynomial of degree < deg(m) per component, with P_m(k) equal to the
/// m-th coefficient vector of g^k.  Nodes are k = 0..deg(m)-1, the minimum
/// the uniqueness theorem permits, so agreement at later k is a genuine
/// prediction rather than part of the fit.
class CoeffPoly {
 public:
  CoeffPoly(Monomial m, std::vector<detail::NewtonPoly> per_component)
      : m_(std::move(m)), polys_(std::move(per_component)) {}

  const Monomial& monomial() const { return m_; }
  int components() const { return static_cast<int>(polys_.size()); }

  Value eval(int component, const Value& alpha) const {
    return polys_[component].eval(alpha);
  }

  /// Max degree across components; -1 when the coefficient vanishes
  /// identically on the nodes.
  int degree() const {
    int d = -1;
    for (const auto& p : polys_) d = std::max(d, p.degree());
    return d;
  }

 private:
  Monomial m_;
  std::vector<detail::NewtonPoly> polys_;
};

/// Interpolates P_m through the deg(m) points (k, (g^k)_m), k = 0..deg(m)-1.
inline CoeffPoly coeff_poly(const FormalMap& g, const Monomial& m) {
  detail::require_tangent_char0(g, "coeff_poly");
  int s = m.degree();
  if (s < 1 || s > g.cap())
    throw precondition_error("coeff_poly: monomial degree out of range");
  auto iterates = detail::iterate_table(g, s);
  std::vector<detail::NewtonPoly> polys;
  for (int j = 0; j < g.dim(); ++j) {
    std::vector<Value> vals;
    vals.reserve(s);
    for (int k = 0; k < s; ++k)
      vals.push_back(iterates[k].component(j).coeff(m));
    polys.emplace_back(std::move(vals));
  }
  return CoeffPoly(m, std::move(polys));
}

/// g^(alpha) = sum_m P_m(alpha) m over the fraction field, for a tangent
/// map over a char-0 ring and rational alpha.
inline FormalMap frac_iterate(const FormalMap& g, const Value& alpha) {
  detail::require_tangent_char0(g, "frac_iterate");
  if (alpha.ring() != Ring::Q() && alpha.ring() != Ring::Z())
    throw precondition_error("frac_iterate: alpha must be a Z or Q value");
  const Value a = alpha.ring() == Ring::Q() ? alpha : alpha.to_fraction_field();
  const Ring Q = Ring::Q();
  const int cap = g.cap();
  const int d = g.dim();
  auto iterates = detail::iterate_table(g, cap);
  // Collect every monomial appearing in any iterate; coefficients absent
  // everywhere interpolate to zero and can be skipped.
  std::map<Monomial, bool, GrlexLess> support;
  for (const auto& it : iterates)
    for (const auto& s : it.components())
      for (const auto& [m, v] : s.terms()) support[m] = true;
  std::vector<Series> comps(d, Series(Q, d, cap));
  for (const auto& [m, unused] : support) {
    int s = m.degree();
    for (int j = 0; j < d; ++j) {
      std::vector<Value> vals;
      vals.reserve(s);
      for (int k = 0; k < s; ++k)
        vals.push_back(iterates[k].component(j).coeff(m));
      detail::NewtonPoly p(std::move(vals));
      Value c = p.eval(a);
      if (!c.is_zero()) comps[j].add_term(m, c);
    }
  }
  return FormalMap(std::move(comps));
}

/// h = g^(1/n); iterate(h, n) recovers g up to cap.
inline FormalMap nth_root(const FormalMap& g, std::int64_t n) {
  if (n < 1) throw precondition_error("nth_root needs n >= 1");
  const Ring Q = Ring::Q();
  return frac_iterate(g, Value(Q, bigrat(1, n)));
}

/// Theorem-level identity g^(a) o g^(b) = g^(a+b), checked exactly.
inline bool group_law_check(const FormalMap& g, const Value& a,
                            const Value& b) {
  FormalMap lhs = compose(frac_iterate(g, a), frac_iterate(g, b));
  FormalMap rhs = frac_iterate(g, a + b);
  return lhs == rhs;
}

/// For commuting tangent maps, g^(a) o h^(b) = h^(b) o g^(a).
inline bool commuting_pair_check(const FormalMap& g, const FormalMap& h,
                                 const Value& a, const Value& b) {
  if (compose(g, h) != compose(h, g))
    throw precondition_error("commuting_pair_check: maps do not commute");
  FormalMap ga = frac_iterate(g, a);
  FormalMap hb = frac_iterate(h, b);
  return compose(ga, hb) == compose(hb, ga);
}

/// Coefficients of a fraction-field map that fall outside Z.
struct NonIntegralCoeff {
  int component;
  Monomial monomial;
  Value value;
};

inline std::vector<NonIntegralCoeff> integrality_report(const FormalMap& g) {
  std::vector<NonIntegralCoeff> out;
  for (int j = 0; j < g.dim(); ++j)
    for (const auto& [m, v] : g.component(j).terms())
      if (!v.is_integral()) out.push_back({j, m, v});
  return out;
}

struct FiniteLinearFactorization {
  FormalMap tangent;  ///< u, the s-th root of h^s
  FormalMap torsion;  ///< h^{-1} o u, of order s
  std::int64_t order; ///< s, the order of L(h)
};

/// Factors h, whose linear part has finite order s, in its own centraliser
/// as (torsion of order s) composed with a map tangent to the identity.
inline FiniteLinearFactorization factor_finite_linear_part(
    const FormalMap& h, int order_bound = 64) {
  auto s_opt = h.linear_part().order_upto(order_bound);
  if (!s_opt)
    throw precondition_error(
        "factor: linear part has no order within bound " +
        std::to_string(order_bound));
  const std::int64_t s = *s_opt;
  const Ring& K = h.ring();
  if (!K.char_zero() && s % K.characteristic == 0)
    throw precondition_error("factor: characteristic divides the order " +
                             std::to_string(s));
  FormalMap hk = K.char_zero() && K != Ring::Q() ? h.to_fraction_field() : h;
  if (s == 1)
    return {hk, FormalMap::identity(hk.ring(), hk.dim(), hk.cap()), 1};
  FormalMap g = iterate(hk, s);  // tangent to the identity
  FormalMap u = hk.ring().char_zero() ? nth_root(g, s) : cadic_root(g, s);
  if (compose(u, hk) != compose(hk, u))
    throw verification_error("factor: root does not commute with the map");
  FormalMap torsion = compose(invert(hk), u);
  return {u, torsion, s};
}

}  // namespace formalflows

#endif
