#ifndef FORMALFLOWS_MAP_HPP
#define FORMALFLOWS_MAP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "formalflows/series.hpp"

namespace formalflows {

/// d x d matrix of ring elements; L(g)_{ij} is the coefficient of x_j in
/// component i of g.
class LinearPart {
 public:
  LinearPart(const Ring& ring, int dim)
      : ring_(ring), dim_(dim),
        a_(static_cast<std::size_t>(dim) * dim, Value::zero(ring)) {}

  static LinearPart identity(const Ring& r, int dim) {
    LinearPart I(r, dim);
    for (int i = 0; i < dim; ++i) I.at(i, i) = Value::one(r);
    return I;
  }

  const Ring& ring() const { return ring_; }
  int dim() const { return dim_; }

  Value& at(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  const Value& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * dim_ + j];
  }

  bool operator==(const LinearPart& o) const {
    return dim_ == o.dim_ && a_ == o.a_;
  }

  LinearPart operator*(const LinearPart& o) const {
    if (dim_ != o.dim_) throw precondition_error("matrix dimension mismatch");
    LinearPart r(ring_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        Value s = Value::zero(ring_);
        for (int k = 0; k < dim_; ++k) s = s + at(i, k) * o.at(k, j);
        r.at(i, j) = s;
      }
    return r;
  }

  /// Exact determinant by cofactor expansion (division-free, so valid over
  /// every supported ring).
  Value det() const {
    std::vector<int> rows(dim_), cols(dim_);
    for (int i = 0; i < dim_; ++i) rows[i] = cols[i] = i;
    return det_rec(rows, cols);
  }

  bool invertible() const { return det().is_unit(); }

  /// Adjugate / determinant inverse; requires det to be a unit.
  LinearPart inverse() const {
    Value d = det();
    if (!d.is_unit())
      throw precondition_error("linear part not invertible: det = " + d.str());
    Value dinv = d.unit_inverse();
    LinearPart r(ring_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        Value c = cofactor(j, i);  // adjugate transposes
        r.at(i, j) = c * dinv;
      }
    return r;
  }

  /// Least n <= bound with L^n = 1, if any.
  std::optional<int> order_upto(int bound) const {
    LinearPart I = identity(ring_, dim_);
    LinearPart p = *this;
    for (int n = 1; n <= bound; ++n) {
      if (p == I) return n;
      p = p * *this;
    }
    return std::nullopt;
  }

 private:
  Value cofactor(int i, int j) const {
    std::vector<int> rows, cols;
    for (int r = 0; r < dim_; ++r)
      if (r != i) rows.push_back(r);
    for (int c = 0; c < dim_; ++c)
      if (c != j) cols.push_back(c);
    Value minor = det_rec(rows, cols);
    return ((i + j) % 2 == 0) ? minor : -minor;
  }

  Value det_rec(const std::vector<int>& rows,
                const std::vector<int>& cols) const {
    std::size_t n = rows.size();
    if (n == 0) return Value::one(ring_);
    if (n == 1) return at(rows[0], cols[0]);
    Value s = Value::zero(ring_);
    std::vector<int> subrows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < n; ++j) {
      const Value& pivot = at(rows[0], cols[j]);
      if (pivot.is_zero()) continue;
      std::vector<int> subcols;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) subcols.push_back(cols[k]);
      Value term = pivot * det_rec(subrows, subcols);
      s = (j % 2 == 0) ? s + term : s - term;
    }
    return s;
  }

  Ring ring_;
  int dim_;
  std::vector<Value> a_;
};

/// A d-tuple of series with zero constant terms: a formal self-map of K^d
/// fixing 0.
class FormalMap {
 public:
  explicit FormalMap(std::vector<Series> components)
      : comps_(std::move(components)) {
    if (comps_.empty()) throw precondition_error("empty formal map");
    for (std::size_t i = 1; i < comps_.size(); ++i)
      comps_[0].check_compatible(comps_[i]);
    if (static_cast<int>(comps_.size()) != comps_[0].dim())
      throw precondition_error("formal map needs dim components");
    for (const Series& s : comps_)
      if (!s.constant_term().is_zero())
        throw precondition_error("map component has a constant term");
  }

  static FormalMap identity(const Ring& r, int dim, int cap) {
    std::vector<Series> comps;
    comps.reserve(dim);
    for (int i = 0; i < dim; ++i)
      comps.push_back(Series::variable(r, dim, cap, i));
    return FormalMap(std::move(comps));
  }

  const Ring& ring() const { return comps_[0].ring(); }
  int dim() const { return comps_[0].dim(); }
  int cap() const { return comps_[0].cap(); }
  const Series& component(int i) const { return comps_[i]; }
  const std::vector<Series>& components() const { return comps_; }

  bool operator==(const FormalMap& o) const { return comps_ == o.comps_; }
  bool operator!=(const FormalMap& o) const { return !(*this == o); }

  bool is_identity() const { return *this == identity(ring(), dim(), cap()); }

  LinearPart linear_part() const {
    LinearPart L(ring(), dim());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        L.at(i, j) = comps_[i].coeff(Monomial::var(dim(), j));
    return L;
  }

  bool is_tangent_identity() const {
    return linear_part() == LinearPart::identity(ring(), dim());
  }

  /// Degree-k homogeneous term L_k(g), returned as a d-tuple of series.
  std::vector<Series> homogeneous_term(int k) const {
    if (k < 1 || k > cap())
      throw precondition_error("homogeneous term index out of range");
    std::vector<Series> r;
    r.reserve(dim());
    for (const Series& s : comps_) r.push_back(s.homogeneous_part(k));
    return r;
  }

  /// Lower degree of g - identity; empty (infinity) iff g is the identity
  /// up to cap.  Requires tangency to the identity.
  std::optional<int> weierstrass_degree() const {
    if (!is_tangent_identity())
      throw precondition_error("Weierstrass degree needs tangency to identity");
    FormalMap id = identity(ring(), dim(), cap());
    std::optional<int> best;
    for (int i = 0; i < dim(); ++i) {
      auto ld = (comps_[i] - id.comps_[i]).lower_degree();
      if (ld && (!best || *ld < *best)) best = ld;
    }
    return best;
  }

  FormalMap to_fraction_field() const {
    std::vector<Series> comps;
    comps.reserve(dim());
    for (const Series& s : comps_) comps.push_back(s.to_fraction_field());
    return FormalMap(std::move(comps));
  }

  std::string str() const {
    std::string out;
    for (int i = 0; i < dim(); ++i) {
      if (i) out += "; ";
      out += comps_[i].str();
    }
    return out;
  }

 private:
  std::vector<Series> comps_;
};

/// f o g for a single series f: substitutes the components of g for the
/// variables.  Powers of each component are cached across the monomials
/// of f, which are visited in graded order.
inline Series compose_series(const Series& f, const FormalMap& g) {
  if (f.ring() != g.ring() || f.dim() != g.dim() || f.cap() != g.cap())
    throw precondition_error("compose: series/map ring, dim or cap mismatch");
  const Ring& R = f.ring();
  const int d = f.dim();
  const int cap = f.cap();
  // powers[i][e] = g_i^e, filled lazily
  std::vector<std::vector<Series>> powers(
      d, {Series::constant(R, d, cap, Value::one(R))});
  auto power = [&](int i, int e) -> const Series& {
    auto& ps = powers[i];
    while (static_cast<int>(ps.size()) <= e)
      ps.push_back(ps.back() * g.component(i));
    return ps[e];
  };
  Series out(R, d, cap);
  for (const auto& [m, v] : f.terms()) {
    Series prod = Series::constant(R, d, cap, v);
    for (int i = 0; i < d && !prod.is_zero(); ++i)
      if (m.exponents[i] > 0) prod = prod * power(i, m.exponents[i]);
    out = out + prod;
  }
  return out;
}

inline FormalMap compose(const FormalMap& f, const FormalMap& g) {
  std::vector<Series> comps;
  comps.reserve(f.dim());
  for (int i = 0; i < f.dim(); ++i)
    comps.push_back(compose_series(f.component(i), g));
  return FormalMap(std::move(comps));
}

/// Interprets a matrix as a linear formal map.
inline FormalMap linear_map(const LinearPart& L, int cap) {
  std::vector<Series> comps;
  comps.reserve(L.dim());
  for (int i = 0; i < L.dim(); ++i) {
    Series s(L.ring(), L.dim(), cap);
    for (int j = 0; j < L.dim(); ++j)
      s.add_term(Monomial::var(L.dim(), j), L.at(i, j));
    comps.push_back(std::move(s));
  }
  return FormalMap(std::move(comps));
}

/// Compositional inverse.  A tangent-to-identity g = 1 + h is inverted by
/// the fixed point of u <- 1 - h o u, which settles one degree per pass;
/// a general g factors as L(g) o (L(g)^{-1} o g) with the left factor
/// inverted by adjugate/determinant.
inline FormalMap invert(const FormalMap& g) {
  const Ring& R = g.ring();
  const int cap = g.cap();
  LinearPart L = g.linear_part();
  if (!L.det().is_unit())
    throw precondition_error("map not invertible: det L(g) = " +
                             L.det().str() + " is not a unit");
  LinearPart Linv = L.inverse();
  FormalMap id = FormalMap::identity(R, g.dim(), cap);
  FormalMap tangent = compose(linear_map(Linv, cap), g);
  // h = tangent - id, componentwise
  std::vector<Series> hc;
  for (int i = 0; i < g.dim(); ++i)
    hc.push_back(tangent.component(i) - id.component(i));
  FormalMap u = id;
  for (int pass = 0; pass < cap; ++pass) {
    std::vector<Series> next;
    for (int i = 0; i < g.dim(); ++i)
      next.push_back(id.component(i) - compose_series(hc[i], u));
    FormalMap candidate(std::move(next));
    if (candidate == u) break;
    u = std::move(candidate);
  }
  return compose(u, linear_map(Linv, cap));
}

/// k-fold composition; repeated squaring for |k| > 3, inversion first for
/// negative k.
inline FormalMap iterate(const FormalMap& g, std::int64_t k) {
  if (k < 0) return iterate(invert(g), -k);
  FormalMap acc = FormalMap::identity(g.ring(), g.dim(), g.cap());
  if (k <= 3) {
    for (std::int64_t i = 0; i < k; ++i) acc = compose(g, acc);
    return acc;
  }
  FormalMap base = g;
  while (k > 0) {
    if (k & 1) acc = compose(acc, base);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return acc;
}

/// Least n <= bound with g^n = identity up to cap, if any.  The answer is
/// cap-relative: a finite truncation cannot certify infinite order.
inline std::optional<std::int64_t> order_upto(const FormalMap& g,
                                              std::int64_t bound) {
  if (bound < 1) throw precondition_error("order bound must be >= 1");
  FormalMap id = FormalMap::identity(g.ring(), g.dim(), g.cap());
  FormalMap p = g;
  for (std::int64_t n = 1; n <= bound; ++n) {
    if (p == id) return n;
    p = compose(g, p);
  }
  return std::nullopt;
}

}  // namespace formalflows

#endif
