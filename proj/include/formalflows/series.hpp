#ifndef FORMALFLOWS_SERIES_HPP
#define FORMALFLOWS_SERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "formalflows/monomial.hpp"
#include "formalflows/ring.hpp"

namespace formalflows {

/// A truncated formal power series over a Ring: a sparse monomial ->
/// coefficient table.  Every coefficient of total degree <= cap is exact;
/// nothing above cap is stored.  Equality is cap-relative, and mixing
/// different caps (or rings, or dimensions) is an error, never a coercion.
class Series {
 public:
  using TermMap = std::map<Monomial, Value, GrlexLess>;

  Series(const Ring& ring, int dim, int cap)
      : ring_(ring), dim_(dim), cap_(cap) {
    if (dim < 1) throw precondition_error("series dimension must be >= 1");
    if (cap < 0) throw precondition_error("series cap must be >= 0");
  }

  static Series zero(const Ring& r, int dim, int cap) {
    return Series(r, dim, cap);
  }

  static Series constant(const Ring& r, int dim, int cap, const Value& v) {
    Series s(r, dim, cap);
    s.add_term(Monomial::unit(dim), v);
    return s;
  }

  static Series term(const Ring& r, int dim, int cap, const Monomial& m,
                     const Value& v) {
    Series s(r, dim, cap);
    s.add_term(m, v);
    return s;
  }

  /// The series x_{i+1}.
  static Series variable(const Ring& r, int dim, int cap, int i) {
    return term(r, dim, cap, Monomial::var(dim, i), Value::one(r));
  }

  const Ring& ring() const { return ring_; }
  int dim() const { return dim_; }
  int cap() const { return cap_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Value coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Value::zero(ring_) : it->second;
  }

  Value constant_term() const { return coeff(Monomial::unit(dim_)); }

  /// Adds v * m into this series in place; zero results are purged and
  /// monomials above the cap are discarded.
  void add_term(const Monomial& m, const Value& v) {
    if (m.dim() != dim_) throw precondition_error("monomial dimension mismatch");
    if (m.degree() > cap_) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!v.is_zero()) terms_.emplace(m, v);
      return;
    }
    Value sum = it->second + v;
    if (sum.is_zero())
      terms_.erase(it);
    else
      it->second = sum;
  }

  bool operator==(const Series& o) const {
    check_compatible(o);
    return terms_ == o.terms_;
  }
  bool operator!=(const Series& o) const { return !(*this == o); }

  Series operator+(const Series& o) const {
    check_compatible(o);
    Series r = *this;
    for (const auto& [m, v] : o.terms_) r.add_term(m, v);
    return r;
  }

  Series operator-(const Series& o) const {
    check_compatible(o);
    Series r = *this;
    for (const auto& [m, v] : o.terms_) r.add_term(m, -v);
    return r;
  }

  Series operator-() const {
    Series r(ring_, dim_, cap_);
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, -v);
    return r;
  }

  /// (f*g)_m = sum over factor pairs p | m of f_p g_{m/p}.
  Series operator*(const Series& o) const {
    check_compatible(o);
    Series r(ring_, dim_, cap_);
    for (const auto& [m, v] : terms_) {
      for (const auto& [n, w] : o.terms_) {
        if (m.degree() + n.degree() > cap_) continue;
        r.add_term(mono_mul(m, n), v * w);
      }
    }
    return r;
  }

  Series operator*(const Value& c) const {
    Series r(ring_, dim_, cap_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) {
      Value p = v * c;
      if (!p.is_zero()) r.terms_.emplace(m, p);
    }
    return r;
  }

  /// Least total degree of a supported monomial; empty for the zero series
  /// (lower degree infinity).
  std::optional<int> lower_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.degree();  // graded order: first is minimal
  }

  /// Vertex v(f): hcf of the support of a nonzero series.
  Monomial vertex() const {
    if (terms_.empty()) throw precondition_error("vertex of zero series");
    std::vector<Monomial> support;
    support.reserve(terms_.size());
    for (const auto& [m, v] : terms_) support.push_back(m);
    return mono_hcf(support);
  }

  /// The cofactor h with f = v(f)*h and vertex(h) = 1.
  Series vertex_cofactor() const {
    Monomial v = vertex();
    Series r(ring_, dim_, cap_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(mono_div(m, v), c);
    return r;
  }

  /// Multiplicative inverse for a series with unit constant term: writes
  /// f = f_1 (1 + h) with h in the ideal M and sums the geometric series
  /// 1 - h + h^2 - ... (h^r vanishes below degree r, so cap terms suffice).
  Series unit_inverse() const {
    Value c0 = constant_term();
    if (!c0.is_unit())
      throw precondition_error(
          "series inverse needs a unit constant term, got " + c0.str());
    Value a = c0.unit_inverse();
    Series h = (*this * a) - Series::constant(ring_, dim_, cap_, Value::one(ring_));
    Series acc = Series::constant(ring_, dim_, cap_, Value::one(ring_));
    Series pow = acc;
    for (int k = 1; k <= cap_ && !pow.is_zero(); ++k) {
      pow = pow * h;
      acc = (k % 2 == 1) ? acc - pow : acc + pow;
    }
    return acc * a;
  }

  /// Degree-k homogeneous slice.
  Series homogeneous_part(int k) const {
    Series r(ring_, dim_, cap_);
    for (const auto& [m, v] : terms_)
      if (m.degree() == k) r.terms_.emplace(m, v);
    return r;
  }

  /// Re-interprets a char-0 series over the fraction field Q.
  Series to_fraction_field() const {
    Series r(Ring::Q(), dim_, cap_);
    for (const auto& [m, v] : terms_)
      r.terms_.emplace(m, v.to_fraction_field());
    return r;
  }

  /// Terms in graded-lex order; coefficient 1 omitted on non-unit monomials.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, v] : terms_) {
      if (!out.empty()) out += " + ";
      if (m.is_unit())
        out += v.str();
      else if (v.is_one())
        out += m.str();
      else
        out += v.str() + "*" + m.str();
    }
    return out;
  }

  void check_compatible(const Series& o) const {
    if (ring_ != o.ring_)
      throw ring_error("series ring mismatch: " + ring_.name() + " vs " +
                       o.ring_.name());
    if (dim_ != o.dim_) throw precondition_error("series dimension mismatch");
    if (cap_ != o.cap_) throw precondition_error("series cap mismatch");
  }

 private:
  Ring ring_;
  int dim_;
  int cap_;
  TermMap terms_;
};

}  // namespace formalflows

#endif
