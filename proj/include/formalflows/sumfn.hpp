#ifndef FORMALFLOWS_SUMFN_HPP
#define FORMALFLOWS_SUMFN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "formalflows/blockmatrix.hpp"
#include "formalflows/rho.hpp"

namespace formalflows {

/// An element of the algebra Sigma_K: a finite coefficient vector
/// (lambda_0, ..., lambda_m) in the rho-basis.  The zero sum-function is
/// the empty vector and has degree -infinity (empty optional).
class SumFunction {
 public:
  SumFunction(const Ring& ring, std::vector<Value> coeffs)
      : ring_(ring), coeffs_(std::move(coeffs)) {
    for (const Value& v : coeffs_)
      if (v.ring() != ring_) throw ring_error("sum-function ring mismatch");
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  static SumFunction zero(const Ring& r) { return SumFunction(r, {}); }

  /// The basis element rho_m.
  static SumFunction basis(const Ring& r, std::int64_t m) {
    std::vector<Value> c(m + 1, Value::zero(r));
    c.back() = Value::one(r);
    return SumFunction(r, std::move(c));
  }

  const Ring& ring() const { return ring_; }
  const std::vector<Value>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Index of the last nonzero coefficient; empty for the zero function.
  std::optional<std::int64_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return static_cast<std::int64_t>(coeffs_.size()) - 1;
  }

  bool operator==(const SumFunction& o) const {
    return ring_ == o.ring_ && coeffs_ == o.coeffs_;
  }

  Value eval(std::int64_t k) const {
    if (k < 0) throw precondition_error("sum-functions are defined on Z_+");
    Value s = Value::zero(ring_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      s = s + coeffs_[i] * rho_eval(static_cast<std::int64_t>(i), k, ring_);
    return s;
  }

  SumFunction operator+(const SumFunction& o) const {
    if (ring_ != o.ring_) throw ring_error("sum-function ring mismatch");
    std::vector<Value> c(std::max(coeffs_.size(), o.coeffs_.size()),
                         Value::zero(ring_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = c[i] + coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
      c[i] = c[i] + o.coeffs_[i];
    return SumFunction(ring_, std::move(c));
  }

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) out += ", ";
      out += coeffs_[i].str();
    }
    return out + "]";
  }

 private:
  Ring ring_;
  std::vector<Value> coeffs_;
};

/// Recovers rho-basis coefficients from values at k = 0..n in
/// characteristic zero by solving the Pascal system rho_j(k) = C(k+j, j)
/// exactly over the fraction field.  When the ring is Z the solution is
/// certified integral; a non-integral lambda means the values did not come
/// from a sum-function over Z.
inline SumFunction fit_char0(const Ring& R, const std::vector<Value>& values) {
  if (!R.char_zero())
    throw precondition_error("fit_char0 needs characteristic 0");
  const std::size_t n = values.size();
  if (n == 0) return SumFunction::zero(R);
  const Ring Q = Ring::Q();
  // Augmented matrix over Q: A[k][j] = rho_j(k), rhs = values.
  std::vector<std::vector<Value>> A(n, std::vector<Value>(n + 1, Value::zero(Q)));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j)
      A[k][j] = rho_eval(static_cast<std::int64_t>(j),
                         static_cast<std::int64_t>(k), Q);
    if (values[k].ring() != R) throw ring_error("fit_char0: wrong value ring");
    A[k][n] = values[k].to_fraction_field();
  }
  // Gaussian elimination with exact rational pivots.
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col].is_zero()) ++piv;
    if (piv == n) throw verification_error("fit_char0: singular system");
    std::swap(A[piv], A[col]);
    Value inv = A[col][col].unit_inverse();
    for (std::size_t j = col; j <= n; ++j) A[col][j] = A[col][j] * inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || A[row][col].is_zero()) continue;
      Value f = A[row][col];
      for (std::size_t j = col; j <= n; ++j)
        A[row][j] = A[row][j] - f * A[col][j];
    }
  }
  std::vector<Value> lambda;
  lambda.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Value& q = A[j][n];
    if (R.kind == RingKind::integers) {
      if (!q.is_integral())
        throw verification_error(
            "fit_char0: coefficient " + q.str() +
            " is not integral; input is not a sum-function over Z");
      lambda.push_back(Value(R, q.raw()));
    } else {
      lambda.push_back(q);
    }
  }
  return SumFunction(R, std::move(lambda));
}

/// Recovers rho-basis coefficients from one full period of c^r values in
/// characteristic c, via the B_r solver.
inline SumFunction fit_charc(const Ring& R, const std::vector<Value>& values) {
  if (R.char_zero())
    throw precondition_error("fit_charc needs finite characteristic");
  const std::int64_t c = R.characteristic;
  std::int64_t n = static_cast<std::int64_t>(values.size());
  if (n == 1) {
    // c^0 = 1: the period-1 functions are the constants, lambda_0 = f(0).
    return SumFunction(R, {values[0]});
  }
  int r = 0;
  std::int64_t p = 1;
  while (p < n) {
    p *= c;
    ++r;
  }
  if (p != n)
    throw precondition_error("fit_charc: value count " + std::to_string(n) +
                             " is not a power of " + std::to_string(c));
  return SumFunction(R, solve_against_Br(values, c, r));
}

/// Least power c^r that is a period of k -> h(k).  The degree bound
/// guarantees period c^R once c^R > deg h, so candidates are checked inside
/// one such window.
inline std::int64_t period_of(const SumFunction& h) {
  const Ring& K = h.ring();
  if (K.char_zero())
    throw precondition_error("period_of needs finite characteristic");
  const std::int64_t c = K.characteristic;
  std::int64_t deg = h.degree() ? *h.degree() : 0;
  std::int64_t window = 1;
  while (window <= deg) window *= c;
  std::vector<Value> vals;
  vals.reserve(window);
  for (std::int64_t k = 0; k < window; ++k) vals.push_back(h.eval(k));
  for (std::int64_t cand = 1; cand <= window; cand *= c) {
    bool ok = true;
    for (std::int64_t k = 0; k + cand < window && ok; ++k)
      ok = vals[k] == vals[k + cand];
    if (ok) return cand;
  }
  return window;
}

/// Pointwise product, computed by evaluation and refitting: the paper gives
/// existence of the product expansion, not structure constants.
inline SumFunction sumfn_mul(const SumFunction& a, const SumFunction& b) {
  const Ring& R = a.ring();
  if (R != b.ring()) throw ring_error("sum-function ring mismatch");
  if (a.is_zero() || b.is_zero()) return SumFunction::zero(R);
  std::int64_t deg = *a.degree() + *b.degree();
  if (R.char_zero()) {
    std::vector<Value> vals;
    for (std::int64_t k = 0; k <= deg; ++k)
      vals.push_back(a.eval(k) * b.eval(k));
    return fit_char0(R, vals);
  }
  std::int64_t period = 1;
  while (period <= deg) period *= R.characteristic;
  std::vector<Value> vals;
  for (std::int64_t k = 0; k < period; ++k)
    vals.push_back(a.eval(k) * b.eval(k));
  return fit_charc(R, vals);
}

inline SumFunction sumfn_add(const SumFunction& a, const SumFunction& b) {
  return a + b;
}

}  // namespace formalflows

#endif
