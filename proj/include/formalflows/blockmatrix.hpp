#ifndef FORMALFLOWS_BLOCKMATRIX_HPP
#define FORMALFLOWS_BLOCKMATRIX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "formalflows/rho.hpp"

namespace formalflows {

/// The top-left c^r x c^r block B_r of the basic sum-function matrix over
/// F_c: entry (m, k) = rho_m(k).  Symmetric, and zero below the
/// antidiagonal (upper-left triangular).
class BlockMatrix {
 public:
  BlockMatrix(std::int64_t c, int r, std::vector<std::vector<std::int64_t>> e)
      : c_(c), r_(r), entries_(std::move(e)) {}

  std::int64_t characteristic() const { return c_; }
  int level() const { return r_; }
  std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }
  std::int64_t at(std::int64_t m, std::int64_t k) const {
    return entries_[m][k];
  }
  const std::vector<std::vector<std::int64_t>>& entries() const {
    return entries_;
  }

  bool operator==(const BlockMatrix&) const = default;

  /// Rows of space-separated digits.
  std::string str() const {
    std::string out;
    for (const auto& row : entries_) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(row[k]);
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::int64_t c_;
  int r_;
  std::vector<std::vector<std::int64_t>> entries_;
};

namespace detail {

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::int64_t rho_mod(std::int64_t m, std::int64_t k, std::int64_t c) {
  return static_cast<std::int64_t>(bigint(binomial(m + k, m) % c));
}

}  // namespace detail

/// The c x c template: entry (m, k) = C(m+k, k) mod c.
inline BlockMatrix template_matrix(std::int64_t c) {
  if (!detail::is_prime(c))
    throw precondition_error("template needs a prime characteristic");
  std::vector<std::vector<std::int64_t>> e(c, std::vector<std::int64_t>(c));
  for (std::int64_t m = 0; m < c; ++m)
    for (std::int64_t k = 0; k < c; ++k) e[m][k] = detail::rho_mod(m, k, c);
  return BlockMatrix(c, 1, std::move(e));
}

/// B_r with entries computed directly from rho.
inline BlockMatrix block_matrix(std::int64_t c, int r) {
  if (!detail::is_prime(c))
    throw precondition_error("block matrix needs a prime characteristic");
  if (r < 1) throw precondition_error("block matrix level must be >= 1");
  std::int64_t n = detail::ipow(c, r);
  std::vector<std::vector<std::int64_t>> e(n, std::vector<std::int64_t>(n));
  for (std::int64_t m = 0; m < n; ++m)
    for (std::int64_t k = 0; k < n; ++k) e[m][k] = detail::rho_mod(m, k, c);
  return BlockMatrix(c, r, std::move(e));
}

/// B_r built by the self-similar construction instead: B_{s+1} consists of
/// c^2 copies of B_s, the (i, j)-th one scaled mod c by template entry
/// (i, j).  Equal to block_matrix by the product formula; retained as an
/// independent second route.
inline BlockMatrix block_matrix_selfsimilar(std::int64_t c, int r) {
  BlockMatrix T = template_matrix(c);
  std::vector<std::vector<std::int64_t>> cur = T.entries();
  for (int level = 2; level <= r; ++level) {
    std::int64_t n = static_cast<std::int64_t>(cur.size());
    std::vector<std::vector<std::int64_t>> next(
        c * n, std::vector<std::int64_t>(c * n));
    for (std::int64_t i = 0; i < c; ++i)
      for (std::int64_t j = 0; j < c; ++j)
        for (std::int64_t m = 0; m < n; ++m)
          for (std::int64_t k = 0; k < n; ++k)
            next[i * n + m][j * n + k] = (T.at(i, j) * cur[m][k]) % c;
    cur = std::move(next);
  }
  return BlockMatrix(c, r, std::move(cur));
}

/// rho_m(k) mod c through the digitwise product formula
/// rho_m(k) = prod_r rho_{m_r}(k_r) over the c-adic digits of m and k.
inline std::int64_t rho_product_formula(std::int64_t m, std::int64_t k,
                                        std::int64_t c) {
  if (m < 0 || k < 0) throw precondition_error("rho needs m, k >= 0");
  static_cast<void>(template_matrix(c));  // validates primality
  std::int64_t prod = 1;
  while (m > 0 || k > 0) {
    prod = (prod * detail::rho_mod(m % c, k % c, c)) % c;
    if (prod == 0) return 0;
    m /= c;
    k /= c;
  }
  return prod;
}

/// The antidiagonal of B_r: entries rho_m(c^r - m - 1), asserted to be
/// alternating +-1 in F_c.
inline std::vector<std::int64_t> antidiagonal(std::int64_t c, int r) {
  std::int64_t n = detail::ipow(c, r);
  std::vector<std::int64_t> out(n);
  for (std::int64_t m = 0; m < n; ++m) {
    std::int64_t v = rho_product_formula(m, n - m - 1, c);
    std::int64_t expected = (m % 2 == 0) ? 1 % c : (c - 1) % c;
    if (v != expected)
      throw verification_error("antidiagonal entry is not alternating +-1");
    out[m] = v;
  }
  return out;
}

/// Solves B_r lambda = values over F_c.  Reversing the rows turns the
/// upper-left triangular B_r into a lower-triangular system whose diagonal
/// is the +-1 antidiagonal, so plain forward substitution suffices and no
/// division by a non-unit can occur.
inline std::vector<Value> solve_against_Br(const std::vector<Value>& values,
                                           std::int64_t c, int r) {
  const std::int64_t n = detail::ipow(c, r);
  if (static_cast<std::int64_t>(values.size()) != n)
    throw precondition_error("solve_against_Br: expected " +
                             std::to_string(n) + " values, got " +
                             std::to_string(values.size()));
  const Ring R = Ring::Fp(c);
  for (const Value& v : values)
    if (v.ring() != R) throw ring_error("solve_against_Br: wrong ring");
  BlockMatrix B = block_matrix(c, r);
  std::vector<Value> lambda(n, Value::zero(R));
  // Row m reversed: row index i solves for lambda[i] using B row n-1-i,
  // which is zero past column i.
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t row = n - 1 - i;
    Value rhs = values[row];
    for (std::int64_t j = 0; j < i; ++j)
      rhs = rhs - Value::from_integer(R, B.at(row, j)) * lambda[j];
    Value diag = Value::from_integer(R, B.at(row, i));
    lambda[i] = diag.unit_inverse() * rhs;
  }
  return lambda;
}

}  // namespace formalflows

#endif
