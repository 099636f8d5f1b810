#ifndef FORMALFLOWS_CADIC_HPP
#define FORMALFLOWS_CADIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "formalflows/map.hpp"
#include "formalflows/sumfn.hpp"

namespace formalflows {

/// A truncated c-adic integer: little-endian digit vector (z_0, ..., z_{t-1})
/// with 0 <= z_s < c, standing in for z mod c^t.
struct CAdicInt {
  std::int64_t c;
  std::vector<int> digits;

  CAdicInt(std::int64_t c_, std::vector<int> digits_)
      : c(c_), digits(std::move(digits_)) {
    if (!detail::is_prime(c))
      throw precondition_error("c-adic base must be prime");
    if (digits.empty()) throw precondition_error("c-adic needs >= 1 digit");
    for (int d : digits)
      if (d < 0 || d >= c) throw precondition_error("c-adic digit out of range");
  }

  int precision() const { return static_cast<int>(digits.size()); }

  /// The truncated value sum z_s c^s.
  bigint value() const {
    bigint v = 0;
    for (int s = precision() - 1; s >= 0; --s) v = v * c + digits[s];
    return v;
  }

  CAdicInt operator+(const CAdicInt& o) const {
    if (c != o.c || precision() != o.precision())
      throw precondition_error("c-adic base/precision mismatch");
    CAdicInt r = *this;
    int carry = 0;
    for (int s = 0; s < precision(); ++s) {
      int sum = digits[s] + o.digits[s] + carry;
      r.digits[s] = sum % static_cast<int>(c);
      carry = sum / static_cast<int>(c);
    }
    return r;
  }

  bool operator==(const CAdicInt&) const = default;

  std::string str() const {
    std::string out;
    for (int s = 0; s < precision(); ++s) {
      if (s) out += ",";
      out += std::to_string(digits[s]);
    }
    return out;
  }
};

/// Digits of n mod c^t; negative n wrap around (complement).
inline CAdicInt cadic_from_integer(const bigint& n, std::int64_t c, int t) {
  if (t < 1) throw precondition_error("c-adic needs >= 1 digit");
  bigint modulus = 1;
  for (int s = 0; s < t; ++s) modulus *= c;
  bigint v = n % modulus;
  if (v < 0) v += modulus;
  std::vector<int> digits(t);
  for (int s = 0; s < t; ++s) {
    digits[s] = static_cast<int>(bigint(v % c));
    v /= c;
  }
  return CAdicInt(c, std::move(digits));
}

/// Digits of n^{-1} mod c^t for n coprime to c, by extended gcd.
inline CAdicInt cadic_inverse_unit(const bigint& n, std::int64_t c, int t) {
  if (n % c == 0)
    throw precondition_error(std::to_string(c) + " divides " + n.str() +
                             ", not a c-adic unit");
  bigint modulus = 1;
  for (int s = 0; s < t; ++s) modulus *= c;
  bigint a = n % modulus;
  if (a < 0) a += modulus;
  bigint r0 = modulus, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    bigint q = r0 / r1;
    bigint r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  s0 %= modulus;
  if (s0 < 0) s0 += modulus;
  return cadic_from_integer(s0, c, t);
}

/// Digits needed so that every coefficient of degree <= cap has period
/// dividing c^t: the least t with c^t >= cap.
inline int cadic_required_digits(std::int64_t c, int cap) {
  int t = 1;
  std::int64_t p = c;
  while (p < cap) {
    p *= c;
    ++t;
  }
  return t;
}

/// g^(z) for a tangent map over F_c: the coefficient sum-functions all have
/// period dividing c^t once c^t >= cap, so the truncated digit value is an
/// honest representative and the fast composition kernel applies.  The
/// per-coefficient path (fit one period, evaluate) lives in the test suite
/// as an oracle.
inline FormalMap cadic_iterate(const FormalMap& g, const CAdicInt& z) {
  const Ring& K = g.ring();
  if (K.char_zero())
    throw precondition_error(
        "cadic_iterate needs finite characteristic (see frac_iterate)");
  if (K.characteristic != z.c)
    throw precondition_error("c-adic base does not match the ring");
  if (!g.is_tangent_identity())
    throw precondition_error("cadic_iterate needs tangency to the identity");
  if (z.precision() < cadic_required_digits(z.c, g.cap()))
    throw precondition_error(
        "insufficient c-adic digits for cap " + std::to_string(g.cap()) +
        ": need " + std::to_string(cadic_required_digits(z.c, g.cap())));
  bigint k = z.value();
  // k fits well within int64 at desk scale (c^t is bounded by cap * c)
  return iterate(g, static_cast<std::int64_t>(k));
}

/// n-th compositional root for n coprime to c: g^(1/n) with 1/n inverted
/// mod c^t.
inline FormalMap cadic_root(const FormalMap& g, std::int64_t n) {
  const Ring& K = g.ring();
  if (K.char_zero())
    throw precondition_error("cadic_root needs finite characteristic");
  if (n < 1) throw precondition_error("cadic_root needs n >= 1");
  if (n % K.characteristic == 0)
    throw precondition_error("cadic_root: n must be coprime to " +
                             std::to_string(K.characteristic));
  int t = cadic_required_digits(K.characteristic, g.cap());
  return cadic_iterate(g, cadic_inverse_unit(n, K.characteristic, t));
}

/// If c^r divides z - z', the iterates agree on every coefficient of degree
/// < c^r.  Verifies that claim coefficientwise.
inline bool continuity_check(const FormalMap& g, const CAdicInt& z,
                             const CAdicInt& z2, int r) {
  if (z.c != z2.c) throw precondition_error("c-adic base mismatch");
  if (r < 0 || r > z.precision() || r > z2.precision())
    throw precondition_error("continuity_check: r exceeds digit precision");
  for (int s = 0; s < r; ++s)
    if (z.digits[s] != z2.digits[s])
      throw precondition_error("continuity_check: first " + std::to_string(r) +
                               " digits must agree");
  FormalMap a = cadic_iterate(g, z);
  FormalMap b = cadic_iterate(g, z2);
  std::int64_t bound = 1;
  for (int s = 0; s < r; ++s) bound *= z.c;
  for (int j = 0; j < g.dim(); ++j) {
    Series diff = a.component(j) - b.component(j);
    auto ld = diff.lower_degree();
    if (ld && *ld < bound) return false;
  }
  return true;
}

}  // namespace formalflows

#endif
