#ifndef FORMALFLOWS_RING_HPP
#define FORMALFLOWS_RING_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

#include "formalflows/error.hpp"

namespace formalflows {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

enum class RingKind { integers, rationals, prime_field };

namespace detail {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace detail

/// Which exact coefficient domain a value lives in: Z, Q, or F_c for a
/// prime c.  The characteristic is 0 for Z and Q.
struct Ring {
  RingKind kind = RingKind::rationals;
  std::int64_t characteristic = 0;

  static Ring Z() { return Ring{RingKind::integers, 0}; }
  static Ring Q() { return Ring{RingKind::rationals, 0}; }
  static Ring Fp(std::int64_t c) {
    if (!detail::is_prime(c))
      throw ring_error("characteristic must be prime, got " +
                       std::to_string(c));
    return Ring{RingKind::prime_field, c};
  }

  bool operator==(const Ring&) const = default;

  bool char_zero() const { return characteristic == 0; }
  bool is_field() const { return kind != RingKind::integers; }

  std::string name() const {
    switch (kind) {
      case RingKind::integers: return "Z";
      case RingKind::rationals: return "Q";
      case RingKind::prime_field: return "Fp " + std::to_string(characteristic);
    }
    return "?";
  }
};

/// An exact element of a Ring.  Internally a rational; the invariants are
/// ring-dependent: Z has denominator 1, F_c is a reduced representative in
/// {0,...,c-1} with denominator 1, Q is in lowest terms.
class Value {
 public:
  Value(const Ring& ring, bigrat v) : ring_(ring), v_(std::move(v)) {
    normalize();
  }

  static Value zero(const Ring& r) { return Value(r, 0); }
  static Value one(const Ring& r) { return Value(r, 1); }

  /// pi_K : Z -> K, the canonical ring homomorphism.
  static Value from_integer(const Ring& r, const bigint& n) {
    return Value(r, bigrat(n));
  }
  static Value from_integer(const Ring& r, std::int64_t n) {
    return from_integer(r, bigint(n));
  }

  const Ring& ring() const { return ring_; }
  const bigrat& raw() const { return v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  bool operator==(const Value& o) const {
    check_same_ring(o);
    return v_ == o.v_;
  }
  bool operator!=(const Value& o) const { return !(*this == o); }

  Value operator+(const Value& o) const {
    check_same_ring(o);
    return Value(ring_, v_ + o.v_);
  }
  Value operator-(const Value& o) const {
    check_same_ring(o);
    return Value(ring_, v_ - o.v_);
  }
  Value operator*(const Value& o) const {
    check_same_ring(o);
    return Value(ring_, v_ * o.v_);
  }
  Value operator-() const { return Value(ring_, -v_); }

  bool is_unit() const {
    switch (ring_.kind) {
      case RingKind::integers: return v_ == 1 || v_ == -1;
      default: return v_ != 0;
    }
  }

  Value unit_inverse() const {
    if (!is_unit())
      throw precondition_error("not a unit in " + ring_.name() + ": " + str());
    switch (ring_.kind) {
      case RingKind::integers: return *this;
      case RingKind::rationals: return Value(ring_, 1 / v_);
      case RingKind::prime_field:
        return Value(ring_, bigrat(mod_inverse(boost::multiprecision::numerator(v_),
                                               ring_.characteristic)));
    }
    throw error("unreachable");
  }

  /// Embeds a char-0 value into the fraction field Q.
  Value to_fraction_field() const {
    if (!ring_.char_zero())
      throw ring_error("fraction field embedding needs characteristic 0");
    return Value(Ring::Q(), v_);
  }

  /// Is this rational actually an integer?
  bool is_integral() const {
    return boost::multiprecision::denominator(v_) == 1;
  }

  std::string str() const {
    if (is_integral()) return boost::multiprecision::numerator(v_).str();
    return boost::multiprecision::numerator(v_).str() + "/" +
           boost::multiprecision::denominator(v_).str();
  }

  /// Parses a ring literal: optional sign, digits, and for Q an optional
  /// "/digits" part.  F_c literals are integers reduced mod c.
  static Value parse(const Ring& r, std::string_view text) {
    auto bad = [&] {
      throw precondition_error("bad " + r.name() + " literal: '" +
                               std::string(text) + "'");
    };
    if (text.empty()) bad();
    std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
      if (r.kind != RingKind::rationals) bad();
      try {
        bigint num(std::string(text.substr(0, slash)));
        bigint den(std::string(text.substr(slash + 1)));
        if (den == 0) bad();
        return Value(r, bigrat(num, den));
      } catch (const std::exception&) {
        bad();
      }
    }
    try {
      return Value(r, bigrat(bigint(std::string(text))));
    } catch (const std::exception&) {
      bad();
    }
    throw error("unreachable");
  }

 private:
  void normalize() {
    if (ring_.kind == RingKind::prime_field) {
      const bigint c(ring_.characteristic);
      bigint num = boost::multiprecision::numerator(v_);
      bigint den = boost::multiprecision::denominator(v_);
      if (den != 1) {
        // Literals never carry a denominator in F_c, but arithmetic through
        // bigrat cannot produce one either; reduce defensively via inverse.
        num = num * mod_inverse(den, ring_.characteristic);
      }
      num %= c;
      if (num < 0) num += c;
      v_ = bigrat(num);
    } else if (ring_.kind == RingKind::integers) {
      if (boost::multiprecision::denominator(v_) != 1)
        throw ring_error("non-integer value in Z: " + v_.str());
    }
  }

  void check_same_ring(const Value& o) const {
    if (ring_ != o.ring_)
      throw ring_error("ring mismatch: " + ring_.name() + " vs " +
                       o.ring_.name());
  }

  static bigint mod_inverse(bigint a, std::int64_t m) {
    bigint mm(m);
    a %= mm;
    if (a < 0) a += mm;
    if (a == 0) throw precondition_error("not invertible mod " + mm.str());
    // extended Euclid
    bigint r0 = mm, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      bigint q = r0 / r1;
      bigint r2 = r0 - q * r1;
      bigint s2 = s0 - q * s1;
      r0 = r1; r1 = r2;
      s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw precondition_error("not invertible mod " + mm.str());
    s0 %= mm;
    if (s0 < 0) s0 += mm;
    return s0;
  }

  Ring ring_;
  bigrat v_;
};

}  // namespace formalflows

#endif
