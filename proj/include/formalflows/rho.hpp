#ifndef FORMALFLOWS_RHO_HPP
#define FORMALFLOWS_RHO_HPP

#include <cstdint>

#include "formalflows/ring.hpp"

namespace formalflows {

/// Exact binomial coefficient C(n, k) over Z.
inline bigint binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  bigint r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// Basic sum-function rho_m(k) = pi_K(C(m+k, m)).  Computed through the
/// exact binomial and then reduced into the ring; the defining partial-sum
/// recurrence is kept as a test oracle only.
inline Value rho_eval(std::int64_t m, std::int64_t k, const Ring& R) {
  if (m < 0 || k < 0) throw precondition_error("rho_eval needs m, k >= 0");
  return Value::from_integer(R, binomial(m + k, m));
}

}  // namespace formalflows

#endif
