#include "doctest.h"
#include "test_util.hpp"

using namespace formalflows;
using fftest::rand_int;

namespace {

/// Defining recurrence, kept independent of the binomial implementation:
/// rho_0 = 1, rho_{m+1}(k) = sum_{r<=k} rho_m(r).
Value rho_recurrence(std::int64_t m, std::int64_t k, const Ring& R) {
  std::vector<Value> row(k + 1, Value::one(R));
  for (std::int64_t level = 1; level <= m; ++level) {
    Value acc = Value::zero(R);
    for (std::int64_t i = 0; i <= k; ++i) {
      acc = acc + row[i];
      row[i] = acc;
    }
  }
  return row[k];
}

}  // namespace

TEST_CASE("rho values") {
  Ring Z = Ring::Z();
  std::int64_t expected[] = {1, 3, 6, 10};
  for (std::int64_t k = 0; k <= 3; ++k)
    CHECK(rho_eval(2, k, Z) == Value::from_integer(Z, expected[k]));
  for (std::int64_t k = 0; k <= 10; ++k)
    CHECK(rho_eval(0, k, Z) == Value::one(Z));

  Ring F2 = Ring::Fp(2);
  std::int64_t row4[] = {1, 1, 1, 1, 0, 0, 0, 0};
  for (std::int64_t k = 0; k <= 7; ++k)
    CHECK(rho_eval(4, k, F2) == Value::from_integer(F2, row4[k]));
}

TEST_CASE("rho matches the recurrence oracle") {
  for (const Ring& R : {Ring::Z(), Ring::Fp(2), Ring::Fp(5)}) {
    for (std::int64_t m = 0; m <= 64; m += 7) {
      for (std::int64_t k = 0; k <= 64; k += 9)
        CHECK(rho_eval(m, k, R) == rho_recurrence(m, k, R));
    }
  }
}

TEST_CASE("sum-function evaluation") {
  Ring Z = Ring::Z();
  SumFunction h(Z, {Value::zero(Z), Value::one(Z)});  // rho_1(k) = k+1
  CHECK(h.eval(4) == Value::from_integer(Z, 5));
  CHECK(SumFunction::zero(Z).eval(3).is_zero());

  Ring F2 = Ring::Fp(2);
  SumFunction g(F2, {Value::one(F2), Value::zero(F2), Value::one(F2)});
  std::int64_t expected[] = {0, 0, 1, 1, 0, 0, 1, 1};
  for (std::int64_t k = 0; k <= 7; ++k)
    CHECK(g.eval(k) == Value::from_integer(F2, expected[k]));
}

TEST_CASE("degree conventions") {
  Ring Z = Ring::Z();
  CHECK_FALSE(SumFunction::zero(Z).degree().has_value());
  CHECK(SumFunction::basis(Z, 3).degree() == 3);
  // trailing zeros are trimmed
  SumFunction h(Z, {Value::one(Z), Value::zero(Z)});
  CHECK(h.degree() == 0);
}

TEST_CASE("fit_char0") {
  Ring Z = Ring::Z();
  // p(k) = k^2 at k = 0, 1, 2
  std::vector<Value> vals{Value::from_integer(Z, 0), Value::from_integer(Z, 1),
                          Value::from_integer(Z, 4)};
  SumFunction h = fit_char0(Z, vals);
  CHECK(h.coeffs() == std::vector<Value>{Value::from_integer(Z, 1),
                                         Value::from_integer(Z, -3),
                                         Value::from_integer(Z, 2)});
  for (std::int64_t k = 0; k <= 10; ++k)
    CHECK(h.eval(k) == Value::from_integer(Z, k * k));

  // constants
  SumFunction c = fit_char0(Z, {Value::from_integer(Z, 7)});
  CHECK(c.coeffs() == std::vector<Value>{Value::from_integer(Z, 7)});

  // the Pascal system on nodes 0..n-1 is unimodular, so integer values
  // always certify as integral
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Value> vs;
    int n = static_cast<int>(fftest::rand_int(1, 6));
    for (int k = 0; k < n; ++k) vs.push_back(fftest::rand_value(Z, -9, 9));
    SumFunction f = fit_char0(Z, vs);
    for (int k = 0; k < n; ++k) CHECK(f.eval(k) == vs[k]);
  }

  // rational data fits over Q
  Ring Q = Ring::Q();
  std::vector<Value> vq{Value(Q, bigrat(1, 2)), Value(Q, bigrat(1, 3))};
  SumFunction hq = fit_char0(Q, vq);
  CHECK(hq.eval(0) == vq[0]);
  CHECK(hq.eval(1) == vq[1]);
}

TEST_CASE("fit_char0 round trip on random integer-valued polynomials") {
  Ring Z = Ring::Z();
  for (int trial = 0; trial < 20; ++trial) {
    int deg = static_cast<int>(rand_int(0, 5));
    std::vector<Value> lambda;
    for (int i = 0; i <= deg; ++i)
      lambda.push_back(Value::from_integer(Z, rand_int(-5, 5)));
    SumFunction h(Z, lambda);
    std::vector<Value> vals;
    for (std::int64_t k = 0; k <= deg; ++k) vals.push_back(h.eval(k));
    CHECK(fit_char0(Z, vals) == h);
  }
}

TEST_CASE("k^n is a sum-function for n <= 6") {
  Ring Z = Ring::Z();
  for (int n = 0; n <= 6; ++n) {
    std::vector<Value> vals;
    for (std::int64_t k = 0; k <= n; ++k) {
      bigint p = 1;
      for (int i = 0; i < n; ++i) p *= k;
      vals.push_back(Value::from_integer(Z, p));
    }
    SumFunction h = fit_char0(Z, vals);  // integrality certification inside
    for (std::int64_t k = 0; k <= 12; ++k) {
      bigint p = 1;
      for (int i = 0; i < n; ++i) p *= k;
      CHECK(h.eval(k) == Value::from_integer(Z, p));
    }
  }
}

TEST_CASE("fit_charc") {
  Ring F3 = Ring::Fp(3);
  auto v3 = [&](std::initializer_list<int> xs) {
    std::vector<Value> out;
    for (int x : xs) out.push_back(Value::from_integer(F3, x));
    return out;
  };
  CHECK(fit_charc(F3, v3({1, 1, 1})) == SumFunction::basis(F3, 0));
  CHECK(fit_charc(F3, v3({1, 2, 0})) == SumFunction::basis(F3, 1));

  Ring F2 = Ring::Fp(2);
  std::vector<Value> p2{Value::one(F2), Value::one(F2), Value::zero(F2),
                        Value::zero(F2)};
  CHECK(fit_charc(F2, p2) == SumFunction::basis(F2, 2));

  CHECK_THROWS_AS(fit_charc(F3, v3({1, 1})), precondition_error);
}

TEST_CASE("fit_charc round trip on random period tables") {
  for (std::int64_t c : {2LL, 3LL, 5LL}) {
    Ring F = Ring::Fp(c);
    int rmax = c == 5 ? 2 : 3;
    for (int r = 0; r <= rmax; ++r) {
      std::int64_t n = 1;
      for (int i = 0; i < r; ++i) n *= c;
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Value> vals;
        for (std::int64_t k = 0; k < n; ++k)
          vals.push_back(Value::from_integer(F, rand_int(0, c - 1)));
        SumFunction h = fit_charc(F, vals);
        for (std::int64_t k = 0; k < 2 * n; ++k)
          CHECK(h.eval(k) == vals[k % n]);
      }
    }
  }
}

TEST_CASE("period_of") {
  Ring F2 = Ring::Fp(2), F3 = Ring::Fp(3);
  CHECK(period_of(SumFunction::basis(F2, 1)) == 2);
  CHECK(period_of(SumFunction::basis(F2, 3)) == 4);
  CHECK(period_of(SumFunction::basis(F3, 0)) == 1);
  // the five char-2 basis rows have periods 1, 2, 4, 4, 8
  std::int64_t expected[] = {1, 2, 4, 4, 8};
  for (std::int64_t m = 0; m <= 4; ++m)
    CHECK(period_of(SumFunction::basis(F2, m)) == expected[m]);
  CHECK_THROWS_AS(period_of(SumFunction::basis(Ring::Z(), 1)),
                  precondition_error);
}

TEST_CASE("product top coefficient is C(m+n, n) in the ring") {
  for (const Ring& R : {Ring::Z(), Ring::Fp(2), Ring::Fp(3)}) {
    for (int trial = 0; trial < 12; ++trial) {
      std::int64_t m = rand_int(0, 16), n = rand_int(0, 16);
      SumFunction p = sumfn_mul(SumFunction::basis(R, m),
                                SumFunction::basis(R, n));
      Value top = Value::from_integer(R, binomial(m + n, n));
      if (top.is_zero()) {
        CHECK((!p.degree() || *p.degree() < m + n));
      } else {
        REQUIRE(p.degree() == m + n);
        CHECK(p.coeffs().back() == top);
      }
    }
  }
}

TEST_CASE("rho_1 squared over Z and F_2") {
  Ring Z = Ring::Z();
  SumFunction p = sumfn_mul(SumFunction::basis(Z, 1), SumFunction::basis(Z, 1));
  REQUIRE(p.degree() == 2);
  CHECK(p.coeffs()[2] == Value::from_integer(Z, 2));
  for (std::int64_t k = 0; k <= 8; ++k)
    CHECK(p.eval(k) == Value::from_integer(Z, (k + 1) * (k + 1)));

  Ring F2 = Ring::Fp(2);
  SumFunction q =
      sumfn_mul(SumFunction::basis(F2, 1), SumFunction::basis(F2, 1));
  CHECK((!q.degree() || *q.degree() < 2));  // top coefficient 2 = 0 mod 2

  Ring Q = Ring::Q();
  CHECK(sumfn_mul(SumFunction::basis(Q, 3), SumFunction::zero(Q)).is_zero());
}

TEST_CASE("products stay pointwise correct") {
  for (const Ring& R : {Ring::Z(), Ring::Fp(3)}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Value> la, lb;
      for (int i = 0, n = static_cast<int>(rand_int(1, 4)); i <= n; ++i)
        la.push_back(fftest::rand_value(R));
      for (int i = 0, n = static_cast<int>(rand_int(1, 4)); i <= n; ++i)
        lb.push_back(fftest::rand_value(R));
      SumFunction a(R, la), b(R, lb);
      SumFunction p = sumfn_mul(a, b);
      SumFunction s = sumfn_add(a, b);
      std::int64_t degsum =
          (a.degree() ? *a.degree() : 0) + (b.degree() ? *b.degree() : 0);
      if (p.degree()) CHECK(*p.degree() <= degsum);
      for (std::int64_t k = 0; k <= 2 * degsum + 2; ++k) {
        CHECK(p.eval(k) == a.eval(k) * b.eval(k));
        CHECK(s.eval(k) == a.eval(k) + b.eval(k));
      }
    }
  }
}
