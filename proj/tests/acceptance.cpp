// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Every check is exact; there are no tolerances anywhere.

#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "formalflows/formalflows.hpp"

using namespace formalflows;

namespace {

std::mt19937 gen(20240817);

std::int64_t rand_int(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
}

Value rand_value(const Ring& R) {
  if (R.kind == RingKind::prime_field)
    return Value::from_integer(R, rand_int(0, R.characteristic - 1));
  return Value::from_integer(R, rand_int(-4, 4));
}

Value rand_rational(std::int64_t h) {
  return Value(Ring::Q(), bigrat(rand_int(-h, h), rand_int(1, h)));
}

FormalMap rand_tangent_map(const Ring& R, int dim, int cap) {
  std::vector<Series> comps;
  for (int i = 0; i < dim; ++i) {
    Series s = Series::variable(R, dim, cap, i);
    int terms = static_cast<int>(rand_int(1, 4));
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(dim);
      int deg = static_cast<int>(rand_int(2, cap));
      for (int j = 0; j < dim && deg > 0; ++j) {
        e[j] = static_cast<int>(rand_int(j + 1 == dim ? deg : 0, deg));
        deg -= e[j];
      }
      if (Monomial(e).degree() >= 2) s.add_term(Monomial(e), rand_value(R));
    }
    comps.push_back(std::move(s));
  }
  return FormalMap(std::move(comps));
}

/// x/(1 + k x) = sum_j (-k)^j x^{j+1}, truncated.
FormalMap mobius_map(const Ring& R, int cap, std::int64_t k) {
  Series s(R, 1, cap);
  Value coeff = Value::one(R);
  Value mk = Value::from_integer(R, -k);
  for (int j = 0; j + 1 <= cap; ++j) {
    s.add_term(Monomial({j + 1}), coeff);
    coeff = coeff * mk;
  }
  return FormalMap({s});
}

FormalMap map1(const Ring& R, int cap, const std::vector<std::int64_t>& cs) {
  Series s(R, 1, cap);
  for (std::size_t j = 0; j < cs.size(); ++j)
    s.add_term(Monomial({static_cast<int>(j) + 1}),
               Value::from_integer(R, cs[j]));
  return FormalMap({s});
}

/// All monomials of degree 1..cap in dim variables.
std::vector<Monomial> monomials_upto(int dim, int cap) {
  std::vector<Monomial> out;
  std::vector<int> e(dim, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == dim) {
      Monomial m(e);
      if (m.degree() >= 1) out.push_back(m);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[i] = v;
      rec(i + 1, left - v);
    }
    e[i] = 0;
  };
  rec(0, cap);
  return out;
}

/// Degree-by-degree solver for h o h = g in one variable (g tangent to the
/// identity over Q); independent of the interpolation route.
FormalMap half_iterate_solver(const FormalMap& g) {
  const Ring Q = Ring::Q();
  const int cap = g.cap();
  Series hs = Series::variable(Q, 1, cap, 0);
  const Value half(Q, bigrat(1, 2));
  for (int n = 2; n <= cap; ++n) {
    FormalMap h({hs});
    Series err = g.component(0) - compose(h, h).component(0);
    Value a = err.coeff(Monomial({n})) * half;
    if (!a.is_zero()) hs.add_term(Monomial({n}), a);
  }
  return FormalMap({hs});
}

/// Pascal triangle mod c, rows 0..nmax.
std::vector<std::vector<std::int64_t>> pascal_mod(std::int64_t nmax,
                                                  std::int64_t c) {
  std::vector<std::vector<std::int64_t>> tri(nmax + 1);
  for (std::int64_t n = 0; n <= nmax; ++n) {
    tri[n].assign(n + 1, 1);
    for (std::int64_t k = 1; k < n; ++k)
      tri[n][k] = (tri[n - 1][k - 1] + tri[n - 1][k]) % c;
  }
  return tri;
}

bool criterion_1() {
  std::int64_t e3[3][3] = {{1, 1, 1}, {1, 2, 0}, {1, 0, 0}};
  std::int64_t e5[5][5] = {{1, 1, 1, 1, 1},
                           {1, 2, 3, 4, 0},
                           {1, 3, 1, 0, 0},
                           {1, 4, 0, 0, 0},
                           {1, 0, 0, 0, 0}};
  BlockMatrix t3 = template_matrix(3), t5 = template_matrix(5);
  for (int m = 0; m < 3; ++m)
    for (int k = 0; k < 3; ++k)
      if (t3.at(m, k) != e3[m][k]) return false;
  for (int m = 0; m < 5; ++m)
    for (int k = 0; k < 5; ++k)
      if (t5.at(m, k) != e5[m][k]) return false;
  return true;
}

bool criterion_2() {
  const Ring F2 = Ring::Fp(2);
  std::int64_t rows[5][8] = {{1, 1, 1, 1, 1, 1, 1, 1},
                             {1, 0, 1, 0, 1, 0, 1, 0},
                             {1, 1, 0, 0, 1, 1, 0, 0},
                             {1, 0, 0, 0, 1, 0, 0, 0},
                             {1, 1, 1, 1, 0, 0, 0, 0}};
  std::int64_t periods[5] = {1, 2, 4, 4, 8};
  for (std::int64_t m = 0; m < 5; ++m) {
    for (std::int64_t k = 0; k < 8; ++k)
      if (rho_eval(m, k, F2) != Value::from_integer(F2, rows[m][k]))
        return false;
    if (period_of(SumFunction::basis(F2, m)) != periods[m]) return false;
  }
  return true;
}

bool criterion_3() {
  for (std::int64_t c : {2LL, 3LL, 5LL}) {
    auto tri = pascal_mod(248, c);
    for (std::int64_t m = 0; m < 125; ++m)
      for (std::int64_t k = 0; k < 125; ++k)
        if (rho_product_formula(m, k, c) != tri[m + k][k]) return false;
  }
  return true;
}

bool criterion_4() {
  for (std::int64_t c : {2LL, 3LL, 5LL}) {
    const Ring F = Ring::Fp(c);
    FormalMap g = mobius_map(F, 8, 1);
    for (std::int64_t k = 0; k <= 2 * c; ++k)
      if (iterate(g, k) != mobius_map(F, 8, k)) return false;
    if (iterate(g, c) != FormalMap::identity(F, 1, 8)) return false;
    auto ord = order_upto(g, 2 * static_cast<int>(c));
    if (!ord || *ord != c) return false;
  }
  return true;
}

bool criterion_5() {
  for (int trial = 0; trial < 20; ++trial) {
    int d = static_cast<int>(rand_int(1, 2));
    int cap = static_cast<int>(rand_int(3, 6));
    FormalMap g = rand_tangent_map(Ring::Q(), d, cap);
    std::vector<FormalMap> its{FormalMap::identity(Ring::Q(), d, cap)};
    for (int k = 1; k <= cap + 3; ++k) its.push_back(compose(g, its.back()));
    for (const Monomial& m : monomials_upto(d, cap)) {
      CoeffPoly p = coeff_poly(g, m);
      if (p.degree() >= m.degree()) return false;
      for (int k = m.degree(); k <= cap + 3; ++k)
        for (int j = 0; j < d; ++j)
          if (p.eval(j, Value::from_integer(Ring::Q(), k)) !=
              its[k].component(j).coeff(m))
            return false;
    }
  }
  return true;
}

std::vector<FormalMap> g_lawmaps;  // reused by criterion 7

bool criterion_6() {
  for (int trial = 0; trial < 50; ++trial) {
    int d = static_cast<int>(rand_int(1, 2));
    int cap = static_cast<int>(rand_int(3, 5));
    FormalMap g = rand_tangent_map(Ring::Q(), d, cap);
    g_lawmaps.push_back(g);
    Value a = rand_rational(5), b = rand_rational(5);
    if (!group_law_check(g, a, b)) return false;
  }
  return true;
}

bool criterion_7() {
  Value minus_one = Value::from_integer(Ring::Q(), -1);
  for (const FormalMap& g : g_lawmaps)
    if (frac_iterate(g, minus_one) != invert(g)) return false;
  return true;
}

bool criterion_8() {
  FormalMap g = map1(Ring::Q(), 8, {1, 1});
  Value half(Ring::Q(), bigrat(1, 2));
  FormalMap h = frac_iterate(g, half);
  return h == half_iterate_solver(g) && iterate(h, 2) == g;
}

bool criterion_9() {
  const Ring F3 = Ring::Fp(3);
  const int cap = 8;
  for (int trial = 0; trial < 10; ++trial) {
    FormalMap g = rand_tangent_map(F3, 1, cap);
    std::vector<FormalMap> its{FormalMap::identity(F3, 1, cap)};
    for (int k = 1; k < 2 * 9; ++k) its.push_back(compose(g, its.back()));
    for (int deg = 1; deg <= cap; ++deg) {
      std::int64_t period = 1;
      while (period < deg) period *= 3;
      Monomial m({deg});
      std::vector<Value> vals;
      for (std::int64_t k = 0; k < period; ++k)
        vals.push_back(its[k].component(0).coeff(m));
      SumFunction f = fit_charc(F3, vals);
      if (f.degree() && *f.degree() >= deg) return false;
      for (std::int64_t k = 0; k < period; ++k) {
        if (f.eval(k) != vals[k]) return false;
        // the next full period is a prediction, not part of the fit
        if (f.eval(k + period) != its[k + period].component(0).coeff(m))
          return false;
      }
    }
  }
  return true;
}

bool criterion_10() {
  for (std::int64_t c : {2LL, 3LL})
    for (std::int64_t n = 1; n <= 5; ++n) {
      if (n % c == 0) continue;
      FormalMap g = rand_tangent_map(Ring::Fp(c), 1, 7);
      if (iterate(cadic_root(g, n), n) != g) return false;
    }
  return true;
}

bool criterion_11() {
  for (auto [c, r] : {std::pair<std::int64_t, int>{2, 3}, {3, 2}, {5, 1}}) {
    const Ring F = Ring::Fp(c);
    BlockMatrix B = block_matrix(c, r);
    std::int64_t n = B.size();
    for (std::int64_t m = 0; m < n; ++m)
      for (std::int64_t k = 0; k < n; ++k) {
        if (B.at(m, k) != B.at(k, m)) return false;
        if (m + k >= n && B.at(m, k) != 0) return false;
      }
    std::vector<std::int64_t> anti;
    try {
      anti = antidiagonal(c, r);  // throws unless alternating +-1
    } catch (const error&) {
      return false;
    }
    for (std::int64_t m = 0; m < n; ++m)
      if (anti[m] != (m % 2 == 0 ? 1 % c : (c - 1) % c)) return false;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Value> lambda;
      for (std::int64_t j = 0; j < n; ++j)
        lambda.push_back(Value::from_integer(F, rand_int(0, c - 1)));
      std::vector<Value> values;
      for (std::int64_t k = 0; k < n; ++k) {
        Value s = Value::zero(F);
        for (std::int64_t j = 0; j < n; ++j)
          s = s + Value::from_integer(F, B.at(k, j)) * lambda[j];
        values.push_back(s);
      }
      if (solve_against_Br(values, c, r) != lambda) return false;
    }
  }
  return true;
}

bool criterion_12() {
  FormalMap h = map1(Ring::Q(), 8, {-1, 1});
  auto f = factor_finite_linear_part(h);
  if (f.order != 2) return false;
  if (!f.tangent.is_tangent_identity()) return false;
  FormalMap id = FormalMap::identity(Ring::Q(), 1, 8);
  if (f.torsion == id) return false;
  if (iterate(f.torsion, 2) != id) return false;  // exact order 2
  // u = h o torsion, the two parts commute, and h is recovered
  if (compose(h, f.torsion) != f.tangent) return false;
  if (compose(f.tangent, f.torsion) != compose(f.torsion, f.tangent))
    return false;
  if (compose(f.tangent, invert(f.torsion)) != h) return false;
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    bool (*run)();
  };
  const Criterion table[] = {
      {"1  template matrices c=3 and c=5", criterion_1},
      {"2  char-2 rho rows and periods 1,2,4,4,8", criterion_2},
      {"3  product formula vs Pascal mod c, m,k < 125", criterion_3},
      {"4  x/(1+x) iterates over F_2, F_3, F_5", criterion_4},
      {"5  coefficient polynomials predict later iterates", criterion_5},
      {"6  group law g^(a) o g^(b) = g^(a+b)", criterion_6},
      {"7  fractional iterate at -1 is the inverse", criterion_7},
      {"8  half-iterate of x+x^2 vs independent solver", criterion_8},
      {"9  char-3 coefficient fits: degree bound and prediction", criterion_9},
      {"10 c-adic roots compose back to g", criterion_10},
      {"11 B_r solver round trip, antidiagonal, symmetry", criterion_11},
      {"12 factorization of -x+x^2 into torsion and tangent", criterion_12},
  };
  int failures = 0;
  for (const Criterion& c : table) {
    bool ok;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::cout << "FAIL " << c.label << " (exception: " << e.what() << ")\n";
      ++failures;
      continue;
    }
    std::cout << (ok ? "PASS " : "FAIL ") << c.label << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
