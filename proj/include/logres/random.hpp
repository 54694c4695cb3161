#pragma once

#include <random>

#include "logres/clifford.hpp"
#include "logres/geometry.hpp"
#include "logres/symbol.hpp"

namespace logres {

/// Sparse random element of C(V) (x) End(W).
inline CliffordElem random_clifford(int n, int dw, std::mt19937_64& rng, int blades = 4) {
  std::uniform_int_distribution<Blade> pick(0, top_blade(n));
  CliffordElem e(n, dw);
  for (int t = 0; t < blades; ++t) e.add(pick(rng), random_matrix(dw, rng));
  return e;
}

/// Even (parity 0) or odd (parity 1) part of a Clifford element.
inline CliffordElem parity_part(const CliffordElem& a, int parity) {
  CliffordElem r(a.n(), a.dw());
  for (const auto& [b, m] : a.coeffs())
    if (blade_grade(b) % 2 == parity) r.add(b, m);
  return r;
}

/// Random sigma_{<2}: an order-1 part sum_a c_a(x) xi_a plus an order-0 part c(x), with sparse
/// x-polynomial coefficients of total degree <= n - 1.
inline ClassicalSymbol random_generalised_laplacian(int n, int dw, std::mt19937_64& rng, int terms = 3) {
  std::uniform_int_distribution<int> var(0, n - 1), deg(0, n - 1);
  auto random_x = [&] {
    Exps x = 0;
    for (int d = deg(rng); d > 0; --d) x += unit_exp(var(rng));
    return x;
  };
  HomSymbol d1(n, dw, 1), d0(n, dw, 0);
  for (int t = 0; t < terms; ++t) {
    CliffordElem c1 = random_clifford(n, dw, rng, 2), c0 = random_clifford(n, dw, rng, 2);
    Exps x1 = random_x(), x0 = random_x(), xi = unit_exp(var(rng));
    for (const auto& [b, m] : c1.coeffs()) d1.add_term(x1, xi, b, m);
    for (const auto& [b, m] : c0.coeffs()) d0.add_term(x0, 0, b, m);
  }
  ClassicalSymbol q(n, dw, 1);
  q.add(d1);
  q.add(d0);
  return q;
}

}  // namespace logres
