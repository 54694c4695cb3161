#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "logres/clifford.hpp"
#include "logres/monomial.hpp"
#include "logres/scalar.hpp"
#include "logres/symbol.hpp"

namespace logres {

enum class TraceKind { tr, str };

inline std::string to_string(TraceKind k) { return k == TraceKind::tr ? "tr" : "str"; }

inline Rational double_factorial(int k) {
  Rational r = 1;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

/// Closed-form integral of xi^alpha over the unit sphere S^{n-1}, n even.
inline PiScalar sphere_moment_closed(int n, Exps alpha) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("sphere moments need even n >= 2");
  int p = n / 2;
  Rational c = Rational(2) / factorial(p - 1);
  int total = 0;
  for (int i = 0; i < n; ++i) {
    int a = exp_at(alpha, i);
    if (a % 2 != 0) return {};
    c *= double_factorial(a - 1);
    total += a;
  }
  for (int j = 0; j < total / 2; ++j) c /= n + 2 * j;
  return {Scalar(c), p};
}

// Test hook: replaces the moment table (negative controls in the selftest).
inline std::function<PiScalar(int, Exps)>& sphere_moment_override() {
  static std::function<PiScalar(int, Exps)> hook;
  return hook;
}

inline PiScalar sphere_moment(int n, Exps alpha) {
  if (auto& hook = sphere_moment_override()) return hook(n, alpha);
  return sphere_moment_closed(n, alpha);
}

/// (2pi)^{-n} * integral over |xi| = 1 of the (super)trace of the degree -n component at x = 0.
inline PiScalar residue_density(const ClassicalSymbol& s, TraceKind kind) {
  int n = s.n();
  if (n % 2 != 0) throw std::invalid_argument("residue density needs even dimension");
  if (s.floor() > -n)
    throw std::invalid_argument("symbol truncated above degree -n (floor " +
                                std::to_string(s.floor()) + ")");
  HomSymbol h = s.comp(-n);
  PiScalar acc;
  for (const auto& [k, m] : h.terms()) {
    if (k.x != 0) continue;
    Scalar tr = kind == TraceKind::str ? blade_str_value(n, k.blade, m) : blade_tr_value(n, k.blade, m);
    if (tr.is_zero()) continue;
    acc += tr * sphere_moment(n, k.xi);
  }
  Rational scale = 1;
  for (int i = 0; i < n; ++i) scale /= 2;
  return Scalar(scale) * acc * PiScalar(Scalar(1), -n);
}

}  // namespace logres
