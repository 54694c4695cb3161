#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "logres/monomial.hpp"
#include "logres/symbol.hpp"

namespace logres {

// Jet bound: when set, the degree-d component keeps only x-degree <= d + offset.
// The weight (x-degree minus xi-degree) is additive under every operation here,
// so the truncation commutes with star, brackets and the Neumann series as long
// as all factors have nonnegative weight.
using JetBound = std::optional<int>;

namespace detail {

inline Rational alpha_factorial(Exps alpha, int n) {
  Rational f = 1;
  for (int i = 0; i < n; ++i) f *= factorial(exp_at(alpha, i));
  return f;
}

// (-i)^k
inline Scalar minus_i_pow(int k) {
  switch (k & 3) {
    case 0: return Scalar(1);
    case 1: return Scalar(0, -1);
    case 2: return Scalar(-1);
    default: return Scalar(0, 1);
  }
}

// Memoized xi-derivatives of a fixed homogeneous symbol.
class XiDerivatives {
 public:
  explicit XiDerivatives(const HomSymbol& h) { cache_.emplace(Exps{0}, h); }

  const HomSymbol& get(Exps alpha) {
    auto it = cache_.find(alpha);
    if (it != cache_.end()) return it->second;
    int i = 0;
    while (exp_at(alpha, i) == 0) ++i;
    HomSymbol d = get(alpha - unit_exp(i, 1)).d_xi(i);
    return cache_.emplace(alpha, std::move(d)).first->second;
  }

 private:
  std::map<Exps, HomSymbol> cache_;
};

// Accumulates sum_alpha (-i)^|alpha|/alpha! d_xi^alpha a * d_x^alpha b into out[degree].
inline void star_pair(XiDerivatives& da, int deg_a, const HomSymbol& b, int out_floor,
                      JetBound jet, std::map<int, HomSymbol>& out, int n, int dw,
                      bool only_floor = false) {
  int max_alpha = deg_a + b.degree() - out_floor;
  if (max_alpha < 0) return;
  for (const auto& [kb, mb] : b.terms()) {
    int gdeg = total_degree(kb.x);
    for (Exps alpha : sub_exponents(kb.x, n, max_alpha)) {
      int na = total_degree(alpha);
      if (only_floor && na != max_alpha) continue;
      int d = deg_a + b.degree() - na;
      const HomSymbol& dxa = da.get(alpha);
      if (dxa.is_zero()) continue;
      Rational c = 1;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < exp_at(alpha, i); ++j) c *= exp_at(kb.x, i) - j;
      c /= alpha_factorial(alpha, n);
      Scalar coeff = minus_i_pow(na) * Scalar(c);
      TermKey kb2{kb.x - alpha, kb.xi, kb.blade};
      auto [it, fresh] = out.try_emplace(d, n, dw, d);
      HomSymbol& target = it->second;
      for (const auto& [ka, ma] : dxa.terms()) {
        if (jet && total_degree(ka.x) + gdeg - na > d + *jet) continue;
        target.add_scaled_product(ka, ma, kb2, mb, coeff);
      }
    }
  }
}

}  // namespace detail

/// s * t = sum_alpha (-i)^|alpha|/alpha! d_xi^alpha s d_x^alpha t, degrees >= floor.
inline ClassicalSymbol star(const ClassicalSymbol& s, const ClassicalSymbol& t, int floor,
                            JetBound jet = std::nullopt) {
  if (s.n() != t.n() || s.dw() != t.dw()) throw DimensionMismatch("star operands differ in n or d_W");
  int fl = std::max({floor, ClassicalSymbol::sat_add(s.floor(), t.order()),
                     ClassicalSymbol::sat_add(t.floor(), s.order())});
  ClassicalSymbol r(s.n(), s.dw(), s.order() + t.order(), fl);
  std::map<int, HomSymbol> out;
  for (const auto& [da, ha] : s.comps()) {
    detail::XiDerivatives dxi(ha);
    for (const auto& [db, hb] : t.comps()) {
      if (da + db < fl) continue;
      detail::star_pair(dxi, da, hb, fl, jet, out, s.n(), s.dw());
    }
  }
  for (auto& [d, h] : out) r.add(h);
  return r;
}

/// {s, t} = s*t - t*s.
inline ClassicalSymbol bracket(const ClassicalSymbol& s, const ClassicalSymbol& t, int floor,
                               JetBound jet = std::nullopt) {
  return star(s, t, floor, jet) - star(t, s, floor, jet);
}

/// L_x = -2i sum_a xi_a d_{x_a} applied to one component.
inline HomSymbol apply_L(const HomSymbol& h) {
  HomSymbol r(h.n(), h.dw(), h.degree() + 1);
  for (int a = 0; a < h.n(); ++a) {
    HomSymbol d = h.d_x(unit_exp(a, 1));
    for (const auto& [k, m] : d.terms()) r.add_term(k.x, k.xi + unit_exp(a, 1), k.blade, m * Scalar(0, -2));
  }
  return r;
}

/// Delta_x = -sum_a d_{x_a}^2 applied to one component.
inline HomSymbol apply_Delta(const HomSymbol& h) {
  HomSymbol r(h.n(), h.dw(), h.degree());
  for (int a = 0; a < h.n(); ++a) r -= h.d_x(unit_exp(a, 2));
  return r;
}

/// (L_x + Delta_x)^k t, the k-fold bracket with |xi|^2.
inline ClassicalSymbol ad_xi2(const ClassicalSymbol& t, int k, JetBound jet = std::nullopt) {
  if (k < 0) throw std::invalid_argument("ad_xi2 power must be nonnegative");
  ClassicalSymbol cur = t;
  for (int step = 0; step < k; ++step) {
    int fl = cur.floor() == kExactFloor ? kExactFloor : cur.floor() + 1;
    ClassicalSymbol next(t.n(), t.dw(), cur.order() + 1, fl);
    for (const auto& [d, h] : cur.comps()) {
      next.add(apply_L(h));
      next.add(apply_Delta(h));
    }
    // each remaining step lowers the weight by 2
    cur = jet ? next.truncate_jets(*jet + 2 * (k - step - 1)) : next;
  }
  return cur;
}

/// d_xi^alpha log|xi|^2 for |alpha| >= 1, homogeneous of degree -|alpha|.
inline HomSymbol dxi_log_xi2(int n, int dw, Exps alpha) {
  int i = 0;
  while (exp_at(alpha, i) == 0) ++i;
  HomSymbol h(n, dw, -1);
  h.add_term(0, unit_exp(i, 1), 0, Scalar(2));
  Exps rest = alpha - unit_exp(i, 1);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < exp_at(rest, a); ++j) h = h.d_xi(a);
  return h;
}

/// {log|xi|^2, t} = sum_{|alpha|>=1} (-i)^|alpha|/alpha! d_xi^alpha log|xi|^2 d_x^alpha t.
inline ClassicalSymbol log_bracket(const ClassicalSymbol& t, int floor, JetBound jet = std::nullopt) {
  int n = t.n(), dw = t.dw();
  int fl = std::max(floor, t.floor() == kExactFloor ? kExactFloor : t.floor() - 1);
  ClassicalSymbol r(n, dw, t.order() - 1, fl);
  std::map<Exps, HomSymbol> logd;
  std::map<int, HomSymbol> out;
  for (const auto& [d, h] : t.comps()) {
    int max_alpha = d - fl;
    if (max_alpha < 1) continue;
    for (const auto& [kb, mb] : h.terms()) {
      int gdeg = total_degree(kb.x);
      for (Exps alpha : sub_exponents(kb.x, n, max_alpha)) {
        int na = total_degree(alpha);
        if (na == 0) continue;
        int od = d - na;
        auto lit = logd.find(alpha);
        if (lit == logd.end()) lit = logd.emplace(alpha, dxi_log_xi2(n, dw, alpha)).first;
        Rational c = 1;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < exp_at(alpha, i); ++j) c *= exp_at(kb.x, i) - j;
        c /= detail::alpha_factorial(alpha, n);
        Scalar coeff = detail::minus_i_pow(na) * Scalar(c);
        TermKey kb2{kb.x - alpha, kb.xi, kb.blade};
        auto [it, fresh] = out.try_emplace(od, n, dw, od);
        for (const auto& [ka, ma] : lit->second.terms()) {
          if (jet && gdeg - na > od + *jet) continue;
          it->second.add_scaled_product(ka, ma, kb2, mb, coeff);
        }
      }
    }
  }
  for (auto& [d, h] : out) r.add(h);
  return r;
}

/// Degree-d component of s * t (all contributing pairs).
inline HomSymbol star_component(const ClassicalSymbol& s, const ClassicalSymbol& t, int d,
                                JetBound jet = std::nullopt) {
  std::map<int, HomSymbol> out;
  for (const auto& [da, ha] : s.comps()) {
    detail::XiDerivatives dxi(ha);
    for (const auto& [db, hb] : t.comps()) {
      if (da + db < d) continue;
      detail::star_pair(dxi, da, hb, d, jet, out, s.n(), s.dw(), true);
    }
  }
  auto it = out.find(d);
  return it == out.end() ? HomSymbol(s.n(), s.dw(), d) : it->second;
}

/// Right parametrix t with s * t = 1 at degrees >= floor.
inline ClassicalSymbol parametrix(const ClassicalSymbol& s, int floor, JetBound jet = std::nullopt) {
  int a = s.leading_degree(kExactFloor);
  if (a == kExactFloor) throw std::domain_error("parametrix of the zero symbol");
  const HomSymbol lead = s.comp(a);
  Scalar c;
  bool ok = lead.size() == 1 && lead.terms().begin()->first == TermKey{} &&
            lead.terms().begin()->second.is_scalar(&c) && !c.is_zero();
  if (!ok) throw std::domain_error("parametrix needs a leading symbol c|xi|^a with invertible scalar c");
  int fl = std::max(floor, s.floor() == kExactFloor ? kExactFloor : s.floor() - 2 * a);
  ClassicalSymbol t(s.n(), s.dw(), -a, fl);
  HomSymbol t0(s.n(), s.dw(), -a);
  t0.add_term(0, 0, 0, c.inverse());
  t.add(t0);
  Scalar minus_cinv = -c.inverse();
  for (int j = 1; -a - j >= fl; ++j) {
    // degree -j of s * t over the components already known; the new one
    // enters only through the leading term of s.
    HomSymbol tj = star_component(s, t, -j, jet).times_abs_xi(-a) * minus_cinv;
    if (jet) tj = tj.truncate_x(-a - j + *jet);
    t.add(tj);
  }
  return t;
}

/// log(1+u) = sum_{j>=1} (-1)^(j+1) u^{*j}/j, degrees >= floor; u of negative order.
inline ClassicalSymbol neumann_log(const ClassicalSymbol& u, int floor, JetBound jet = std::nullopt) {
  ClassicalSymbol r(u.n(), u.dw(), -1, std::max(floor, u.floor()));
  if (u.is_zero()) return r;
  int lead = u.leading_degree(0);
  if (lead >= 0) throw std::domain_error("neumann_log needs a symbol of negative order");
  ClassicalSymbol w = u.truncated(floor);
  ClassicalSymbol power = w;
  for (int j = 1; j * lead >= floor; ++j) {
    if (j > 1) power = star(power, w, floor, jet);
    Scalar c = Scalar(Rational(j % 2 ? 1 : -1, j));
    r += power * c;
  }
  return r;
}

}  // namespace logres
