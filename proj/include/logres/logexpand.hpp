#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logres/errors.hpp"
#include "logres/residue.hpp"
#include "logres/star.hpp"
#include "logres/symbol.hpp"

namespace logres {

enum class Method { ch, taylor, seeley };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::ch: return "ch";
    case Method::taylor: return "taylor";
    default: return "seeley";
  }
}

/// Nested bracket L_1(L_2(...L_m(Q))) with letters P or Q, times coeff.
struct LieWord {
  std::string letters;
  Rational coeff;
};

namespace detail {

inline void ch_tuples(int left, int j_left, std::vector<std::pair<int, int>>& cur,
                      std::vector<std::vector<std::pair<int, int>>>& out) {
  if (j_left == 0) {
    if (left == 0) out.push_back(cur);
    return;
  }
  for (int s = 1; s <= left - (j_left - 1); ++s)
    for (int a = s; a >= 0; --a) {
      cur.emplace_back(a, s - a);
      ch_tuples(left - s, j_left - 1, cur, out);
      cur.pop_back();
    }
}

}  // namespace detail

/// Words of the degree-k Campbell-Hausdorff term in log(e^P e^Q), merged by letter sequence.
inline const std::vector<LieWord>& ch_words(int k) {
  static std::map<int, std::vector<LieWord>> memo;
  if (k < 2) throw std::invalid_argument("Lie monomials start at k = 2");
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  std::map<std::string, Rational> merged;
  for (int j = 1; j <= k - 1; ++j) {
    std::vector<std::vector<std::pair<int, int>>> tuples;
    std::vector<std::pair<int, int>> cur;
    detail::ch_tuples(k - 1, j, cur, tuples);
    Rational outer(j % 2 ? 1 : -1, j * (j + 1));
    for (const auto& t : tuples) {
      std::string w;
      int sum_beta = 0;
      Rational denom = 1;
      for (auto [a, b] : t) {
        w.append(a, 'P');
        w.append(b, 'Q');
        sum_beta += b;
        denom *= factorial(a) * factorial(b);
      }
      if (w.back() == 'Q') continue;  // ad_Q(Q) = 0
      merged[w] += outer / (denom * (1 + sum_beta));
    }
  }
  std::vector<LieWord> words;
  for (auto& [w, c] : merged)
    if (sgn(c) != 0) words.push_back({w, c});
  return memo.emplace(k, std::move(words)).first->second;
}

/// C^(k)(log|xi|^2, tau): P acts by log_bracket, Q by the star bracket with tau.
inline ClassicalSymbol lie_monomial(int k, const ClassicalSymbol& tau, int floor,
                                    JetBound jet = std::nullopt,
                                    std::map<std::string, ClassicalSymbol>* memo = nullptr) {
  std::map<std::string, ClassicalSymbol> local;
  if (memo == nullptr) memo = &local;
  auto value = [&](const std::string& w, auto&& self) -> ClassicalSymbol {
    if (w.empty()) return tau;
    auto it = memo->find(w);
    if (it != memo->end()) return it->second;
    ClassicalSymbol inner = self(w.substr(1), self);
    ClassicalSymbol v = w[0] == 'P' ? log_bracket(inner, floor, jet) : bracket(tau, inner, floor, jet);
    return memo->emplace(w, std::move(v)).first->second;
  };
  ClassicalSymbol r(tau.n(), tau.dw(), -k, floor);
  for (const auto& word : ch_words(k)) r += value(word.letters, value) * Scalar(word.coeff);
  return r;
}

/// Route knobs: lowest degree computed (default -n) and whether x-jets are pruned.
struct RouteOptions {
  std::optional<int> floor;
  bool use_jets = true;
};

namespace detail {

inline int route_floor(const RouteOptions& o, int n) {
  int fl = o.floor.value_or(-n);
  if (fl > -n) throw InputError("floor must be at most -n = " + std::to_string(-n));
  if (fl < -4 * n) throw InputError("floor below -4n is not supported");
  return fl;
}

inline void check_q_lower(const ClassicalSymbol& q, int n) {
  if (q.n() != n) throw DimensionMismatch("symbol dimension differs from n");
  if (n % 2 != 0 || n < 2) throw InputError("dimension must be even and at least 2");
  if (q.leading_degree(kExactFloor) >= 2)
    throw InputError("lower-order part must have order at most 1");
}

}  // namespace detail

/// Campbell-Hausdorff route: log(|xi|^2 * (1+u)) with u = |xi|^{-2} * q_lower.
inline LogSymbol log_via_ch(const ClassicalSymbol& q_lower, int n, const RouteOptions& opt = {}) {
  detail::check_q_lower(q_lower, n);
  int fl = detail::route_floor(opt, n);
  bool use_jets = opt.use_jets;
  JetBound jet = use_jets ? JetBound(-fl) : std::nullopt;
  ClassicalSymbol q = use_jets ? q_lower.truncate_jets(-fl - 2) : q_lower;
  ClassicalSymbol inv = ClassicalSymbol::xi2_power(n, q.dw(), -1);
  ClassicalSymbol u = star(inv, q, fl, jet);
  ClassicalSymbol tau = neumann_log(u, fl, jet);
  ClassicalSymbol classical = tau;
  std::map<std::string, ClassicalSymbol> memo;
  for (int k = 2; k <= -fl; ++k) classical += lie_monomial(k, tau, fl, jet, &memo);
  classical.set_floor(fl);
  return {Scalar(2), classical};
}

namespace detail {

inline void compositions(int p, int max_total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= max_total; ++k) {
    cur.push_back(k);
    compositions(p, max_total - k, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Weight of ad^{k_1}s * ... * ad^{k_p}s |xi|^{-2(|k|+p)} in the expansion of log(|xi|^2 + s).
inline Rational taylor_log_coefficient(const std::vector<int>& k) {
  int p = static_cast<int>(k.size());
  int total = 0;
  Rational denom = 1;
  for (int r = 0; r < p; ++r) {
    total += k[r];
    denom *= factorial(k[r]);
    denom *= total + r + 1;
  }
  Rational c = factorial(total + p - 1) / denom;
  return (total + p - 1) % 2 ? -c : c;
}

/// Noncommutative Taylor route.
inline LogSymbol log_via_taylor(const ClassicalSymbol& q_lower, int n, const RouteOptions& opt = {}) {
  detail::check_q_lower(q_lower, n);
  int fl = detail::route_floor(opt, n);
  bool use_jets = opt.use_jets;
  int dw = q_lower.dw();
  ClassicalSymbol q = use_jets ? q_lower.truncate_jets(-fl - 2) : q_lower;
  auto jet_at = [&](int shift) { return use_jets ? JetBound(-fl - 2 * shift) : std::nullopt; };
  std::map<int, ClassicalSymbol> ad;
  auto factor = [&](int k) -> const ClassicalSymbol& {
    auto it = ad.find(k);
    if (it != ad.end()) return it->second;
    ClassicalSymbol f = ad_xi2(q, k, jet_at(k + 1));
    if (use_jets) f = f.truncate_jets(-fl - 2 * (k + 1));
    return ad.emplace(k, std::move(f)).first->second;
  };
  std::map<std::vector<int>, ClassicalSymbol> prefix;
  ClassicalSymbol classical(n, dw, -1, fl);
  for (int p = 1; p <= -fl; ++p) {
    std::vector<std::vector<int>> ks;
    std::vector<int> cur;
    detail::compositions(p, -fl - p, cur, ks);
    for (const auto& k : ks) {
      std::vector<int> pre;
      int shift = 0;
      const ClassicalSymbol* prod = nullptr;
      for (int r = 0; r < p; ++r) {
        pre.push_back(k[r]);
        shift += k[r] + 1;
        auto it = prefix.find(pre);
        if (it == prefix.end()) {
          ClassicalSymbol v = r == 0 ? factor(k[0])
                                     : star(*prod, factor(k[r]), fl + 2 * shift, jet_at(shift));
          v.set_floor(fl + 2 * shift);
          it = prefix.emplace(pre, std::move(v)).first;
        }
        prod = &it->second;
      }
      ClassicalSymbol term = prod->times_xi2_power(-shift);
      term.set_floor(fl);
      classical += term * Scalar(taylor_log_coefficient(k));
    }
  }
  classical.set_floor(fl);
  return {Scalar(2), classical};
}

/// Kernel of the Cauchy integral of lambda^z (|xi|^2 - lambda)^{-1-m}: (-1)^m binom(z, m) |xi|^{2(z-m)}.
/// Returns the z-polynomial coefficients of (-1)^m binom(z, m), lowest first.
inline std::vector<Rational> cauchy_kernel_poly(int m) {
  std::vector<Rational> poly{1};
  for (int i = 0; i < m; ++i) {
    // multiply by (z - i)
    std::vector<Rational> next(poly.size() + 1);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] += poly[d];
      next[d] -= poly[d] * i;
    }
    poly.swap(next);
  }
  Rational scale = Rational(m % 2 ? -1 : 1) / factorial(m);
  for (auto& c : poly) c *= scale;
  return poly;
}

/// Resolvent component: sum_m N_m (|xi|^2 - lambda)^{-1-m}.
using ResolventSymbol = std::map<int, HomSymbol>;

/// Seeley route: resolvent recursion, then d/dz at z = 0 of the complex-power kernel.
inline LogSymbol log_via_seeley(const ClassicalSymbol& q_lower, int n, const RouteOptions& opt = {}) {
  detail::check_q_lower(q_lower, n);
  int fl = detail::route_floor(opt, n);
  bool use_jets = opt.use_jets;
  int depth = -fl;
  int dw = q_lower.dw();
  ClassicalSymbol q = use_jets ? q_lower.truncate_jets(depth - 2) : q_lower;
  // sigma_{2-k}: k = 0 is |xi|^2, k >= 1 from q_lower
  std::map<int, HomSymbol> sig;
  {
    HomSymbol lead(n, dw, 2);
    lead.add_term(0, 0, 0, Scalar(1));
    sig.emplace(0, lead);
    for (const auto& [d, h] : q.comps())
      if (2 - d >= 1 && 2 - d <= depth) sig.emplace(2 - d, h);
  }
  std::map<int, detail::XiDerivatives> sig_dxi;
  for (const auto& [k, h] : sig) sig_dxi.emplace(k, detail::XiDerivatives(h));

  std::vector<ResolventSymbol> r(depth + 1);
  {
    HomSymbol one(n, dw, 0);
    one.add_term(0, 0, 0, Scalar(1));
    r[0].emplace(0, one);
  }
  for (int j = 1; j <= depth; ++j) {
    std::map<int, HomSymbol> next;
    for (int l = 0; l < j; ++l)
      for (const auto& [m, nm] : r[l])
        for (auto& [k, dxi] : sig_dxi) {
          if (k + l > j) continue;
          int out_deg = 2 + 2 * m - j;
          std::map<int, HomSymbol> part;
          JetBound jet = use_jets ? JetBound(depth - 2 - 2 * m) : std::nullopt;
          detail::star_pair(dxi, 2 - k, nm, out_deg, jet, part, n, dw, true);
          auto it = part.find(out_deg);
          if (it == part.end() || it->second.is_zero()) continue;
          HomSymbol contrib = -it->second;
          HomSymbol shifted(n, dw, 2 * (m + 1) - j);
          for (const auto& [key, mat] : contrib.terms())
            if (!use_jets || total_degree(key.x) <= depth - j) shifted.add_term(key.x, key.xi, key.blade, mat);
          auto [nt, fresh] = next.try_emplace(m + 1, shifted);
          if (!fresh) nt->second += shifted;
        }
    for (auto& [m, h] : next)
      if (!h.is_zero()) r[j].emplace(m, std::move(h));
  }

  LogSymbol out{Scalar(0), ClassicalSymbol(n, dw, 0, fl)};
  for (int j = 0; j <= depth; ++j) {
    HomSymbol comp(n, dw, -j);
    HomSymbol log_part(n, dw, -j);
    for (const auto& [m, nm] : r[j]) {
      std::vector<Rational> poly = cauchy_kernel_poly(m);
      Rational at0 = poly[0];
      Rational deriv = poly.size() > 1 ? poly[1] : Rational(0);
      if (sgn(at0) != 0) log_part += nm.times_xi2_power(-m) * Scalar(at0);
      if (sgn(deriv) != 0) comp += nm.times_xi2_power(-m) * Scalar(deriv);
    }
    if (j == 0) {
      Scalar c;
      bool scalar_one = log_part.size() == 1 && log_part.terms().begin()->first == TermKey{} &&
                        log_part.terms().begin()->second.is_scalar(&c);
      if (!scalar_one) throw InvariantFailure("leading log coefficient is not scalar");
      out.log_coeff = c * Scalar(2);  // log|xi|^2 = 2 log|xi|
    } else if (!log_part.is_zero()) {
      throw InvariantFailure("log|xi| terms survive in the degree " + std::to_string(-j) +
                             " component of the Seeley logarithm");
    }
    if (j > 0) out.classical.add(comp);
  }
  return out;
}

inline LogSymbol log_via(Method m, const ClassicalSymbol& q_lower, int n, const RouteOptions& opt = {}) {
  switch (m) {
    case Method::ch: return log_via_ch(q_lower, n, opt);
    case Method::taylor: return log_via_taylor(q_lower, n, opt);
    default: return log_via_seeley(q_lower, n, opt);
  }
}

/// First degree in [floor, -1] where two log symbols differ (after pruning x-jets to the
/// depth every route computes exactly), or nothing when they agree.
inline std::optional<int> first_disagreement(const LogSymbol& a, const LogSymbol& b, int n,
                                             const RouteOptions& opt = {}) {
  int fl = detail::route_floor(opt, n);
  if (!(a.log_coeff == b.log_coeff)) return 0;
  ClassicalSymbol ta = a.classical.truncate_jets(-fl), tb = b.classical.truncate_jets(-fl);
  for (int d = 0; d >= fl; --d)
    if (!(ta.comp(d) == tb.comp(d))) return d;
  return std::nullopt;
}

struct ResLog {
  PiScalar residue;
  PiScalar zeta0;
};

/// Residue density of log Q at x = 0 and zeta_Q(0) = -res/2.
inline ResLog res_log(const ClassicalSymbol& q_lower, int n, Method method, TraceKind kind,
                      const RouteOptions& opt = {}) {
  LogSymbol l = log_via(method, q_lower, n, opt);
  PiScalar res = residue_density(l.classical, kind);
  return {res, Scalar(Rational(-1, 2)) * res};
}

}  // namespace logres
