#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logres/clifford.hpp"
#include "logres/matrix.hpp"
#include "logres/monomial.hpp"
#include "logres/scalar.hpp"

namespace logres {

struct TermKey {
  Exps x = 0;
  Exps xi = 0;
  Blade blade = 0;
  auto operator<=>(const TermKey&) const = default;
};

// Homogeneous symbol of degree d: sum of x^g xi^b |xi|^(d-|b|) gamma_S (x) M.
// Canonical form: the xi_1 exponent is at most 1, with xi_1^2 rewritten as
// |xi|^2 - sum_{a>1} xi_a^2. Monomials without xi_1^2 form a basis of the
// polynomial functions on the sphere, so two symbols are equal iff their
// canonical term maps are equal.
class HomSymbol {
 public:
  HomSymbol(int n, int dw, int degree) : n_(n), dw_(dw), degree_(degree) {
    if (n < 1 || n > kMaxVars) throw std::invalid_argument("symbol dimension out of range");
    if (dw < 1) throw std::invalid_argument("End(W) dimension must be positive");
  }

  int n() const { return n_; }
  int dw() const { return dw_; }
  int degree() const { return degree_; }
  const std::map<TermKey, MatrixW>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds x^x xi^xi |xi|^(d-|xi|) gamma_blade (x) m, rewriting xi_1^2.
  void add_term(Exps x, Exps xi, Blade blade, const MatrixW& m) {
    if (m.dim() != dw_) throw DimensionMismatch("symbol coefficient has wrong End(W) size");
    if (m.is_zero()) return;
    if (exp_at(xi, 0) >= 2) {
      Exps base = xi - unit_exp(0, 2);
      add_term(x, base, blade, m);
      MatrixW neg = -m;
      for (int a = 1; a < n_; ++a) add_term(x, base + unit_exp(a, 2), blade, neg);
      return;
    }
    TermKey k{x, xi, blade};
    auto [it, fresh] = terms_.try_emplace(k, m);
    if (!fresh) {
      it->second += m;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void add_term(Exps x, Exps xi, Blade blade, const Scalar& c) {
    add_term(x, xi, blade, MatrixW::identity(dw_, c));
  }

  HomSymbol& operator+=(const HomSymbol& o) {
    check(o);
    for (const auto& [k, m] : o.terms_) add_term(k.x, k.xi, k.blade, m);
    return *this;
  }
  HomSymbol& operator-=(const HomSymbol& o) {
    check(o);
    for (const auto& [k, m] : o.terms_) add_term(k.x, k.xi, k.blade, -m);
    return *this;
  }
  HomSymbol& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, m] : terms_) m *= s;
    return *this;
  }

  friend HomSymbol operator+(HomSymbol a, const HomSymbol& b) { return a += b; }
  friend HomSymbol operator-(HomSymbol a, const HomSymbol& b) { return a -= b; }
  friend HomSymbol operator-(HomSymbol a) { return a *= Scalar(-1); }
  friend HomSymbol operator*(HomSymbol a, const Scalar& s) { return a *= s; }
  friend HomSymbol operator*(const Scalar& s, HomSymbol a) { return a *= s; }

  /// Pointwise product, Clifford and End(W) parts multiplied left to right.
  friend HomSymbol operator*(const HomSymbol& a, const HomSymbol& b) {
    a.check_ring(b);
    HomSymbol r(a.n_, a.dw_, a.degree_ + b.degree_);
    for (const auto& [ka, ma] : a.terms_)
      for (const auto& [kb, mb] : b.terms_) r.add_product(ka, ma, kb, mb, 1);
    return r;
  }

  /// Multiplies by |xi|^e; only the degree moves.
  HomSymbol times_abs_xi(int e) const {
    HomSymbol r = *this;
    r.degree_ += e;
    return r;
  }
  HomSymbol times_xi2_power(int k) const { return times_abs_xi(2 * k); }

  /// d/dxi_a (0-based a).
  HomSymbol d_xi(int a) const {
    HomSymbol r(n_, dw_, degree_ - 1);
    Exps ea = unit_exp(a, 1);
    for (const auto& [k, m] : terms_) {
      int ba = exp_at(k.xi, a);
      int e = degree_ - total_degree(k.xi);
      if (ba > 0) r.add_term(k.x, k.xi - ea, k.blade, m * Scalar(ba));
      if (e != 0) r.add_term(k.x, k.xi + ea, k.blade, m * Scalar(e));
    }
    return r;
  }

  /// d^alpha/dx^alpha.
  HomSymbol d_x(Exps alpha) const {
    HomSymbol r(n_, dw_, degree_);
    for (const auto& [k, m] : terms_) {
      if (!divides(alpha, k.x)) continue;
      Rational c = 1;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < exp_at(alpha, i); ++j) c *= exp_at(k.x, i) - j;
      r.add_term(k.x - alpha, k.xi, k.blade, m * Scalar(c));
    }
    return r;
  }

  /// Multiplies by x^g.
  HomSymbol times_x(Exps g) const {
    HomSymbol r(n_, dw_, degree_);
    for (const auto& [k, m] : terms_) r.terms_.emplace(TermKey{k.x + g, k.xi, k.blade}, m);
    return r;
  }

  /// Left multiplication by a Clifford element.
  HomSymbol left_mul(const CliffordElem& c) const {
    HomSymbol r(n_, dw_, degree_);
    for (const auto& [cb, cm] : c.coeffs())
      for (const auto& [k, m] : terms_) {
        MatrixW p = cm * m;
        if (blade_sign(cb, k.blade) < 0) p = -p;
        r.add_term(k.x, k.xi, cb ^ k.blade, p);
      }
    return r;
  }

  /// Terms with x-degree at most `max_xdeg`.
  HomSymbol truncate_x(int max_xdeg) const {
    HomSymbol r(n_, dw_, degree_);
    for (const auto& [k, m] : terms_)
      if (total_degree(k.x) <= max_xdeg) r.terms_.emplace(k, m);
    return r;
  }

  HomSymbol at_origin() const { return truncate_x(0); }

  int max_xdeg() const {
    int d = -1;
    for (const auto& [k, m] : terms_) d = std::max(d, total_degree(k.x));
    return d;
  }

  friend bool operator==(const HomSymbol& a, const HomSymbol& b) {
    return a.n_ == b.n_ && a.dw_ == b.dw_ && a.terms_ == b.terms_ &&
           (a.degree_ == b.degree_ || a.terms_.empty());
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, m] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + m.str() + ")";
      std::string xs = exps_str(k.x, n_, "x");
      std::string ks = exps_str(k.xi, n_, "xi");
      if (!xs.empty()) s += "*" + xs;
      if (!ks.empty()) s += "*" + ks;
      int e = degree_ - total_degree(k.xi);
      if (e != 0) s += "*|xi|^" + std::to_string(e);
      if (k.blade) s += "*" + blade_str(k.blade);
    }
    return s;
  }

  // Accumulates sign * (ka,ma)*(kb,mb) into this symbol.
  void add_product(const TermKey& ka, const MatrixW& ma, const TermKey& kb, const MatrixW& mb,
                   int sign) {
    MatrixW p = ma * mb;
    if (blade_sign(ka.blade, kb.blade) * sign < 0) p = -p;
    add_term(ka.x + kb.x, ka.xi + kb.xi, ka.blade ^ kb.blade, p);
  }

  void add_scaled_product(const TermKey& ka, const MatrixW& ma, const TermKey& kb,
                          const MatrixW& mb, const Scalar& c) {
    MatrixW p = ma * mb;
    if (blade_sign(ka.blade, kb.blade) < 0) p *= -c;
    else p *= c;
    add_term(ka.x + kb.x, ka.xi + kb.xi, ka.blade ^ kb.blade, p);
  }

 private:
  void check(const HomSymbol& o) {
    check_ring(o);
    if (o.terms_.empty()) return;
    if (terms_.empty()) degree_ = o.degree_;
    else if (degree_ != o.degree_)
      throw std::invalid_argument("adding homogeneous symbols of different degrees");
  }
  void check_ring(const HomSymbol& o) const {
    if (n_ != o.n_ || dw_ != o.dw_) throw DimensionMismatch("symbols differ in n or d_W");
  }

  int n_;
  int dw_;
  int degree_;
  std::map<TermKey, MatrixW> terms_;
};

// Floor used for symbols whose components are all known exactly.
inline constexpr int kExactFloor = -1000000;

/// Finite graded family of homogeneous components; degrees >= floor are exact.
class ClassicalSymbol {
 public:
  ClassicalSymbol(int n, int dw, int order, int floor = kExactFloor)
      : n_(n), dw_(dw), order_(order), floor_(floor) {
    if (n < 1 || n > kMaxVars) throw std::invalid_argument("symbol dimension out of range");
    if (dw < 1) throw std::invalid_argument("End(W) dimension must be positive");
  }

  static ClassicalSymbol xi_squared(int n, int dw) {
    ClassicalSymbol s(n, dw, 2);
    HomSymbol h(n, dw, 2);
    h.add_term(0, 0, 0, Scalar(1));
    s.add(h);
    return s;
  }
  /// |xi|^(2k) as an exact symbol.
  static ClassicalSymbol xi2_power(int n, int dw, int k) {
    ClassicalSymbol s(n, dw, 2 * k);
    HomSymbol h(n, dw, 2 * k);
    h.add_term(0, 0, 0, Scalar(1));
    s.add(h);
    return s;
  }
  static ClassicalSymbol constant(int n, int dw, const Scalar& c) {
    ClassicalSymbol s(n, dw, 0);
    HomSymbol h(n, dw, 0);
    h.add_term(0, 0, 0, c);
    s.add(h);
    return s;
  }

  int n() const { return n_; }
  int dw() const { return dw_; }
  int order() const { return order_; }
  int floor() const { return floor_; }
  const std::map<int, HomSymbol>& comps() const { return comps_; }

  /// Highest degree carrying a nonzero component; `fallback` when all vanish.
  int leading_degree(int fallback) const {
    for (auto it = comps_.rbegin(); it != comps_.rend(); ++it)
      if (!it->second.is_zero()) return it->first;
    return fallback;
  }

  bool is_zero() const {
    for (const auto& [d, h] : comps_)
      if (!h.is_zero()) return false;
    return true;
  }

  HomSymbol comp(int d) const {
    auto it = comps_.find(d);
    return it == comps_.end() ? HomSymbol(n_, dw_, d) : it->second;
  }

  void add(const HomSymbol& h) {
    if (h.n() != n_ || h.dw() != dw_) throw DimensionMismatch("component differs in n or d_W");
    if (h.degree() < floor_ || h.is_zero()) return;
    if (h.degree() > order_) order_ = h.degree();
    auto [it, fresh] = comps_.try_emplace(h.degree(), h);
    if (!fresh) it->second += h;
    if (it->second.is_zero()) comps_.erase(it);
  }

  void set_floor(int f) {
    floor_ = std::max(floor_, f);
    comps_.erase(comps_.begin(), comps_.lower_bound(floor_));
  }

  ClassicalSymbol truncated(int f) const {
    ClassicalSymbol r = *this;
    r.set_floor(f);
    return r;
  }

  /// Keeps x-degree <= d + offset in the degree-d component.
  ClassicalSymbol truncate_jets(int offset) const {
    ClassicalSymbol r(n_, dw_, order_, floor_);
    for (const auto& [d, h] : comps_) r.add(h.truncate_x(d + offset));
    return r;
  }

  ClassicalSymbol at_origin() const {
    ClassicalSymbol r(n_, dw_, order_, floor_);
    for (const auto& [d, h] : comps_) r.add(h.at_origin());
    return r;
  }

  /// Multiplies every component by |xi|^(2k).
  ClassicalSymbol times_xi2_power(int k) const {
    ClassicalSymbol r(n_, dw_, order_ + 2 * k, floor_ == kExactFloor ? kExactFloor : floor_ + 2 * k);
    for (const auto& [d, h] : comps_) r.add(h.times_xi2_power(k));
    return r;
  }

  ClassicalSymbol left_mul(const CliffordElem& c) const {
    ClassicalSymbol r(n_, dw_, order_, floor_);
    for (const auto& [d, h] : comps_) r.add(h.left_mul(c));
    return r;
  }

  ClassicalSymbol& operator+=(const ClassicalSymbol& o) {
    check(o);
    order_ = std::max(order_, o.order_);
    set_floor(o.floor_);
    for (const auto& [d, h] : o.comps_) add(h);
    return *this;
  }
  ClassicalSymbol& operator-=(const ClassicalSymbol& o) {
    check(o);
    order_ = std::max(order_, o.order_);
    set_floor(o.floor_);
    for (const auto& [d, h] : o.comps_) add(-h);
    return *this;
  }
  ClassicalSymbol& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      comps_.clear();
      return *this;
    }
    for (auto& [d, h] : comps_) h *= s;
    return *this;
  }
  friend ClassicalSymbol operator+(ClassicalSymbol a, const ClassicalSymbol& b) { return a += b; }
  friend ClassicalSymbol operator-(ClassicalSymbol a, const ClassicalSymbol& b) { return a -= b; }
  friend ClassicalSymbol operator-(ClassicalSymbol a) { return a *= Scalar(-1); }
  friend ClassicalSymbol operator*(ClassicalSymbol a, const Scalar& s) { return a *= s; }
  friend ClassicalSymbol operator*(const Scalar& s, ClassicalSymbol a) { return a *= s; }

  /// Pointwise product (no derivative corrections).
  friend ClassicalSymbol pointwise(const ClassicalSymbol& a, const ClassicalSymbol& b) {
    a.check(b);
    int fl = std::max(sat_add(a.floor_, b.order_), sat_add(b.floor_, a.order_));
    ClassicalSymbol r(a.n_, a.dw_, a.order_ + b.order_, std::max(fl, kExactFloor));
    for (const auto& [da, ha] : a.comps_)
      for (const auto& [db, hb] : b.comps_)
        if (da + db >= r.floor_) r.add(ha * hb);
    return r;
  }

  /// Equality of all components at degrees >= f (both sides must be exact there).
  bool equal_above(const ClassicalSymbol& o, int f) const {
    for (const auto& [d, h] : comps_)
      if (d >= f && !(h == o.comp(d))) return false;
    for (const auto& [d, h] : o.comps_)
      if (d >= f && !(h == comp(d))) return false;
    return true;
  }

  friend bool operator==(const ClassicalSymbol& a, const ClassicalSymbol& b) {
    int f = std::max(a.floor_, b.floor_);
    return a.n_ == b.n_ && a.dw_ == b.dw_ && a.equal_above(b, f);
  }

  std::string str() const {
    std::string s;
    for (auto it = comps_.rbegin(); it != comps_.rend(); ++it)
      s += "[" + std::to_string(it->first) + "] " + it->second.str() + "\n";
    return s.empty() ? "0\n" : s;
  }

  static int sat_add(int a, int b) {
    if (a <= kExactFloor / 2 || b <= kExactFloor / 2) return kExactFloor;
    return a + b;
  }

 private:
  void check(const ClassicalSymbol& o) const {
    if (n_ != o.n_ || dw_ != o.dw_) throw DimensionMismatch("symbols differ in n or d_W");
  }

  int n_;
  int dw_;
  int order_;
  int floor_;
  std::map<int, HomSymbol> comps_;
};

/// c log|xi| + classical part.
struct LogSymbol {
  Scalar log_coeff;
  ClassicalSymbol classical;
};

}  // namespace logres
