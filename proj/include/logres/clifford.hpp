#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logres/matrix.hpp"
#include "logres/scalar.hpp"

namespace logres {

// A basis element gamma_S of the Clifford algebra is a bitmask S (bit i-1 for gamma_i).
using Blade = std::uint32_t;

/// Sign of gamma_a * gamma_b = sign * gamma_{a xor b} under gamma_i^2 = -1.
inline int blade_sign(Blade a, Blade b) {
  int swaps = 0;
  for (Blade bb = b; bb != 0; bb &= bb - 1) {
    int j = std::countr_zero(bb);
    // generators of a with index above j must pass over gamma_j
    swaps += std::popcount(a >> (j + 1));
  }
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

inline int blade_grade(Blade b) { return std::popcount(b); }

inline Blade top_blade(int n) { return (n >= 32) ? ~Blade{0} : ((Blade{1} << n) - 1); }

inline std::string blade_str(Blade b) {
  if (b == 0) return "1";
  std::string s;
  for (Blade bb = b; bb != 0; bb &= bb - 1) s += "g" + std::to_string(std::countr_zero(bb) + 1);
  return s;
}

/// Element of C(R^n) (x) End(W).
class CliffordElem {
 public:
  CliffordElem(int n, int dw) : n_(n), dw_(dw) {
    if (n < 1 || n > 16) throw std::invalid_argument("Clifford dimension out of range");
    if (dw < 1) throw std::invalid_argument("End(W) dimension must be positive");
  }

  static CliffordElem scalar(int n, int dw, const Scalar& c) {
    CliffordElem e(n, dw);
    e.add(0, MatrixW::identity(dw, c));
    return e;
  }
  static CliffordElem from(int n, const MatrixW& m, Blade b = 0) {
    CliffordElem e(n, m.dim());
    e.add(b, m);
    return e;
  }
  /// gamma_i, 1-based.
  static CliffordElem gamma(int n, int dw, int i) {
    if (i < 1 || i > n) throw std::out_of_range("gamma index out of range");
    CliffordElem e(n, dw);
    e.add(Blade{1} << (i - 1), MatrixW::identity(dw));
    return e;
  }
  /// sigma_ij = 1/8 [gamma_i, gamma_j]; equals 1/4 gamma_i gamma_j off the diagonal and 0 on it.
  static CliffordElem sigma(int n, int dw, int i, int j) {
    if (i == j) return CliffordElem(n, dw);
    return gamma(n, dw, i) * gamma(n, dw, j) * Scalar(Rational(1, 4));
  }

  int n() const { return n_; }
  int dw() const { return dw_; }
  const std::map<Blade, MatrixW>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  MatrixW part(Blade b) const {
    auto it = coeffs_.find(b);
    return it == coeffs_.end() ? MatrixW(dw_) : it->second;
  }

  void add(Blade b, const MatrixW& m) {
    if (m.dim() != dw_) throw DimensionMismatch("Clifford coefficient has wrong End(W) size");
    if ((b & ~top_blade(n_)) != 0) throw std::out_of_range("blade outside dimension");
    auto [it, fresh] = coeffs_.try_emplace(b, m);
    if (!fresh) it->second += m;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  CliffordElem& operator+=(const CliffordElem& o) {
    check(o);
    for (const auto& [b, m] : o.coeffs_) add(b, m);
    return *this;
  }
  CliffordElem& operator-=(const CliffordElem& o) {
    check(o);
    for (const auto& [b, m] : o.coeffs_) add(b, -m);
    return *this;
  }
  CliffordElem& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [b, m] : coeffs_) m *= s;
    return *this;
  }

  friend CliffordElem operator+(CliffordElem a, const CliffordElem& b) { return a += b; }
  friend CliffordElem operator-(CliffordElem a, const CliffordElem& b) { return a -= b; }
  friend CliffordElem operator*(CliffordElem a, const Scalar& s) { return a *= s; }
  friend CliffordElem operator*(const Scalar& s, CliffordElem a) { return a *= s; }

  friend CliffordElem operator*(const CliffordElem& a, const CliffordElem& b) {
    a.check(b);
    CliffordElem r(a.n_, a.dw_);
    for (const auto& [ba, ma] : a.coeffs_)
      for (const auto& [bb, mb] : b.coeffs_) {
        MatrixW m = ma * mb;
        if (blade_sign(ba, bb) < 0) m = -m;
        r.add(ba ^ bb, m);
      }
    return r;
  }

  friend bool operator==(const CliffordElem& a, const CliffordElem& b) {
    return a.n_ == b.n_ && a.dw_ == b.dw_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [b, m] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += "(" + m.str() + ")" + (b ? "*" + blade_str(b) : "");
    }
    return s;
  }

 private:
  void check(const CliffordElem& o) const {
    if (n_ != o.n_ || dw_ != o.dw_) throw DimensionMismatch("Clifford operands differ in n or d_W");
  }

  int n_;
  int dw_;
  std::map<Blade, MatrixW> coeffs_;
};

/// Supertrace of gamma_S (x) M: (-2i)^p tr(M) on the top blade, zero otherwise.
inline Scalar blade_str_value(int n, Blade b, const MatrixW& m) {
  if (n % 2 != 0) throw std::invalid_argument("supertrace needs even dimension");
  if (b != top_blade(n)) return Scalar{};
  return pow(Scalar(0, -2), n / 2) * m.trace();
}

/// Trace of gamma_S (x) M in the spinor representation: 2^p tr(M) on the empty blade.
inline Scalar blade_tr_value(int n, Blade b, const MatrixW& m) {
  if (n % 2 != 0) throw std::invalid_argument("trace needs even dimension");
  if (b != 0) return Scalar{};
  return pow(Scalar(2), n / 2) * m.trace();
}

inline Scalar cl_str(const CliffordElem& a) {
  Scalar s;
  for (const auto& [b, m] : a.coeffs()) s += blade_str_value(a.n(), b, m);
  return s;
}

inline Scalar cl_tr(const CliffordElem& a) {
  Scalar s;
  for (const auto& [b, m] : a.coeffs()) s += blade_tr_value(a.n(), b, m);
  return s;
}

}  // namespace logres
