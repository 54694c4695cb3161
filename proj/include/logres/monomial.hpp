#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace logres {

// Multi-exponent over at most 8 variables, 8 bits per variable.
using Exps = std::uint64_t;

inline constexpr int kMaxVars = 8;

inline int exp_at(Exps e, int i) { return static_cast<int>((e >> (8 * i)) & 0xff); }

inline Exps unit_exp(int i, int k = 1) { return static_cast<Exps>(k) << (8 * i); }

inline Exps with_exp(Exps e, int i, int k) {
  if (k < 0 || k > 255) throw std::overflow_error("monomial exponent out of range");
  return (e & ~(Exps{0xff} << (8 * i))) | unit_exp(i, k);
}

inline int total_degree(Exps e) {
  int s = 0;
  for (int i = 0; i < kMaxVars; ++i) s += exp_at(e, i);
  return s;
}

inline bool divides(Exps a, Exps b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (exp_at(a, i) > exp_at(b, i)) return false;
  return true;
}

inline Exps make_exps(const std::vector<int>& v) {
  if (v.size() > kMaxVars) throw std::invalid_argument("too many variables");
  Exps e = 0;
  for (std::size_t i = 0; i < v.size(); ++i) e = with_exp(e, static_cast<int>(i), v[i]);
  return e;
}

inline std::vector<int> exps_vector(Exps e, int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = exp_at(e, i);
  return v;
}

/// All multi-indices alpha over n variables with alpha <= bound componentwise and |alpha| <= max_total.
inline std::vector<Exps> sub_exponents(Exps bound, int n, int max_total) {
  std::vector<Exps> out{0};
  for (int i = 0; i < n; ++i) {
    std::vector<Exps> next;
    for (Exps e : out) {
      int used = total_degree(e);
      for (int k = 0; k <= exp_at(bound, i) && used + k <= max_total; ++k)
        next.push_back(e | unit_exp(i, k));
    }
    out.swap(next);
  }
  return out;
}

/// All multi-indices over n variables with |alpha| == total.
inline std::vector<Exps> exponents_of_degree(int n, int total) {
  std::vector<Exps> out;
  std::vector<int> v(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      v[i] = left;
      out.push_back(make_exps(v));
      return;
    }
    for (int k = left; k >= 0; --k) {
      v[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (n > 0) rec(rec, 0, total);
  return out;
}

inline std::string exps_str(Exps e, int n, const char* var) {
  std::string s;
  for (int i = 0; i < n; ++i) {
    int k = exp_at(e, i);
    if (k == 0) continue;
    if (!s.empty()) s += "*";
    s += std::string(var) + std::to_string(i + 1);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

}  // namespace logres
