#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "logres/clifford.hpp"
#include "logres/errors.hpp"
#include "logres/logexpand.hpp"
#include "logres/residue.hpp"
#include "logres/star.hpp"
#include "logres/symbol.hpp"

namespace logres {

/// Rank-4 tensor R[i][a][j][k] at the center of a normal chart.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n) {
    if (n < 2 || n > kMaxVars) throw InputError("curvature dimension out of range");
  }

  int n() const { return n_; }
  Rational& operator()(int i, int a, int j, int k) { return data_[index(i, a, j, k)]; }
  const Rational& operator()(int i, int a, int j, int k) const { return data_[index(i, a, j, k)]; }

  /// Names of violated identities; empty when R is an algebraic curvature tensor.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    auto note = [&](const std::string& what, int i, int a, int j, int k) {
      out.push_back(what + " at (" + std::to_string(i + 1) + "," + std::to_string(a + 1) + "," +
                    std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
    };
    for (int i = 0; i < n_; ++i)
      for (int a = 0; a < n_; ++a)
        for (int j = 0; j < n_; ++j)
          for (int k = 0; k < n_; ++k) {
            const Rational& r = (*this)(i, a, j, k);
            if (r != -(*this)(a, i, j, k)) note("antisymmetry in the first pair", i, a, j, k);
            if (r != -(*this)(i, a, k, j)) note("antisymmetry in the second pair", i, a, j, k);
            if (r != (*this)(j, k, i, a)) note("pair symmetry", i, a, j, k);
            if (r + (*this)(a, j, i, k) + (*this)(j, i, a, k) != 0) note("first Bianchi identity", i, a, j, k);
            if (out.size() > 8) return out;
          }
    return out;
  }

  void validate() const {
    auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid curvature tensor:";
    for (const auto& s : v) msg += "\n  " + s;
    throw InputError(msg);
  }

  /// s = sum_{i,j} R_ijij.
  Rational scalar_curvature() const {
    Rational s = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) s += (*this)(i, j, i, j);
    return s;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return sgn(r) == 0; });
  }

  friend bool operator==(const CurvatureTensor& a, const CurvatureTensor& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(int i, int a, int j, int k) const {
    return ((static_cast<std::size_t>(i) * n_ + a) * n_ + j) * n_ + k;
  }
  int n_;
  std::vector<Rational> data_;
};

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, int span = 6, int max_den = 4) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  return ratio(num(rng), den(rng));
}

inline int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

}  // namespace detail

/// Projects an arbitrary rank-4 tensor onto the algebraic curvature tensors.
inline CurvatureTensor project_curvature(const CurvatureTensor& t) {
  int n = t.n();
  CurvatureTensor b(n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Rational s = t(i, a, j, k) - t(a, i, j, k) - t(i, a, k, j) + t(a, i, k, j);
          s += t(j, k, i, a) - t(k, j, i, a) - t(j, k, a, i) + t(k, j, a, i);
          b(i, a, j, k) = s / 8;
        }
  // remove the totally antisymmetric part, which is what breaks Bianchi here
  std::vector<int> perm{0, 1, 2, 3};
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  CurvatureTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          int idx[4] = {i, a, j, k};
          Rational alt = 0;
          for (const auto& p : perms) {
            Rational v = b(idx[p[0]], idx[p[1]], idx[p[2]], idx[p[3]]);
            alt += detail::perm_sign(p) > 0 ? v : -v;
          }
          r(i, a, j, k) = b(i, a, j, k) - alt / 24;
        }
  return r;
}

inline CurvatureTensor random_curvature(int n, std::mt19937_64& rng) {
  CurvatureTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) t(i, a, j, k) = detail::random_rational(rng);
  return project_curvature(t);
}

/// Connection A_i(x) = sum_a A_lin[i][a] x_a on the trivial bundle R^n x C^{d_W}.
struct GaugeField {
  int n;
  int dw;
  std::vector<std::vector<MatrixW>> A_lin;

  GaugeField(int n_, int dw_) : n(n_), dw(dw_), A_lin(n_, std::vector<MatrixW>(n_, MatrixW(dw_))) {
    if (n_ < 2 || n_ > kMaxVars || n_ % 2 != 0) throw InputError("gauge field dimension must be even, 2..8");
    if (dw_ < 1 || dw_ > 8) throw InputError("d_W out of range");
  }

  /// Gauge with A_j(x) = 1/2 sum_i x_i F_ij for constant antisymmetric F.
  static GaugeField from_curvature(const std::vector<std::vector<MatrixW>>& F) {
    int n = static_cast<int>(F.size());
    if (n == 0) throw InputError("empty curvature");
    GaugeField g(n, F[0][0].dim());
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(F[i].size()) != n) throw InputError("F must be n x n");
      for (int j = 0; j < n; ++j) {
        if (!(F[i][j] == -F[j][i])) throw InputError("F must be antisymmetric");
        g.A_lin[j][i] = F[i][j] * Scalar(Rational(1, 2));
      }
    }
    return g;
  }

  /// F_ij at x = 0.
  MatrixW F0(int i, int j) const { return A_lin[j][i] - A_lin[i][j]; }
};

inline MatrixW random_matrix(int dw, std::mt19937_64& rng) {
  MatrixW m(dw);
  for (int r = 0; r < dw; ++r)
    for (int c = 0; c < dw; ++c) m(r, c) = Scalar(detail::random_rational(rng, 4, 3), detail::random_rational(rng, 4, 3));
  return m;
}

inline GaugeField random_gauge(int n, int dw, std::mt19937_64& rng) {
  GaugeField g(n, dw);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) g.A_lin[i][a] = random_matrix(dw, rng);
  return g;
}

// ---- rotations -------------------------------------------------------------

using RatMatrix = std::vector<std::vector<Rational>>;

inline RatMatrix rat_identity(int n) {
  RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
  int n = static_cast<int>(a.size());
  RatMatrix r(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline RatMatrix rat_inverse(RatMatrix a) {
  int n = static_cast<int>(a.size());
  RatMatrix inv = rat_identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && sgn(a[piv][c]) == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Rational d = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// Cayley transform (I - A)^{-1}(I + A) of a random rational antisymmetric A; lies in SO(n).
inline RatMatrix random_rotation(int n, std::mt19937_64& rng) {
  RatMatrix a(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a[i][j] = detail::random_rational(rng, 3, 3);
      a[j][i] = -a[i][j];
    }
  RatMatrix minus = rat_identity(n), plus = rat_identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      minus[i][j] -= a[i][j];
      plus[i][j] += a[i][j];
    }
  return rat_mul(rat_inverse(minus), plus);
}

inline CurvatureTensor rotate(const CurvatureTensor& R, const RatMatrix& O) {
  int n = R.n();
  // contract one slot at a time
  CurvatureTensor cur = R;
  for (int slot = 0; slot < 4; ++slot) {
    CurvatureTensor next(n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            int idx[4] = {i, a, j, k};
            Rational s = 0;
            for (int p = 0; p < n; ++p) {
              int src[4] = {i, a, j, k};
              src[slot] = p;
              if (sgn(O[idx[slot]][p]) == 0) continue;
              s += O[idx[slot]][p] * cur(src[0], src[1], src[2], src[3]);
            }
            next(i, a, j, k) = s;
          }
    cur = next;
  }
  return cur;
}

/// A'_i(x) = O_ib A_b(O^T x).
inline GaugeField rotate(const GaugeField& g, const RatMatrix& O) {
  GaugeField r(g.n, g.dw);
  for (int i = 0; i < g.n; ++i)
    for (int a = 0; a < g.n; ++a) {
      MatrixW m(g.dw);
      for (int b = 0; b < g.n; ++b)
        for (int c = 0; c < g.n; ++c) {
          Rational w = O[i][b] * O[a][c];
          if (sgn(w) != 0) m += g.A_lin[b][c] * Scalar(w);
        }
      r.A_lin[i][a] = m;
    }
  return r;
}

// ---- Dirac operator in normal coordinates ------------------------------------

/// dG[a][i][j][k] = d_a Gamma^k_ij = 1/3 (R_iajk + R_jaik).
using DGamma = std::vector<std::vector<std::vector<std::vector<Rational>>>>;

inline DGamma dgamma_from_R(const CurvatureTensor& R) {
  int n = R.n();
  DGamma g(n, std::vector<std::vector<std::vector<Rational>>>(
                  n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0)))));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) g[a][i][j][k] = (R(i, a, j, k) + R(j, a, i, k)) / 3;
  return g;
}

/// sum_{j,k} d_a Gamma^k_ij sigma_kj.
inline CliffordElem dgamma_sigma(const DGamma& g, int a, int i, int dw = 1) {
  int n = static_cast<int>(g.size());
  CliffordElem e(n, dw);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (sgn(g[a][i][j][k]) != 0) e += CliffordElem::sigma(n, dw, k + 1, j + 1) * Scalar(g[a][i][j][k]);
  return e;
}

namespace detail {

// Adds x^x xi^xi (x) c to h.
inline void add_clifford(HomSymbol& h, Exps x, Exps xi, const CliffordElem& c) {
  for (const auto& [b, m] : c.coeffs()) h.add_term(x, xi, b, m);
}

}  // namespace detail

/// sigma(D^2) - |xi|^2 with the spin connection omega_i = x_a d_aGamma^k_ij sigma_kj:
/// -2i omega_i xi_i - d_i omega_i - omega_i omega_i + scalar.
inline ClassicalSymbol dirac_squared_symbol(const CurvatureTensor& R,
                                            std::optional<Rational> scalar_term = std::nullopt) {
  R.validate();
  int n = R.n();
  DGamma g = dgamma_from_R(R);
  std::vector<std::vector<CliffordElem>> w(n, std::vector<CliffordElem>(n, CliffordElem(n, 1)));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) w[i][a] = dgamma_sigma(g, a, i);  // coefficient of x_a in omega_i
  HomSymbol d1(n, 1, 1), d0(n, 1, 0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      detail::add_clifford(d1, unit_exp(a), unit_exp(i), w[i][a] * Scalar(0, -2));
      if (a == i) detail::add_clifford(d0, 0, 0, w[i][i] * Scalar(-1));
      for (int b = 0; b < n; ++b)
        detail::add_clifford(d0, unit_exp(a) + unit_exp(b), 0, w[i][a] * w[i][b] * Scalar(-1));
    }
  Rational s = scalar_term ? *scalar_term : R.scalar_curvature();
  d0.add_term(0, 0, 0, Scalar(s));
  ClassicalSymbol q(n, 1, 1);
  q.add(d1);
  q.add(d0);
  return q;
}

// ---- flat twisted Dirac -------------------------------------------------------

/// sigma(D_W) = sum_j gamma_j (i xi_j + A_j(x)).
inline ClassicalSymbol twisted_dirac_symbol(const GaugeField& G) {
  int n = G.n, dw = G.dw;
  HomSymbol d1(n, dw, 1), d0(n, dw, 0);
  for (int j = 0; j < n; ++j) {
    Blade b = Blade{1} << j;
    d1.add_term(0, unit_exp(j), b, MatrixW::identity(dw, Scalar(0, 1)));
    for (int a = 0; a < n; ++a) d0.add_term(unit_exp(a), 0, b, G.A_lin[j][a]);
  }
  ClassicalSymbol s(n, dw, 1);
  s.add(d1);
  s.add(d0);
  return s;
}

/// F_ij(x) = d_iA_j - d_jA_i + [A_i, A_j] as an x-polynomial of degree 2.
inline HomSymbol gauge_curvature(const GaugeField& G, int i, int j, Blade blade) {
  HomSymbol f(G.n, G.dw, 0);
  f.add_term(0, 0, blade, G.F0(i, j));
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b)
      f.add_term(unit_exp(a) + unit_exp(b), 0, blade, commutator(G.A_lin[i][a], G.A_lin[j][b]));
  return f;
}

/// Scalar (Clifford-degree 0) part of sigma(D_W^2) - |xi|^2: -2i A_i xi_i - d_iA_i - A_iA_i.
inline ClassicalSymbol twisted_laplacian_lower(const GaugeField& G) {
  int n = G.n, dw = G.dw;
  HomSymbol d1(n, dw, 1), d0(n, dw, 0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      d1.add_term(unit_exp(a), unit_exp(i), 0, G.A_lin[i][a] * Scalar(0, -2));
      if (a == i) d0.add_term(0, 0, 0, -G.A_lin[i][i]);
      for (int b = 0; b < n; ++b) d0.add_term(unit_exp(a) + unit_exp(b), 0, 0, -(G.A_lin[i][a] * G.A_lin[i][b]));
    }
  ClassicalSymbol s(n, dw, 1);
  s.add(d1);
  s.add(d0);
  return s;
}

/// R^W = sum_{i<j} gamma_i gamma_j F_ij(x).
inline ClassicalSymbol twisted_curvature_term(const GaugeField& G) {
  int n = G.n;
  HomSymbol d0(n, G.dw, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d0 += gauge_curvature(G, i, j, (Blade{1} << i) | (Blade{1} << j));
  ClassicalSymbol s(n, G.dw, 0);
  s.add(d0);
  return s;
}

/// sigma(D_W^2) - |xi|^2.
inline ClassicalSymbol twisted_flat_symbol(const GaugeField& G) {
  ClassicalSymbol s = twisted_laplacian_lower(G);
  s += twisted_curvature_term(G);
  return s;
}

// ---- characteristic densities -------------------------------------------------

namespace detail {

inline std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace detail

/// 1/4 sum_tau sign(tau) sum_{a,b} R_{ab tau1 tau2} R_{ba tau3 tau4}: volume coefficient of tr(R^R).
inline Rational pontryagin_density(const CurvatureTensor& R) {
  if (R.n() != 4) throw InputError("pontryagin density is implemented for n = 4");
  Rational s = 0;
  for (const auto& t : detail::all_perms(4)) {
    Rational part = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) part += R(a, b, t[0], t[1]) * R(b, a, t[2], t[3]);
    s += detail::perm_sign(t) > 0 ? part : -part;
  }
  return s / 4;
}

/// 2^{-p} sum_tau sign(tau) tr(F_{tau1 tau2} ... F_{tau(n-1) tau n}).
inline Scalar chern_density(const GaugeField& G, int p) {
  int n = G.n;
  if (n != 2 * p) throw DimensionMismatch("chern density needs n = 2p");
  Scalar s;
  for (const auto& t : detail::all_perms(n)) {
    MatrixW m = MatrixW::identity(G.dw);
    for (int r = 0; r < p; ++r) m = m * G.F0(t[2 * r], t[2 * r + 1]);
    Scalar tr = m.trace();
    s += detail::perm_sign(t) > 0 ? tr : -tr;
  }
  Rational scale = 1;
  for (int r = 0; r < p; ++r) scale /= 2;
  return s * Scalar(scale);
}

// ---- index pipelines ------------------------------------------------------------

struct IndexReport {
  PiScalar sres_log;
  PiScalar index_density;
  PiScalar comparator;
  bool matches = false;
};

/// Comparator pontryagin/(48 pi^2) for the pure Dirac operator in dimension 4.
inline PiScalar dirac4_comparator(const CurvatureTensor& R) {
  return {Scalar(pontryagin_density(R) / 48), -2};
}

inline IndexReport index_pure_dirac4(const CurvatureTensor& R, Method method, const RouteOptions& opt = {}) {
  if (R.n() != 4) throw InputError("index-dirac4 needs n = 4");
  ResLog r = res_log(dirac_squared_symbol(R), 4, method, TraceKind::str, opt);
  IndexReport rep{r.residue, Scalar(Rational(-1, 2)) * r.residue, dirac4_comparator(R)};
  rep.matches = rep.sres_log == rep.comparator;
  return rep;
}

/// -2 i^p / ((2 pi)^p p!) chern_density(F, p).
inline PiScalar flat_comparator(const GaugeField& G) {
  int p = G.n / 2;
  Scalar c = Scalar(-2) * pow(Scalar::i(), p) * Scalar(Rational(1) / (factorial(p) * Rational(1 << p)));
  return {c * chern_density(G, p), -p};
}

inline IndexReport index_flat_twisted(const GaugeField& G, Method method, const RouteOptions& opt = {}) {
  ResLog r = res_log(twisted_flat_symbol(G), G.n, method, TraceKind::str, opt);
  IndexReport rep{r.residue, Scalar(Rational(-1, 2)) * r.residue, flat_comparator(G)};
  rep.matches = rep.sres_log == rep.comparator;
  return rep;
}

/// sres([(Delta^E)^{-1} R^E]^k) for k = 1..p-1 (each must vanish).
inline std::vector<PiScalar> flat_subtop_contributions(const GaugeField& G) {
  int n = G.n, p = n / 2;
  ClassicalSymbol lap = ClassicalSymbol::xi_squared(n, G.dw) + twisted_laplacian_lower(G);
  ClassicalSymbol inv = parametrix(lap, -n, n);
  ClassicalSymbol x = star(inv, twisted_curvature_term(G), -n, n);
  std::vector<PiScalar> out;
  ClassicalSymbol power = x;
  for (int k = 1; k < p; ++k) {
    if (k > 1) power = star(power, x, -n, n);
    out.push_back(residue_density(power, TraceKind::str));
  }
  return out;
}

// ---- dimension 4 closed forms -----------------------------------------------------

/// sres of |xi|^{-4} d_aGamma^k_ij d_aGamma^n_im sigma_kj sigma_nm.
inline PiScalar sres_dgamma_sq(const CurvatureTensor& R) {
  int n = R.n();
  DGamma g = dgamma_from_R(R);
  HomSymbol h(n, 1, -n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) detail::add_clifford(h, 0, 0, dgamma_sigma(g, a, i) * dgamma_sigma(g, a, i));
  ClassicalSymbol s(n, 1, -n);
  s.add(h);
  return residue_density(s, TraceKind::str);
}

/// sres of xi_a xi_b |xi|^{-6} d_aGamma^k_ij d_bGamma^n_im sigma_kj sigma_nm.
inline PiScalar sres_dgamma_cross(const CurvatureTensor& R) {
  int n = R.n();
  DGamma g = dgamma_from_R(R);
  HomSymbol h(n, 1, -n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i)
        detail::add_clifford(h, 0, unit_exp(a) + unit_exp(b), dgamma_sigma(g, a, i) * dgamma_sigma(g, b, i));
  ClassicalSymbol s(n, 1, -n);
  s.add(h);
  return residue_density(s, TraceKind::str);
}

struct ReducedReport {
  PiScalar delta_term;      // sres(Delta_x sigma_{<2} |xi|^{-4})
  PiScalar lsquare_term;    // sres(L_x^2 sigma_{<2} |xi|^{-6})
  PiScalar reduced;         // -1/2 delta_term + 1/6 lsquare_term
  PiScalar general;         // Taylor route
  std::optional<Rational> reconciling_weight;  // w with -1/2 delta + w lsquare = general
  bool matches = false;
};

/// Two-term reduced formula for sres(log D^2) in dimension 4 with weights -1/2 and 1/6.
inline ReducedReport reduced_dirac4(const CurvatureTensor& R) {
  if (R.n() != 4) throw InputError("reduced formula needs n = 4");
  ClassicalSymbol q = dirac_squared_symbol(R);
  ClassicalSymbol dq(4, 1, 1), lq(4, 1, 3);
  for (const auto& [d, h] : q.comps()) {
    dq.add(apply_Delta(h));
    lq.add(apply_L(apply_L(h)));
  }
  ReducedReport rep;
  rep.delta_term = residue_density(dq.times_xi2_power(-2), TraceKind::str);
  rep.lsquare_term = residue_density(lq.times_xi2_power(-3), TraceKind::str);
  rep.reduced = Scalar(Rational(-1, 2)) * rep.delta_term + Scalar(Rational(1, 6)) * rep.lsquare_term;
  rep.general = res_log(q, 4, Method::taylor, TraceKind::str).residue;
  rep.matches = rep.reduced == rep.general;
  PiScalar rest = rep.general + Scalar(Rational(1, 2)) * rep.delta_term;
  if (!rep.lsquare_term.is_zero() && (rest.is_zero() || rest.pi_power() == rep.lsquare_term.pi_power()) &&
      rest.coeff().is_real() && rep.lsquare_term.coeff().is_real())
    rep.reconciling_weight = rest.coeff().re() / rep.lsquare_term.coeff().re();
  return rep;
}

}  // namespace logres
