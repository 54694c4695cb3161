#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "logres/geometry.hpp"
#include "logres/logexpand.hpp"
#include "logres/random.hpp"
#include "logres/residue.hpp"

namespace logres::selftest {

/// Independent moment oracle from Gaussian factorization:
/// int_{R^n} xi^{2b} e^{-|xi|^2} = prod Gamma(b_i + 1/2) = 1/2 Gamma(p + |b|) * M(2b).
inline PiScalar gaussian_moment(int n, Exps alpha) {
  int p = n / 2, b = 0;
  Rational c = 2;
  for (int i = 0; i < n; ++i) {
    int a = exp_at(alpha, i);
    if (a % 2 != 0) return {};
    for (int k = 1; k <= a / 2; ++k) c *= Rational(2 * k - 1, 2);  // Gamma(k + 1/2) / Gamma(1/2)
    b += a / 2;
  }
  return {Scalar(c / factorial(p + b - 1)), p};
}

struct Property {
  std::string name;
  int cases = 0;
  bool pass = true;
  bool internal_error = false;
  std::string detail;  // first counterexample

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Options {
  std::uint64_t seed = 1;
  int tensors = 3;
  int symbols = 4;
  int rotations = 2;
  int cyclic_pairs = 40;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<Property> properties;

  bool all_pass() const {
    for (const auto& p : properties)
      if (!p.pass) return false;
    return true;
  }
  bool internal_error() const {
    for (const auto& p : properties)
      if (p.internal_error) return true;
    return false;
  }
  nlohmann::json to_json() const {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : properties) {
      nlohmann::json e = {{"name", p.name}, {"cases", p.cases}, {"pass", p.pass}};
      if (!p.pass) e["detail"] = p.detail;
      props.push_back(e);
    }
    return {{"seed", seed}, {"pass", all_pass()}, {"properties", props}};
  }
};

namespace detail {

inline std::string perm_str(const std::vector<int>& p) {
  std::string s;
  for (int v : p) s += std::to_string(v + 1);
  return s;
}

inline void clifford_strgamma(Property& prop, std::mt19937_64& rng) {
  for (int n : {2, 4}) {
    int p = n / 2;
    for (Blade b = 0; b <= top_blade(n); ++b) {
      MatrixW m = random_matrix(2, rng);
      CliffordElem e(n, 2);
      e.add(b, m);
      Scalar want = b == top_blade(n) ? pow(Scalar(0, -2), p) * m.trace() : Scalar();
      ++prop.cases;
      if (!(cl_str(e) == want)) prop.fail("n=" + std::to_string(n) + " blade " + blade_str(b));
    }
  }
}

inline void clifford_strprodsigma(Property& prop) {
  for (int n : {2, 4})
    for (int dw : {1, 2}) {
      int p = n / 2;
      for (const auto& t : logres::detail::all_perms(n)) {
        CliffordElem e = CliffordElem::scalar(n, dw, Scalar(1));
        for (int k = 0; k < p; ++k) e = e * CliffordElem::sigma(n, dw, t[2 * k] + 1, t[2 * k + 1] + 1);
        Scalar want = Scalar(logres::detail::perm_sign(t) * dw) * pow(Scalar(0, -1), p) *
                      Scalar(Rational(1, 1 << p));
        ++prop.cases;
        if (!(cl_str(e) == want))
          prop.fail("n=" + std::to_string(n) + " d_W=" + std::to_string(dw) + " tau=" + perm_str(t));
      }
    }
}

inline void clifford_cyclicity(Property& prop, std::mt19937_64& rng, int pairs) {
  for (int k = 0; k < pairs; ++k) {
    int n = k % 2 == 0 ? 2 : 4, dw = 1 + (k / 2) % 2;
    CliffordElem a = random_clifford(n, dw, rng), b = random_clifford(n, dw, rng);
    // str is graded-cyclic: odd elements pick up a sign when swapped
    int pa = static_cast<int>(rng() % 2), pb = static_cast<int>(rng() % 2);
    a = parity_part(a, pa);
    b = parity_part(b, pb);
    Scalar sign(pa * pb == 1 ? -1 : 1);
    ++prop.cases;
    if (!(cl_str(a * b) == sign * cl_str(b * a)) || !(cl_tr(a * b) == cl_tr(b * a)))
      prop.fail("pair " + std::to_string(k) + " (n=" + std::to_string(n) + ")");
  }
}

inline void moments(Property& prop) {
  for (int n : {2, 4, 6})
    for (int total = 0; total <= 8; total += 2)
      for (Exps a : exponents_of_degree(n, total)) {
        ++prop.cases;
        if (!(sphere_moment(n, a) == gaussian_moment(n, a)))
          prop.fail("n=" + std::to_string(n) + " alpha=" + exps_str(a, n, "xi"));
      }
}

inline void rsigma_lemma(Property& prop, const CurvatureTensor& R) {
  int n = R.n();
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      CliffordElem lhs(n, 1), rhs(n, 1);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          CliffordElem s = CliffordElem::sigma(n, 1, k + 1, j + 1);
          lhs += s * Scalar(R(i, a, j, k) + R(i, k, j, a));
          rhs += s * Scalar(Rational(3, 2) * R(i, a, j, k));
        }
      ++prop.cases;
      if (!(lhs == rhs)) prop.fail("i=" + std::to_string(i + 1) + " a=" + std::to_string(a + 1));
    }
}

inline void dgamma_sigma_half_r(Property& prop, const CurvatureTensor& R) {
  int n = R.n();
  DGamma g = dgamma_from_R(R);
  CliffordElem trace(n, 1);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      CliffordElem half(n, 1);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          half += CliffordElem::sigma(n, 1, k + 1, j + 1) * Scalar(R(j, k, i, a) / 2);
      ++prop.cases;
      if (!(dgamma_sigma(g, a, i) == half))
        prop.fail("d_a Gamma sigma != 1/2 R sigma at a=" + std::to_string(a + 1) + " i=" + std::to_string(i + 1));
    }
  for (int i = 0; i < n; ++i) trace += dgamma_sigma(g, i, i);
  ++prop.cases;
  if (!trace.is_zero()) prop.fail("d_i Gamma^k_ij sigma_kj != 0");
}

inline void dgamma_residue_constants(Property& prop, const CurvatureTensor& R) {
  Rational P = pontryagin_density(R);
  ++prop.cases;
  if (!(sres_dgamma_sq(R) == PiScalar(Scalar(P / 32), -2))) prop.fail("|xi|^-4 dGamma dGamma constant");
  ++prop.cases;
  if (!(sres_dgamma_cross(R) == PiScalar(Scalar(P / 128), -2))) prop.fail("xi_a xi_b |xi|^-6 cross constant");
}

inline void routes(Property& prop, const ClassicalSymbol& q, int n, const std::string& label) {
  LogSymbol ref = log_via_taylor(q, n);
  for (Method m : {Method::ch, Method::seeley}) {
    ++prop.cases;
    if (auto d = first_disagreement(ref, log_via(m, q, n), n))
      prop.fail(label + ": " + to_string(m) + " vs taylor at degree " + std::to_string(*d));
  }
}

}  // namespace detail

/// Runs the invariant suite. Each property catches its own failures so one broken
/// identity never hides the rest.
inline Report run(const Options& opt = {}) {
  Report rep;
  rep.seed = opt.seed;
  std::mt19937_64 rng(opt.seed);

  std::vector<CurvatureTensor> tensors;
  for (int t = 0; t < opt.tensors; ++t) tensors.push_back(random_curvature(4, rng));
  std::vector<GaugeField> gauges;
  for (int t = 0; t < opt.tensors; ++t) gauges.push_back(random_gauge(t % 2 == 0 ? 2 : 4, 2, rng));

  auto check = [&rep](const std::string& name, const std::function<void(Property&)>& body) {
    Property p;
    p.name = name;
    try {
      body(p);
    } catch (const InvariantFailure& e) {
      p.internal_error = true;
      p.fail(std::string("internal invariant: ") + e.what());
    } catch (const std::exception& e) {
      p.fail(std::string("exception: ") + e.what());
    }
    rep.properties.push_back(p);
  };

  check("clifford.strgamma", [&](Property& p) { detail::clifford_strgamma(p, rng); });
  check("clifford.strprodsigma", [&](Property& p) { detail::clifford_strprodsigma(p); });
  check("clifford.cyclicity", [&](Property& p) { detail::clifford_cyclicity(p, rng, opt.cyclic_pairs); });
  check("residue.moments_vs_gaussian", [&](Property& p) { detail::moments(p); });
  check("geometry.lemma_rsigma", [&](Property& p) {
    for (const auto& R : tensors) detail::rsigma_lemma(p, R);
  });
  check("geometry.dgamma_sigma", [&](Property& p) {
    for (const auto& R : tensors) detail::dgamma_sigma_half_r(p, R);
  });
  check("geometry.sres_dgamma", [&](Property& p) {
    for (const auto& R : tensors) detail::dgamma_residue_constants(p, R);
  });
  check("routes.agreement", [&](Property& p) {
    for (std::size_t t = 0; t < tensors.size(); ++t)
      detail::routes(p, dirac_squared_symbol(tensors[t]), 4, "dirac tensor " + std::to_string(t));
    for (int s = 0; s < opt.symbols; ++s) {
      int n = s % 2 == 0 ? 2 : 4, dw = 1 + (s / 2) % 2;
      detail::routes(p, random_generalised_laplacian(n, dw, rng), n, "symbol " + std::to_string(s));
    }
  });
  check("flat.index_density", [&](Property& p) {
    for (const auto& G : gauges) {
      ++p.cases;
      if (!index_flat_twisted(G, Method::taylor).matches) p.fail("n=" + std::to_string(G.n) + " comparator");
      for (const auto& c : flat_subtop_contributions(G)) {
        ++p.cases;
        if (!c.is_zero()) p.fail("n=" + std::to_string(G.n) + " sub-top power contributes");
      }
    }
  });
  check("flat.lichnerowicz", [&](Property& p) {
    for (const auto& G : gauges) {
      ClassicalSymbol d = twisted_dirac_symbol(G);
      ClassicalSymbol lhs = star(d, d, -G.n);
      ClassicalSymbol rhs = ClassicalSymbol::xi_squared(G.n, G.dw) + twisted_flat_symbol(G);
      ++p.cases;
      if (!lhs.equal_above(rhs, -G.n)) p.fail("n=" + std::to_string(G.n));
    }
  });
  check("invariance.rotation", [&](Property& p) {
    for (int r = 0; r < opt.rotations; ++r) {
      const CurvatureTensor& R = tensors[r % tensors.size()];
      RatMatrix O = random_rotation(4, rng);
      ++p.cases;
      if (!(index_pure_dirac4(rotate(R, O), Method::taylor).sres_log ==
            index_pure_dirac4(R, Method::taylor).sres_log))
        p.fail("dirac tensor under rotation " + std::to_string(r));
      const GaugeField& G = gauges[r % gauges.size()];
      RatMatrix OG = random_rotation(G.n, rng);
      ++p.cases;
      if (!(index_flat_twisted(rotate(G, OG), Method::taylor).sres_log ==
            index_flat_twisted(G, Method::taylor).sres_log))
        p.fail("gauge field under rotation " + std::to_string(r));
    }
  });
  return rep;
}

}  // namespace logres::selftest
