#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "logres/clifford.hpp"
#include "logres/errors.hpp"
#include "logres/geometry.hpp"
#include "logres/symbol.hpp"

namespace logres::io {

using nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// ---- scalars --------------------------------------------------------------

inline Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

/// "p/q", integer, or ["re", "im"].
inline Scalar scalar_from(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw InputError("complex entries are [\"re\", \"im\"], got " + j.dump());
    return {rational_from(j[0]), rational_from(j[1])};
  }
  return Scalar(rational_from(j));
}

inline json to_json(const Scalar& s) {
  if (s.is_real()) return s.re().get_str();
  return json::array({s.re().get_str(), s.im().get_str()});
}

/// A scalar (times identity) or a d_W x d_W nested array.
inline MatrixW matrix_from(const json& j, int dw) {
  bool nested = j.is_array() && !j.empty() && j[0].is_array();
  if (!nested) return MatrixW::identity(dw, scalar_from(j));
  if (static_cast<int>(j.size()) != dw) throw InputError("matrix must have d_W rows: " + j.dump());
  MatrixW m(dw);
  for (int r = 0; r < dw; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != dw)
      throw InputError("matrix must have d_W columns: " + j.dump());
    for (int c = 0; c < dw; ++c) m(r, c) = scalar_from(j[r][c]);
  }
  return m;
}

inline json to_json(const MatrixW& m) {
  Scalar c;
  if (m.is_scalar(&c)) return to_json(c);
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(to_json(m(r, k)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const PiScalar& p) {
  auto [re, im] = p.approx();
  return {{"exact", p.str()},
          {"coeff", to_json(p.coeff())},
          {"pi_power", p.pi_power()},
          {"approx", p.coeff().is_real() ? json(re) : json::array({re, im})}};
}

// ---- symbols ----------------------------------------------------------------

inline int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw InputError(std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

inline std::vector<int> int_list(const json& j, const char* key, int n) {
  std::vector<int> v(n, 0);
  if (!j.contains(key)) return v;
  if (!j[key].is_array() || static_cast<int>(j[key].size()) != n)
    throw InputError(std::string("field '") + key + "' must be a list of n integers");
  for (int i = 0; i < n; ++i) {
    if (!j[key][i].is_number_integer() || j[key][i].get<int>() < 0 || j[key][i].get<int>() > 64)
      throw InputError(std::string("field '") + key + "' needs small nonnegative integers");
    v[i] = j[key][i].get<int>();
  }
  return v;
}

/// Term list: {x, xi, abs_xi_power, gammas, coeff} meaning x^x xi^xi |xi|^p gamma_{g1}...gamma_{gk} coeff.
inline ClassicalSymbol symbol_from(const json& terms, int n, int dw) {
  if (!terms.is_array()) throw InputError("symbol must be a list of terms");
  ClassicalSymbol s(n, dw, 1);
  for (const auto& t : terms) {
    if (!t.is_object()) throw InputError("each term must be an object");
    std::vector<int> x = int_list(t, "x", n), xi = int_list(t, "xi", n);
    int e = 0;
    if (t.contains("abs_xi_power")) {
      if (!t["abs_xi_power"].is_number_integer()) throw InputError("abs_xi_power must be an integer");
      e = t["abs_xi_power"].get<int>();
    }
    if (!t.contains("coeff")) throw InputError("term without 'coeff'");
    CliffordElem c = CliffordElem::from(n, matrix_from(t["coeff"], dw));
    if (t.contains("gammas")) {
      if (!t["gammas"].is_array()) throw InputError("'gammas' must be a list of 1-based indices");
      CliffordElem g = CliffordElem::scalar(n, dw, 1);
      for (const auto& gi : t["gammas"]) {
        if (!gi.is_number_integer() || gi.get<int>() < 1 || gi.get<int>() > n)
          throw InputError("gamma index out of range: " + gi.dump());
        g = g * CliffordElem::gamma(n, dw, gi.get<int>());
      }
      c = g * c;
    }
    Exps xe = make_exps(x), xie = make_exps(xi);
    int degree = total_degree(xie) + e;
    HomSymbol h(n, dw, degree);
    for (const auto& [b, m] : c.coeffs()) h.add_term(xe, xie, b, m);
    s.add(h);
  }
  return s;
}

inline json symbol_to_json(const ClassicalSymbol& s) {
  json terms = json::array();
  for (auto it = s.comps().rbegin(); it != s.comps().rend(); ++it) {
    const HomSymbol& h = it->second;
    for (const auto& [k, m] : h.terms()) {
      json gam = json::array();
      for (Blade b = k.blade; b != 0; b &= b - 1) gam.push_back(std::countr_zero(b) + 1);
      terms.push_back({{"x", exps_vector(k.x, s.n())},
                       {"xi", exps_vector(k.xi, s.n())},
                       {"abs_xi_power", h.degree() - total_degree(k.xi)},
                       {"gammas", gam},
                       {"coeff", to_json(m)}});
    }
  }
  return terms;
}

struct ResidueJob {
  int n;
  int dw;
  ClassicalSymbol q_lower;
};

inline ResidueJob residue_job_from(const json& j) {
  if (!j.is_object()) throw InputError("input must be a JSON object");
  int n = int_field(j, "n");
  int dw = j.contains("d_W") ? int_field(j, "d_W") : 1;
  if (n < 2 || n > kMaxVars || n % 2 != 0) throw InputError("n must be even, 2..8");
  if (dw < 1 || dw > 8) throw InputError("d_W must be 1..8");
  if (!j.contains("q_lower")) throw InputError("missing 'q_lower' term list");
  return {n, dw, symbol_from(j["q_lower"], n, dw)};
}

inline json residue_job_to_json(int n, int dw, const ClassicalSymbol& q) {
  return {{"n", n}, {"d_W", dw}, {"q_lower", symbol_to_json(q)}};
}

// ---- tensors ------------------------------------------------------------------

inline CurvatureTensor curvature_from(const json& j) {
  int n = int_field(j, "n");
  if (!j.contains("R")) throw InputError("missing 'R'");
  CurvatureTensor R(n);
  const json& r = j["R"];
  auto dim_ok = [n](const json& a) { return a.is_array() && static_cast<int>(a.size()) == n; };
  if (!dim_ok(r)) throw InputError("'R' must be an n x n x n x n nested array");
  for (int i = 0; i < n; ++i) {
    if (!dim_ok(r[i])) throw InputError("'R' must be an n x n x n x n nested array");
    for (int a = 0; a < n; ++a) {
      if (!dim_ok(r[i][a])) throw InputError("'R' must be an n x n x n x n nested array");
      for (int jj = 0; jj < n; ++jj) {
        if (!dim_ok(r[i][a][jj])) throw InputError("'R' must be an n x n x n x n nested array");
        for (int k = 0; k < n; ++k) R(i, a, jj, k) = rational_from(r[i][a][jj][k]);
      }
    }
  }
  R.validate();
  return R;
}

inline json curvature_to_json(const CurvatureTensor& R) {
  int n = R.n();
  json r = json::array();
  for (int i = 0; i < n; ++i) {
    json ri = json::array();
    for (int a = 0; a < n; ++a) {
      json ra = json::array();
      for (int jj = 0; jj < n; ++jj) {
        json rj = json::array();
        for (int k = 0; k < n; ++k) rj.push_back(R(i, a, jj, k).get_str());
        ra.push_back(rj);
      }
      ri.push_back(ra);
    }
    r.push_back(ri);
  }
  return {{"n", n}, {"R", r}};
}

inline std::vector<std::vector<MatrixW>> matrix_grid(const json& j, int n, int dw, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw InputError(std::string("'") + what + "' must be an n x n grid of matrices");
  std::vector<std::vector<MatrixW>> g(n, std::vector<MatrixW>(n, MatrixW(dw)));
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
      throw InputError(std::string("'") + what + "' must be an n x n grid of matrices");
    for (int a = 0; a < n; ++a) g[i][a] = matrix_from(j[i][a], dw);
  }
  return g;
}

/// {"n", "d_W", "A_lin"} with A_i(x) = sum_a A_lin[i][a] x_a, or {"n", "d_W", "F"}.
inline GaugeField gauge_from(const json& j) {
  int n = int_field(j, "n");
  int dw = j.contains("d_W") ? int_field(j, "d_W") : 1;
  if (n < 2 || n > kMaxVars || n % 2 != 0) throw InputError("n must be even, 2..8");
  if (dw < 1 || dw > 8) throw InputError("d_W must be 1..8");
  if (j.contains("A_lin")) {
    GaugeField g(n, dw);
    g.A_lin = matrix_grid(j["A_lin"], n, dw, "A_lin");
    return g;
  }
  if (j.contains("F")) return GaugeField::from_curvature(matrix_grid(j["F"], n, dw, "F"));
  throw InputError("gauge input needs 'A_lin' or 'F'");
}

inline json gauge_to_json(const GaugeField& g) {
  json a = json::array();
  for (int i = 0; i < g.n; ++i) {
    json row = json::array();
    for (int k = 0; k < g.n; ++k) row.push_back(to_json(g.A_lin[i][k]));
    a.push_back(row);
  }
  return {{"n", g.n}, {"d_W", g.dw}, {"A_lin", a}};
}

}  // namespace logres::io
