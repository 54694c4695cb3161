// logres: residue density of log of a generalised Laplacian, index densities, selftest.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "logres/errors.hpp"
#include "logres/geometry.hpp"
#include "logres/io.hpp"
#include "logres/logexpand.hpp"
#include "logres/random.hpp"
#include "logres/selftest.hpp"

using namespace logres;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInput = 2, kAssert = 3, kInternal = 4 };

struct Job {
  std::string input;
  std::string method = "all";
  std::string trace;
  std::optional<int> floor;
  std::uint64_t seed = 1;
  std::string emit;
  bool json = false;
};

std::vector<Method> methods_of(const std::string& m) {
  if (m == "all") return {Method::taylor, Method::ch, Method::seeley};
  if (m == "taylor") return {Method::taylor};
  if (m == "ch") return {Method::ch};
  return {Method::seeley};
}

std::string approx(const PiScalar& p) {
  auto [re, im] = p.approx();
  std::ostringstream os;
  os << std::setprecision(10) << re;
  if (im != 0) os << (im < 0 ? " - " : " + ") << std::abs(im) << " i";
  return os.str();
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(1) << "\n";
}

struct RouteRun {
  Method method;
  LogSymbol log;
  PiScalar residue;
};

// Runs the selected routes; under "all" the classical parts must agree degree by degree.
std::vector<RouteRun> run_routes(const ClassicalSymbol& q, int n, const Job& job, TraceKind kind) {
  RouteOptions opt{job.floor, true};
  std::vector<RouteRun> runs;
  for (Method m : methods_of(job.method)) {
    LogSymbol l = log_via(m, q, n, opt);
    runs.push_back({m, l, residue_density(l.classical, kind)});
  }
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (auto d = first_disagreement(runs[0].log, runs[r].log, n, opt))
      throw RouteDisagreement(to_string(runs[r].method) + " and " + to_string(runs[0].method) +
                              " disagree at degree " + std::to_string(*d));
  return runs;
}

json route_json(const std::vector<RouteRun>& runs) {
  json a = json::array();
  for (const auto& r : runs)
    a.push_back({{"method", to_string(r.method)},
                 {"res_log", io::to_json(r.residue)},
                 {"zeta0", io::to_json(Scalar(Rational(-1, 2)) * r.residue)}});
  return a;
}

int cmd_residue(const Job& job) {
  TraceKind kind = job.trace == "str" ? TraceKind::str : TraceKind::tr;
  io::ResidueJob in = [&] {
    if (!job.input.empty()) return io::residue_job_from(io::read_json_file(job.input));
    std::mt19937_64 rng(job.seed);
    return io::ResidueJob{4, 1, random_generalised_laplacian(4, 1, rng)};
  }();
  if (!job.emit.empty()) write_json_file(job.emit, io::residue_job_to_json(in.n, in.dw, in.q_lower));
  auto runs = run_routes(in.q_lower, in.n, job, kind);
  int fl = job.floor.value_or(-in.n);
  if (job.json) {
    std::cout << json{{"command", "residue"}, {"n", in.n}, {"d_W", in.dw}, {"trace", to_string(kind)},
                      {"floor", fl}, {"routes", route_json(runs)}, {"routes_agree", true}}
                     .dump(1)
              << "\n";
    return kOk;
  }
  std::cout << "residue  n=" << in.n << " d_W=" << in.dw << " trace=" << to_string(kind) << " floor=" << fl
            << "\n";
  for (const auto& r : runs) {
    PiScalar z = Scalar(Rational(-1, 2)) * r.residue;
    std::cout << "  " << std::left << std::setw(7) << to_string(r.method) << " res_log = " << r.residue.str()
              << "   (approx " << approx(r.residue) << ")\n"
              << "          zeta0   = " << z.str() << "   (approx " << approx(z) << ")\n";
  }
  if (runs.size() > 1) std::cout << "routes agree on degrees -1.." << fl << "\n";
  return kOk;
}

// Shared printer for the two index pipelines.
int report_index(const std::string& name, const json& header, const std::vector<std::pair<Method, IndexReport>>& reps,
                 const Job& job) {
  const IndexReport& rep = reps[0].second;
  bool pass = rep.matches;
  if (job.json) {
    json routes = json::array();
    for (const auto& [m, r] : reps)
      routes.push_back({{"method", to_string(m)}, {"sres_log", io::to_json(r.sres_log)},
                        {"index_density", io::to_json(r.index_density)}});
    json out = header;
    out["command"] = name;
    out["routes"] = routes;
    out["comparator"] = io::to_json(rep.comparator);
    out["pass"] = pass;
    std::cout << out.dump(1) << "\n";
  } else {
    std::cout << name;
    for (const auto& [k, v] : header.items()) std::cout << "  " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    std::cout << "\n";
    for (const auto& [m, r] : reps)
      std::cout << "  " << std::left << std::setw(7) << to_string(m) << " sres_log = " << r.sres_log.str()
                << "   index_density = " << r.index_density.str() << "\n";
    std::cout << "  comparator = " << rep.comparator.str() << "   (approx " << approx(rep.comparator) << ")\n"
              << "  sres_log   = " << rep.sres_log.str() << "   (approx " << approx(rep.sres_log) << ")\n"
              << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kOk : kAssert;
}

std::vector<std::pair<Method, IndexReport>> index_reports(const std::vector<RouteRun>& runs,
                                                          const PiScalar& comparator) {
  std::vector<std::pair<Method, IndexReport>> reps;
  for (const auto& r : runs)
    reps.emplace_back(r.method, IndexReport{r.residue, Scalar(Rational(-1, 2)) * r.residue, comparator,
                                            r.residue == comparator});
  return reps;
}

void require_str(const Job& job) {
  if (!job.trace.empty() && job.trace != "str") throw InputError("index pipelines use --trace str");
}

int cmd_index_dirac4(const Job& job) {
  require_str(job);
  CurvatureTensor R = [&] {
    if (!job.input.empty()) return io::curvature_from(io::read_json_file(job.input));
    std::mt19937_64 rng(job.seed);
    return random_curvature(4, rng);
  }();
  if (R.n() != 4) throw InputError("index-dirac4 needs n = 4, got n = " + std::to_string(R.n()));
  if (!job.emit.empty()) write_json_file(job.emit, io::residue_job_to_json(4, 1, dirac_squared_symbol(R)));
  auto reps = index_reports(run_routes(dirac_squared_symbol(R), 4, job, TraceKind::str), dirac4_comparator(R));
  json header = {{"n", 4}, {"pontryagin_density", pontryagin_density(R).get_str()}};
  return report_index("index-dirac4", header, reps, job);
}

int cmd_index_flat(const Job& job) {
  require_str(job);
  GaugeField G = [&] {
    if (!job.input.empty()) return io::gauge_from(io::read_json_file(job.input));
    std::mt19937_64 rng(job.seed);
    return random_gauge(2, 2, rng);
  }();
  if (G.n != 2 && G.n != 4) throw InputError("index-flat supports n = 2 and n = 4");
  if (!job.emit.empty()) write_json_file(job.emit, io::residue_job_to_json(G.n, G.dw, twisted_flat_symbol(G)));
  auto reps = index_reports(run_routes(twisted_flat_symbol(G), G.n, job, TraceKind::str), flat_comparator(G));
  json header = {{"n", G.n}, {"d_W", G.dw}, {"chern_density", io::to_json(chern_density(G, G.n / 2))}};
  return report_index("index-flat", header, reps, job);
}

int cmd_selftest(const Job& job) {
  selftest::Options opt;
  opt.seed = job.seed;
  selftest::Report rep = selftest::run(opt);
  if (job.json) {
    std::cout << rep.to_json().dump(1) << "\n";
  } else {
    std::cout << "selftest seed=" << rep.seed << "\n";
    for (const auto& p : rep.properties) {
      std::cout << "  " << (p.pass ? "PASS " : "FAIL ") << std::left << std::setw(30) << p.name << " cases=" << p.cases;
      if (!p.pass) std::cout << "  " << p.detail;
      std::cout << "\n";
    }
    std::cout << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
  }
  if (rep.internal_error()) return kInternal;
  return rep.all_pass() ? kOk : kAssert;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact residue density of log of a generalised Laplacian"};
  app.require_subcommand(1);
  Job job;

  auto add_common = [&job](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("input", job.input, "JSON input file (random data from --seed if omitted)");
    sub->add_option("--method", job.method, "expansion route")
        ->check(CLI::IsMember({"ch", "taylor", "seeley", "all"}));
    sub->add_option("--trace", job.trace, "trace kind")->check(CLI::IsMember({"tr", "str"}));
    sub->add_option("--floor", job.floor, "lowest symbol degree computed (default -n)");
    sub->add_option("--seed", job.seed, "seed for random data");
    sub->add_option("--emit-symbol", job.emit, "write sigma_{<2} as a residue job to PATH");
    sub->add_flag("--json", job.json, "machine-readable output only");
  };
  auto* residue = app.add_subcommand("residue", "res_log and zeta(0) for a symbol file");
  auto* dirac = app.add_subcommand("index-dirac4", "pure Dirac index density in dimension 4");
  auto* flat = app.add_subcommand("index-flat", "flat twisted Dirac index density");
  auto* self = app.add_subcommand("selftest", "invariant suite");
  add_common(residue, true);
  add_common(dirac, true);
  add_common(flat, true);
  self->add_option("--seed", job.seed, "seed for random data");
  self->add_flag("--json", job.json, "machine-readable output only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (residue->parsed()) return cmd_residue(job);
    if (dirac->parsed()) return cmd_index_dirac4(job);
    if (flat->parsed()) return cmd_index_flat(job);
    return cmd_selftest(job);
  } catch (const RouteDisagreement& e) {
    std::cerr << "route disagreement: " << e.what() << "\n";
    return kAssert;
  } catch (const InvariantFailure& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
