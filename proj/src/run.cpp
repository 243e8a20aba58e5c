#include "pqcurve/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pqcurve/config.hpp"
#include "pqcurve/region.hpp"

namespace pqcurve {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

void write_json(const fs::path& file, const json& doc) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ParameterError("cannot write '" + file.string() + "'");
  out << doc.dump(2) << '\n';
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& file, const std::vector<std::string>& header)
      : out_(file, std::ios::binary) {
    if (!out_) throw ParameterError("cannot write '" + file.string() + "'");
    row_strings(header);
  }
  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(fmt17(v));
    row_strings(cells);
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

// Runs fn(i) for i in [0, count) on up to `jobs` threads; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t count) {
  std::vector<double> out = linspace(std::log(lo), std::log(hi), count);
  for (double& x : out) x = std::exp(x);
  return out;
}

struct Session {
  RunConfig rc;
  ProblemConfig pc;
  Problem problem;
  json parameters;
};

json describe(const RunConfig& rc, const ProblemConfig& pc, const SystemParams& params) {
  json j;
  j["p"] = params.p;
  j["q"] = params.q;
  j["s1"] = params.s1;
  j["s2"] = params.s2;
  j["alpha1"] = params.alpha1;
  j["alpha2"] = params.alpha2;
  j["beta1"] = params.beta1;
  j["beta2"] = params.beta2;
  j["theta"] = params.theta;
  j["zeta"] = params.zeta;
  j["omega"] = params.omega;
  j["x_lo"] = pc.x_lo;
  j["x_hi"] = pc.x_hi;
  j["n"] = pc.n;
  j["weight_a"] = pc.weight_a.to_string();
  j["weight_b"] = pc.weight_b.to_string();
  j["a_sup"] = params.a.sup();
  j["b_sup"] = params.b.sup();
  j["tol"] = rc.tol;
  j["seed"] = rc.seed;
  return j;
}

json base_document(const Session& s) {
  json doc;
  doc["command"] = s.rc.command;
  doc["parameters"] = s.parameters;
  return doc;
}

EigenResult require_eigen(const Problem& problem, double tol) {
  EigenResult result = principal_pair(problem.params, problem.kernel_p, problem.kernel_q, tol);
  if (!result.converged) {
    throw ConvergenceError("principal pair iteration did not converge (fp residual " +
                           fmt17(result.fp_residual) + ")");
  }
  return result;
}

json eigen_json(const EigenResult& r, const SystemParams& params) {
  json j;
  j["lambda0"] = r.lambda0;
  j["lambda1_factor"] = r.lambda1_factor;
  j["iterations"] = r.iterations;
  j["fp_residual"] = r.fp_residual;
  j["pde_residuals"] = {r.pde_residuals[0], r.pde_residuals[1]};
  j["converged"] = r.converged;
  const auto [lambda_sym, mu_sym] = symmetric_point(r.lambda0, params);
  j["symmetric_point"] = {{"lambda", lambda_sym}, {"mu", mu_sym}};
  j["min_u0"] = r.u0.minCoeff();
  j["min_v0"] = r.v0.minCoeff();
  j["positive"] = r.u0.minCoeff() > 0.0 && r.v0.minCoeff() > 0.0;
  return j;
}

json torsion_json(const TorsionConstant& c) {
  return {{"s", c.s}, {"m", c.m}, {"n", c.n_used}, {"value", c.value}};
}

std::pair<TorsionConstant, TorsionConstant> torsion_pair(const Session& s) {
  TorsionCache cache(s.rc.out_dir / "torsion_cache.json");
  const auto& params = s.problem.params;
  return {cache.get(params.s1, params.p, s.rc.torsion_n), cache.get(params.s2, params.q, s.rc.torsion_n)};
}

json witness_json(const Witness& w) {
  return {{"construction", w.construction},
          {"lambda1", w.lambda1},
          {"mu1", w.mu1},
          {"verified", w.verified},
          {"scale", w.scale},
          {"min_residual_u", w.residual_u.minCoeff()},
          {"min_residual_v", w.residual_v.minCoeff()},
          {"u", to_json(w.u)},
          {"v", to_json(w.v)},
          {"residual_u", to_json(w.residual_u)},
          {"residual_v", to_json(w.residual_v)}};
}

json probe_json(const ProbeReport& r, bool with_vectors) {
  json j{{"lambda", r.lambda},
         {"mu", r.mu},
         {"forcing", r.forcing},
         {"solver_converged", r.solver_converged},
         {"iterations", r.iterations},
         {"min_u", r.min_u},
         {"min_v", r.min_v},
         {"strictly_positive", r.strictly_positive},
         {"verdict", to_string(r.verdict)}};
  if (with_vectors) {
    j["u"] = to_json(r.u);
    j["v"] = to_json(r.v);
  }
  if (r.witness) j["witness"] = witness_json(*r.witness);
  return j;
}

// ---------------------------------------------------------------------------

void cmd_torsion(const Session& s) {
  TorsionCache cache(s.rc.out_dir / "torsion_cache.json");
  const auto& params = s.problem.params;
  json list = json::array();
  for (auto [order, expo] : {std::pair{params.s1, params.p}, std::pair{params.s2, params.q}}) {
    const TorsionConstant fine = cache.get(order, expo, s.rc.torsion_n);
    const TorsionConstant half = cache.get(order, expo, std::max<std::size_t>(1, s.rc.torsion_n / 2));
    json entry = torsion_json(fine);
    entry["value_half_n"] = half.value;
    entry["drift"] = std::abs(fine.value - half.value) / fine.value;
    list.push_back(entry);
  }
  json doc = base_document(s);
  doc["torsion_n"] = s.rc.torsion_n;
  doc["torsion"] = list;
  write_json(s.rc.out_dir / "torsion.json", doc);
}

void cmd_solve(const Session& s) {
  if (s.rc.equation != 1 && s.rc.equation != 2) throw ParameterError("--equation must be 1 or 2");
  const KernelMatrix& kernel = s.rc.equation == 1 ? s.problem.kernel_p : s.problem.kernel_q;
  const WeightSpec forcing = WeightSpec::parse(s.rc.forcing);
  Vector f(s.problem.grid.nodes.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = forcing(s.problem.grid.nodes[i]);

  const SolveReport report = solve_dirichlet(kernel, f, s.rc.tol, 500);
  if (!report.converged) {
    throw ConvergenceError("Dirichlet solve did not converge (residual " + fmt17(report.residual_inf) + ")");
  }
  CsvWriter csv(s.rc.out_dir / "solve.csv", {"x", "u"});
  for (Eigen::Index i = 0; i < f.size(); ++i) csv.row({s.problem.grid.nodes[i], report.u[i]});

  json doc = base_document(s);
  doc["equation"] = s.rc.equation;
  doc["forcing"] = forcing.to_string();
  doc["s"] = kernel.s;
  doc["m"] = kernel.m;
  doc["residual_inf"] = report.residual_inf;
  doc["iterations"] = report.iterations;
  doc["converged"] = report.converged;
  doc["max_u"] = report.u.maxCoeff();
  write_json(s.rc.out_dir / "solve.json", doc);
}

void cmd_eigen(const Session& s) {
  const EigenResult r = require_eigen(s.problem, s.rc.tol);
  CsvWriter csv(s.rc.out_dir / "eigenfunctions.csv", {"x", "u", "v"});
  for (Eigen::Index i = 0; i < r.u0.size(); ++i) csv.row({s.problem.grid.nodes[i], r.u0[i], r.v0[i]});
  json doc = base_document(s);
  doc["eigen"] = eigen_json(r, s.problem.params);
  write_json(s.rc.out_dir / "eigen.json", doc);
}

void cmd_curve(const Session& s) {
  const auto& params = s.problem.params;
  const EigenResult r = require_eigen(s.problem, s.rc.tol);
  const double lambda_sym = symmetric_point(r.lambda0, params).first;
  const double lo = s.rc.lambda_min.value_or(lambda_sym / 100.0);
  const double hi = s.rc.lambda_max.value_or(lambda_sym * 100.0);
  if (!(lo > 0.0) || !(hi >= lo)) throw ParameterError("curve needs 0 < lambda-min <= lambda-max");
  const std::size_t count = s.rc.samples ? s.rc.samples : 25;
  const std::vector<double> lambdas = logspace(lo, hi, count);

  std::vector<std::array<double, 2>> residuals(count);
  std::vector<double> mus(count);
  parallel_for(count, s.rc.jobs, [&](std::size_t i) {
    const CurvePair pair = eigenpair_for_lambda(lambdas[i], r, params);
    mus[i] = pair.mu;
    residuals[i] = system_residuals(params, s.problem.kernel_p, s.problem.kernel_q, pair.lambda,
                                    pair.mu, pair.u, pair.v);
  });

  CsvWriter csv(s.rc.out_dir / "curve.csv", {"lambda", "mu"});
  json points = json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    csv.row({lambdas[i], mus[i]});
    points.push_back({{"lambda", lambdas[i]},
                      {"mu", mus[i]},
                      {"curve_value", curve_value(lambdas[i], mus[i], params)},
                      {"residuals", {residuals[i][0], residuals[i][1]}}});
    worst = std::max({worst, residuals[i][0], residuals[i][1]});
  }
  json doc = base_document(s);
  doc["eigen"] = eigen_json(r, params);
  doc["points"] = points;
  doc["max_residual"] = worst;
  write_json(s.rc.out_dir / "curve.json", doc);
}

void cmd_region(const Session& s) {
  const auto& params = s.problem.params;
  const auto& grid = s.problem.grid;
  const EigenResult r = require_eigen(s.problem, s.rc.tol);
  const auto [lambda_sym, mu_sym] = symmetric_point(r.lambda0, params);
  const std::vector<double> lambdas = linspace(s.rc.lambda_min.value_or(-1.5 * lambda_sym),
                                               s.rc.lambda_max.value_or(1.5 * lambda_sym), s.rc.grid);
  const std::vector<double> mus = linspace(s.rc.mu_min.value_or(-1.5 * mu_sym),
                                           s.rc.mu_max.value_or(1.5 * mu_sym), s.rc.grid);
  const std::size_t count = lambdas.size() * mus.size();

  std::vector<RegionVerdict> verdicts(count);
  std::vector<ProbeReport> probes(count);
  parallel_for(count, s.rc.jobs, [&](std::size_t k) {
    const double lambda = lambdas[k / mus.size()];
    const double mu = mus[k % mus.size()];
    verdicts[k] = classify(lambda, mu, r.lambda0, params);
    if (verdicts[k].status == RegionStatus::InteriorR1) {
      std::mt19937_64 rng(s.rc.seed * 1000003u + k);
      const Vector f1 = random_polynomial_forcing(grid, rng);
      const Vector f2 = random_polynomial_forcing(grid, rng);
      probes[k] = wmp_probe(lambda, mu, f1, f2, params, s.problem.kernel_p, s.problem.kernel_q,
                            1e-8, 20000, "random_cubic");
    } else {
      probes[k] = counterexample_witness(lambda, mu, r, params, s.problem.kernel_p, s.problem.kernel_q);
    }
  });

  CsvWriter csv(s.rc.out_dir / "region.csv", {"lambda", "mu", "status", "min_u", "min_v"});
  json witnesses = json::array();
  std::size_t interior = 0, on_curve = 0, outside = 0, holds = 0, fails = 0, inconclusive = 0,
              contradictions = 0, converged = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const RegionVerdict& v = verdicts[k];
    const ProbeReport& p = probes[k];
    csv.row_strings({fmt17(v.lambda), fmt17(v.mu), to_string(v.status), fmt17(p.min_u), fmt17(p.min_v)});
    switch (v.status) {
      case RegionStatus::InteriorR1:
        ++interior;
        if (p.verdict == WmpVerdict::WMPFails) ++contradictions;
        if (p.solver_converged) ++converged;
        break;
      case RegionStatus::OnCurve:
        ++on_curve;
        break;
      case RegionStatus::Outside:
        ++outside;
        if (p.verdict != WmpVerdict::WMPFails) ++contradictions;
        break;
    }
    if (p.verdict == WmpVerdict::WMPHolds) ++holds;
    if (p.verdict == WmpVerdict::WMPFails) ++fails;
    if (p.verdict == WmpVerdict::Inconclusive) ++inconclusive;
    if (p.witness) {
      json w = witness_json(*p.witness);
      w["lambda"] = v.lambda;
      w["mu"] = v.mu;
      w["status"] = to_string(v.status);
      witnesses.push_back(w);
    }
  }
  json doc = base_document(s);
  doc["eigen"] = eigen_json(r, params);
  doc["grid"] = s.rc.grid;
  doc["counts"] = {{"InteriorR1", interior}, {"OnCurve", on_curve}, {"Outside", outside},
                   {"WMPHolds", holds},      {"WMPFails", fails},   {"Inconclusive", inconclusive}};
  doc["interior_probe_success_rate"] =
      interior ? static_cast<double>(converged) / static_cast<double>(interior) : 1.0;
  doc["contradictions"] = contradictions;
  write_json(s.rc.out_dir / "region.json", doc);
  write_json(s.rc.out_dir / "witnesses.json", {{"command", "region"}, {"parameters", s.parameters}, {"witnesses", witnesses}});
}

void cmd_verify_lb(const Session& s) {
  const EigenResult r = require_eigen(s.problem, s.rc.tol);
  const auto [c_p, c_q] = torsion_pair(s);
  const double bound = lower_bound(s.problem.params, s.problem.grid.diam, c_p, c_q);
  const LowerBoundCheck check = verify_lower_bound(r, bound);
  json doc = base_document(s);
  doc["eigen"] = eigen_json(r, s.problem.params);
  doc["torsion"] = {torsion_json(c_p), torsion_json(c_q)};
  doc["diam"] = s.problem.grid.diam;
  doc["bound"] = bound;
  doc["holds"] = check.holds;
  doc["margin"] = check.margin;
  write_json(s.rc.out_dir / "verify_lb.json", doc);
}

void cmd_verify_eta(const Session& s) {
  const double lambda = s.rc.lambda.value_or(1.0);
  const double mu = s.rc.mu.value_or(1.0);
  const auto [c_p, c_q] = torsion_pair(s);
  const double eta = eta_threshold(lambda, mu, s.problem.params, c_p, c_q);
  const double center = s.problem.grid.center();

  json checks = json::array();
  std::size_t violations = 0;
  for (const double factor : {0.9, 0.5}) {
    const double d = factor * eta;
    const Problem shrunk = build_problem(s.pc, center - 0.5 * d, center + 0.5 * d);
    const EigenResult r = require_eigen(shrunk, s.rc.tol);
    const RegionVerdict v = classify(lambda, mu, r.lambda0, shrunk.params);
    const double bound = lower_bound(shrunk.params, d, c_p, c_q);
    if (v.status != RegionStatus::InteriorR1) ++violations;
    checks.push_back({{"factor", factor},
                      {"diam", d},
                      {"lambda0", r.lambda0},
                      {"lower_bound", bound},
                      {"curve_value", curve_value(lambda, mu, shrunk.params)},
                      {"status", to_string(v.status)}});
  }
  json doc = base_document(s);
  doc["lambda"] = lambda;
  doc["mu"] = mu;
  doc["torsion"] = {torsion_json(c_p), torsion_json(c_q)};
  doc["eta"] = eta;
  doc["checks"] = checks;
  doc["violations"] = violations;
  write_json(s.rc.out_dir / "verify_eta.json", doc);
}

std::pair<double, double> probe_point(const RunConfig& rc) {
  if (!rc.lambda || !rc.mu) throw ParameterError(rc.command + " needs --lambda and --mu");
  return {*rc.lambda, *rc.mu};
}

void cmd_probe_wmp(const Session& s) {
  const auto [lambda, mu] = probe_point(s.rc);
  const auto& params = s.problem.params;
  const EigenResult r = require_eigen(s.problem, s.rc.tol);
  const RegionVerdict v = classify(lambda, mu, r.lambda0, params);

  json probes = json::array();
  std::size_t holds = 0, fails = 0;
  if (v.status == RegionStatus::InteriorR1) {
    const std::size_t count = s.rc.samples ? s.rc.samples : 5;
    std::mt19937_64 rng(s.rc.seed);
    for (std::size_t i = 0; i < count; ++i) {
      const Vector f1 = random_polynomial_forcing(s.problem.grid, rng);
      const Vector f2 = random_polynomial_forcing(s.problem.grid, rng);
      const ProbeReport p = wmp_probe(lambda, mu, f1, f2, params, s.problem.kernel_p,
                                      s.problem.kernel_q, 1e-8, 20000, "random_cubic");
      holds += p.verdict == WmpVerdict::WMPHolds;
      fails += p.verdict == WmpVerdict::WMPFails;
      json pj = probe_json(p, true);
      pj["f1"] = to_json(f1);
      pj["f2"] = to_json(f2);
      probes.push_back(pj);
    }
  } else {
    const ProbeReport p = counterexample_witness(lambda, mu, r, params, s.problem.kernel_p, s.problem.kernel_q);
    fails += p.verdict == WmpVerdict::WMPFails;
    probes.push_back(probe_json(p, false));
  }
  json doc = base_document(s);
  doc["lambda"] = lambda;
  doc["mu"] = mu;
  doc["lambda0"] = r.lambda0;
  doc["status"] = to_string(v.status);
  doc["probes"] = probes;
  doc["holds"] = holds;
  doc["fails"] = fails;
  write_json(s.rc.out_dir / "probe_wmp.json", doc);
}

void cmd_probe_wcp(const Session& s) {
  const auto [lambda, mu] = probe_point(s.rc);
  const auto& params = s.problem.params;
  const EigenResult r = require_eigen(s.problem, s.rc.tol);
  const RegionVerdict v = classify(lambda, mu, r.lambda0, params);
  if (v.status != RegionStatus::InteriorR1) {
    throw ParameterError("probe-wcp needs a point in the closure of R1 off the curve");
  }
  const std::size_t count = s.rc.samples ? s.rc.samples : 20;
  std::mt19937_64 rng(s.rc.seed);
  json pairs = json::array();
  std::size_t violations = 0, inconclusive = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Vector f1 = random_polynomial_forcing(s.problem.grid, rng);
    const Vector g1 = random_polynomial_forcing(s.problem.grid, rng);
    const Vector f2 = f1 + random_polynomial_forcing(s.problem.grid, rng);
    const Vector g2 = g1 + random_polynomial_forcing(s.problem.grid, rng);
    const ComparisonReport c = wcp_probe(lambda, mu, f1, g1, f2, g2, params, s.problem.kernel_p,
                                         s.problem.kernel_q);
    violations += c.verdict == ComparisonVerdict::Violated;
    inconclusive += c.verdict == ComparisonVerdict::Inconclusive;
    pairs.push_back({{"margin_u", c.margin_u},
                     {"margin_v", c.margin_v},
                     {"strictly_ordered", c.strictly_ordered},
                     {"solver_converged", c.solver_converged},
                     {"verdict", to_string(c.verdict)}});
  }
  json doc = base_document(s);
  doc["lambda"] = lambda;
  doc["mu"] = mu;
  doc["lambda0"] = r.lambda0;
  doc["pairs"] = pairs;
  doc["violations"] = violations;
  doc["inconclusive"] = inconclusive;
  write_json(s.rc.out_dir / "probe_wcp.json", doc);
}

void report_error(const RunConfig& rc, const std::string& kind, const std::string& message, int status) {
  const json record{{"error", {{"kind", kind}, {"message", message}, {"exit_status", status}, {"command", rc.command}}}};
  std::cerr << record.dump() << '\n';
  std::error_code ec;
  fs::create_directories(rc.out_dir, ec);
  if (!ec) {
    std::ofstream out(rc.out_dir / "error.json", std::ios::binary);
    if (out) out << record.dump(2) << '\n';
  }
}

}  // namespace

void validate(const RunConfig& rc) {
  static const std::vector<std::string> commands = {"torsion", "solve",      "eigen",     "curve",    "region",
                                                    "verify-lb", "verify-eta", "probe-wmp", "probe-wcp"};
  if (std::find(commands.begin(), commands.end(), rc.command) == commands.end()) {
    throw ParameterError("unknown command '" + rc.command + "'");
  }
  if (!(rc.tol > 0.0)) throw ParameterError("--tol must be positive");
  if (rc.n && *rc.n == 0) throw ParameterError("--n must be at least 1");
  if (rc.torsion_n == 0) throw ParameterError("--torsion-n must be at least 1");
  if (rc.grid == 0) throw ParameterError("--grid must be at least 1");
  if (rc.jobs == 0) throw ParameterError("--jobs must be at least 1");
  if (rc.config_path.empty()) throw ParameterError("--config is required");
}

int run(const RunConfig& rc) {
  const auto started = std::chrono::steady_clock::now();
  try {
    validate(rc);
    std::error_code ec;
    fs::create_directories(rc.out_dir, ec);
    if (ec || !fs::is_directory(rc.out_dir)) {
      throw ParameterError("output directory '" + rc.out_dir.string() + "' is not writable");
    }
    fs::remove(rc.out_dir / "error.json", ec);
    ProblemConfig pc = load_config(rc.config_path);
    if (rc.n) pc.n = *rc.n;
    Problem problem = build_problem(pc);
    json parameters = describe(rc, pc, problem.params);
    const Session s{rc, std::move(pc), std::move(problem), std::move(parameters)};

    if (rc.command == "torsion") cmd_torsion(s);
    else if (rc.command == "solve") cmd_solve(s);
    else if (rc.command == "eigen") cmd_eigen(s);
    else if (rc.command == "curve") cmd_curve(s);
    else if (rc.command == "region") cmd_region(s);
    else if (rc.command == "verify-lb") cmd_verify_lb(s);
    else if (rc.command == "verify-eta") cmd_verify_eta(s);
    else if (rc.command == "probe-wmp") cmd_probe_wmp(s);
    else cmd_probe_wcp(s);

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_json(rc.out_dir / "timings.json", {{"command", rc.command}, {"seconds", seconds}});
    return kExitOk;
  } catch (const ParameterError& e) {
    report_error(rc, "config", e.what(), kExitConfig);
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    report_error(rc, "nonconvergence", e.what(), kExitNonConvergence);
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    report_error(rc, "internal", e.what(), kExitInternal);
    return kExitInternal;
  }
}

}  // namespace pqcurve
