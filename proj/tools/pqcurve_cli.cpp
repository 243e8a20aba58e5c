// pqcurve: principal eigenvalue curves of coupled fractional (p,q)-Laplacian
// systems on an interval.
//
//   pqcurve eigen --config sys.cfg --out out/
//   pqcurve region --config sys.cfg --grid 21 --jobs 4

#include <iostream>

#include <CLI11.hpp>

#include "pqcurve/run.hpp"

int main(int argc, char** argv) {
  pqcurve::RunConfig rc;
  CLI::App app{"Principal eigen-curves of coupled fractional (p,q)-Laplacian systems"};
  app.require_subcommand(1);

  std::optional<std::size_t> n;
  std::optional<double> lambda, mu, lambda_min, lambda_max, mu_min, mu_max;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", rc.config_path, "parameter file (key = value)")->required();
    sub->add_option("--out", rc.out_dir, "output directory")->capture_default_str();
    sub->add_option("--n", n, "grid cells (overrides the parameter file)");
    sub->add_option("--tol", rc.tol, "solver tolerance")->capture_default_str();
    sub->add_option("--seed", rc.seed, "random seed for probe forcings")->capture_default_str();
    sub->add_option("--jobs", rc.jobs, "worker threads")->capture_default_str();
  };

  auto* torsion = app.add_subcommand("torsion", "torsion constants C(s,p), C(s,q) and their drift");
  auto* solve = app.add_subcommand("solve", "Dirichlet problem (-Delta)^s_m u = f");
  auto* eigen = app.add_subcommand("eigen", "principal eigenvalue Lambda0 and eigenfunctions");
  auto* curve = app.add_subcommand("curve", "sample the principal curve");
  auto* region = app.add_subcommand("region", "classify a (lambda, mu) grid and probe each point");
  auto* verify_lb = app.add_subcommand("verify-lb", "check Lambda0 against the explicit lower bound");
  auto* verify_eta = app.add_subcommand("verify-eta", "check the small-domain threshold eta");
  auto* probe_wmp = app.add_subcommand("probe-wmp", "weak maximum principle at one point");
  auto* probe_wcp = app.add_subcommand("probe-wcp", "weak comparison principle at one point");

  for (auto* sub : {torsion, solve, eigen, curve, region, verify_lb, verify_eta, probe_wmp, probe_wcp}) {
    common(sub);
  }
  for (auto* sub : {torsion, verify_lb, verify_eta}) {
    sub->add_option("--torsion-n", rc.torsion_n, "grid cells for torsion solves")->capture_default_str();
  }
  solve->add_option("--forcing", rc.forcing, "const:c | affine:c0,c1 | sin_offset:c")->capture_default_str();
  solve->add_option("--equation", rc.equation, "1 uses (s1, p), 2 uses (s2, q)")->capture_default_str();
  curve->add_option("--samples", rc.samples, "number of curve points (default 25)");
  curve->add_option("--lambda-min", lambda_min);
  curve->add_option("--lambda-max", lambda_max);
  region->add_option("--grid", rc.grid, "points per axis")->capture_default_str();
  region->add_option("--lambda-min", lambda_min);
  region->add_option("--lambda-max", lambda_max);
  region->add_option("--mu-min", mu_min);
  region->add_option("--mu-max", mu_max);
  for (auto* sub : {verify_eta, probe_wmp, probe_wcp}) {
    sub->add_option("--lambda", lambda);
    sub->add_option("--mu", mu);
  }
  probe_wmp->add_option("--samples", rc.samples, "random forcings (default 5)");
  probe_wcp->add_option("--samples", rc.samples, "ordered forcing pairs (default 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pqcurve::kExitConfig;
  }

  rc.command = app.get_subcommands().front()->get_name();
  rc.n = n;
  rc.lambda = lambda;
  rc.mu = mu;
  rc.lambda_min = lambda_min;
  rc.lambda_max = lambda_max;
  rc.mu_min = mu_min;
  rc.mu_max = mu_max;
  return pqcurve::run(rc);
}
