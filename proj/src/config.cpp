#include "pqcurve/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>

namespace pqcurve {

namespace {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double to_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParameterError("config key '" + key + "': '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ParameterError("config key '" + key + "': '" + text + "' is not a number");
  }
  return value;
}

}  // namespace

ProblemConfig parse_config(std::istream& in) {
  static const std::set<std::string> known = {"p",      "q",      "s1",   "s2",   "alpha1",
                                              "alpha2", "beta1",  "beta2", "x_lo", "x_hi",
                                              "n",      "weight_a", "weight_b"};
  static const std::set<std::string> required = {"p",     "q",     "s1",   "s2",
                                                 "beta1", "beta2", "x_lo", "x_hi"};

  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known.count(key)) throw ParameterError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (values.count(key)) throw ParameterError("config key '" + key + "' given twice");
    values[key] = value;
  }
  for (const auto& key : required) {
    if (!values.count(key)) throw ParameterError("config is missing required key '" + key + "'");
  }

  ProblemConfig cfg;
  auto number = [&](const std::string& key, double fallback) {
    const auto it = values.find(key);
    return it == values.end() ? fallback : to_number(key, it->second);
  };
  cfg.raw.p = number("p", 0.0);
  cfg.raw.q = number("q", 0.0);
  cfg.raw.s1 = number("s1", 0.0);
  cfg.raw.s2 = number("s2", 0.0);
  cfg.raw.alpha1 = number("alpha1", 0.0);
  cfg.raw.alpha2 = number("alpha2", 0.0);
  cfg.raw.beta1 = number("beta1", 0.0);
  cfg.raw.beta2 = number("beta2", 0.0);
  cfg.x_lo = number("x_lo", 0.0);
  cfg.x_hi = number("x_hi", 0.0);
  const double n = number("n", 100.0);
  if (n < 1.0 || n != std::floor(n)) throw ParameterError("config key 'n' must be a positive integer");
  cfg.n = static_cast<std::size_t>(n);
  if (values.count("weight_a")) cfg.weight_a = WeightSpec::parse(values["weight_a"]);
  if (values.count("weight_b")) cfg.weight_b = WeightSpec::parse(values["weight_b"]);
  return cfg;
}

ProblemConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParameterError("cannot open config file '" + file.string() + "'");
  return parse_config(in);
}

Problem build_problem(const ProblemConfig& config, double x_lo, double x_hi) {
  Grid grid = build_grid(x_lo, x_hi, config.n);
  SystemParams params = validate_params(config.raw, sample_weight(config.weight_a, grid),
                                        sample_weight(config.weight_b, grid));
  KernelMatrix kernel_p = assemble(grid, params.s1, params.p);
  KernelMatrix kernel_q = assemble(grid, params.s2, params.q);
  return {std::move(grid), std::move(params), std::move(kernel_p), std::move(kernel_q)};
}

Problem build_problem(const ProblemConfig& config) {
  return build_problem(config, config.x_lo, config.x_hi);
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vector random_polynomial_forcing(const Grid& grid, std::mt19937_64& rng) {
  double c[4];
  for (double& ck : c) ck = unit_uniform(rng);
  Vector f(grid.nodes.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double t = (grid.nodes[i] - grid.x_lo) / grid.diam;
    const double r = 1.0 - t;
    f[i] = c[0] * r * r * r + c[1] * t * r * r + c[2] * t * t * r + c[3] * t * t * t;
  }
  return f;
}

}  // namespace pqcurve
