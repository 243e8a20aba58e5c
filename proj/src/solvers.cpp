#include "pqcurve/solvers.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <json.hpp>

namespace pqcurve {

namespace {

Vector solve_spd(const Eigen::MatrixXd& matrix, const Vector& rhs) {
  Eigen::LLT<Eigen::MatrixXd> llt(matrix);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  return matrix.ldlt().solve(rhs);
}

// Minimizer of J along the ray through the m = 2 solution with the same weights.
Vector linear_start(const KernelMatrix& kernel, const Vector& f) {
  KernelMatrix linear = kernel;
  linear.m = 2.0;
  Vector z = solve_spd(regularized_jacobian(linear, Vector::Zero(f.size()), 0.0), f);
  double work = kernel.h * f.dot(z);
  if (work < 0.0) {
    z = -z;
    work = -work;
  }
  const double e = energy(kernel, z);
  if (!(work > 0.0) || !(e > 0.0)) return Vector::Zero(f.size());
  return std::pow(work / (kernel.m * e), 1.0 / (kernel.m - 1.0)) * z;
}

// |a + b|^m - |a|^m without cancellation against |a|^m.
double power_change(double a, double b, double m) {
  const double ratio = a == 0.0 ? -2.0 : b / a;
  if (ratio > -0.5) return std::pow(std::abs(a), m) * std::expm1(m * std::log1p(ratio));
  return std::pow(std::abs(a + b), m) - std::pow(std::abs(a), m);
}

// J(u + p) - J(u), summed term by term so that tiny decreases stay resolvable.
double objective_change(const KernelMatrix& kernel, const Vector& f, const Vector& u, const Vector& p) {
  const auto n = u.size();
  double pairs = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      pairs += kernel.weights(i, j) * power_change(u[i] - u[j], p[i] - p[j], kernel.m);
    }
  }
  double tails = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) tails += kernel.tail[i] * power_change(u[i], p[i], kernel.m);
  return kernel.h * ((pairs + tails) / kernel.m - f.dot(p));
}

using Mask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Linearization for 1 < m < 2. Pairs use the Newton slope (m-1)(t^2+eps^2)^((m-2)/2)
// unless flagged in `secant`, where the (larger) secant slope drops the factor m-1.
// The diagonal of the mask flags the tail terms.
Eigen::MatrixXd mixed_matrix(const KernelMatrix& kernel, const Vector& u, double eps, const Mask& secant) {
  const Eigen::Index n = u.size();
  const double e2 = eps * eps;
  const double m = kernel.m;
  auto slope = [&](double t, bool flagged) {
    return (flagged ? 1.0 : m - 1.0) * std::pow(t * t + e2, 0.5 * (m - 2.0));
  };
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = kernel.tail[i] * slope(u[i], secant(i, i));
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double c = kernel.weights(i, j) * slope(u[i] - u[j], secant(i, j));
      a(i, j) = -c;
      diag += c;
    }
    a(i, i) = diag;
  }
  return a;
}

// Newton direction where differences that the linearized step would push
// across zero get the secant slope instead; phi_m' is unbounded there.
Vector sub_quadratic_direction(const KernelMatrix& kernel, const Vector& u, const Vector& r, double eps) {
  const Eigen::Index n = u.size();
  Mask secant = Mask::Constant(n, n, false);
  Vector d;
  for (int round = 0; round < 8; ++round) {
    d = -solve_spd(mixed_matrix(kernel, u, eps, secant), r);
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (secant(i, j)) continue;
        const double t = i == j ? u[i] : u[i] - u[j];
        const double dt = i == j ? d[i] : d[i] - d[j];
        if (t * (t + dt) < 0.0) {
          secant(i, j) = true;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return d;
}

bool all_positive(const Vector& u) { return u.size() > 0 && u.minCoeff() > 0.0; }

}  // namespace

SolveReport solve_dirichlet(const KernelMatrix& kernel, const Vector& f, double tol,
                            std::size_t max_iter, const Vector* initial) {
  if (!(tol > 0.0)) throw ParameterError("solver tolerance must be positive");
  if (static_cast<std::size_t>(f.size()) != kernel.size()) {
    throw ParameterError("right-hand side length does not match the kernel");
  }

  SolveReport report;
  const double f_norm = f.lpNorm<Eigen::Infinity>();
  if (f_norm == 0.0) {
    report.u = Vector::Zero(f.size());
    report.converged = true;
    return report;
  }
  const double target = tol * f_norm;

  Vector u;
  if (initial != nullptr) {
    if (initial->size() != f.size()) throw ParameterError("initial guess has the wrong length");
    u = *initial;
  } else if (kernel.m == 2.0) {
    u = Vector::Zero(f.size());
  } else {
    u = linear_start(kernel, f);
  }

  Vector r = apply(kernel, u) - f;
  double res = r.lpNorm<Eigen::Infinity>();

  // The regularization starts at 1e-8 (1 + |u|) and shrinks when the residual
  // stops dropping: for m < 2 a fixed eps caps phi_m' near zero differences
  // and the iteration crawls.
  constexpr double kEpsStart = 1e-8;
  constexpr double kEpsFloor = 1e-16;
  double eps_rel = kEpsStart;
  std::size_t it = 0;
  bool stalled = false;
  int slow = 0;
  double best = res;
  while (res > target && it < max_iter) {
    ++it;
    const double eps = eps_rel * (1.0 + u.lpNorm<Eigen::Infinity>());
    const Vector d = kernel.m < 2.0 ? sub_quadratic_direction(kernel, u, r, eps)
                                    : Vector(-solve_spd(regularized_jacobian(kernel, u, eps), r));
    const double slope = kernel.h * r.dot(d);

    bool accepted = false;
    if (slope < 0.0) {
      double step = 1.0;
      for (int k = 0; k < 60; ++k, step *= 0.5) {
        if (objective_change(kernel, f, u, step * d) <= 1e-4 * step * slope) {
          u += step * d;
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      // No resolvable decrease of J left; backtrack on the residual instead.
      const double r_norm = r.norm();
      double step = 1.0;
      for (int k = 0; k < 30 && !accepted; ++k, step *= 0.5) {
        const Vector trial = u + step * d;
        if ((apply(kernel, trial) - f).norm() < r_norm) {
          u = trial;
          accepted = true;
        }
      }
    }
    if (!accepted) {
      if (eps_rel > kEpsFloor && kernel.m != 2.0) {
        eps_rel = std::max(eps_rel * 1e-4, kEpsFloor);
        continue;
      }
      stalled = true;
      break;
    }
    r = apply(kernel, u) - f;
    const double previous = res;
    res = r.lpNorm<Eigen::Infinity>();
    if (res > 0.5 * previous) {
      if (eps_rel > kEpsFloor) {
        eps_rel = std::max(eps_rel * 1e-2, kEpsFloor);
      } else if (res <= residual_floor(kernel, u)) {
        stalled = true;
        break;
      }
    }
    if (res < 0.9 * best) {
      best = res;
      slow = 0;
    } else if (eps_rel == kEpsFloor && ++slow >= 10) {
      stalled = true;
      break;
    }
  }

  report.u = std::move(u);
  report.residual_inf = res;
  report.iterations = it;
  report.converged = res <= target;
  if (!report.converged && stalled) {
    report.residual_floor = residual_floor(kernel, report.u);
    report.converged = res <= report.residual_floor;
  }
  report.positive = all_positive(report.u);
  return report;
}

double residual_floor(const KernelMatrix& kernel, const Vector& u) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double m = kernel.m;
  const auto n = u.size();
  // largest change of phi over [|t| - e, |t| + e]
  auto spread = [m](double t, double e) {
    const double a = std::abs(t);
    return phi(a + e, m) - phi(a - e, m);
  };
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double perturb = kernel.tail[i] * spread(u[i], kEps * std::abs(u[i]));
    double magnitude = kernel.tail[i] * std::abs(phi(u[i], m));
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double t = u[i] - u[j];
      perturb += kernel.weights(i, j) * spread(t, kEps * (std::abs(u[i]) + std::abs(u[j])));
      magnitude += kernel.weights(i, j) * std::abs(phi(t, m));
    }
    worst = std::max(worst, perturb + std::sqrt(static_cast<double>(n)) * kEps * magnitude);
  }
  return 4.0 * worst;
}

SolveReport solve_subhomogeneous(const KernelMatrix& kernel, double alpha, const Vector& g,
                                 double tol, std::size_t max_iter,
                                 const std::function<void(const Vector&)>& observer,
                                 const Vector* initial) {
  if (!(alpha >= 0.0 && alpha < kernel.m - 1.0)) {
    throw ParameterError("sub-homogeneous exponent must satisfy 0 <= alpha < m-1");
  }
  if (static_cast<std::size_t>(g.size()) != kernel.size()) {
    throw ParameterError("coefficient length does not match the kernel");
  }
  if ((g.array() < 0.0).any()) throw ParameterError("coefficient g must be nonnegative");
  if (!(g.array() > 0.0).any()) {
    throw ParameterError("coefficient g vanishes identically: only the trivial solution exists");
  }
  const double inner_tol = tol / 10.0;

  auto source = [&](const Vector& w) -> Vector {
    return (g.array() * w.array().max(0.0).pow(alpha)).matrix();
  };

  Vector w;
  if (initial != nullptr) {
    w = *initial;
  } else {
    SolveReport base = solve_dirichlet(kernel, g, inner_tol);
    if (!base.converged) return base;
    if (alpha == 0.0) {
      if (observer) observer(base.u);
      base.iterations = 1;
      return base;
    }
    const double scale =
        std::pow(base.u.lpNorm<Eigen::Infinity>(), alpha / (kernel.m - 1.0 - alpha));
    w = scale * base.u;
  }
  if (observer) observer(w);

  SolveReport report;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    const Vector rhs = source(w);
    SolveReport step = solve_dirichlet(kernel, rhs, inner_tol, 200, &w);
    if (!step.converged) {
      step.iterations = k;
      step.residual_inf = (apply(kernel, step.u) - source(step.u)).lpNorm<Eigen::Infinity>();
      step.converged = false;
      return step;
    }
    const double change = (step.u - w).lpNorm<Eigen::Infinity>();
    w = std::move(step.u);
    if (observer) observer(w);

    const Vector s = source(w);
    const double residual = (apply(kernel, w) - s).lpNorm<Eigen::Infinity>();
    report.iterations = k;
    report.residual_inf = residual;
    if (change <= tol * w.lpNorm<Eigen::Infinity>() &&
        (residual <= tol * s.lpNorm<Eigen::Infinity>() || residual <= residual_floor(kernel, w))) {
      report.converged = true;
      break;
    }
  }
  report.u = std::move(w);
  report.positive = all_positive(report.u);
  return report;
}

TorsionConstant torsion_constant(double s, double m, std::size_t n, double tol) {
  const Grid grid = build_grid(-1.0, 1.0, n);
  const KernelMatrix kernel = assemble(grid, s, m);
  const SolveReport report = solve_dirichlet(kernel, Vector::Ones(grid.nodes.size()), tol);
  if (!report.converged) {
    std::ostringstream msg;
    msg << "torsion solve did not converge (s=" << s << ", m=" << m << ", n=" << n
        << ", residual " << report.residual_inf << ")";
    throw ConvergenceError(msg.str());
  }
  return {s, m, report.u.maxCoeff(), n};
}

double aitken_extrapolate(double coarse, double medium, double fine) {
  const double d1 = medium - coarse;
  const double d2 = fine - medium;
  const double denom = d2 - d1;
  if (denom == 0.0) return fine;
  return fine - d2 * d2 / denom;
}

TorsionCache::TorsionCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  if (!in) return;
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception&) {
    return;  // unreadable cache is rebuilt on the next store
  }
  for (const auto& entry : doc.value("entries", nlohmann::json::array())) {
    TorsionConstant c{entry.at("s").get<double>(), entry.at("m").get<double>(),
                      entry.at("value").get<double>(), entry.at("n").get<std::size_t>()};
    entries_[key(c.s, c.m, c.n_used)] = c;
  }
}

std::string TorsionCache::key(double s, double m, std::size_t n) {
  std::ostringstream out;
  out.precision(17);
  out << "s=" << s << ";m=" << m << ";n=" << n;
  return out.str();
}

std::optional<TorsionConstant> TorsionCache::lookup(double s, double m, std::size_t n) const {
  const auto it = entries_.find(key(s, m, n));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

TorsionConstant TorsionCache::get(double s, double m, std::size_t n, double tol) {
  if (auto hit = lookup(s, m, n)) return *hit;
  const TorsionConstant fresh = torsion_constant(s, m, n, tol);
  entries_[key(s, m, n)] = fresh;
  save();
  return fresh;
}

void TorsionCache::save() const {
  nlohmann::json doc;
  doc["entries"] = nlohmann::json::array();
  for (const auto& [k, c] : entries_) {
    doc["entries"].push_back({{"key", k}, {"s", c.s}, {"m", c.m}, {"n", c.n_used}, {"value", c.value}});
  }
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  std::ofstream out(file_);
  out << doc.dump(2) << '\n';
}

}  // namespace pqcurve
