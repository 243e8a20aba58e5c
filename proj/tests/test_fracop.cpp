#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pqcurve/fracop.hpp"

using namespace pqcurve;

TEST_CASE("phi") {
  CHECK(phi(0.0, 1.5) == 0.0);
  CHECK(phi(-2.0, 2.0) == -2.0);
  CHECK(phi(-2.0, 3.0) == -4.0);
  CHECK(phi(4.0, 1.5) == doctest::Approx(2.0));
  CHECK(phi(-4.0, 2.5) == doctest::Approx(-8.0));
}

TEST_CASE("single cell kernel") {
  const KernelMatrix k = assemble(build_grid(-1.0, 1.0, 1), 0.5, 2.0);
  CHECK(k.weights(0, 0) == 0.0);
  CHECK(k.tail[0] == doctest::Approx(2.0).epsilon(1e-15));
  const Vector one = Vector::Ones(1);
  CHECK(apply(k, one)[0] == doctest::Approx(2.0).epsilon(1e-15));

  // node 0, cell [1, 3] with sm = 1: integral of y^-2 is 2/3
  const KernelMatrix k3 = assemble(build_grid(-1.0, 3.0, 2), 0.5, 2.0);
  CHECK(k3.weights(0, 1) == doctest::Approx(1.0 - 1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("weights match quadrature of the kernel") {
  for (double s : {0.25, 0.5, 0.75}) {
    for (double m : {1.5, 2.0, 3.0}) {
      for (auto [lo, hi, n] : {std::tuple{-1.0, 1.0, 9}, std::tuple{0.2, 0.45, 16}, std::tuple{-3.0, 5.0, 30}}) {
        const KernelMatrix k = assemble(build_grid(lo, hi, n), s, m);
        const oracle::Discretization d = oracle::quadrature_weights(lo, hi, n, s * m);
        CHECK(((k.weights - d.w).cwiseAbs().array() <= 1e-11 * d.w.cwiseAbs().array() + 1e-300).all());
        CHECK(oracle::rel_inf(k.tail, d.tau) <= 1e-11);
      }
    }
  }
}

TEST_CASE("kernel structure") {
  const KernelMatrix k = assemble(build_grid(-0.7, 1.9, 25), 0.6, 1.7);
  CHECK(k.weights.isApprox(k.weights.transpose(), 0.0));
  for (int i = 0; i < 25; ++i) {
    CHECK(k.weights(i, i) == 0.0);
    CHECK(k.tail[i] > 0.0);
    CHECK(std::isfinite(k.weights.row(i).sum()));
    for (int j = 0; j < 25; ++j) {
      if (i != j) CHECK(k.weights(i, j) > 0.0);
    }
  }
}

TEST_CASE("apply agrees with a direct sum") {
  std::mt19937_64 rng(7);
  for (double m : {1.3, 2.0, 2.5, 3.0}) {
    const KernelMatrix k = assemble(build_grid(-1.0, 1.0, 17), 0.4, m);
    const oracle::Discretization d = oracle::quadrature_weights(-1.0, 1.0, 17, 0.4 * m);
    const Eigen::VectorXd u = oracle::random_vector(rng, 17);
    CHECK(oracle::rel_inf(apply(k, u), oracle::apply(d, u, m)) <= 1e-11);
  }
  const KernelMatrix k = assemble(build_grid(-1.0, 1.0, 5), 0.5, 2.0);
  CHECK(apply(k, Vector::Zero(5)).isZero(0.0));
  CHECK_THROWS_AS(apply(k, Vector::Zero(4)), ParameterError);
  CHECK_THROWS_AS(energy(k, Vector::Zero(6)), ParameterError);
}

TEST_CASE("homogeneity and oddness") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> tdist(0.05, 20.0);
  for (double s : {0.25, 0.5, 0.75}) {
    for (double m : {1.5, 2.0, 3.0}) {
      const KernelMatrix k = assemble(build_grid(-1.0, 1.0, 40), s, m);
      for (int rep = 0; rep < 5; ++rep) {
        const Vector u = oracle::random_vector(rng, 40);
        const double t = tdist(rng);
        const Vector base = apply(k, u);
        CHECK(oracle::rel_inf(apply(k, t * u), std::pow(t, m - 1.0) * base) <= 1e-12);
        CHECK(apply(k, -u) == -base);
        CHECK(energy(k, t * u) == doctest::Approx(std::pow(t, m) * energy(k, u)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("energy gradient is h times apply") {
  std::mt19937_64 rng(3);
  for (double m : {1.5, 2.0, 3.0}) {
    const KernelMatrix k = assemble(build_grid(-1.0, 1.0, 20), 0.5, m);
    CHECK(energy(k, Vector::Zero(20)) == 0.0);
    for (int rep = 0; rep < 3; ++rep) {
      const Eigen::VectorXd u = oracle::random_vector(rng, 20);
      const double step = 1e-6 * (1.0 + u.cwiseAbs().maxCoeff());
      const Eigen::VectorXd g = oracle::fd_gradient([&](const Eigen::VectorXd& x) { return energy(k, x); }, u, step);
      CHECK(oracle::rel_inf(g, k.h * apply(k, u)) <= 1e-6);
    }
  }
}

TEST_CASE("linear operator is symmetric positive definite") {
  for (double s : {0.1, 0.5, 0.9}) {
    const KernelMatrix k = assemble(build_grid(-1.0, 1.0, 50), s, 2.0);
    Eigen::MatrixXd a(50, 50);
    for (int j = 0; j < 50; ++j) a.col(j) = apply(k, Vector::Unit(50, j));
    CHECK(a.isApprox(a.transpose(), 1e-14));
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    CHECK(llt.info() == Eigen::Success);
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("regularized jacobian") {
  std::mt19937_64 rng(5);
  const KernelMatrix lin = assemble(build_grid(-1.0, 1.0, 12), 0.5, 2.0);
  Eigen::MatrixXd a(12, 12);
  for (int j = 0; j < 12; ++j) a.col(j) = apply(lin, Vector::Unit(12, j));
  CHECK(regularized_jacobian(lin, oracle::random_vector(rng, 12), 1e-8).isApprox(a, 1e-14));

  const KernelMatrix k = assemble(build_grid(-1.0, 1.0, 12), 0.5, 3.0);
  const Vector u = oracle::random_vector(rng, 12);
  const Eigen::MatrixXd jac = regularized_jacobian(k, u, 0.0);
  for (int j = 0; j < 12; ++j) {
    const double step = 1e-6;
    const Vector col = (apply(k, u + step * Vector::Unit(12, j)) - apply(k, u - step * Vector::Unit(12, j))) / (2 * step);
    CHECK(oracle::rel_inf(jac.col(j), col) <= 1e-6);
  }
  CHECK(Eigen::LLT<Eigen::MatrixXd>(regularized_jacobian(assemble(build_grid(-1.0, 1.0, 12), 0.5, 1.5), u, 1e-8)).info() ==
        Eigen::Success);
}

// If u <= z and they touch at node i, then (Au)_i >= (Az)_i, with equality only if u = z.
TEST_CASE("touching comparison on small grids") {
  for (double m : {1.5, 2.0, 3.0}) {
    const KernelMatrix k = assemble(build_grid(-1.0, 1.0, 3), 0.5, m);
    const double levels[] = {-1.0, 0.0, 0.5};
    for (int touch = 0; touch < 3; ++touch) {
      for (int pattern = 0; pattern < 27; ++pattern) {
        Vector z(3), u(3);
        int code = pattern;
        for (int j = 0; j < 3; ++j) {
          z[j] = 0.3 * j - 0.2;
          u[j] = z[j] + levels[code % 3] * (j == touch ? 0.0 : 1.0);
          code /= 3;
          if (u[j] > z[j]) u[j] = z[j] - 0.25;
        }
        const double au = apply(k, u)[touch];
        const double az = apply(k, z)[touch];
        if (u == z) {
          CHECK(au == doctest::Approx(az));
        } else {
          CHECK(au > az);
        }
      }
    }
  }
}
