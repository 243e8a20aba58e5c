#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pqcurve/principal.hpp"
#include "pqcurve/region.hpp"

using namespace pqcurve;

namespace {

struct Setup {
  Grid grid;
  SystemParams params;
  KernelMatrix kp, kq;
};

Setup make(RawParams raw, double lo, double hi, std::size_t n, const WeightSpec& a = WeightSpec::constant(1.0),
           const WeightSpec& b = WeightSpec::constant(1.0)) {
  Grid g = build_grid(lo, hi, n);
  SystemParams p = validate_params(raw, sample_weight(a, g), sample_weight(b, g));
  KernelMatrix kp = assemble(g, p.s1, p.p);
  KernelMatrix kq = assemble(g, p.s2, p.q);
  return {std::move(g), std::move(p), std::move(kp), std::move(kq)};
}

const RawParams kLinear{2, 2, 0.5, 0.5, 0, 0, 1, 1};
const RawParams kMixed{3, 2, 0.5, 0.5, 0, 0, 2, 1};

}  // namespace

TEST_CASE("J maps on a single node") {
  Setup s = make({2, 2, 0.5, 0.5, 0, 0, 2, 0.5}, -1, 1, 1);
  CHECK(J1(Vector::Ones(1), s.params, s.kp, 1e-12)[0] == doctest::Approx(0.5));
  Setup t = make(kLinear, -1, 1, 1);
  CHECK(J2(Vector::Ones(1), t.params, t.kq, 1e-12)[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(J2(Vector::Zero(1), t.params, t.kq, 1e-12), ParameterError);
  CHECK_THROWS_AS(J1(Vector::Constant(1, -1.0), t.params, t.kp, 1e-12), ParameterError);
}

TEST_CASE("J maps are homogeneous") {
  std::mt19937_64 rng(31);
  const RawParams sets[] = {kLinear, kMixed, {3, 2.5, 0.4, 0.6, 0.5, 0.25, 0.5, 3.75}};
  for (const RawParams& raw : sets) {
    Setup s = make(raw, -1, 1, 40, WeightSpec::parse("sin_offset:2"), WeightSpec::parse("affine:1.5,0.3"));
    const Vector v = oracle::random_vector(rng, 40, 0.1, 1.0);
    for (double sigma : {0.2, 7.0}) {
      CHECK(oracle::rel_inf(J1(sigma * v, s.params, s.kp, 1e-12),
                            std::pow(sigma, s.params.beta1 / s.params.gap1()) * J1(v, s.params, s.kp, 1e-12)) <= 1e-8);
      CHECK(oracle::rel_inf(J2(sigma * v, s.params, s.kq, 1e-12),
                            std::pow(sigma, s.params.beta2 / s.params.gap2()) * J2(v, s.params, s.kq, 1e-12)) <= 1e-8);
    }
  }
}

TEST_CASE("J1 is monotone and matches Gauss-Seidel") {
  std::mt19937_64 rng(9);
  const RawParams raw{3, 2, 0.5, 0.5, 0.5, 0, 1.5, 1};
  for (int n : {1, 2, 3}) {
    Setup s = make(raw, -1, 1, n);
    const oracle::Discretization d = oracle::quadrature_weights(-1.0, 1.0, n, 0.5 * 3.0);
    const Eigen::VectorXd v = oracle::random_vector(rng, n, 0.1, 1.0);
    const Eigen::VectorXd v_big = v + oracle::random_vector(rng, n, 0.0, 0.5);
    auto reference = [&](const Eigen::VectorXd& vv) {
      return oracle::gauss_seidel(
          d, 3.0, [&](int i, double t) { return std::pow(vv[i], 1.5) * std::pow(std::max(t, 0.0), 0.5); },
          Eigen::VectorXd::Constant(n, 10.0));
    };
    const Vector u = J1(v, s.params, s.kp, 1e-12);
    const Vector u_big = J1(v_big, s.params, s.kp, 1e-12);
    CHECK(oracle::rel_inf(u, reference(v)) <= 1e-8);
    CHECK(oracle::rel_inf(u_big, reference(v_big)) <= 1e-8);
    CHECK((u.array() <= u_big.array()).all());
  }
}

TEST_CASE("composition is one-homogeneous") {
  std::mt19937_64 rng(12);
  const RawParams sets[] = {kMixed, {3, 2.5, 0.4, 0.6, 0.5, 0.25, 0.5, 3.75}, {2.5, 3, 0.3, 0.7, 0.2, 0.4, 1.3, 1.0}};
  for (RawParams raw : sets) {
    raw.beta2 = (raw.p - 1 - raw.alpha1) * (raw.q - 1 - raw.alpha2) / raw.beta1;
    Setup s = make(raw, -1, 1, 30);
    const Vector u = oracle::random_vector(rng, 30, 0.1, 1.0);
    auto t = [&](const Vector& x) { return J1(J2(x, s.params, s.kq, 1e-12), s.params, s.kp, 1e-12); };
    CHECK(oracle::rel_inf(t(3.7 * u), 3.7 * t(u)) <= 1e-8);
  }
}

TEST_CASE("single node principal pairs") {
  Setup lin = make(kLinear, -1, 1, 1);
  const EigenResult r = principal_pair(lin.params, lin.kp, lin.kq);
  CHECK(r.converged);
  CHECK(r.lambda1_factor == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.lambda0 == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.u0[0] == doctest::Approx(1.0));
  CHECK(symmetric_point(r.lambda0, lin.params).first == doctest::Approx(2.0));
  CHECK(symmetric_point(r.lambda0, lin.params).second == doctest::Approx(2.0));

  const CurvePair sym = eigenpair_for_lambda(2.0, r, lin.params);
  CHECK(sym.mu == doctest::Approx(2.0));
  CHECK(sym.v[0] == doctest::Approx(sym.u[0]));
  const CurvePair c = eigenpair_for_lambda(1.0, r, lin.params);
  CHECK(c.mu == doctest::Approx(4.0));
  CHECK(c.v[0] / c.u[0] == doctest::Approx(2.0));

  Setup mixed = make(kMixed, -1, 1, 1);
  const EigenResult m = principal_pair(mixed.params, mixed.kp, mixed.kq);
  CHECK(m.converged);
  CHECK(m.lambda0 == doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(m.pde_residuals[0] <= 1e-10);
  CHECK(m.pde_residuals[1] <= 1e-10);
}

TEST_CASE("linear decoupled case matches a dense eigensolve") {
  for (int n : {50, 100, 200}) {
    Setup s = make(kLinear, -1, 1, n);
    const oracle::Discretization d = oracle::quadrature_weights(-1.0, 1.0, n, 1.0);
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(oracle::linear_matrix(d)).eigenvalues().minCoeff();
    const EigenResult r = principal_pair(s.params, s.kp, s.kq);
    CHECK(r.converged);
    CHECK(r.lambda0 == doctest::Approx(lmin * lmin).epsilon(1e-6));
  }
}

TEST_CASE("start vector independence and positivity") {
  std::mt19937_64 rng(2);
  const RawParams sets[] = {kLinear, kMixed, {3, 2.5, 0.4, 0.6, 0.5, 0.25, 0.5, 3.75}};
  for (const RawParams& raw : sets) {
    Setup s = make(raw, -1, 1, 50, WeightSpec::parse("affine:2,0.5"), WeightSpec::parse("sin_offset:1.5"));
    const EigenResult a = principal_pair(s.params, s.kp, s.kq);
    const Vector start = oracle::random_vector(rng, 50, 0.05, 3.0);
    const EigenResult b = principal_pair(s.params, s.kp, s.kq, 1e-10, 500, &start);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(a.lambda1_factor == doctest::Approx(b.lambda1_factor).epsilon(1e-6));
    CHECK((a.u0 - b.u0).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK(a.u0.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK(a.u0.minCoeff() > 0.0);
    CHECK(a.v0.minCoeff() > 0.0);
    CHECK(a.fp_residual <= 1e-10 * a.lambda1_factor);
    CHECK(a.pde_residuals[0] <= 1e-8);
    CHECK(a.pde_residuals[1] <= 1e-8);
  }
  Setup s = make(kLinear, -1, 1, 5);
  const Vector bad = Vector::Zero(5);
  CHECK_THROWS_AS(principal_pair(s.params, s.kp, s.kq, 1e-10, 500, &bad), ParameterError);
  const KernelMatrix other = assemble(s.grid, 0.3, 2.0);
  CHECK_THROWS_AS(principal_pair(s.params, other, s.kq, 1e-10, 500), ParameterError);
}

TEST_CASE("curve samples satisfy both equations") {
  const RawParams sets[] = {kLinear, kMixed, {3, 2.5, 0.4, 0.6, 0.5, 0.25, 0.5, 3.75}};
  for (const RawParams& raw : sets) {
    Setup s = make(raw, -1, 1, 100);
    const EigenResult r = principal_pair(s.params, s.kp, s.kq);
    REQUIRE(r.converged);
    const double lsym = symmetric_point(r.lambda0, s.params).first;
    for (int k = 0; k < 10; ++k) {
      const double lambda = lsym * std::pow(10.0, -2.0 + 4.0 * k / 9.0);
      const CurvePair c = eigenpair_for_lambda(lambda, r, s.params);
      CHECK(std::abs(curve_value(c.lambda, c.mu, s.params) - r.lambda0) <= 1e-6 * r.lambda0);
      const auto res = system_residuals(s.params, s.kp, s.kq, c.lambda, c.mu, c.u, c.v);
      CHECK(res[0] <= 1e-6);
      CHECK(res[1] <= 1e-6);
      const CurvePair back = eigenpair_for_mu(c.mu, r, s.params);
      CHECK(back.lambda == doctest::Approx(lambda).epsilon(1e-10));
    }
    CHECK_THROWS_AS(eigenpair_for_lambda(0.0, r, s.params), ParameterError);
    CHECK_THROWS_AS(eigenpair_for_mu(-1.0, r, s.params), ParameterError);
  }
}

// alpha1 + beta1 = p - 1 and alpha2 + beta2 = q - 1
TEST_CASE("homogeneous case keeps lambda^(1/beta1) mu^(1/beta2) constant") {
  const RawParams raw{3, 2.5, 0.5, 0.5, 0.5, 0.5, 1.5, 1.0};
  Setup s = make(raw, -1, 1, 60);
  const EigenResult r = principal_pair(s.params, s.kp, s.kq);
  REQUIRE(r.converged);
  const double first = [&] {
    const CurvePair c = eigenpair_for_lambda(0.3, r, s.params);
    return std::pow(c.lambda, 1 / raw.beta1) * std::pow(c.mu, 1 / raw.beta2);
  }();
  for (double lambda : {0.01, 1.0, 40.0}) {
    const CurvePair c = eigenpair_for_lambda(lambda, r, s.params);
    CHECK(std::pow(c.lambda, 1 / raw.beta1) * std::pow(c.mu, 1 / raw.beta2) == doctest::Approx(first).epsilon(1e-6));
    const auto res = system_residuals(s.params, s.kp, s.kq, c.lambda, c.mu, c.u, c.v);
    CHECK(res[0] <= 1e-6);
    CHECK(res[1] <= 1e-6);
  }
}

TEST_CASE("non-convergence is flagged") {
  Setup s = make(kMixed, -1, 1, 40);
  const EigenResult r = principal_pair(s.params, s.kp, s.kq, 1e-10, 2);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(eigenpair_for_lambda(1.0, r, s.params), ParameterError);
}
