#include <doctest.h>

#include <cmath>

#include "pqcurve/domain.hpp"

using namespace pqcurve;

TEST_CASE("midpoint grids") {
  const Grid g = build_grid(-1.0, 1.0, 4);
  CHECK(g.h == doctest::Approx(0.5));
  CHECK(g.diam == doctest::Approx(2.0));
  REQUIRE(g.nodes.size() == 4);
  const double expected[] = {-0.75, -0.25, 0.25, 0.75};
  for (int i = 0; i < 4; ++i) CHECK(g.nodes[i] == doctest::Approx(expected[i]).epsilon(1e-15));

  const Grid one = build_grid(-1.0, 1.0, 1);
  CHECK(one.nodes.size() == 1);
  CHECK(one.nodes[0] == doctest::Approx(0.0));
  CHECK(one.h == doctest::Approx(2.0));

  const Grid three = build_grid(0.0, 3.0, 3);
  CHECK(three.h == doctest::Approx(1.0));
  CHECK(three.nodes[0] == doctest::Approx(0.5));
  CHECK(three.nodes[1] == doctest::Approx(1.5));
  CHECK(three.nodes[2] == doctest::Approx(2.5));
  CHECK(three.center() == doctest::Approx(1.5));
}

TEST_CASE("cells tile the interval") {
  const Grid g = build_grid(-0.3, 2.1, 7);
  CHECK(g.nodes[0] - 0.5 * g.h == doctest::Approx(g.x_lo));
  CHECK(g.nodes[6] + 0.5 * g.h == doctest::Approx(g.x_hi));
  for (int i = 1; i < 7; ++i) CHECK(g.nodes[i] - g.nodes[i - 1] == doctest::Approx(g.h));
}

TEST_CASE("degenerate grids are rejected") {
  CHECK_THROWS_AS(build_grid(1.0, 1.0, 3), ParameterError);
  CHECK_THROWS_AS(build_grid(2.0, 1.0, 3), ParameterError);
  CHECK_THROWS_AS(build_grid(-1.0, 1.0, 0), ParameterError);
}

TEST_CASE("weight specs") {
  const WeightSpec c = WeightSpec::parse("const:2.5");
  CHECK(c(0.3) == 2.5);
  const WeightSpec aff = WeightSpec::parse("affine:1,0.5");
  CHECK(aff(2.0) == doctest::Approx(2.0));
  const WeightSpec sn = WeightSpec::parse("sin_offset:2");
  CHECK(sn(0.5) == doctest::Approx(2.0 + std::sin(0.5)));
  CHECK(WeightSpec::parse(aff.to_string())(0.7) == aff(0.7));

  CHECK_THROWS_AS(WeightSpec::parse("exp:1"), ParameterError);
  CHECK_THROWS_AS(WeightSpec::parse("const:"), ParameterError);
  CHECK_THROWS_AS(WeightSpec::parse("affine:1"), ParameterError);
  CHECK_THROWS_AS(WeightSpec::parse("const:1x"), ParameterError);
}

TEST_CASE("sampled weights") {
  const Grid g = build_grid(-1.0, 1.0, 4);
  const WeightField one = sample_weight(WeightSpec::constant(1.0), g);
  CHECK(one.sup() == 1.0);
  CHECK(one.inf() == 1.0);
  CHECK(one.values().size() == 4);

  const WeightField s = sample_weight([](double x) { return 2.0 + std::sin(x); }, g);
  CHECK(s.inf() > 0.0);
  CHECK(s.sup() == s.values().maxCoeff());
  CHECK(s.inf() == s.values().minCoeff());
  CHECK(s.sup() == doctest::Approx(2.0 + std::sin(0.75)));

  CHECK_THROWS_AS(sample_weight(WeightSpec::constant(0.0), g), ParameterError);
  CHECK_THROWS_AS(sample_weight([](double x) { return x; }, g), ParameterError);
  CHECK_THROWS_AS(sample_weight([](double) { return NAN; }, g), ParameterError);
}

namespace {
SystemParams validated(RawParams raw) {
  const Grid g = build_grid(-1.0, 1.0, 3);
  return validate_params(raw, sample_weight(WeightSpec::constant(1.0), g), sample_weight(WeightSpec::constant(1.0), g));
}
}  // namespace

TEST_CASE("parameter validation") {
  const SystemParams lin = validated({});
  CHECK(lin.theta == doctest::Approx(1.0));
  CHECK(lin.zeta == doctest::Approx(1.0));
  CHECK(lin.omega == doctest::Approx(1.0));

  const SystemParams mixed = validated({3, 2, 0.5, 0.5, 0, 0, 2, 1});
  CHECK(mixed.theta == doctest::Approx(2.0));
  CHECK(mixed.zeta == doctest::Approx(1.0));
  CHECK(mixed.omega == doctest::Approx(1.0));

  CHECK_THROWS_AS(validated({2, 2, 0.5, 0.5, 0, 0, 2, 1}), ParameterError);
  CHECK_THROWS_AS(validated({2, 2, 1.0, 0.5, 0, 0, 1, 1}), ParameterError);
  CHECK_THROWS_AS(validated({2, 2, 0.5, 0.0, 0, 0, 1, 1}), ParameterError);
  CHECK_THROWS_AS(validated({1.0, 2, 0.5, 0.5, 0, 0, 1, 1}), ParameterError);
  CHECK_THROWS_AS(validated({2, 2, 0.5, 0.5, 1.0, 0, 1, 1}), ParameterError);
  CHECK_THROWS_AS(validated({2, 2, 0.5, 0.5, -0.1, 0, 1, 1}), ParameterError);
  CHECK_THROWS_AS(validated({2, 2, 0.5, 0.5, 0, 0, 0, 1}), ParameterError);
}

TEST_CASE("balance tolerance is relative") {
  RawParams raw{3, 3, 0.5, 0.5, 0.5, 0.5, 1.5, 1.5};
  CHECK_NOTHROW(validated(raw));
  raw.beta2 = 1.5 * (1.0 + 1e-13);
  CHECK_NOTHROW(validated(raw));
  raw.beta2 = 1.5 * (1.0 + 1e-10);
  CHECK_THROWS_AS(validated(raw), ParameterError);
}

TEST_CASE("theta zeta equals beta1 beta2 under the balance condition") {
  const RawParams sets[] = {{2, 2, 0.5, 0.5, 0, 0, 1, 1},
                            {3, 2, 0.3, 0.7, 0, 0, 2, 1},
                            {3, 2.5, 0.5, 0.5, 0.5, 0.25, 0.5, 3.75},
                            {1.5, 4, 0.2, 0.9, 0.1, 1.0, 0.8, 2.0 * 0.4 / 0.8}};
  for (const RawParams& raw : sets) {
    const SystemParams p = validated(raw);
    CHECK(std::abs(p.beta1 * p.beta2 - p.gap1() * p.gap2()) <= kBalanceTolerance * p.beta1 * p.beta2);
    CHECK(p.theta * p.zeta == doctest::Approx(p.beta1 * p.beta2).epsilon(1e-14));
  }
}
