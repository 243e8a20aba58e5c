#include "pqcurve/domain.hpp"

#include <cmath>
#include <sstream>

namespace pqcurve {

namespace {

double parse_number(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParameterError("malformed number '" + text + "' in " + context);
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ParameterError("malformed number '" + text + "' in " + context);
  }
  return value;
}

}  // namespace

Grid build_grid(double x_lo, double x_hi, std::size_t n) {
  if (!(x_lo < x_hi) || !std::isfinite(x_lo) || !std::isfinite(x_hi)) {
    throw ParameterError("degenerate interval: need x_lo < x_hi");
  }
  if (n == 0) {
    throw ParameterError("grid needs at least one node");
  }
  Grid grid;
  grid.x_lo = x_lo;
  grid.x_hi = x_hi;
  grid.n = n;
  grid.diam = x_hi - x_lo;
  grid.h = grid.diam / static_cast<double>(n);
  grid.nodes.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    grid.nodes[static_cast<Eigen::Index>(i)] = x_lo + (static_cast<double>(i) + 0.5) * grid.h;
  }
  return grid;
}

WeightSpec WeightSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParameterError("weight spec '" + text + "' must look like name:args");
  }
  const std::string name = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);

  if (name == "const") {
    return {Kind::Constant, parse_number(args, text), 0.0};
  }
  if (name == "sin_offset") {
    return {Kind::SinOffset, parse_number(args, text), 0.0};
  }
  if (name == "affine") {
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
      throw ParameterError("affine weight needs two coefficients: " + text);
    }
    return {Kind::Affine, parse_number(args.substr(0, comma), text),
            parse_number(args.substr(comma + 1), text)};
  }
  throw ParameterError("unknown weight '" + name + "' (expected const, affine or sin_offset)");
}

double WeightSpec::operator()(double x) const {
  switch (kind) {
    case Kind::Constant:
      return c0;
    case Kind::Affine:
      return c0 + c1 * x;
    case Kind::SinOffset:
      return c0 + std::sin(x);
  }
  return c0;
}

std::string WeightSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::Constant:
      out << "const:" << c0;
      break;
    case Kind::Affine:
      out << "affine:" << c0 << ',' << c1;
      break;
    case Kind::SinOffset:
      out << "sin_offset:" << c0;
      break;
  }
  return out.str();
}

WeightField::WeightField(Vector values) : values_(std::move(values)), inf_(0.0), sup_(0.0) {
  if (values_.size() == 0) {
    throw ParameterError("weight field is empty");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    const double w = values_[i];
    if (!std::isfinite(w) || w <= 0.0) {
      std::ostringstream msg;
      msg << "weight sample " << i << " = " << w << " is not finite and positive";
      throw ParameterError(msg.str());
    }
  }
  inf_ = values_.minCoeff();
  sup_ = values_.maxCoeff();
}

WeightField sample_weight(const std::function<double(double)>& weight, const Grid& grid) {
  Vector values(grid.nodes.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values[i] = weight(grid.nodes[i]);
  }
  return WeightField(std::move(values));
}

WeightField sample_weight(const WeightSpec& spec, const Grid& grid) {
  return sample_weight([&spec](double x) { return spec(x); }, grid);
}

SystemParams validate_params(const RawParams& raw, WeightField a, WeightField b) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
  };
  require(std::isfinite(raw.p) && raw.p > 1.0, "p must exceed 1");
  require(std::isfinite(raw.q) && raw.q > 1.0, "q must exceed 1");
  require(raw.s1 > 0.0 && raw.s1 < 1.0, "s1 must lie in (0,1)");
  require(raw.s2 > 0.0 && raw.s2 < 1.0, "s2 must lie in (0,1)");
  require(raw.alpha1 >= 0.0 && raw.alpha2 >= 0.0, "alpha1, alpha2 must be nonnegative");
  require(raw.beta1 > 0.0 && raw.beta2 > 0.0, "beta1, beta2 must be positive");
  require(raw.alpha1 < raw.p - 1.0, "alpha1 must be below p-1");
  require(raw.alpha2 < raw.q - 1.0, "alpha2 must be below q-1");
  require(a.size() == b.size(), "weights a and b live on different grids");

  const double gap1 = raw.p - 1.0 - raw.alpha1;
  const double gap2 = raw.q - 1.0 - raw.alpha2;
  const double product = raw.beta1 * raw.beta2;
  if (std::abs(product - gap1 * gap2) > kBalanceTolerance * product) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "balance condition violated: beta1*beta2 = " << product
        << " but (p-1-alpha1)(q-1-alpha2) = " << gap1 * gap2;
    throw ParameterError(msg.str());
  }

  return SystemParams{raw.p,
                      raw.q,
                      raw.s1,
                      raw.s2,
                      raw.alpha1,
                      raw.alpha2,
                      raw.beta1,
                      raw.beta2,
                      std::move(a),
                      std::move(b),
                      std::sqrt(raw.beta1 * gap1),
                      std::sqrt(raw.beta2 * gap2),
                      (raw.p - 1.0) / raw.beta1};
}

}  // namespace pqcurve
