#include "curvelab/surfaces.hpp"

#include <boost/math/special_functions/gegenbauer.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "curvelab/errors.hpp"
#include "curvelab/geometry.hpp"

namespace curvelab {

namespace {

Vec3 node_direction(const SphericalGrid& g, double theta, double phi) {
  if (g.mode() == GridMode::Axisym) return {std::sin(theta), 0.0, std::cos(theta)};
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

template <class Fn>
ScalarField sample_direction(GridPtr grid, Fn&& fn) {
  const SphericalGrid& g = *grid;
  return ScalarField::sample(std::move(grid), [&](double t, double p) { return fn(node_direction(g, t, p)); });
}

}  // namespace

ScalarField sphere_field(GridPtr grid, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  return ScalarField(std::move(grid), R);
}

ScalarField translated_sphere_support(GridPtr grid, double R, const Vec3& c) {
  return sample_direction(std::move(grid), [&](const Vec3& nu) { return R + c.dot(nu); });
}

ScalarField ellipsoid_radial(GridPtr grid, const Ellipsoid& e) {
  return sample_direction(std::move(grid), [&](const Vec3& x) {
    return 1.0 / std::sqrt(x.x * x.x / (e.ax * e.ax) + x.y * x.y / (e.ay * e.ay) + x.z * x.z / (e.az * e.az));
  });
}

ScalarField ellipsoid_support(GridPtr grid, const Ellipsoid& e) {
  return sample_direction(std::move(grid), [&](const Vec3& v) {
    return std::sqrt(e.ax * e.ax * v.x * v.x + e.ay * e.ay * v.y * v.y + e.az * e.az * v.z * v.z);
  });
}

HarmonicSeries::HarmonicSeries(const SphericalGrid& grid, std::vector<Term> terms)
    : mode_(grid.mode()), n_(grid.dim()), terms_(std::move(terms)) {
  double peak = 0.0;
  for (int j = 0; j < grid.n_theta(); ++j)
    for (int m = 0; m < grid.n_phi(); ++m) peak = std::max(peak, std::abs(raw(grid.theta(j), grid.phi(m))));
  scale_ = peak > 0.0 ? 1.0 / peak : 0.0;
}

HarmonicSeries HarmonicSeries::random(const SphericalGrid& grid, int min_degree, int max_degree,
                                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Term> terms;
  for (int l = min_degree; l <= max_degree; ++l) {
    if (grid.mode() == GridMode::Axisym) {
      terms.push_back({l, 0, u(rng)});
      continue;
    }
    for (int m = -l; m <= l; ++m) terms.push_back({l, m, u(rng)});
  }
  return HarmonicSeries(grid, std::move(terms));
}

double HarmonicSeries::raw(double theta, double phi) const {
  const double x = std::cos(theta);
  double s = 0.0;
  for (const Term& t : terms_) {
    if (mode_ == GridMode::Axisym) {
      s += t.c * boost::math::gegenbauer(static_cast<unsigned>(t.l), 0.5 * (n_ - 1), x);
      continue;
    }
    const unsigned am = static_cast<unsigned>(std::abs(t.m));
    const double p = std::assoc_legendre(static_cast<unsigned>(t.l), am, x);
    s += t.c * p * (t.m >= 0 ? std::cos(am * phi) : std::sin(am * phi));
  }
  return s;
}

double HarmonicSeries::operator()(double theta, double phi) const { return scale_ * raw(theta, phi); }

ScalarField random_starshaped_radial(GridPtr grid, double base, double amp, std::mt19937_64& rng) {
  if (!(amp >= 0.0 && amp < 1.0)) throw std::invalid_argument("amplitude must lie in [0, 1)");
  const SphericalGrid& g = *grid;
  const HarmonicSeries series = HarmonicSeries::random(g, 1, 4, rng);
  const double a = std::uniform_real_distribution<double>(0.0, amp)(rng);
  auto radius = [&](const Vec3& d) {
    const double theta = std::acos(std::clamp(d.z, -1.0, 1.0));
    const double phi = g.mode() == GridMode::Axisym ? 0.0 : std::atan2(d.y, d.x);
    return base * (1.0 + a * series(theta, phi));
  };
  const ScalarField r0 = sample_direction(grid, radius);

  const CurvatureField geom = radial_geometry(r0);
  Vec3 c;
  const double area = geom.area();
  c.x = geom.integrate([](std::size_t, const NodeGeometry& n) { return n.position.x; }) / area;
  c.y = geom.integrate([](std::size_t, const NodeGeometry& n) { return n.position.y; }) / area;
  c.z = geom.integrate([](std::size_t, const NodeGeometry& n) { return n.position.z; }) / area;
  // axisym positions live in a meridian half-plane; by symmetry only z survives
  if (g.mode() == GridMode::Axisym) c.x = c.y = 0.0;

  // distance t along xi from c to the surface: |c + t xi| = R((c + t xi)/|c + t xi|)
  const double hi = base * (1.0 + amp) * 4.0;
  return sample_direction(grid, [&](const Vec3& xi) {
    auto F = [&](double t) {
      const Vec3 p = c + xi * t;
      const double len = p.norm();
      return len - radius(p * (1.0 / len));
    };
    boost::uintmax_t iters = 200;
    const auto [lo_t, hi_t] = boost::math::tools::toms748_solve(
        F, 1e-6 * base, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (lo_t + hi_t);
  });
}

ScalarField random_support(GridPtr grid, double base, double amp, SupportValidity validity,
                           std::mt19937_64& rng, int max_tries) {
  const SphericalGrid& g = *grid;
  std::uniform_real_distribution<double> ua(0.0, amp);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const HarmonicSeries series = HarmonicSeries::random(g, 2, 4, rng);
    const double a = ua(rng);
    ScalarField h = ScalarField::sample(grid, [&](double t, double p) { return base * (1.0 + a * series(t, p)); });
    try {
      const CurvatureField geom = support_geometry(h);
      if (validity == SupportValidity::StaticConvex && static_convexity(geom).margin < 0.0) continue;
      return h;
    } catch (const Error&) {
      continue;
    }
  }
  throw InsufficientData("no valid support function after " + std::to_string(max_tries) + " draws");
}

}  // namespace curvelab
