#include "curvelab/functionals.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "curvelab/errors.hpp"
#include "curvelab/symfunc.hpp"

namespace curvelab {

namespace {

constexpr int kMaxCalibrationDim = 16;

void require_positive_density(const ScalarField& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] > 0.0)) {
      throw NonpositiveDensity("f = " + std::to_string(f[i]) + " at node " + std::to_string(i));
    }
  }
}

double tangential_norm2(const NodeGeometry& g, const SmallVector& df) {
  return g.metric_inv.apply(df).dot(df);
}

}  // namespace

QuermassVector quermassintegrals(const CurvatureField& geom) {
  const int n = geom.dim();
  QuermassVector q;
  q.V.assign(static_cast<std::size_t>(n + 2), 0.0);
  q.V[0] = (n + 1) * geom.volume();
  std::vector<std::array<double, kMaxDim + 1>> ek(geom.size());
  for (std::size_t i = 0; i < geom.size(); ++i) {
    const CurvatureVector kappa(geom[i].kappa);
    for (int j = 0; j <= n; ++j) ek[i][static_cast<std::size_t>(j)] = elementary_symmetric(kappa, j);
  }
  for (int k = 1; k <= n + 1; ++k) {
    q.V[static_cast<std::size_t>(k)] =
        geom.integrate([&](std::size_t i, const NodeGeometry&) { return ek[i][static_cast<std::size_t>(k - 1)]; });
  }
  return q;
}

double ball_quermass(int n, int k, double R) {
  return SphericalGrid::sphere_area(n) * std::pow(R, n + 1 - k);
}

double ball_radius_for_quermass(int n, int k, double value) {
  if (k == n + 1) throw std::invalid_argument("V_{n+1} is the same for every ball");
  return std::pow(value / SphericalGrid::sphere_area(n), 1.0 / (n + 1 - k));
}

std::string to_string(Calibration c) {
  return c == Calibration::PaperLiteral ? "paper-literal" : "sphere-calibrated";
}

DeficitReport michael_simon_deficit_H(const CurvatureField& geom, const ScalarField& f,
                                      const std::vector<SmallVector>& grad_f) {
  require_positive_density(f);
  const int n = geom.dim();
  const double p = static_cast<double>(n) / (n - 1);
  DeficitReport rep;
  rep.k = 1;
  rep.mode = "sharp";
  rep.lhs = geom.integrate([&](std::size_t i, const NodeGeometry& g) {
    const double fh = f[i] * g.mean_curvature;
    return std::sqrt(tangential_norm2(g, grad_f[i]) + fh * fh);
  });
  const double mass = geom.integrate([&](std::size_t i, const NodeGeometry&) { return std::pow(f[i], p); });
  rep.rhs = n * std::pow(SphericalGrid::sphere_area(n), 1.0 / n) * std::pow(mass, 1.0 / p);
  rep.deficit = rep.lhs - rep.rhs;
  rep.relative = rep.deficit / rep.rhs;
  return rep;
}

DeficitReport michael_simon_deficit_H(const CurvatureField& geom, const ScalarField& f) {
  return michael_simon_deficit_H(geom, f, sphere_gradient(f));
}

double calibrate_sharp_constant(int n, int k) {
  if (n < 2 || n > kMaxCalibrationDim || k < 1 || k > n - 1) {
    throw std::invalid_argument("calibration needs 1 <= k <= n-1, n <= 16");
  }
  static const auto table = [] {
    std::array<std::array<double, kMaxCalibrationDim + 1>, kMaxCalibrationDim + 1> t{};
    for (int nn = 2; nn <= kMaxCalibrationDim; ++nn) {
      const double area = SphericalGrid::sphere_area(nn);
      for (int kk = 1; kk < nn; ++kk) {
        // unit sphere, f = 1: sigma_j = binom(n, j)
        const double lhs = binomial(nn, kk) * area;
        const double mass = binomial(nn, kk - 1) * area;
        const double a = 1.0 / (nn + 1 - kk);
        const double rhs = nn * std::pow(area, a) * std::pow(mass, (nn - kk) * a);
        t[static_cast<std::size_t>(nn)][static_cast<std::size_t>(kk)] = lhs / rhs;
      }
    }
    return t;
  }();
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

DeficitReport michael_simon_deficit_k(const CurvatureField& geom, const ScalarField& f,
                                      const std::vector<SmallVector>& grad_f, int k,
                                      const QuermassVector& quermass, Calibration mode) {
  const int n = geom.dim();
  if (k < 1 || k > n - 1) throw std::invalid_argument("k-deficit needs 1 <= k <= n-1");
  require_positive_density(f);

  std::vector<double> sk(geom.size()), sk1(geom.size());
  for (std::size_t i = 0; i < geom.size(); ++i) {
    const CurvatureVector kappa(geom[i].kappa);
    if (!gamma_cone_member(kappa, k)) {
      throw ConeViolation("curvature outside Gamma_" + std::to_string(k) + "^+ at node " + std::to_string(i));
    }
    sk[i] = sigma(kappa, k);
    sk1[i] = sigma(kappa, k - 1);
  }
  const double e = static_cast<double>(n + 1 - k) / (n - k);

  DeficitReport rep;
  rep.k = k;
  rep.mode = to_string(mode);
  rep.lhs = geom.integrate([&](std::size_t i, const NodeGeometry& g) {
    const double a = sk[i] * f[i];
    return std::sqrt(a * a + sk1[i] * sk1[i] * tangential_norm2(g, grad_f[i]));
  });
  const double mass = geom.integrate([&](std::size_t i, const NodeGeometry&) { return sk1[i] * std::pow(f[i], e); });

  // y_k o z_{k-1}^{-1}(V_{k-1}) with the sphere profile f_R = R^{-(n-k)}
  const double R = ball_radius_for_quermass(n, k - 1, quermass[k - 1]);
  const double fR = std::pow(R, -(n - k));
  const double prefactor = mode == Calibration::PaperLiteral ? binomial(n, k) : 1.0;
  const double y = prefactor * std::pow(fR, e) * ball_quermass(n, k, R);
  const double a = 1.0 / (n + 1 - k);
  rep.rhs = n * std::pow(y, a) * std::pow(mass, (n - k) * a);
  if (mode == Calibration::SphereCalibrated) rep.rhs *= calibrate_sharp_constant(n, k);
  rep.deficit = rep.lhs - rep.rhs;
  rep.relative = rep.deficit / rep.rhs;
  return rep;
}

DeficitReport michael_simon_deficit_k(const CurvatureField& geom, const ScalarField& f, int k,
                                      Calibration mode) {
  return michael_simon_deficit_k(geom, f, sphere_gradient(f), k, quermassintegrals(geom), mode);
}

MonotoneQuantities monotone_quantities(const CurvatureField& geom, const SpeedProfile& f, int n, int k) {
  if (n != geom.dim()) throw std::invalid_argument("dimension mismatch");
  if (k < 1 || k > n) throw std::invalid_argument("monotone quantities need 1 <= k <= n");
  MonotoneQuantities m;
  const double p = static_cast<double>(n) / (n - 1);
  m.Q = geom.integrate([&](std::size_t, const NodeGeometry& g) { return std::pow(f.value(g.radius), p); });
  const double e = k < n ? static_cast<double>(n - k + 1) / (n - k) : 0.0;
  m.M_k = geom.integrate([&](std::size_t, const NodeGeometry& g) {
    return sigma(CurvatureVector(g.kappa), k - 1) * std::pow(f.value(g.support), e);
  });
  return m;
}

}  // namespace curvelab
