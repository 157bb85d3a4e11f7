#include "curvelab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvelab/geometry.hpp"
#include "curvelab/symfunc.hpp"

namespace curvelab {

namespace {

double rel(double a, double b, double scale) { return std::abs(a - b) / scale; }

}  // namespace

SymMatrix random_cone_matrix(int n, int k, bool positive, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> eig(positive ? 0.05 : -1.0, 2.0);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  SmallVector kappa(n);
  for (;;) {
    for (int i = 0; i < n; ++i) kappa[i] = eig(rng);
    if (gamma_cone_member(CurvatureVector(kappa), k)) break;
  }
  // eigenvectors of a random symmetric matrix give a random orthonormal basis
  SymMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) r.set(i, j, entry(rng));
  return jacobi_eigen(r).recompose(kappa);
}

double IdentityBattery::max_residual() const {
  return std::max({trace_residual, linear_residual, square_residual});
}

IdentityBattery run_identity_battery(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dn(2, 6);
  std::uniform_real_distribution<double> da(0.1, 10.0);
  IdentityBattery out;
  out.samples = samples;
  out.min_monotonicity = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const int n = dn(rng);
    const int k = std::uniform_int_distribution<int>(1, n)(rng);
    const SymMatrix a = random_cone_matrix(n, k, false, rng);
    const CurvatureVector kappa(eigenvalues(a));
    const SymMatrix de = ek_derivative_tensor(a, k);
    const SymMatrix a2 = a.squared();
    const double e1 = elementary_symmetric(kappa, 1);
    const double ek = elementary_symmetric(kappa, k);
    const double ek1 = elementary_symmetric(kappa, k - 1);
    const double ekp = elementary_symmetric(kappa, k + 1);

    out.trace_residual = std::max(out.trace_residual, rel(de.trace(), k * ek1, std::abs(k * ek1)));
    out.linear_residual = std::max(out.linear_residual, rel(de.contract(a), k * ek, std::abs(k * ek)));
    const double rhs17 = n * e1 * ek - (n - k) * ekp;
    out.square_residual = std::max(out.square_residual,
                                   rel(de.contract(a2), rhs17, std::abs(n * e1 * ek) + std::abs((n - k) * ekp)));

    const SymMatrix dF = curvature_quotient_tensor(a, k);
    const double F = curvature_quotient(kappa, k);
    const double tr = dF.trace();
    out.trace_bound_violation = std::max({out.trace_bound_violation, 1.0 - tr, tr - k});
    const double sq = dF.contract(a2);
    out.square_lower_violation = std::max(out.square_lower_violation, (F * F - sq) / (F * F));

    const SymMatrix ap = random_cone_matrix(n, k, true, rng);
    const CurvatureVector kp(eigenvalues(ap));
    const double Fp = curvature_quotient(kp, k);
    const double sqp = curvature_quotient_tensor(ap, k).contract(ap.squared());
    out.square_upper_violation = std::max(out.square_upper_violation, (sqp - (n - k + 1) * Fp * Fp) / (Fp * Fp));

    const double scale = da(rng);
    out.homogeneity_residual =
        std::max(out.homogeneity_residual, rel(curvature_quotient(kappa.scaled(scale), k), scale * F, scale * F));

    for (int p = 0; p < n; ++p) {
      const double step = 1e-6 * (1.0 + kappa.values().max_abs());
      SmallVector up = kappa.values();
      SmallVector dn_ = kappa.values();
      up[p] += step;
      dn_[p] -= step;
      const CurvatureVector ku(up), kd(dn_);
      if (!gamma_cone_member(ku, k) || !gamma_cone_member(kd, k)) continue;
      const double d = (curvature_quotient(ku, k) - curvature_quotient(kd, k)) / (2.0 * step);
      out.min_monotonicity = std::min(out.min_monotonicity, d);
    }
  }
  return out;
}

NewtonMaclaurinBattery run_newton_maclaurin_battery(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dn(2, 8);
  std::uniform_real_distribution<double> dk(0.5, 1.5);
  NewtonMaclaurinBattery out;
  out.samples = samples;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const int n = dn(rng);
    const bool constant = s % 10 == 0;
    SmallVector v(n);
    const double c = dk(rng);
    for (int i = 0; i < n; ++i) v[i] = constant ? c : dk(rng);
    const CurvatureVector kappa(v);
    for (int k = 1; k <= n; ++k) {
      for (int m = k; m <= n; ++m) {
        const double gap = newton_maclaurin_gap(kappa, k, m);
        ++out.pairs;
        if (gap < -1e-12) ++out.violations;
        // E_{n+1} = 0, so m = n is strict even for constant vectors
        if (constant) {
          if (m < n && !(std::abs(gap) < 1e-12)) ++out.missed_equalities;
        } else {
          out.min_gap = std::min(out.min_gap, gap);
          if (gap < 1e-12) ++out.false_equalities;
        }
      }
    }
  }
  return out;
}

MinkowskiStudy run_minkowski_study(const Ellipsoid& body, const std::vector<std::pair<int, int>>& resolutions) {
  MinkowskiStudy study;
  study.resolutions = resolutions;
  const int n = 2;
  for (const auto& [nt, np] : resolutions) {
    const GridPtr grid = SphericalGrid::full_s2(nt, np);
    const CurvatureField geom = radial_geometry(ellipsoid_radial(grid, body));
    std::vector<double> res;
    for (int k = 1; k <= n; ++k) {
      const double lhs = geom.integrate([&](std::size_t, const NodeGeometry& g) {
        return elementary_symmetric(CurvatureVector(g.kappa), k - 1);
      });
      const double rhs = geom.integrate([&](std::size_t, const NodeGeometry& g) {
        return g.support * elementary_symmetric(CurvatureVector(g.kappa), k);
      });
      res.push_back(std::abs(lhs - rhs) / std::abs(lhs));
    }
    study.residual.push_back(res);
  }
  if (study.residual.size() >= 2) {
    const auto& a = study.residual[study.residual.size() - 2];
    const auto& b = study.residual.back();
    const double ratio = static_cast<double>(resolutions.back().first) / resolutions[resolutions.size() - 2].first;
    for (int k = 0; k < n; ++k) study.order.push_back(std::log(a[static_cast<std::size_t>(k)] / b[static_cast<std::size_t>(k)]) / std::log(ratio));
  }
  return study;
}

}  // namespace curvelab
