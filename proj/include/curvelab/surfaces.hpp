/// \file surfaces.hpp
/// \brief Initial data: spheres, ellipsoids and random smooth perturbations,
/// sampled either as radial functions or as support functions.

#ifndef CURVELAB_SURFACES_HPP
#define CURVELAB_SURFACES_HPP

#include <random>
#include <vector>

#include "curvelab/sphere_grid.hpp"

namespace curvelab {

/// Semi-axes along x, y, z. On axisym grids x is the transverse direction
/// (so ax = ay is assumed) and z the symmetry axis.
struct Ellipsoid {
  double ax = 1.0;
  double ay = 1.0;
  double az = 1.0;
};

ScalarField sphere_field(GridPtr grid, double R);
/// Support function R + <c, nu> of the ball of radius R centred at c.
ScalarField translated_sphere_support(GridPtr grid, double R, const Vec3& c);
/// r(xi) = (sum xi_i^2 / a_i^2)^{-1/2}.
ScalarField ellipsoid_radial(GridPtr grid, const Ellipsoid& e);
/// h(nu) = (sum a_i^2 nu_i^2)^{1/2}.
ScalarField ellipsoid_support(GridPtr grid, const Ellipsoid& e);

/// Real combination of spherical harmonics of degree 1..max_degree,
/// normalized so that its maximum modulus over the grid nodes is 1.
/// Full S^2 uses associated Legendre functions; axisym grids use zonal
/// Gegenbauer polynomials of S^n.
class HarmonicSeries {
 public:
  struct Term {
    int l = 0;
    int m = 0;  // negative: sine mode
    double c = 0.0;
  };

  HarmonicSeries(const SphericalGrid& grid, std::vector<Term> terms);
  /// Coefficients uniform in [-1, 1] for every mode with min_degree <= l <= max_degree.
  static HarmonicSeries random(const SphericalGrid& grid, int min_degree, int max_degree, std::mt19937_64& rng);

  double operator()(double theta, double phi) const;
  const std::vector<Term>& terms() const { return terms_; }

 private:
  double raw(double theta, double phi) const;
  GridMode mode_;
  int n_;
  std::vector<Term> terms_;
  double scale_ = 1.0;
};

/// r = base (1 + a P) with a uniform in [0, amp], then recentred at the
/// area-weighted centroid of the surface by re-solving along each ray.
ScalarField random_starshaped_radial(GridPtr grid, double base, double amp, std::mt19937_64& rng);

enum class SupportValidity { Convex, StaticConvex };

/// h = base (1 + a P) without degree-1 modes (Steiner point at the origin),
/// a uniform in [0, amp]; resampled until valid, at most `max_tries` draws.
/// Throws InsufficientData when no draw passes.
ScalarField random_support(GridPtr grid, double base, double amp, SupportValidity validity,
                           std::mt19937_64& rng, int max_tries = 100);

}  // namespace curvelab

#endif  // CURVELAB_SURFACES_HPP
