/// \file functionals.hpp
/// \brief Quermassintegrals, monotone integrals and Michael-Simon type
/// inequality deficits on closed hypersurfaces.
///
/// Conventions: V_0 = (n+1) Vol, V_k = integral of E_{k-1} d mu (k >= 1), so
/// a ball of radius R has V_k = |S^n| R^{n+1-k}. |S^n| is the area of the
/// unit n-sphere throughout.

#ifndef CURVELAB_FUNCTIONALS_HPP
#define CURVELAB_FUNCTIONALS_HPP

#include <string>
#include <vector>

#include "curvelab/geometry.hpp"
#include "curvelab/speed_profile.hpp"

namespace curvelab {

/// V_0 .. V_{n+1}.
struct QuermassVector {
  std::vector<double> V;
  double operator[](int k) const { return V[static_cast<std::size_t>(k)]; }
};

QuermassVector quermassintegrals(const CurvatureField& geom);

/// V_k of the ball of radius R, |S^n| R^{n+1-k}.
double ball_quermass(int n, int k, double R);
/// Radius of the ball whose V_k equals `value`.
double ball_radius_for_quermass(int n, int k, double value);

enum class Calibration { PaperLiteral, SphereCalibrated };
std::string to_string(Calibration c);

struct DeficitReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;
  double relative = 0.0;  // deficit / rhs
  int k = 1;
  std::string mode;
};

/// lhs = int sqrt(|grad^M f|^2 + f^2 H^2), rhs = n |S^n|^{1/n} (int f^{n/(n-1)})^{(n-1)/n}.
/// `grad_f` are the sphere-frame derivatives of f at each node.
/// Throws NonpositiveDensity.
DeficitReport michael_simon_deficit_H(const CurvatureField& geom, const ScalarField& f,
                                      const std::vector<SmallVector>& grad_f);
DeficitReport michael_simon_deficit_H(const CurvatureField& geom, const ScalarField& f);

/// k-th mean curvature version; 1 <= k <= n-1. Throws ConeViolation,
/// NonpositiveDensity.
DeficitReport michael_simon_deficit_k(const CurvatureField& geom, const ScalarField& f,
                                      const std::vector<SmallVector>& grad_f, int k,
                                      const QuermassVector& quermass,
                                      Calibration mode = Calibration::SphereCalibrated);
DeficitReport michael_simon_deficit_k(const CurvatureField& geom, const ScalarField& f, int k,
                                      Calibration mode = Calibration::SphereCalibrated);

struct MonotoneQuantities {
  double Q = 0.0;    // int f(|X|)^{n/(n-1)} d mu
  double M_k = 0.0;  // int sigma_{k-1} f(h)^{(n-k+1)/(n-k)} d mu (exponent dropped for k = n)
};

MonotoneQuantities monotone_quantities(const CurvatureField& geom, const SpeedProfile& f, int n, int k);

/// Ratio lhs / rhs (rhs without prefactor) on the unit sphere with f = 1.
/// Computed once per (n, k).
double calibrate_sharp_constant(int n, int k);

}  // namespace curvelab

#endif  // CURVELAB_FUNCTIONALS_HPP
