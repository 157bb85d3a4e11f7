/// \file geometry.hpp
/// \brief Extrinsic geometry of a hypersurface given by a radial function
/// r(xi) or by a support function h(nu) on a SphericalGrid.
///
/// All tensors are expressed in the orthonormal frame of the round sphere at
/// the parameter node, so the metric of S^n is the identity there.

#ifndef CURVELAB_GEOMETRY_HPP
#define CURVELAB_GEOMETRY_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "curvelab/small_linalg.hpp"
#include "curvelab/sphere_grid.hpp"

namespace curvelab {

enum class Parametrization { Radial, Support };

struct NodeGeometry {
  SymMatrix metric;       // g_ij
  SymMatrix metric_inv;   // g^ij
  SymMatrix second_form;  // h_ij
  SymMatrix weingarten;   // g^{-1/2} h g^{-1/2}, eigenvalues kappa
  SmallVector kappa;      // ascending
  SmallVector grad;       // nabla r or nabla h on S^n
  double mean_curvature = 0.0;  // sigma_1
  double norm_A2 = 0.0;
  double area_element = 0.0;  // multiplies the grid weight
  double support = 0.0;       // <X, nu>
  double radius = 0.0;        // |X|
  double v = 1.0;             // sqrt(1 + |nabla log r|^2); radial only
  Vec3 normal;
  Vec3 position;
};

class CurvatureField {
 public:
  CurvatureField(GridPtr grid, Parametrization kind, std::vector<NodeGeometry> nodes);

  const SphericalGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Parametrization kind() const { return kind_; }
  int dim() const { return grid_->dim(); }
  std::size_t size() const { return nodes_.size(); }
  const NodeGeometry& operator[](std::size_t i) const { return nodes_[i]; }
  const std::vector<NodeGeometry>& nodes() const { return nodes_; }

  /// Integral over M of fn(node index, node geometry) d mu.
  double integrate(const std::function<double(std::size_t, const NodeGeometry&)>& fn) const;
  double area() const;
  /// Radial: (1/(n+1)) int r^{n+1} over S^n. Support: (1/(n+1)) int h d mu.
  double volume() const;

 private:
  GridPtr grid_;
  Parametrization kind_;
  std::vector<NodeGeometry> nodes_;
};

/// Throws NotStarshaped (min r <= 0) or DegenerateMetric.
CurvatureField radial_geometry(const ScalarField& r);

/// Throws ConvexityLost when an eigenvalue of b = Hess h + h I drops below
/// 1e-10 (1 + max|h|).
CurvatureField support_geometry(const ScalarField& h);

/// Single-node kernels behind radial_geometry / support_geometry.
NodeGeometry radial_node_geometry(const SphericalGrid& grid, std::size_t idx, const LocalJet& jet);
/// Returns false (node untouched past min_radius) when the smallest principal
/// radius is <= eps.
bool support_node_geometry(const SphericalGrid& grid, std::size_t idx, const LocalJet& jet, double eps,
                           NodeGeometry& node, double& min_radius);
double convexity_epsilon(const ScalarField& h);

/// The scalars the radial flow needs at one node, without the tensor set.
struct RadialScalars {
  double mean_curvature = 0.0;
  double v = 1.0;
  double area_element = 0.0;
};
RadialScalars radial_node_scalars(const LocalJet& jet, int n);

/// Eigenvalues of b = Hess h + h I, ascending; closed form for n = 2.
SmallVector principal_radii(const LocalJet& jet, int n);

/// Mean curvature from the scalar log-r formula, on the same discrete jet of r.
std::vector<double> mean_curvature_log_form(const ScalarField& r);

struct StaticConvexityReport {
  std::vector<double> node_margin;  // min eigenvalue of h_ij - g_ij / h, g-orthonormal
  double margin = 0.0;
  std::size_t worst_node = 0;
};

/// Throws NonpositiveSupport when some support value is <= 0.
StaticConvexityReport static_convexity(const CurvatureField& field);

/// max over nodes of n |A|^2 / H^2 - 1. Throws ZeroMeanCurvature.
double sphericity(const CurvatureField& field);

/// (1/(n+1)) * integral of r^{n+1} over S^n. Throws NotStarshaped.
double enclosed_volume(const ScalarField& r);

struct GeometrySummary {
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double H_min = 0.0;
  double H_max = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
  double margin = 0.0;
  double area = 0.0;
  double volume = 0.0;
};

GeometrySummary summarize(const CurvatureField& field);

}  // namespace curvelab

#endif  // CURVELAB_GEOMETRY_HPP
