/// \file sphere_grid.hpp
/// \brief Discretizations of the parameter sphere S^n.
///
/// Two layouts are supported:
///   - FullS2: cell-centred colatitude/longitude grid on S^2 (n = 2).
///     theta_j = (j + 1/2) pi / N_theta, phi_m = 2 pi m / N_phi, N_phi even.
///     Stencils crossing a pole use the antipodal continuation
///     f(-theta, phi) = f(theta, phi + pi).
///   - Axisym: one colatitude profile on S^n for any 2 <= n <= kMaxDim.
///     All n-1 transverse directions are degenerate and carry the same
///     Hessian eigenvalue.
///
/// Differential quantities are expressed in the orthonormal frame
/// (e_theta, e_phi) (full) or (e_theta, e_2, ..., e_n) (axisym). The
/// theta-theta entry is the plain second difference; the transverse
/// entries absorb the rest of the flux-form Laplacian over exact cell
/// volumes, so the trace integrates to zero exactly.

#ifndef CURVELAB_SPHERE_GRID_HPP
#define CURVELAB_SPHERE_GRID_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "curvelab/small_linalg.hpp"

namespace curvelab {

enum class GridMode { FullS2, Axisym };

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const;
};

class SphericalGrid;
using GridPtr = std::shared_ptr<const SphericalGrid>;

class SphericalGrid {
 public:
  static GridPtr full_s2(int n_theta, int n_phi);
  static GridPtr axisym(int n, int n_theta);

  /// Area of the unit sphere S^n, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
  static double sphere_area(int n);

  GridMode mode() const { return mode_; }
  int dim() const { return n_; }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * n_phi_; }
  double dtheta() const { return dtheta_; }
  double dphi() const { return dphi_; }

  double theta(int j) const { return rings_[static_cast<std::size_t>(j)].theta; }
  double phi(int m) const { return dphi_ * m; }
  int ring_of(std::size_t idx) const { return static_cast<int>(idx / static_cast<std::size_t>(n_phi_)); }
  int column_of(std::size_t idx) const { return static_cast<int>(idx % static_cast<std::size_t>(n_phi_)); }
  std::size_t index(int j, int m) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_phi_) + static_cast<std::size_t>(m);
  }

  /// Quadrature weight; weights of all nodes sum to sphere_area(n).
  double weight(std::size_t idx) const { return rings_[static_cast<std::size_t>(ring_of(idx))].weight; }

  /// Unit direction xi of a node. Axisym nodes live in the meridian
  /// half-plane: x is the distance from the symmetry axis, z the axis.
  Vec3 direction(std::size_t idx) const;
  Vec3 e_theta(std::size_t idx) const;
  /// Zero vector on axisym grids.
  Vec3 e_phi(std::size_t idx) const;

  /// Spacing ds such that 4 / ds^2 bounds the discrete Laplacian symbol.
  /// With `polar_filtered` only the wavenumbers kept by PolarFilter count.
  double min_spacing(bool polar_filtered) const;
  /// Largest longitudinal wavenumber PolarFilter keeps on ring j:
  /// max(2, floor(2 min(theta, pi - theta) / dphi)), capped at n_phi / 2.
  int polar_cutoff(int ring) const;

  struct Ring {
    double theta = 0.0;
    double sin_theta = 0.0;
    double cos_theta = 0.0;
    double weight = 0.0;
    // flux-form Laplacian = lap_d2 * (second difference) + flux_cot * (centred first difference)
    double lap_d2 = 0.0;
    double flux_cot = 0.0;
  };
  const Ring& ring(int j) const { return rings_[static_cast<std::size_t>(j)]; }

 private:
  SphericalGrid(GridMode mode, int n, int n_theta, int n_phi);

  GridMode mode_;
  int n_;
  int n_theta_;
  int n_phi_;
  double dtheta_;
  double dphi_;
  std::vector<Ring> rings_;
};

/// One real value per grid node.
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid, double fill = 0.0);
  ScalarField(GridPtr grid, std::vector<double> values);

  /// Samples fn(theta, phi) at every node (phi = 0 on axisym grids).
  template <class Fn>
  static ScalarField sample(GridPtr grid, Fn&& fn) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = fn(grid->theta(grid->ring_of(i)), grid->phi(grid->column_of(i)));
    }
    return ScalarField(std::move(grid), std::move(v));
  }

  const SphericalGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double min() const;
  double max() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Value, gradient and covariant Hessian of a field at one node.
struct LocalJet {
  double value = 0.0;
  SmallVector grad;
  SymMatrix hess;
};

LocalJet local_jet(const ScalarField& field, std::size_t idx);

std::vector<SmallVector> sphere_gradient(const ScalarField& field);
std::vector<SymMatrix> sphere_hessian(const ScalarField& field);
ScalarField sphere_laplacian(const ScalarField& field);

double integrate(const ScalarField& density);
double integrate(const SphericalGrid& grid, std::span<const double> density);

/// Longitudinal Fourier filter for full-S^2 grids: on ring j only the
/// wavenumbers m <= polar_cutoff(j) are kept. m = 2 always survives, since
/// smooth functions carry sin^2(theta) cos(2 phi) content at the poles. Holds
/// FFT scratch space, so one instance must not be shared across threads.
class PolarFilter {
 public:
  explicit PolarFilter(GridPtr grid);
  ~PolarFilter();
  PolarFilter(const PolarFilter&) = delete;
  PolarFilter& operator=(const PolarFilter&) = delete;

  void apply(std::span<double> values) const;
  int cutoff(int ring) const { return cutoff_[static_cast<std::size_t>(ring)]; }

 private:
  struct Plans;
  GridPtr grid_;
  std::vector<int> cutoff_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace curvelab

#endif  // CURVELAB_SPHERE_GRID_HPP
