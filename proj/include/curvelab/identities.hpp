/// \file identities.hpp
/// \brief Randomized checks of the algebraic identities and inequalities for
/// E_k and F = E_k / E_{k-1}, and the Minkowski-identity refinement study.

#ifndef CURVELAB_IDENTITIES_HPP
#define CURVELAB_IDENTITIES_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "curvelab/small_linalg.hpp"
#include "curvelab/surfaces.hpp"

namespace curvelab {

/// Random n x n symmetric matrix with eigenvalues in Gamma_k^+ and a random
/// orthonormal eigenbasis. With `positive`, all eigenvalues are > 0.
SymMatrix random_cone_matrix(int n, int k, bool positive, std::mt19937_64& rng);

struct IdentityBattery {
  int samples = 0;
  double trace_residual = 0.0;    // dE_k : g = k E_{k-1}
  double linear_residual = 0.0;   // dE_k : A = k E_k
  double square_residual = 0.0;   // dE_k : A^2 = n E_1 E_k - (n-k) E_{k+1}
  double trace_bound_violation = 0.0;   // 1 <= dF : g <= k
  double square_lower_violation = 0.0;  // F^2 <= dF : A^2
  double square_upper_violation = 0.0;  // dF : A^2 <= (n-k+1) F^2, positive samples
  double homogeneity_residual = 0.0;
  double min_monotonicity = 0.0;  // smallest central-difference dF/dkappa_p
  double max_residual() const;
};

/// n drawn from [2, 6], k from [1, n].
IdentityBattery run_identity_battery(int samples, std::uint64_t seed);

struct NewtonMaclaurinBattery {
  int samples = 0;
  int pairs = 0;
  double min_gap = 0.0;      // over all non-constant samples
  int violations = 0;        // gap < -1e-12
  int false_equalities = 0;  // gap < 1e-12 on a non-constant vector
  int missed_equalities = 0; // gap >= 1e-12 on a constant vector, m < n
};

/// Random positive curvature vectors plus a share of constant vectors.
NewtonMaclaurinBattery run_newton_maclaurin_battery(int samples, std::uint64_t seed);

struct MinkowskiStudy {
  std::vector<std::pair<int, int>> resolutions;  // (n_theta, n_phi)
  /// residual[level][k-1] = |int E_{k-1} - int h E_k| / int E_{k-1}
  std::vector<std::vector<double>> residual;
  /// order[k-1] between the last two levels
  std::vector<double> order;
};

/// Radial parametrization of the ellipsoid on full-S^2 grids.
MinkowskiStudy run_minkowski_study(const Ellipsoid& body, const std::vector<std::pair<int, int>>& resolutions);

}  // namespace curvelab

#endif  // CURVELAB_IDENTITIES_HPP
