/// \file symfunc.hpp
/// \brief Normalized elementary symmetric functions of curvatures.
///
/// E_k(kappa) = sigma_k(kappa) / binom(n, k), with E_0 = 1 and E_k = 0 for
/// k > n. The same functions act on symmetric matrices through their
/// eigenvalues. The curvature quotient F = E_k / E_{k-1} and its derivatives
/// live here as well, together with the Garding cone test.

#ifndef CURVELAB_SYMFUNC_HPP
#define CURVELAB_SYMFUNC_HPP

#include <span>

#include "curvelab/small_linalg.hpp"

namespace curvelab {

/// Principal curvatures of one point, 2 <= n <= kMaxDim, all finite.
class CurvatureVector {
 public:
  explicit CurvatureVector(std::span<const double> kappa);
  CurvatureVector(std::initializer_list<double> kappa);
  explicit CurvatureVector(const SmallVector& kappa);

  int dim() const { return kappa_.size(); }
  double operator[](int i) const { return kappa_[i]; }
  const SmallVector& values() const { return kappa_; }
  CurvatureVector scaled(double a) const;

 private:
  void validate() const;
  SmallVector kappa_;
};

double binomial(int n, int k);

/// sigma_k of an arbitrary list (no dimension restriction).
double sigma(std::span<const double> values, int k);
double sigma(const CurvatureVector& kappa, int k);

/// E_k; pre 0 <= k <= n + 1.
double elementary_symmetric(const CurvatureVector& kappa, int k);

/// E_k(A) through the eigenvalues of A.
double elementary_symmetric(const SymMatrix& a, int k);

/// dE_k/dA_ij; pre 1 <= k <= n.
SymMatrix ek_derivative_tensor(const SymMatrix& a, int k);

/// dE_k/dkappa_p = sigma_{k-1}(kappa without p) / binom(n, k).
SmallVector ek_gradient(const CurvatureVector& kappa, int k);

/// Scale-aware cone threshold 1e-12 * (1 + |kappa|_inf^i).
double cone_epsilon(const CurvatureVector& kappa, int i);

/// True iff E_i(kappa) exceeds the cone threshold for every i = 1..k.
bool gamma_cone_member(const CurvatureVector& kappa, int k);

/// F = E_k / E_{k-1}. Throws ConeViolation outside Gamma_k^+.
double curvature_quotient(const CurvatureVector& kappa, int k);

/// dF/dkappa_p. Throws ConeViolation outside Gamma_k^+.
SmallVector curvature_quotient_gradient(const CurvatureVector& kappa, int k);

/// dF/dA_ij for symmetric A with eigenvalues in Gamma_k^+.
SymMatrix curvature_quotient_tensor(const SymMatrix& a, int k);

/// E_k E_m - E_{m+1} E_{k-1}; pre 1 <= k <= m <= n, kappa in Gamma_k^+.
double newton_maclaurin_gap(const CurvatureVector& kappa, int k, int m);

}  // namespace curvelab

#endif  // CURVELAB_SYMFUNC_HPP
