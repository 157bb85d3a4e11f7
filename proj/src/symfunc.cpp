#include "curvelab/symfunc.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "curvelab/errors.hpp"

namespace curvelab {

CurvatureVector::CurvatureVector(std::span<const double> kappa)
    : kappa_(SmallVector::from(kappa)) {
  validate();
}

CurvatureVector::CurvatureVector(std::initializer_list<double> kappa) : kappa_(kappa) {
  validate();
}

CurvatureVector::CurvatureVector(const SmallVector& kappa) : kappa_(kappa) { validate(); }

void CurvatureVector::validate() const {
  if (kappa_.size() < 2) throw std::invalid_argument("curvature vector needs n >= 2");
  for (int i = 0; i < kappa_.size(); ++i)
    if (!std::isfinite(kappa_[i])) throw std::invalid_argument("non-finite curvature");
}

CurvatureVector CurvatureVector::scaled(double a) const {
  SmallVector s = kappa_;
  for (int i = 0; i < s.size(); ++i) s[i] *= a;
  return CurvatureVector(s);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(b);
}

double sigma(std::span<const double> values, int k) {
  const int n = static_cast<int>(values.size());
  if (k < 0) throw std::invalid_argument("sigma_k needs k >= 0");
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  // e[j] accumulates sigma_j of the prefix processed so far
  std::array<double, kMaxDim + 2> e{};
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double x = values[static_cast<std::size_t>(i)];
    for (int j = std::min(i + 1, k); j >= 1; --j) e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j - 1)];
  }
  return e[static_cast<std::size_t>(k)];
}

double sigma(const CurvatureVector& kappa, int k) { return sigma(kappa.values().view(), k); }

double elementary_symmetric(const CurvatureVector& kappa, int k) {
  const int n = kappa.dim();
  if (k < 0 || k > n + 1) throw std::invalid_argument("E_k needs 0 <= k <= n+1");
  if (k > n) return 0.0;
  return sigma(kappa, k) / binomial(n, k);
}

double elementary_symmetric(const SymMatrix& a, int k) {
  return elementary_symmetric(CurvatureVector(eigenvalues(a)), k);
}

SmallVector ek_gradient(const CurvatureVector& kappa, int k) {
  const int n = kappa.dim();
  if (k < 1 || k > n) throw std::invalid_argument("dE_k needs 1 <= k <= n");
  const double norm = binomial(n, k);
  SmallVector out(n);
  std::array<double, kMaxDim> rest{};
  for (int p = 0; p < n; ++p) {
    int m = 0;
    for (int i = 0; i < n; ++i)
      if (i != p) rest[static_cast<std::size_t>(m++)] = kappa[i];
    out[p] = sigma(std::span<const double>(rest.data(), static_cast<std::size_t>(m)), k - 1) / norm;
  }
  return out;
}

SymMatrix ek_derivative_tensor(const SymMatrix& a, int k) {
  const Eigensystem eig = jacobi_eigen(a);
  return eig.recompose(ek_gradient(CurvatureVector(eig.values), k));
}

double cone_epsilon(const CurvatureVector& kappa, int i) {
  const double m = kappa.values().max_abs();
  double p = 1.0;
  for (int j = 0; j < i; ++j) p *= m;
  return 1e-12 * (1.0 + p);
}

bool gamma_cone_member(const CurvatureVector& kappa, int k) {
  if (k < 1 || k > kappa.dim()) throw std::invalid_argument("cone index needs 1 <= k <= n");
  for (int i = 1; i <= k; ++i)
    if (!(elementary_symmetric(kappa, i) > cone_epsilon(kappa, i))) return false;
  return true;
}

namespace {

void require_cone(const CurvatureVector& kappa, int k) {
  if (!gamma_cone_member(kappa, k)) {
    throw ConeViolation("curvature vector outside Gamma_" + std::to_string(k) + "^+");
  }
}

}  // namespace

double curvature_quotient(const CurvatureVector& kappa, int k) {
  require_cone(kappa, k);
  return elementary_symmetric(kappa, k) / elementary_symmetric(kappa, k - 1);
}

SmallVector curvature_quotient_gradient(const CurvatureVector& kappa, int k) {
  require_cone(kappa, k);
  const int n = kappa.dim();
  const double ek = elementary_symmetric(kappa, k);
  const double ek1 = elementary_symmetric(kappa, k - 1);
  const SmallVector dk = ek_gradient(kappa, k);
  SmallVector out(n);
  if (k == 1) return dk;
  const SmallVector dk1 = ek_gradient(kappa, k - 1);
  for (int p = 0; p < n; ++p) out[p] = (dk[p] * ek1 - ek * dk1[p]) / (ek1 * ek1);
  return out;
}

SymMatrix curvature_quotient_tensor(const SymMatrix& a, int k) {
  const Eigensystem eig = jacobi_eigen(a);
  return eig.recompose(curvature_quotient_gradient(CurvatureVector(eig.values), k));
}

double newton_maclaurin_gap(const CurvatureVector& kappa, int k, int m) {
  if (k < 1 || k > m || m > kappa.dim()) {
    throw std::invalid_argument("Newton-MacLaurin gap needs 1 <= k <= m <= n");
  }
  require_cone(kappa, k);
  return elementary_symmetric(kappa, k) * elementary_symmetric(kappa, m) -
         elementary_symmetric(kappa, m + 1) * elementary_symmetric(kappa, k - 1);
}

}  // namespace curvelab
