/// \file small_linalg.hpp
/// \brief Fixed-capacity vectors and symmetric matrices for per-node tensor work.
///
/// Every grid node carries a handful of n x n tensors (metric, second
/// fundamental form, Hessian) with n <= kMaxDim. Storage is inline so that
/// hot loops over nodes never allocate.

#ifndef CURVELAB_SMALL_LINALG_HPP
#define CURVELAB_SMALL_LINALG_HPP

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace curvelab {

inline constexpr int kMaxDim = 8;

class SmallVector {
 public:
  SmallVector() = default;
  explicit SmallVector(int n, double fill = 0.0);
  SmallVector(std::initializer_list<double> values);
  static SmallVector from(std::span<const double> values);

  int size() const { return n_; }
  double& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  std::span<const double> view() const { return {v_.data(), static_cast<std::size_t>(n_)}; }
  std::span<double> view() { return {v_.data(), static_cast<std::size_t>(n_)}; }

  double dot(const SmallVector& other) const;
  double norm_squared() const { return dot(*this); }
  double max_abs() const;

 private:
  int n_ = 0;
  std::array<double, kMaxDim> v_{};
};

/// Symmetric n x n matrix stored as its upper triangle.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);
  static SymMatrix identity(int n, double scale = 1.0);
  static SymMatrix diagonal(std::span<const double> d);
  /// Outer product v v^T.
  static SymMatrix outer(const SmallVector& v);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[index(i, j)]; }
  void set(int i, int j, double value) { a_[index(i, j)] = value; }
  void add(int i, int j, double value) { a_[index(i, j)] += value; }

  double trace() const;
  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double s);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

  /// Sum_ij A_ij B_ij.
  double contract(const SymMatrix& other) const;
  /// A * A.
  SymMatrix squared() const;
  /// S * A * S for symmetric S.
  SymMatrix congruence(const SymMatrix& s) const;
  SmallVector apply(const SmallVector& v) const;
  double max_abs() const;

 private:
  static constexpr std::size_t kStorage = kMaxDim * (kMaxDim + 1) / 2;
  std::size_t index(int i, int j) const {
    if (i > j) {
      const int t = i;
      i = j;
      j = t;
    }
    // row-major upper triangle
    return static_cast<std::size_t>(i * n_ - i * (i - 1) / 2 + (j - i));
  }

  int n_ = 0;
  std::array<double, kStorage> a_{};
};

/// Eigen-decomposition of a symmetric matrix; eigenvalues ascending,
/// column c of `vectors` is the unit eigenvector for values[c].
struct Eigensystem {
  SmallVector values;
  std::array<double, kMaxDim * kMaxDim> vectors{};

  double vector(int row, int col) const {
    return vectors[static_cast<std::size_t>(row * kMaxDim + col)];
  }
  /// V diag(d) V^T.
  SymMatrix recompose(const SmallVector& d) const;
};

/// Cyclic Jacobi rotations. Accurate to a few ulps of the largest entry.
Eigensystem jacobi_eigen(const SymMatrix& a);
SmallVector eigenvalues(const SymMatrix& a);

}  // namespace curvelab

#endif  // CURVELAB_SMALL_LINALG_HPP
