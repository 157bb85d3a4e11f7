#include "curvelab/small_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace curvelab {

namespace {

void check_dim(int n) {
  if (n < 0 || n > kMaxDim) {
    throw std::invalid_argument("dimension out of range for small tensors");
  }
}

}  // namespace

SmallVector::SmallVector(int n, double fill) : n_(n) {
  check_dim(n);
  std::fill_n(v_.begin(), n, fill);
}

SmallVector::SmallVector(std::initializer_list<double> values)
    : n_(static_cast<int>(values.size())) {
  check_dim(n_);
  std::copy(values.begin(), values.end(), v_.begin());
}

SmallVector SmallVector::from(std::span<const double> values) {
  SmallVector out(static_cast<int>(values.size()));
  std::copy(values.begin(), values.end(), out.v_.begin());
  return out;
}

double SmallVector::dot(const SmallVector& other) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += (*this)[i] * other[i];
  return s;
}

double SmallVector::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) m = std::max(m, std::abs((*this)[i]));
  return m;
}

SymMatrix::SymMatrix(int n) : n_(n) { check_dim(n); }

SymMatrix SymMatrix::identity(int n, double scale) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, scale);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.n_; ++i) m.set(i, i, d[static_cast<std::size_t>(i)]);
  return m;
}

SymMatrix SymMatrix::outer(const SmallVector& v) {
  SymMatrix m(v.size());
  for (int i = 0; i < m.n_; ++i)
    for (int j = i; j < m.n_; ++j) m.set(i, j, v[i] * v[j]);
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  for (std::size_t i = 0; i < kStorage; ++i) a_[i] += other.a_[i];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  for (std::size_t i = 0; i < kStorage; ++i) a_[i] -= other.a_[i];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (auto& x : a_) x *= s;
  return *this;
}

double SymMatrix::contract(const SymMatrix& other) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    s += (*this)(i, i) * other(i, i);
    for (int j = i + 1; j < n_; ++j) s += 2.0 * (*this)(i, j) * other(i, j);
  }
  return s;
}

SymMatrix SymMatrix::squared() const {
  SymMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      double s = 0.0;
      for (int k = 0; k < n_; ++k) s += (*this)(i, k) * (*this)(k, j);
      out.set(i, j, s);
    }
  return out;
}

SymMatrix SymMatrix::congruence(const SymMatrix& s) const {
  // t = A S, then S t
  std::array<double, kMaxDim * kMaxDim> t{};
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n_; ++k) acc += (*this)(i, k) * s(k, j);
      t[static_cast<std::size_t>(i * kMaxDim + j)] = acc;
    }
  SymMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n_; ++k) acc += s(i, k) * t[static_cast<std::size_t>(k * kMaxDim + j)];
      out.set(i, j, acc);
    }
  return out;
}

SmallVector SymMatrix::apply(const SmallVector& v) const {
  SmallVector out(n_);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

SymMatrix Eigensystem::recompose(const SmallVector& d) const {
  const int n = values.size();
  SymMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int c = 0; c < n; ++c) s += vector(i, c) * d[c] * vector(j, c);
      out.set(i, j, s);
    }
  return out;
}

Eigensystem jacobi_eigen(const SymMatrix& input) {
  const int n = input.dim();
  std::array<double, kMaxDim * kMaxDim> a{};
  std::array<double, kMaxDim * kMaxDim> v{};
  auto at = [](auto& m, int i, int j) -> double& {
    return m[static_cast<std::size_t>(i * kMaxDim + j)];
  };
  for (int i = 0; i < n; ++i) {
    at(v, i, i) = 1.0;
    for (int j = 0; j < n; ++j) at(a, i, j) = input(i, j);
  }

  const double scale = std::max(input.max_abs(), 1e-300);
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(a, p, q) * at(a, p, q);
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(a, k, p);
          const double akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(a, p, k);
          const double aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = at(v, k, p);
          const double vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<int, kMaxDim> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::sort(order.begin(), order.begin() + n,
            [&](int x, int y) { return at(a, x, x) < at(a, y, y); });

  Eigensystem out;
  out.values = SmallVector(n);
  for (int c = 0; c < n; ++c) {
    const int src = order[static_cast<std::size_t>(c)];
    out.values[c] = at(a, src, src);
    for (int r = 0; r < n; ++r)
      out.vectors[static_cast<std::size_t>(r * kMaxDim + c)] = at(v, r, src);
  }
  return out;
}

SmallVector eigenvalues(const SymMatrix& a) {
  const int n = a.dim();
  // closed forms for the common cases
  if (n == 1) return SmallVector{a(0, 0)};
  if (n == 2) {
    const double m = 0.5 * (a(0, 0) + a(1, 1));
    const double d = 0.5 * (a(0, 0) - a(1, 1));
    const double r = std::hypot(d, a(0, 1));
    return SmallVector{m - r, m + r};
  }
  bool diagonal = true;
  for (int i = 0; i < n && diagonal; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a(i, j) != 0.0) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    SmallVector d(n);
    for (int i = 0; i < n; ++i) d[i] = a(i, i);
    std::sort(d.view().begin(), d.view().end());
    return d;
  }
  return jacobi_eigen(a).values;
}

}  // namespace curvelab
