#include "curvelab/sphere_grid.hpp"

#include <fftw3.h>

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace curvelab {

using std::numbers::pi;

double Vec3::norm() const { return std::sqrt(dot(*this)); }

double SphericalGrid::sphere_area(int n) {
  return 2.0 * std::pow(pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

GridPtr SphericalGrid::full_s2(int n_theta, int n_phi) {
  if (n_theta < 4 || n_phi < 4 || n_phi % 2 != 0) {
    throw std::invalid_argument("full-s2 grid needs n_theta >= 4 and even n_phi >= 4");
  }
  return GridPtr(new SphericalGrid(GridMode::FullS2, 2, n_theta, n_phi));
}

GridPtr SphericalGrid::axisym(int n, int n_theta) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("axisym grid needs 2 <= n <= 8");
  if (n_theta < 4) throw std::invalid_argument("axisym grid needs n_theta >= 4");
  return GridPtr(new SphericalGrid(GridMode::Axisym, n, n_theta, 1));
}

SphericalGrid::SphericalGrid(GridMode mode, int n, int n_theta, int n_phi)
    : mode_(mode),
      n_(n),
      n_theta_(n_theta),
      n_phi_(n_phi),
      dtheta_(pi / n_theta),
      dphi_(2.0 * pi / n_phi),
      rings_(static_cast<std::size_t>(n_theta)) {
  // s(theta) = sin^{n-1}(theta) is the volume density of S^n in polar form.
  auto density = [&](double t) {
    if (t <= 0.0 || t >= pi) return 0.0;
    return std::pow(std::sin(t), n - 1);
  };
  const double transverse = mode == GridMode::FullS2 ? dphi_ : sphere_area(n - 1);

  double total = 0.0;
  for (int j = 0; j < n_theta; ++j) {
    Ring& r = rings_[static_cast<std::size_t>(j)];
    r.theta = (j + 0.5) * dtheta_;
    r.sin_theta = std::sin(r.theta);
    r.cos_theta = std::cos(r.theta);
    // exact cell volume; s(theta_j) dtheta is off by O(1) on the polar cells when n > 2
    const double vol = boost::math::quadrature::gauss<double, 10>::integrate(density, r.theta - 0.5 * dtheta_,
                                                                             r.theta + 0.5 * dtheta_);
    const double up = j == n_theta - 1 ? 0.0 : density(r.theta + 0.5 * dtheta_);
    const double dn = j == 0 ? 0.0 : density(r.theta - 0.5 * dtheta_);
    r.lap_d2 = 0.5 * (up + dn) * dtheta_ / vol;
    r.flux_cot = (up - dn) / vol;
    r.weight = vol * transverse;
    total += r.weight * n_phi;
  }
  const double rescale = sphere_area(n) / total;
  for (auto& r : rings_) r.weight *= rescale;
}

Vec3 SphericalGrid::direction(std::size_t idx) const {
  const Ring& r = rings_[static_cast<std::size_t>(ring_of(idx))];
  if (mode_ == GridMode::Axisym) return {r.sin_theta, 0.0, r.cos_theta};
  const double p = phi(column_of(idx));
  return {r.sin_theta * std::cos(p), r.sin_theta * std::sin(p), r.cos_theta};
}

Vec3 SphericalGrid::e_theta(std::size_t idx) const {
  const Ring& r = rings_[static_cast<std::size_t>(ring_of(idx))];
  if (mode_ == GridMode::Axisym) return {r.cos_theta, 0.0, -r.sin_theta};
  const double p = phi(column_of(idx));
  return {r.cos_theta * std::cos(p), r.cos_theta * std::sin(p), -r.sin_theta};
}

Vec3 SphericalGrid::e_phi(std::size_t idx) const {
  if (mode_ == GridMode::Axisym) return {};
  const double p = phi(column_of(idx));
  return {-std::sin(p), std::cos(p), 0.0};
}

double SphericalGrid::min_spacing(bool polar_filtered) const {
  // Gershgorin bound of the colatitude part: 2 lap_d2 / dtheta^2 per row
  double ds = dtheta_;
  for (const Ring& r : rings_) ds = std::min(ds, dtheta_ / std::sqrt(r.lap_d2));
  if (mode_ == GridMode::Axisym) return ds;
  // second difference of mode m on a ring: 4 sin^2(m dphi / 2) / (dphi sin theta)^2
  for (int j = 0; j < n_theta_; ++j) {
    const int m = polar_filtered ? polar_cutoff(j) : n_phi_ / 2;
    const double s = std::sin(0.5 * m * dphi_);
    if (s > 0.0) ds = std::min(ds, dphi_ * rings_[static_cast<std::size_t>(j)].sin_theta / s);
  }
  return ds;
}

int SphericalGrid::polar_cutoff(int ring) const {
  const double t = theta(ring);
  const int m = static_cast<int>(std::floor(2.0 * std::min(t, std::numbers::pi - t) / dphi_ + 1e-9));
  return std::min(n_phi_ / 2, std::max(2, m));
}

ScalarField::ScalarField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->size(), fill) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw std::invalid_argument("field length does not match grid node count");
  }
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite field value");
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

LocalJet local_jet(const ScalarField& field, std::size_t idx) {
  const SphericalGrid& g = field.grid();
  const int nt = g.n_theta();
  const int np = g.n_phi();
  const int j = g.ring_of(idx);
  const int m = g.column_of(idx);
  const auto& ring = g.ring(j);
  const double dt = g.dtheta();

  // value at (ring jj, column mm) with pole continuation
  auto at = [&](int jj, int mm) {
    if (jj < 0) {
      jj = -1 - jj;
      mm += np / 2;
    } else if (jj >= nt) {
      jj = 2 * nt - 1 - jj;
      mm += np / 2;
    }
    mm = ((mm % np) + np) % np;
    return field[g.index(jj, mm)];
  };

  LocalJet jet;
  jet.value = field[idx];
  const double fp = at(j + 1, m);
  const double fm = at(j - 1, m);
  const double d1 = (fp - fm) / (2.0 * dt);
  const double d2 = (fp - 2.0 * jet.value + fm) / (dt * dt);

  if (g.mode() == GridMode::Axisym) {
    const int n = g.dim();
    jet.grad = SmallVector(n);
    jet.grad[0] = d1;
    jet.hess = SymMatrix(n);
    jet.hess.set(0, 0, d2);
    // whatever the flux-form Laplacian has beyond d2 is shared by the transverse directions
    const double transverse = ((ring.lap_d2 - 1.0) * d2 + ring.flux_cot * d1) / (n - 1);
    for (int i = 1; i < n; ++i) jet.hess.set(i, i, transverse);
    return jet;
  }

  const double dp = g.dphi();
  const double s = ring.sin_theta;
  const double fe = at(j, m + 1);
  const double fw = at(j, m - 1);
  const double f_p = (fe - fw) / (2.0 * dp);
  const double f_pp = (fe - 2.0 * jet.value + fw) / (dp * dp);
  const double f_tp = (at(j + 1, m + 1) - at(j + 1, m - 1) - at(j - 1, m + 1) + at(j - 1, m - 1)) /
                      (4.0 * dt * dp);

  jet.grad = SmallVector{d1, f_p / s};
  jet.hess = SymMatrix(2);
  jet.hess.set(0, 0, d2);
  jet.hess.set(0, 1, (f_tp - ring.flux_cot * f_p) / s);
  jet.hess.set(1, 1, f_pp / (s * s) + (ring.lap_d2 - 1.0) * d2 + ring.flux_cot * d1);
  return jet;
}

std::vector<SmallVector> sphere_gradient(const ScalarField& field) {
  std::vector<SmallVector> out(field.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = local_jet(field, i).grad;
  return out;
}

std::vector<SymMatrix> sphere_hessian(const ScalarField& field) {
  std::vector<SymMatrix> out(field.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = local_jet(field, i).hess;
  return out;
}

ScalarField sphere_laplacian(const ScalarField& field) {
  std::vector<double> v(field.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = local_jet(field, i).hess.trace();
  return ScalarField(field.grid_ptr(), std::move(v));
}

double integrate(const SphericalGrid& grid, std::span<const double> density) {
  if (density.size() != grid.size()) throw std::invalid_argument("density length mismatch");
  // ring-wise partial sums keep the rounding independent of n_phi ordering
  double total = 0.0;
  const auto np = static_cast<std::size_t>(grid.n_phi());
  for (int j = 0; j < grid.n_theta(); ++j) {
    const auto begin = density.begin() + static_cast<std::ptrdiff_t>(grid.index(j, 0));
    const double ring_sum = std::accumulate(begin, begin + static_cast<std::ptrdiff_t>(np), 0.0);
    total += grid.ring(j).weight * ring_sum;
  }
  return total;
}

double integrate(const ScalarField& density) { return integrate(density.grid(), density.values()); }

struct PolarFilter::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
  }
};

PolarFilter::PolarFilter(GridPtr grid) : grid_(std::move(grid)) {
  if (grid_->mode() != GridMode::FullS2) throw std::invalid_argument("polar filter needs a full-s2 grid");
  const int np = grid_->n_phi();
  cutoff_.resize(static_cast<std::size_t>(grid_->n_theta()));
  for (int j = 0; j < grid_->n_theta(); ++j) {
    cutoff_[static_cast<std::size_t>(j)] = grid_->polar_cutoff(j);
  }
  plans_ = std::make_unique<Plans>();
  plans_->real = fftw_alloc_real(static_cast<std::size_t>(np));
  plans_->spec = fftw_alloc_complex(static_cast<std::size_t>(np / 2 + 1));
  plans_->forward = fftw_plan_dft_r2c_1d(np, plans_->real, plans_->spec, FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_c2r_1d(np, plans_->spec, plans_->real, FFTW_ESTIMATE);
}

PolarFilter::~PolarFilter() = default;

void PolarFilter::apply(std::span<double> values) const {
  const int np = grid_->n_phi();
  for (int j = 0; j < grid_->n_theta(); ++j) {
    const int mc = cutoff_[static_cast<std::size_t>(j)];
    if (mc >= np / 2) continue;
    double* row = values.data() + grid_->index(j, 0);
    std::copy(row, row + np, plans_->real);
    fftw_execute(plans_->forward);
    for (int k = mc + 1; k <= np / 2; ++k) {
      plans_->spec[k][0] = 0.0;
      plans_->spec[k][1] = 0.0;
    }
    fftw_execute(plans_->backward);
    const double inv = 1.0 / np;
    for (int m = 0; m < np; ++m) row[m] = plans_->real[m] * inv;
  }
}

}  // namespace curvelab
