#include "curvelab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curvelab/errors.hpp"
#include "curvelab/speed_profile.hpp"

namespace curvelab {

namespace {

Vec3 tangent_vector(const SphericalGrid& g, std::size_t idx, const SmallVector& comp) {
  Vec3 t = g.e_theta(idx) * comp[0];
  if (g.mode() == GridMode::FullS2) t = t + g.e_phi(idx) * comp[1];
  return t;
}

// Per-node failures are recorded and rethrown after the parallel loop so the
// reported node does not depend on thread scheduling.
struct NodeFailure {
  std::size_t node = std::numeric_limits<std::size_t>::max();
  double value = 0.0;
};

}  // namespace

CurvatureField::CurvatureField(GridPtr grid, Parametrization kind, std::vector<NodeGeometry> nodes)
    : grid_(std::move(grid)), kind_(kind), nodes_(std::move(nodes)) {}

double CurvatureField::integrate(
    const std::function<double(std::size_t, const NodeGeometry&)>& fn) const {
  std::vector<double> density(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) density[i] = fn(i, nodes_[i]) * nodes_[i].area_element;
  return curvelab::integrate(*grid_, density);
}

double CurvatureField::area() const {
  return integrate([](std::size_t, const NodeGeometry&) { return 1.0; });
}

double CurvatureField::volume() const {
  const int n = dim();
  if (kind_ == Parametrization::Radial) {
    // cone formula over the parameter sphere
    std::vector<double> d(nodes_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::pow(nodes_[i].radius, n + 1);
    return curvelab::integrate(*grid_, d) / (n + 1);
  }
  return integrate([](std::size_t, const NodeGeometry& g) { return g.support; }) / (n + 1);
}

NodeGeometry radial_node_geometry(const SphericalGrid& grid, std::size_t i, const LocalJet& jet) {
  const int n = grid.dim();
  NodeGeometry node;
  const double rr = jet.value;
  const SmallVector& p = jet.grad;
  const double W = rr * rr + p.norm_squared();
  const double sw = std::sqrt(W);
  const SymMatrix pp = SymMatrix::outer(p);

  node.grad = p;
  node.radius = rr;
  node.v = sw / rr;
  node.metric = SymMatrix::identity(n, rr * rr) + pp;
  node.metric_inv = (1.0 / (rr * rr)) * (SymMatrix::identity(n) - (1.0 / W) * pp);
  node.second_form = (1.0 / sw) * (SymMatrix::identity(n, rr * rr) + 2.0 * pp - rr * jet.hess);
  const SymMatrix root = (1.0 / rr) * (SymMatrix::identity(n) - (1.0 / (sw * (rr + sw))) * pp);
  node.weingarten = node.second_form.congruence(root);
  node.kappa = eigenvalues(node.weingarten);
  node.mean_curvature = node.weingarten.trace();
  node.norm_A2 = node.weingarten.squared().trace();
  node.area_element = real_power(rr, n - 1) * sw;
  node.support = rr * rr / sw;

  const Vec3 xi = grid.direction(i);
  node.position = xi * rr;
  node.normal = (xi * rr - tangent_vector(grid, i, p)) * (1.0 / sw);
  return node;
}

RadialScalars radial_node_scalars(const LocalJet& jet, int n) {
  // g^{-1} = (I - p p^T / W) / r^2, so H = (tr h - p^T h p / W) / r^2
  const double r = jet.value;
  const SmallVector& p = jet.grad;
  const double p2 = p.norm_squared();
  const double W = r * r + p2;
  const double sw = std::sqrt(W);
  double php = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) php += p[a] * jet.hess(a, b) * p[b];
  const double tr_h = (n * r * r + 2.0 * p2 - r * jet.hess.trace()) / sw;
  const double p_h_p = (r * r * p2 + 2.0 * p2 * p2 - r * php) / sw;
  RadialScalars out;
  out.mean_curvature = (tr_h - p_h_p / W) / (r * r);
  out.v = sw / r;
  out.area_element = real_power(r, n - 1) * sw;
  return out;
}

SmallVector principal_radii(const LocalJet& jet, int n) {
  const SymMatrix b = jet.hess + SymMatrix::identity(n, jet.value);
  if (n != 2) return eigenvalues(b);
  const double m = 0.5 * (b(0, 0) + b(1, 1));
  const double d = 0.5 * (b(0, 0) - b(1, 1));
  const double q = std::hypot(d, b(0, 1));
  return SmallVector{m - q, m + q};
}

CurvatureField radial_geometry(const ScalarField& r) {
  const SphericalGrid& grid = r.grid();
  if (!(r.min() > 0.0)) throw NotStarshaped("radial function has min r = " + std::to_string(r.min()));

  std::vector<NodeGeometry> nodes(r.size());
  std::vector<char> degenerate(r.size(), 0);
  const auto count = static_cast<std::ptrdiff_t>(r.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    nodes[i] = radial_node_geometry(grid, i, local_jet(r, i));
    if (!std::isfinite(nodes[i].mean_curvature)) degenerate[i] = 1;
  }
  for (std::size_t i = 0; i < degenerate.size(); ++i) {
    if (degenerate[i]) throw DegenerateMetric("metric not positive definite at node " + std::to_string(i));
  }
  return CurvatureField(r.grid_ptr(), Parametrization::Radial, std::move(nodes));
}

std::vector<double> mean_curvature_log_form(const ScalarField& r) {
  const int n = r.grid().dim();
  std::vector<double> H(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) throw NotStarshaped("log form needs r > 0");
    // jet of log r from the jet of r, so both paths see the same discrete derivatives
    const LocalJet jr = local_jet(r, i);
    SmallVector grad(n);
    for (int a = 0; a < n; ++a) grad[a] = jr.grad[a] / r[i];
    SymMatrix hess = (1.0 / r[i]) * jr.hess;
    hess -= SymMatrix::outer(grad);
    const double q = 1.0 + grad.norm_squared();
    const SymMatrix a = SymMatrix::identity(n) - (1.0 / q) * SymMatrix::outer(grad);
    H[i] = (n - a.contract(hess)) / (r[i] * std::sqrt(q));
  }
  return H;
}

double convexity_epsilon(const ScalarField& h) {
  return 1e-10 * (1.0 + std::max(std::abs(h.min()), std::abs(h.max())));
}

bool support_node_geometry(const SphericalGrid& grid, std::size_t i, const LocalJet& jet, double eps,
                           NodeGeometry& node, double& min_radius) {
  const int n = grid.dim();
  const SymMatrix b = jet.hess + SymMatrix::identity(n, jet.value);
  const Eigensystem eig = jacobi_eigen(b);
  min_radius = eig.values[0];
  if (!(eig.values[0] > eps)) return false;
  SmallVector inv(n);
  SmallVector sq(n);
  double det = 1.0;
  node.kappa = SmallVector(n);
  node.mean_curvature = 0.0;
  node.norm_A2 = 0.0;
  for (int c = 0; c < n; ++c) {
    inv[c] = 1.0 / eig.values[c];
    sq[c] = inv[c] * inv[c];
    det *= eig.values[c];
    node.kappa[n - 1 - c] = inv[c];
    node.mean_curvature += inv[c];
    node.norm_A2 += sq[c];
  }
  node.grad = jet.grad;
  node.second_form = b;
  node.metric = b.squared();
  node.metric_inv = eig.recompose(sq);
  node.weingarten = eig.recompose(inv);
  node.area_element = det;
  node.support = jet.value;
  const Vec3 xi = grid.direction(i);
  node.normal = xi;
  node.position = xi * jet.value + tangent_vector(grid, i, jet.grad);
  node.radius = node.position.norm();
  return true;
}

CurvatureField support_geometry(const ScalarField& h) {
  const SphericalGrid& grid = h.grid();
  const double eps = convexity_epsilon(h);

  std::vector<NodeGeometry> nodes(h.size());
  std::vector<NodeFailure> fail(h.size());
  const auto count = static_cast<std::ptrdiff_t>(h.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double rho_min = 0.0;
    if (!support_node_geometry(grid, i, local_jet(h, i), eps, nodes[i], rho_min)) fail[i] = {i, rho_min};
  }
  for (const auto& f : fail) {
    if (f.node != std::numeric_limits<std::size_t>::max()) {
      throw ConvexityLost("principal radius " + std::to_string(f.value) + " at node " +
                          std::to_string(f.node));
    }
  }
  return CurvatureField(h.grid_ptr(), Parametrization::Support, std::move(nodes));
}

StaticConvexityReport static_convexity(const CurvatureField& field) {
  StaticConvexityReport rep;
  rep.node_margin.resize(field.size());
  rep.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < field.size(); ++i) {
    const NodeGeometry& g = field[i];
    if (!(g.support > 0.0)) {
      throw NonpositiveSupport("support value " + std::to_string(g.support) + " at node " +
                               std::to_string(i));
    }
    // in a g-orthonormal frame h_ij - g_ij/h becomes weingarten - I/h
    rep.node_margin[i] = g.kappa[0] - 1.0 / g.support;
    if (rep.node_margin[i] < rep.margin) {
      rep.margin = rep.node_margin[i];
      rep.worst_node = i;
    }
  }
  return rep;
}

double sphericity(const CurvatureField& field) {
  const int n = field.dim();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < field.size(); ++i) {
    const NodeGeometry& g = field[i];
    const double H = g.mean_curvature;
    if (std::abs(H) <= 1e-12 * (1.0 + std::sqrt(g.norm_A2))) {
      throw ZeroMeanCurvature("H vanishes at node " + std::to_string(i));
    }
    worst = std::max(worst, n * g.norm_A2 / (H * H) - 1.0);
  }
  return worst;
}

double enclosed_volume(const ScalarField& r) {
  if (!(r.min() > 0.0)) throw NotStarshaped("radial function has min r = " + std::to_string(r.min()));
  const int n = r.grid().dim();
  std::vector<double> d(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) d[i] = std::pow(r[i], n + 1);
  return integrate(r.grid(), d) / (n + 1);
}

GeometrySummary summarize(const CurvatureField& field) {
  GeometrySummary s;
  const double inf = std::numeric_limits<double>::infinity();
  s.kappa_min = s.H_min = s.h_min = inf;
  s.kappa_max = s.H_max = s.h_max = -inf;
  const int n = field.dim();
  for (const auto& g : field.nodes()) {
    s.kappa_min = std::min(s.kappa_min, g.kappa[0]);
    s.kappa_max = std::max(s.kappa_max, g.kappa[n - 1]);
    s.H_min = std::min(s.H_min, g.mean_curvature);
    s.H_max = std::max(s.H_max, g.mean_curvature);
    s.h_min = std::min(s.h_min, g.support);
    s.h_max = std::max(s.h_max, g.support);
  }
  s.margin = s.h_min > 0.0 ? static_convexity(field).margin : std::numeric_limits<double>::quiet_NaN();
  s.area = field.area();
  s.volume = field.volume();
  return s;
}

}  // namespace curvelab
