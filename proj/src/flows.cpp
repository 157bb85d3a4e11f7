#include "curvelab/flows.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "curvelab/errors.hpp"
#include "curvelab/functionals.hpp"
#include "curvelab/symfunc.hpp"

namespace curvelab {

namespace {

constexpr std::size_t kNoFailure = std::numeric_limits<std::size_t>::max();

double radial_node_speed(const NodeGeometry& g, const SpeedProfile& f, int n) {
  const double c = static_cast<double>(n) / (n - 1);
  return -(f.value(g.radius) * g.mean_curvature + c * f.derivative(g.radius) * g.v) * g.v;
}

double mean_over_sphere(const SphericalGrid& grid, std::span<const double> values) {
  return integrate(grid, values) / SphericalGrid::sphere_area(grid.dim());
}

}  // namespace

std::string to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::Converged: return "Converged";
    case FlowStatus::TimeExhausted: return "TimeExhausted";
    case FlowStatus::Error: return "Error";
  }
  return "Error";
}

void FlowConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& why) {
    throw ConfigError("field '" + field + "' " + why);
  };
  if (n < 2 || n > kMaxDim) bad("n", "must satisfy 2 <= n <= 8");
  if (kind == FlowKind::Support && (k < 1 || k > n)) bad("k", "must satisfy 1 <= k <= n");
  if (!(cfl > 0.0 && cfl <= 0.5)) bad("cfl", "must lie in (0, 0.5]");
  if (!(t_end > 0.0)) bad("t_end", "must be positive");
  if (!(grad_threshold > 0.0)) bad("grad_threshold", "must be positive");
  if (!(fhat_threshold > 0.0)) bad("fhat_threshold", "must be positive");
  if (!(osc_threshold > 0.0)) bad("osc_threshold", "must be positive");
  if (output_stride < 1) bad("output_stride", "must be >= 1");
  if (!(mono_rel_tol > 0.0)) bad("mono_rel_tol", "must be positive");
  if (!(dt_min > 0.0)) bad("dt_min", "must be positive");
  if (fixed_dt && !(*fixed_dt > 0.0)) bad("fixed_dt", "must be positive");
}

ScalarField radial_flow_speed(const ScalarField& r, const CurvatureField& geom, const SpeedProfile& f, int n) {
  if (!(r.min() > 0.0)) throw NotStarshaped("radial function has min r = " + std::to_string(r.min()));
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = radial_node_speed(geom[i], f, n);
  return ScalarField(r.grid_ptr(), std::move(out));
}

ScalarField support_flow_speed(const ScalarField& h, const CurvatureField& geom, int k) {
  std::vector<double> out(h.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 1.0 - h[i] * curvature_quotient(CurvatureVector(geom[i].kappa), k);
  }
  return ScalarField(h.grid_ptr(), std::move(out));
}

double radial_monotone_quantity(const CurvatureField& geom, const SpeedProfile& f) {
  const int n = geom.dim();
  const double p = static_cast<double>(n) / (n - 1);
  return geom.integrate([&](std::size_t, const NodeGeometry& g) { return std::pow(f.value(g.radius), p); });
}

double support_monotone_quantity(const CurvatureField& geom, const SpeedProfile& f, int k) {
  const int n = geom.dim();
  const double e = k < n ? static_cast<double>(n - k + 1) / (n - k) : 0.0;
  return geom.integrate([&](std::size_t, const NodeGeometry& g) {
    return sigma(CurvatureVector(g.kappa), k - 1) * std::pow(f.value(g.support), e);
  });
}

struct FlowIntegrator::Tendency {
  std::vector<double> rate;
  double monotone = 0.0;
  double diffusion_max = 0.0;
};

FlowIntegrator::FlowIntegrator(ScalarField initial, SpeedProfile profile, FlowConfig config)
    : state_(std::move(initial)), profile_(std::move(profile)), config_(std::move(config)) {
  config_.validate();
  if (state_.grid().dim() != config_.n) throw ConfigError("field 'n' does not match the grid dimension");
  if (config_.polar_filter && state_.grid().mode() == GridMode::FullS2) {
    filter_ = std::make_unique<PolarFilter>(state_.grid_ptr());
  }
  reset(state_, 0.0);
}

FlowIntegrator::~FlowIntegrator() = default;
FlowIntegrator::FlowIntegrator(FlowIntegrator&&) noexcept = default;

FlowIntegrator::Tendency FlowIntegrator::evaluate(const ScalarField& u, bool full) const {
  const SphericalGrid& grid = u.grid();
  const int n = config_.n;
  const int k = config_.k;
  Tendency t;
  t.rate.resize(u.size());
  std::vector<double> density(full ? u.size() : 0);
  std::vector<double> diffusion(full ? u.size() : 0);
  std::vector<std::size_t> fail(u.size(), kNoFailure);
  const auto count = static_cast<std::ptrdiff_t>(u.size());

  if (config_.kind == FlowKind::Radial) {
    if (!(u.min() > 0.0)) throw NotStarshaped("radial function has min r = " + std::to_string(u.min()));
    const double c = static_cast<double>(n) / (n - 1);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      const RadialScalars g = radial_node_scalars(local_jet(u, i), n);
      double f = 0.0, fr = 0.0;
      profile_.value_and_derivative(u[i], f, fr);
      t.rate[i] = -(f * g.mean_curvature + c * fr * g.v) * g.v;
      if (!std::isfinite(t.rate[i])) fail[i] = i;
      if (full) density[i] = real_power(f, c) * g.area_element;
    }
    for (std::size_t f : fail)
      if (f != kNoFailure) throw DegenerateMetric("non-finite speed at node " + std::to_string(f));
  } else {
    const double eps = convexity_epsilon(u);
    const double e = k < n ? static_cast<double>(n - k + 1) / (n - k) : 0.0;
    const double quotient_scale = binomial(n, k - 1) / binomial(n, k);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      const SmallVector rho = principal_radii(local_jet(u, i), n);
      if (!(rho[0] > eps)) {
        fail[i] = i;
        continue;
      }
      // all kappa > 0 here, so kappa lies in every Gamma_k^+ and F needs no cone test
      std::array<double, kMaxDim> kv{};
      double det = 1.0;
      for (int a = 0; a < n; ++a) {
        kv[static_cast<std::size_t>(a)] = 1.0 / rho[a];
        det *= rho[a];
      }
      const std::span<const double> kap(kv.data(), static_cast<std::size_t>(n));
      const double sk = sigma(kap, k);
      const double sk1 = sigma(kap, k - 1);
      const double F = quotient_scale * sk / sk1;
      t.rate[i] = 1.0 - u[i] * F;
      if (full) {
        density[i] = sk1 * real_power(profile_.value(u[i]), e) * det;
        // dF/dkappa_p = scale (sigma_{k-1}(kappa|p) sigma_{k-1} - sigma_k sigma_{k-2}(kappa|p)) / sigma_{k-1}^2
        double dmax = 0.0;
        std::array<double, kMaxDim> rest{};
        for (int p = 0; p < n; ++p) {
          int m = 0;
          for (int a = 0; a < n; ++a)
            if (a != p) rest[static_cast<std::size_t>(m++)] = kv[static_cast<std::size_t>(a)];
          const std::span<const double> r(rest.data(), static_cast<std::size_t>(m));
          const double dF = quotient_scale * (sigma(r, k - 1) * sk1 - sk * (k >= 2 ? sigma(r, k - 2) : 0.0)) / (sk1 * sk1);
          const double kp = kv[static_cast<std::size_t>(p)];
          dmax = std::max(dmax, u[i] * dF * kp * kp);
        }
        diffusion[i] = dmax;
      }
    }
    for (std::size_t i = 0; i < fail.size(); ++i) {
      if (fail[i] != kNoFailure) throw ConvexityLost("principal radius below threshold at node " + std::to_string(i));
    }
  }
  if (filter_) filter_->apply(t.rate);
  if (full) {
    t.monotone = integrate(grid, density);
    for (double d : diffusion) t.diffusion_max = std::max(t.diffusion_max, d);
  }
  return t;
}

void FlowIntegrator::adopt(ScalarField state, double t, Tendency&& tendency) {
  rate_ = std::make_unique<ScalarField>(state.grid_ptr(), std::move(tendency.rate));
  monotone_ = tendency.monotone;
  diffusion_max_ = tendency.diffusion_max;
  state_ = std::move(state);
  t_ = t;
  geom_.reset();
}

void FlowIntegrator::reset(ScalarField state, double t) {
  Tendency e = evaluate(state, true);
  adopt(std::move(state), t, std::move(e));
}

const CurvatureField& FlowIntegrator::geometry() const {
  if (!geom_) {
    geom_ = std::make_unique<CurvatureField>(config_.kind == FlowKind::Radial ? radial_geometry(state_)
                                                                               : support_geometry(state_));
  }
  return *geom_;
}

void FlowIntegrator::step(double dt) {
  const std::size_t m = state_.size();
  const auto& k1 = rate_->values();
  auto stage = [&](std::span<const double> kk, double a) {
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = state_[i] + a * kk[i];
    return ScalarField(state_.grid_ptr(), std::move(v));
  };
  const Tendency k2 = evaluate(stage(k1, 0.5 * dt), false);
  const Tendency k3 = evaluate(stage(k2.rate, 0.5 * dt), false);
  const Tendency k4 = evaluate(stage(k3.rate, dt), false);
  std::vector<double> next(m);
  for (std::size_t i = 0; i < m; ++i) {
    next[i] = state_[i] + dt / 6.0 * (k1[i] + 2.0 * k2.rate[i] + 2.0 * k3.rate[i] + k4.rate[i]);
  }
  ScalarField nf(state_.grid_ptr(), std::move(next));
  Tendency e = evaluate(nf, true);
  adopt(std::move(nf), t_ + dt, std::move(e));
}

double FlowIntegrator::stable_dt() const {
  if (config_.fixed_dt) return *config_.fixed_dt;
  const SphericalGrid& grid = state_.grid();
  const double ds = grid.min_spacing(filter_ != nullptr);
  const int n = config_.n;
  if (config_.kind == FlowKind::Radial) {
    double fmax = 0.0;
    for (std::size_t i = 0; i < state_.size(); ++i) fmax = std::max(fmax, profile_.value(state_[i]));
    const double rmin = state_.min();
    return config_.cfl * ds * ds * rmin * rmin / (n * fmax);
  }
  return config_.cfl * ds * ds / (n * diffusion_max_);
}

ScalarField FlowIntegrator::normal_speed() const {
  std::vector<double> phi(state_.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    phi[i] = config_.kind == FlowKind::Radial ? (*rate_)[i] / geometry()[i].v : (*rate_)[i];
  }
  return ScalarField(state_.grid_ptr(), std::move(phi));
}

double FlowIntegrator::area_rate() const {
  const ScalarField phi = normal_speed();
  return geometry().integrate([&](std::size_t i, const NodeGeometry& g) { return g.mean_curvature * phi[i]; });
}

double FlowIntegrator::q_rate() const {
  const int n = config_.n;
  const double c = static_cast<double>(n) / (n - 1);
  return -geometry().integrate([&](std::size_t, const NodeGeometry& g) {
    const double f = profile_.value(g.radius);
    const double fr = profile_.derivative(g.radius);
    const double fH = f * g.mean_curvature;
    return std::pow(f, 1.0 / (n - 1)) * (fH + c * fr * g.v) * (fH + c * fr / g.v);
  });
}

double FlowIntegrator::monotone() const { return monotone_; }

TraceRecord FlowIntegrator::diagnostics(long step, double dt) const {
  const CurvatureField& geom = geometry();
  const SphericalGrid& grid = state_.grid();
  TraceRecord rec;
  rec.step = step;
  rec.t = t_;
  rec.dt = dt;
  rec.Q = config_.kind == FlowKind::Radial ? monotone() : std::numeric_limits<double>::quiet_NaN();
  rec.monotone = monotone();
  const QuermassVector q = quermassintegrals(geom);
  rec.quermass.assign(q.V.begin(), q.V.begin() + config_.n + 1);

  std::vector<double> h(geom.size()), rad(geom.size());
  rec.r_min = std::numeric_limits<double>::infinity();
  rec.r_max = -rec.r_min;
  double hmin = rec.r_min;
  double hmax = -rec.r_min;
  for (std::size_t i = 0; i < geom.size(); ++i) {
    const NodeGeometry& g = geom[i];
    h[i] = g.support;
    rad[i] = g.radius;
    rec.grad_max = std::max(rec.grad_max, std::sqrt(g.grad.norm_squared()));
    rec.r_min = std::min(rec.r_min, g.radius);
    rec.r_max = std::max(rec.r_max, g.radius);
    hmin = std::min(hmin, g.support);
    hmax = std::max(hmax, g.support);
  }
  rec.h_oscillation = (hmax - hmin) / mean_over_sphere(grid, h);
  rec.r_oscillation = (rec.r_max - rec.r_min) / mean_over_sphere(grid, rad);
  rec.margin = hmin > 0.0 ? static_convexity(geom).margin : std::numeric_limits<double>::quiet_NaN();
  try {
    rec.sphericity = sphericity(geom);
  } catch (const ZeroMeanCurvature&) {
    rec.sphericity = std::numeric_limits<double>::quiet_NaN();
  }
  rec.area = geom.area();
  rec.volume = geom.volume();
  return rec;
}

FlowTrace run_flow(const ScalarField& initial, const SpeedProfile& profile, const FlowConfig& config) {
  FlowTrace trace;
  auto fail = [&](const Error& e, double t) {
    trace.status = FlowStatus::Error;
    trace.error_kind = e.kind();
    trace.error_message = e.what();
    trace.events.push_back({t, e.kind(), e.what(), 0.0});
  };

  std::unique_ptr<FlowIntegrator> integ;
  try {
    integ = std::make_unique<FlowIntegrator>(initial, profile, config);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(e, 0.0);
    return trace;
  }

  const int n = config.n;
  const bool radial = config.kind == FlowKind::Radial;
  const double r_lo = config.r_star ? std::min(*config.r_star, initial.min()) : 0.0;
  const double r_hi = config.r_star ? std::max(*config.r_star, initial.max()) : 0.0;
  const double bound_tol = 1e-6 * std::max(1.0, r_hi);
  bool bound_reported = false;

  auto converged = [&](const TraceRecord& rec) {
    if (radial) {
      const double r_avg = mean_over_sphere(integ->state().grid(), integ->state().values());
      return rec.grad_max < config.grad_threshold && std::abs(fhat(profile, n, r_avg)) < config.fhat_threshold;
    }
    return rec.h_oscillation < config.osc_threshold;
  };

  TraceRecord last = integ->diagnostics(0, 0.0);
  trace.records.push_back(last);
  double m_prev = last.monotone;
  long step = 0;
  double last_dt = 0.0;

  try {
    while (true) {
      if (converged(last)) {
        trace.status = FlowStatus::Converged;
        break;
      }
      if (integ->time() >= config.t_end * (1.0 - 1e-14) || step >= config.max_steps) {
        trace.status = FlowStatus::TimeExhausted;
        break;
      }
      double dt = std::min(integ->stable_dt(), config.t_end - integ->time());
      int halvings = 0;
      int retries = 0;
      const ScalarField before = integ->state();
      const double t_before = integ->time();
      double m_new = 0.0;
      while (true) {
        if (dt < config.dt_min) {
          throw StepCollapse("dt = " + std::to_string(dt) + " below dt_min at t = " + std::to_string(t_before));
        }
        try {
          integ->step(dt);
        } catch (const StepCollapse&) {
          throw;
        } catch (const Error& e) {
          if (++halvings > config.max_halvings) {
            throw StepCollapse(std::string("geometry error persists after halving: ") + e.what());
          }
          dt *= 0.5;
          continue;
        }
        m_new = integ->monotone();
        const double excess = (m_new - m_prev) / std::abs(m_prev);
        if (excess > config.mono_rel_tol) {
          if (retries < config.breach_retries) {
            ++retries;
            integ->reset(before, t_before);
            dt *= 0.5;
            continue;
          }
          ++trace.breach_count;
          trace.max_breach = std::max(trace.max_breach, excess);
          trace.events.push_back({integ->time(), "MonotonicityBreach", "monotone quantity increased", excess});
        }
        break;
      }
      ++step;
      m_prev = m_new;

      if (radial && config.r_star && !bound_reported) {
        const double lo = integ->state().min();
        const double hi = integ->state().max();
        if (lo < r_lo - bound_tol || hi > r_hi + bound_tol) {
          bound_reported = true;
          trace.events.push_back(
              {integ->time(), "BoundViolation", "radius left [C1, C2]", lo < r_lo - bound_tol ? lo : hi});
        }
      }
      if (step % config.output_stride == 0) {
        last = integ->diagnostics(step, dt);
        trace.records.push_back(last);
      }
      last_dt = dt;
    }
  } catch (const Error& e) {
    fail(e, integ->time());
  }
  if (trace.records.back().step != step) {
    try {
      trace.records.push_back(integ->diagnostics(step, last_dt));
    } catch (const Error&) {
      // final state already reported as an error
    }
  }
  trace.steps = step;
  trace.t_final = integ->time();
  trace.final_state = integ->state();
  return trace;
}

DecayFit estimate_decay_rate(const FlowTrace& trace) {
  if (trace.records.empty()) throw InsufficientData("empty trace");
  const double t_half = 0.5 * trace.records.back().t;
  std::vector<double> t, y;
  for (const auto& r : trace.records) {
    if (r.t >= t_half && r.grad_max > 1e-14) {
      t.push_back(r.t);
      y.push_back(std::log(r.grad_max));
    }
  }
  if (t.size() < 10) {
    throw InsufficientData(std::to_string(t.size()) + " usable samples in the final half of the run");
  }
  const double m = static_cast<double>(t.size());
  double st = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
  }
  const double tm = st / m;
  const double ym = sy / m;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (y[i] - ym);
    syy += (y[i] - ym) * (y[i] - ym);
  }
  if (!(stt > 0.0)) throw InsufficientData("all samples at one time");
  DecayFit fit;
  const double slope = sty / stt;
  fit.gamma = -slope;
  fit.r_squared = syy > 0.0 ? (sty * sty) / (stt * syy) : 1.0;
  fit.samples = static_cast<int>(t.size());
  return fit;
}

}  // namespace curvelab
