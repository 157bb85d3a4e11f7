#include "curvelab/speed_profile.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "curvelab/errors.hpp"

namespace curvelab {

namespace {
constexpr int kSamples = 2001;
}

struct SpeedProfile::Spline {
  gsl_spline* spline = nullptr;
  double lo = 0.0;
  double hi = 0.0;
  ~Spline() { gsl_spline_free(spline); }
};

SpeedProfile SpeedProfile::power_exp_pinned(double p, double s, double x_star) {
  if (!(x_star > 0.0)) throw std::invalid_argument("power-exp-pinned needs r_star > 0");
  SpeedProfile f;
  f.kind_ = Kind::PowerExpPinned;
  f.params_ = {p, s, x_star};
  return f;
}

SpeedProfile SpeedProfile::affine_power(double a, double b, double q) {
  SpeedProfile f;
  f.kind_ = Kind::AffinePower;
  f.params_ = {a, b, q};
  return f;
}

SpeedProfile SpeedProfile::constant(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("constant profile needs c > 0");
  SpeedProfile f;
  f.kind_ = Kind::Constant;
  f.params_ = {c};
  return f;
}

SpeedProfile SpeedProfile::tabulated(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("tabulated profile needs >= 3 (x, f) pairs");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw std::invalid_argument("tabulated x must be strictly increasing");
  gsl_set_error_handler_off();
  auto sp = std::make_shared<Spline>();
  sp->spline = gsl_spline_alloc(gsl_interp_cspline, x.size());
  gsl_spline_init(sp->spline, x.data(), y.data(), x.size());
  sp->lo = x.front();
  sp->hi = x.back();
  SpeedProfile f;
  f.kind_ = Kind::Tabulated;
  f.params_ = {x.front(), x.back(), static_cast<double>(x.size())};
  f.spline_ = std::move(sp);
  // interior consistency of the spline's own derivatives
  const double span = x.back() - x.front();
  if (f.derivative_mismatch(x.front() + 0.01 * span, x.back() - 0.01 * span) > 1e-3) {
    throw std::invalid_argument("tabulated profile derivatives inconsistent");
  }
  return f;
}

std::string SpeedProfile::kind_name() const {
  switch (kind_) {
    case Kind::PowerExpPinned: return "power-exp-pinned";
    case Kind::AffinePower: return "affine-power";
    case Kind::Constant: return "constant";
    case Kind::Tabulated: return "tabulated";
  }
  return "unknown";
}

double real_power(double x, double e) {
  if (e == std::trunc(e) && std::abs(e) <= 8.0) {
    const int m = static_cast<int>(std::abs(e));
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= x;
    return e < 0 ? 1.0 / r : r;
  }
  return std::pow(x, e);
}

void SpeedProfile::value_and_derivative(double x, double& f, double& df) const {
  if (kind_ == Kind::PowerExpPinned) {
    const double d = x - params_[2];
    f = real_power(x, -params_[0]) * std::exp(0.5 * params_[1] * d * d);
    df = f * (-params_[0] / x + params_[1] * d);
    return;
  }
  f = value(x);
  df = derivative(x);
}

double SpeedProfile::value(double x) const {
  switch (kind_) {
    case Kind::PowerExpPinned: {
      const double d = x - params_[2];
      return real_power(x, -params_[0]) * std::exp(0.5 * params_[1] * d * d);
    }
    case Kind::AffinePower: return real_power(params_[0] * x + params_[1], params_[2]);
    case Kind::Constant: return params_[0];
    case Kind::Tabulated:
      return gsl_spline_eval(spline_->spline, std::clamp(x, spline_->lo, spline_->hi), nullptr);
  }
  return 0.0;
}

double SpeedProfile::derivative(double x) const {
  switch (kind_) {
    case Kind::PowerExpPinned: return value(x) * (-params_[0] / x + params_[1] * (x - params_[2]));
    case Kind::AffinePower: {
      const auto& [a, b, q] = std::tie(params_[0], params_[1], params_[2]);
      return q * a * std::pow(a * x + b, q - 1.0);
    }
    case Kind::Constant: return 0.0;
    case Kind::Tabulated:
      return gsl_spline_eval_deriv(spline_->spline, std::clamp(x, spline_->lo, spline_->hi), nullptr);
  }
  return 0.0;
}

double SpeedProfile::second_derivative(double x) const {
  switch (kind_) {
    case Kind::PowerExpPinned: {
      const double p = params_[0];
      const double s = params_[1];
      const double l = -p / x + s * (x - params_[2]);
      return value(x) * (l * l + p / (x * x) + s);
    }
    case Kind::AffinePower: {
      const auto& [a, b, q] = std::tie(params_[0], params_[1], params_[2]);
      return q * (q - 1.0) * a * a * std::pow(a * x + b, q - 2.0);
    }
    case Kind::Constant: return 0.0;
    case Kind::Tabulated:
      return gsl_spline_eval_deriv2(spline_->spline, std::clamp(x, spline_->lo, spline_->hi), nullptr);
  }
  return 0.0;
}

void SpeedProfile::require_positive(double lo, double hi) const {
  for (int i = 0; i < kSamples; ++i) {
    const double x = lo + (hi - lo) * i / (kSamples - 1);
    const double v = value(x);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw AssumptionViolated("not-positive", x, x, kind_name() + " profile has f = " + std::to_string(v));
    }
  }
}

double SpeedProfile::derivative_mismatch(double lo, double hi) const {
  double worst = 0.0;
  const int m = 201;
  for (int i = 0; i < m; ++i) {
    const double x = lo + (hi - lo) * i / (m - 1);
    const double step = 1e-5 * std::max(1.0, std::abs(x));
    const double fd1 = (value(x + step) - value(x - step)) / (2.0 * step);
    const double fd2 = (derivative(x + step) - derivative(x - step)) / (2.0 * step);
    const double s1 = std::max({std::abs(derivative(x)), std::abs(value(x)), 1e-300});
    const double s2 = std::max({std::abs(second_derivative(x)), std::abs(value(x)), 1e-300});
    worst = std::max({worst, std::abs(fd1 - derivative(x)) / s1, std::abs(fd2 - second_derivative(x)) / s2});
  }
  return worst;
}

double fhat(const SpeedProfile& f, int n, double r) {
  return (n - 1) * f.value(r) / (r * r) + f.derivative(r) / r;
}

double fhat_derivative(const SpeedProfile& f, int n, double r) {
  const double v = f.value(r);
  const double d1 = f.derivative(r);
  const double d2 = f.second_derivative(r);
  return (n - 1) * (d1 / (r * r) - 2.0 * v / (r * r * r)) + d2 / r - d1 / (r * r);
}

double validate_assumption_1_5(const SpeedProfile& f, int n, double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("interval must satisfy 0 < lo < hi");
  f.require_positive(lo, hi);

  std::vector<double> x(kSamples), fh(kSamples), dfh(kSamples);
  double scale = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    x[i] = lo + (hi - lo) * i / (kSamples - 1);
    fh[i] = fhat(f, n, x[i]);
    dfh[i] = fhat_derivative(f, n, x[i]);
    scale = std::max(scale, (n - 1) * f.value(x[i]) / (x[i] * x[i]));
  }
  const double zero_tol = 1e-12 * scale;
  if (std::all_of(fh.begin(), fh.end(), [&](double v) { return std::abs(v) <= zero_tol; })) {
    throw AssumptionViolated("no-zero-crossing", lo, hi, "fhat vanishes identically");
  }
  for (int i = 0; i < kSamples; ++i) {
    if (!(dfh[i] > 0.0)) {
      const double a = x[static_cast<std::size_t>(std::max(0, i - 1))];
      const double b = x[static_cast<std::size_t>(std::min(kSamples - 1, i + 1))];
      throw AssumptionViolated("not-increasing", a, b, "dfhat/dr = " + std::to_string(dfh[i]));
    }
  }
  if (!(fh.front() < 0.0 && fh.back() > 0.0)) {
    throw AssumptionViolated("no-zero-crossing", lo, hi, "fhat does not change sign");
  }
  double a = lo;
  double b = hi;
  while (b - a > 1e-13) {
    const double mid = 0.5 * (a + b);
    if (fhat(f, n, mid) > 0.0) b = mid; else a = mid;
  }
  return 0.5 * (a + b);
}

Assumption110Report validate_assumption_1_10(const SpeedProfile& f, int n, int k, double lo, double hi) {
  if (k < 1 || k > n) throw std::invalid_argument("Assumption 1.10 needs 1 <= k <= n");
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("interval must satisfy 0 < lo < hi");
  f.require_positive(lo, hi);
  Assumption110Report rep;
  if (k == n) {
    rep.applicable = false;
    return rep;
  }
  const double e = static_cast<double>(n - k + 1) / (n - k);
  const double len = hi - lo;
  rep.min_g1 = rep.min_g2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    const double x = lo + len * i / (kSamples - 1);
    const double v = f.value(x);
    const double d1 = f.derivative(x);
    const double d2 = f.second_derivative(x);
    const double g = std::pow(v, e);
    const double g1 = e * std::pow(v, e - 1.0) * d1;
    const double g2 = e * std::pow(v, e - 2.0) * ((e - 1.0) * d1 * d1 + v * d2);
    rep.min_g1 = std::min(rep.min_g1, g1);
    if (g2 < rep.min_g2) {
      rep.min_g2 = g2;
      rep.worst_x = x;
    }
    if (g1 < -1e-9 * g / len) {
      rep.pass = false;
      throw AssumptionViolated("not-monotone", x, x, "g' = " + std::to_string(g1));
    }
    if (g2 < -1e-9 * g / (len * len)) {
      rep.pass = false;
      throw AssumptionViolated("not-convex", x, x, "g'' = " + std::to_string(g2));
    }
  }
  return rep;
}

}  // namespace curvelab
