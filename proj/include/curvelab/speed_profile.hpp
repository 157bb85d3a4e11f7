/// \file speed_profile.hpp
/// \brief The scalar function f driving the flows, f = f(r) for the radial
/// flow and f = f(h) for the support flow, with closed-form derivatives.

#ifndef CURVELAB_SPEED_PROFILE_HPP
#define CURVELAB_SPEED_PROFILE_HPP

#include <memory>
#include <string>
#include <vector>

namespace curvelab {

/// x^e with a multiplication fast path for small integer e.
double real_power(double x, double e);

class SpeedProfile {
 public:
  enum class Kind { PowerExpPinned, AffinePower, Constant, Tabulated };

  /// f = x^{-p} exp(s (x - x_star)^2 / 2).
  static SpeedProfile power_exp_pinned(double p, double s, double x_star);
  /// f = (a x + b)^q.
  static SpeedProfile affine_power(double a, double b, double q);
  static SpeedProfile constant(double c);
  /// Natural cubic spline through (x, f); x strictly increasing, >= 3 points.
  static SpeedProfile tabulated(std::vector<double> x, std::vector<double> f);

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  const std::vector<double>& parameters() const { return params_; }

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  /// f and f' with the shared transcendental work done once.
  void value_and_derivative(double x, double& f, double& df) const;

  /// Throws AssumptionViolated{not-positive} if f <= 0 somewhere on [lo, hi].
  void require_positive(double lo, double hi) const;
  /// Largest relative mismatch between the analytic derivatives and central
  /// differences on a uniform sample of [lo, hi].
  double derivative_mismatch(double lo, double hi) const;

 private:
  struct Spline;
  Kind kind_ = Kind::Constant;
  std::vector<double> params_;
  std::shared_ptr<const Spline> spline_;
};

/// fhat(r) = (n-1) f / r^2 + f' / r.
double fhat(const SpeedProfile& f, int n, double r);
double fhat_derivative(const SpeedProfile& f, int n, double r);

/// Checks that fhat is strictly increasing on [lo, hi] and changes sign;
/// returns its zero r_star to 1e-10. Throws AssumptionViolated with reason
/// "not-increasing" or "no-zero-crossing".
double validate_assumption_1_5(const SpeedProfile& f, int n, double lo, double hi);

struct Assumption110Report {
  bool applicable = true;  // false for k = n (exponent undefined)
  bool pass = true;
  double worst_x = 0.0;
  double min_g1 = 0.0;  // min of g'
  double min_g2 = 0.0;  // min of g''
};

/// g = f^{(n-k+1)/(n-k)} must have g' >= 0 and g'' >= 0 on [lo, hi].
/// Throws AssumptionViolated with reason "not-monotone" or "not-convex".
Assumption110Report validate_assumption_1_10(const SpeedProfile& f, int n, int k, double lo, double hi);

}  // namespace curvelab

#endif  // CURVELAB_SPEED_PROFILE_HPP
