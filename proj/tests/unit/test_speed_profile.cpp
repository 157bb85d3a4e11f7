#include "doctest.h"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "curvelab/errors.hpp"
#include "curvelab/speed_profile.hpp"

using namespace curvelab;

namespace {

std::string violation_reason(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const AssumptionViolated& e) {
    return e.reason();
  }
  return "none";
}

}  // namespace

TEST_CASE("closed-form values and derivatives") {
  const auto f = SpeedProfile::power_exp_pinned(1.0, 1.0, 1.0);
  for (double r : {0.5, 0.9, 1.0, 1.3, 1.8}) {
    const double want = std::exp(0.5 * (r - 1) * (r - 1)) / r;
    CHECK(f.value(r) == doctest::Approx(want).epsilon(1e-14));
    double v = 0.0, d = 0.0;
    f.value_and_derivative(r, v, d);
    CHECK(v == doctest::Approx(f.value(r)).epsilon(1e-14));
    CHECK(d == doctest::Approx(f.derivative(r)).epsilon(1e-14));
    // fhat = f (r - r*) / r for this family when p = n - 1
    CHECK(fhat(f, 2, r) == doctest::Approx(want * (r - 1) / r).epsilon(1e-12).scale(1.0));
  }
  const auto a = SpeedProfile::affine_power(2.0, 0.5, 0.75);
  CHECK(a.value(1.5) == doctest::Approx(std::pow(3.5, 0.75)));
  CHECK(a.derivative(1.5) == doctest::Approx(2 * 0.75 * std::pow(3.5, -0.25)));
  CHECK(SpeedProfile::constant(2.0).derivative(3.0) == 0.0);
}

TEST_CASE("derivatives agree with central differences") {
  const std::vector<SpeedProfile> profiles{
      SpeedProfile::power_exp_pinned(1.0, 1.0, 1.0), SpeedProfile::power_exp_pinned(2.0, 0.5, 1.2),
      SpeedProfile::affine_power(1.0, 0.3, 0.5), SpeedProfile::constant(3.0),
      SpeedProfile::tabulated({0.5, 0.8, 1.0, 1.3, 1.7, 2.0}, {2.0, 1.4, 1.1, 1.0, 1.05, 1.2})};
  for (const auto& f : profiles) CHECK(f.derivative_mismatch(0.6, 1.9) < 1e-6);
}

TEST_CASE("tabulated profile interpolates its knots") {
  const auto f = SpeedProfile::tabulated({1, 2, 3, 4}, {1, 4, 9, 16});
  CHECK(f.value(2.0) == doctest::Approx(4.0));
  CHECK(f.value(3.0) == doctest::Approx(9.0));
  CHECK_THROWS(SpeedProfile::tabulated({1, 1, 2}, {1, 1, 1}));
  CHECK_THROWS(SpeedProfile::tabulated({1, 2}, {1, 1}));
}

TEST_CASE("real_power") {
  for (double e : {-3.0, -1.0, 0.0, 1.0, 2.0, 5.0, 0.5, -1.5, 2.25})
    for (double x : {0.3, 1.0, 2.7}) CHECK(real_power(x, e) == doctest::Approx(std::pow(x, e)).epsilon(1e-14));
}

TEST_CASE("radial assumption validator") {
  const auto pinned = SpeedProfile::power_exp_pinned(1.0, 1.0, 1.0);
  CHECK(validate_assumption_1_5(pinned, 2, 0.5, 1.8) == doctest::Approx(1.0).epsilon(1e-10));
  const auto shifted = SpeedProfile::power_exp_pinned(2.0, 1.0, 1.25);
  CHECK(validate_assumption_1_5(shifted, 3, 0.6, 2.0) == doctest::Approx(1.25).epsilon(1e-10));
  CHECK(violation_reason([] { validate_assumption_1_5(SpeedProfile::constant(1.0), 2, 0.5, 2.0); }) ==
        "not-increasing");
  CHECK(violation_reason([] {
          validate_assumption_1_5(SpeedProfile::power_exp_pinned(1.0, 0.0, 1.0), 2, 0.5, 2.0);
        }) == "no-zero-crossing");
  // increasing but positive throughout the interval
  CHECK(violation_reason([&] { validate_assumption_1_5(pinned, 2, 1.2, 1.8); }) == "no-zero-crossing");
}

TEST_CASE("support assumption validator") {
  CHECK(validate_assumption_1_10(SpeedProfile::constant(2.0), 3, 1, 0.5, 2.0).pass);
  // f = (a h + b)^{(n-k)/(n-k+1)} makes g linear
  for (int k = 1; k <= 2; ++k) {
    const double q = double(3 - k) / (3 - k + 1);
    CHECK(validate_assumption_1_10(SpeedProfile::affine_power(1.5, 0.2, q), 3, k, 0.5, 2.0).pass);
  }
  CHECK(violation_reason([] {
          validate_assumption_1_10(SpeedProfile::power_exp_pinned(1.0, 0.0, 1.0), 3, 1, 0.5, 2.0);
        }) == "not-monotone");
  // f = h^{1/4}, n = 3, k = 1: g = h^{3/8}, increasing but concave
  CHECK(violation_reason([] {
          validate_assumption_1_10(SpeedProfile::affine_power(1.0, 0.0, 0.25), 3, 1, 0.5, 2.0);
        }) == "not-convex");
  const auto na = validate_assumption_1_10(SpeedProfile::constant(1.0), 2, 2, 0.5, 2.0);
  CHECK_FALSE(na.applicable);
}

TEST_CASE("positivity") {
  CHECK_NOTHROW(SpeedProfile::power_exp_pinned(1.0, 1.0, 1.0).require_positive(0.1, 5.0));
  CHECK(violation_reason([] { SpeedProfile::affine_power(1.0, -1.0, 1.0).require_positive(0.5, 2.0); }) ==
        "not-positive");
  CHECK_THROWS(SpeedProfile::constant(0.0));
}
