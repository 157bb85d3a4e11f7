#ifndef CURVELAB_ERRORS_HPP
#define CURVELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace curvelab {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define CURVELAB_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

CURVELAB_DEFINE_ERROR(ConeViolation);
CURVELAB_DEFINE_ERROR(NotStarshaped);
CURVELAB_DEFINE_ERROR(DegenerateMetric);
CURVELAB_DEFINE_ERROR(ConvexityLost);
CURVELAB_DEFINE_ERROR(NonpositiveSupport);
CURVELAB_DEFINE_ERROR(ZeroMeanCurvature);
CURVELAB_DEFINE_ERROR(NonpositiveDensity);
CURVELAB_DEFINE_ERROR(StepCollapse);
CURVELAB_DEFINE_ERROR(InsufficientData);
CURVELAB_DEFINE_ERROR(ConfigError);

#undef CURVELAB_DEFINE_ERROR

/// Raised by the speed-profile validators; `reason` is a short tag such as
/// "not-increasing", "no-zero-crossing", "not-monotone", "not-convex".
class AssumptionViolated : public Error {
 public:
  AssumptionViolated(std::string reason, double lo, double hi, const std::string& what)
      : Error("AssumptionViolated", reason + " on [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]: " + what),
        reason_(std::move(reason)),
        lo_(lo),
        hi_(hi) {}
  const std::string& reason() const { return reason_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  std::string reason_;
  double lo_;
  double hi_;
};

}  // namespace curvelab

#endif  // CURVELAB_ERRORS_HPP
