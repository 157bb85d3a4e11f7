/// \file flows.hpp
/// \brief Explicit time integration of the radial-graph flow
///   r_t = -(f H + n/(n-1) f_r v) v,  v = sqrt(1 + |grad log r|^2)
/// and the support-function flow
///   h_t = 1 - h E_k / E_{k-1}.

#ifndef CURVELAB_FLOWS_HPP
#define CURVELAB_FLOWS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/geometry.hpp"
#include "curvelab/speed_profile.hpp"
#include "curvelab/sphere_grid.hpp"

namespace curvelab {

enum class FlowKind { Radial, Support };

struct FlowConfig {
  FlowKind kind = FlowKind::Radial;
  int n = 2;
  int k = 1;
  double cfl = 0.2;
  double t_end = 20.0;
  double grad_threshold = 1e-5;   // radial: max |grad r|
  double fhat_threshold = 1e-6;   // radial: |fhat(r_avg)|
  double osc_threshold = 1e-4;    // support: (h_max - h_min) / h_avg
  int output_stride = 10;         // record every this many accepted steps
  double mono_rel_tol = 1e-8;
  double dt_min = 1e-12;
  int max_halvings = 40;
  int breach_retries = 3;
  long max_steps = 50'000'000;
  std::optional<double> fixed_dt;
  std::optional<double> r_star;   // enables the radial C0-bound monitor
  bool polar_filter = true;       // full-S^2 only

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct TraceRecord {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double Q = 0.0;         // integral of f^{n/(n-1)} (radial) or NaN
  double monotone = 0.0;  // Q (radial) or integral sigma_{k-1} g(f(h)) (support)
  std::vector<double> quermass;  // V_0 .. V_n
  double grad_max = 0.0;  // max |grad r| (radial) or max |grad h| (support)
  double h_oscillation = 0.0;
  double r_oscillation = 0.0;  // (|X|_max - |X|_min) / |X|_avg
  double margin = 0.0;
  double sphericity = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  double area = 0.0;
  double volume = 0.0;
};

struct FlowEvent {
  double t = 0.0;
  std::string kind;
  std::string detail;
  double value = 0.0;
};

enum class FlowStatus { Converged, TimeExhausted, Error };
std::string to_string(FlowStatus s);

struct FlowTrace {
  std::vector<TraceRecord> records;
  std::vector<FlowEvent> events;
  FlowStatus status = FlowStatus::TimeExhausted;
  std::string error_kind;
  std::string error_message;
  double t_final = 0.0;
  long steps = 0;
  int breach_count = 0;
  double max_breach = 0.0;  // largest relative increase of the monotone quantity
  std::optional<ScalarField> final_state;
};

/// Right-hand side of the radial flow per node.
ScalarField radial_flow_speed(const ScalarField& r, const CurvatureField& geom,
                              const SpeedProfile& f, int n);

/// 1 - h F(kappa) per node. Throws ConeViolation outside Gamma_k^+.
ScalarField support_flow_speed(const ScalarField& h, const CurvatureField& geom, int k);

/// Integral of f^{n/(n-1)} with f evaluated at |X|.
double radial_monotone_quantity(const CurvatureField& geom, const SpeedProfile& f);
/// Integral of sigma_{k-1} g with g = f(h)^{(n-k+1)/(n-k)}, g = 1 when k = n.
double support_monotone_quantity(const CurvatureField& geom, const SpeedProfile& f, int k);

/// Owns the evolving field; one RK4 step at a time.
class FlowIntegrator {
 public:
  FlowIntegrator(ScalarField initial, SpeedProfile profile, FlowConfig config);
  ~FlowIntegrator();
  FlowIntegrator(FlowIntegrator&&) noexcept;

  const ScalarField& state() const { return state_; }
  double time() const { return t_; }
  /// Full geometry of the current state, built on first use.
  const CurvatureField& geometry() const;
  /// Time derivative of the state (filtered on full-S^2 grids).
  const ScalarField& rate() const { return *rate_; }
  /// Normal speed Phi of the current state.
  ScalarField normal_speed() const;
  /// Explicit-stability time step of the current state at the configured cfl.
  double stable_dt() const;
  /// One RK4 step; on error the state is left unchanged.
  void step(double dt);
  /// Replace the state (geometry and rate are rebuilt).
  void reset(ScalarField state, double t);

  /// d(area)/dt = integral H Phi d mu of the current state.
  double area_rate() const;
  /// Exact dQ/dt of the radial flow at the current state.
  double q_rate() const;
  double monotone() const;
  TraceRecord diagnostics(long step, double dt) const;

 private:
  struct Tendency;
  /// With `full`, also the monotone integral and the stability coefficient.
  Tendency evaluate(const ScalarField& u, bool full) const;
  void adopt(ScalarField state, double t, Tendency&& tendency);

  ScalarField state_;
  SpeedProfile profile_;
  FlowConfig config_;
  double t_ = 0.0;
  double monotone_ = 0.0;
  double diffusion_max_ = 0.0;  // support flow: max h dF/dkappa_i kappa_i^2
  mutable std::unique_ptr<CurvatureField> geom_;
  std::unique_ptr<ScalarField> rate_;
  std::unique_ptr<PolarFilter> filter_;
};

/// Adaptive RK4 run to convergence or t_end. Domain errors end the run with
/// status Error; the partial trace is kept.
FlowTrace run_flow(const ScalarField& initial, const SpeedProfile& profile, const FlowConfig& config);

struct DecayFit {
  double gamma = 0.0;
  double r_squared = 0.0;
  int samples = 0;
};

/// Least-squares fit of log(grad_max) against t over the final half of the
/// run. Throws InsufficientData with fewer than 10 usable samples.
DecayFit estimate_decay_rate(const FlowTrace& trace);

}  // namespace curvelab

#endif  // CURVELAB_FLOWS_HPP
