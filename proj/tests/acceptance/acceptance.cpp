// Acceptance runner. Each criterion prints its clauses and one PASS/FAIL line.
//   acceptance              run everything
//   acceptance --only AC-5  run one criterion

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "CLI11.hpp"

#include "curvelab/errors.hpp"
#include "curvelab/flows.hpp"
#include "curvelab/functionals.hpp"
#include "curvelab/geometry.hpp"
#include "curvelab/identities.hpp"
#include "curvelab/surfaces.hpp"
#include "curvelab/symfunc.hpp"

using namespace curvelab;
using std::numbers::pi;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string id) : id_(std::move(id)), start_(std::chrono::steady_clock::now()) {}

  void clause(const std::string& what, bool pass, const std::string& detail) {
    ok_ = ok_ && pass;
    std::printf("  %-4s %-58s %s\n", pass ? "ok" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
  }
  void note(const std::string& text) { std::printf("       %s\n", text.c_str()); }
  void runtime(double limit) {
    const double s = seconds();
    clause("runtime < " + fmt(limit) + " s", s < limit, fmt(s) + " s");
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  bool finish() const {
    std::printf("%s %s (%.1f s)\n\n", id_.c_str(), ok_ ? "PASS" : "FAIL", seconds());
    std::fflush(stdout);
    return ok_;
  }

  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
  }

 private:
  std::string id_;
  std::chrono::steady_clock::time_point start_;
  bool ok_ = true;
};

using F = Criterion;

// ---------- independent oracles ----------

double choose(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// E_k by enumerating every k-subset
double ek_brute(const std::vector<double>& x, int k) {
  const int n = static_cast<int>(x.size());
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  double s = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double p = 1.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) p *= x[static_cast<std::size_t>(i)];
    s += p;
  }
  return s / choose(n, k);
}

// spheroid with equatorial semi-axis a and polar semi-axis c, point at
// distance rho from the axis and height z along it
std::pair<double, double> spheroid_kappa(double a, double c, double rho, double z) {
  const double u = std::atan2(z / c, rho / a);
  const double q = a * a * std::sin(u) * std::sin(u) + c * c * std::cos(u) * std::cos(u);
  const double mer = a * c / std::pow(q, 1.5), par = c / (a * std::sqrt(q));
  return {std::min(mer, par), std::max(mer, par)};
}

// round-sphere radius under the radial flow: dr/dt = -(n/(n-1)) r fhat(r)
double sphere_ode(const SpeedProfile& f, int n, double r0, double t_end) {
  using namespace boost::numeric::odeint;
  double r = r0;
  auto rhs = [&](const double& x, double& dxdt, double) {
    dxdt = -(static_cast<double>(n) / (n - 1)) * x * fhat(f, n, x);
  };
  integrate_adaptive(make_controlled(1e-14, 1e-14, runge_kutta_dopri5<double>()), rhs, r, 0.0, t_end, 1e-4);
  return r;
}

// ---------- shared runs ----------

const SpeedProfile kPinned = SpeedProfile::power_exp_pinned(1.0, 1.0, 1.0);

ScalarField ac5_initial() {
  auto g = SphericalGrid::axisym(2, 256);
  return ScalarField::sample(g, [](double t, double) { return 1.0 + 0.2 * std::cos(2 * t); });
}

FlowConfig ac5_config() {
  FlowConfig c;
  c.kind = FlowKind::Radial;
  c.n = 2;
  c.cfl = 0.5;
  c.t_end = 40.0;
  c.output_stride = 20;
  c.r_star = 1.0;
  return c;
}

const FlowTrace& ac5_run() {
  static std::optional<FlowTrace> trace;
  if (!trace) trace = run_flow(ac5_initial(), kPinned, ac5_config());
  return *trace;
}

FlowConfig ac6_config(int k) {
  FlowConfig c;
  c.kind = FlowKind::Support;
  c.n = 2;
  c.k = k;
  c.cfl = 0.5;
  c.t_end = 40.0;
  c.output_stride = 20;
  return c;
}

// A static convex draw is attempted first; it cannot succeed (only centred
// spheres qualify), so the run proceeds from a convex draw of the same family.
ScalarField ac6_initial(Criterion* cr) {
  auto g = SphericalGrid::full_s2(64, 128);
  std::mt19937_64 rng(3);
  try {
    ScalarField h = random_support(g, 1.0, 0.1, SupportValidity::StaticConvex, rng);
    const double m = static_convexity(support_geometry(h)).margin;
    if (cr) cr->clause("initial data static convex (margin > 0)", m > 0, "margin " + F::fmt(m));
    return h;
  } catch (const InsufficientData&) {
    if (cr) {
      cr->clause("initial data static convex (margin > 0)", false, "no static convex draw in 100 tries");
      cr->note("a closed body has margin <= 0 at its point nearest the origin unless it is a");
      cr->note("centred sphere; continuing from a convex draw (amp 0.1, same seed family)");
    }
  }
  std::mt19937_64 rng2(3);
  return random_support(g, 1.0, 0.1, SupportValidity::Convex, rng2);
}

// ---------- criteria ----------

bool ac1() {
  Criterion cr("AC-1");
  auto g = SphericalGrid::full_s2(64, 128);
  const auto sph = radial_geometry(sphere_field(g, 1.0));
  double ek = 0.0, eh = 0.0;
  for (const auto& node : sph.nodes()) {
    ek = std::max({ek, std::abs(node.kappa[0] - 1), std::abs(node.kappa[1] - 1)});
    eh = std::max(eh, std::abs(node.mean_curvature - 2));
  }
  cr.clause("unit sphere max|kappa_i - 1| < 1e-8", ek < 1e-8, F::fmt(ek));
  cr.clause("unit sphere max|H - 2| < 1e-8", eh < 1e-8, F::fmt(eh));

  // long axis along x: rotate into the spheroid frame
  auto err = [](int nt) {
    auto grid = SphericalGrid::full_s2(nt, 2 * nt);
    const auto geom = radial_geometry(ellipsoid_radial(grid, {1.2, 1.0, 1.0}));
    double e = 0.0;
    for (const auto& node : geom.nodes()) {
      const auto [lo, hi] = spheroid_kappa(1.0, 1.2, std::hypot(node.position.y, node.position.z), node.position.x);
      e = std::max({e, std::abs(node.kappa[0] - lo) / lo, std::abs(node.kappa[1] - hi) / hi});
    }
    return e;
  };
  const double e64 = err(64);
  cr.clause("spheroid (1.2,1,1) 64x128 max rel error < 2e-3", e64 < 2e-3, F::fmt(e64));
  const double t64 = cr.seconds();
  const double e128 = err(128);
  const double order = std::log2(e64 / e128);
  cr.clause("order 64x128 -> 128x256 in 2.0 +- 0.3", std::abs(order - 2.0) <= 0.3,
            F::fmt(order) + " (128x256 error " + F::fmt(e128) + ")");
  cr.clause("runtime < 5 s (64x128 part)", t64 < 5.0, F::fmt(t64) + " s");
  return cr.finish();
}

bool ac2() {
  Criterion cr("AC-2");
  const IdentityBattery ib = run_identity_battery(1000, 2);
  cr.clause("trace identity dE_k : g = k E_{k-1}", ib.trace_residual < 1e-10, F::fmt(ib.trace_residual));
  cr.clause("linear identity dE_k : A = k E_k", ib.linear_residual < 1e-10, F::fmt(ib.linear_residual));
  cr.clause("square identity dE_k : A^2", ib.square_residual < 1e-10, F::fmt(ib.square_residual));

  // independent: eigenbasis gradient and E_k against subset enumeration
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> dim(2, 6);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const int n = dim(rng);
    const int k = std::uniform_int_distribution<int>(1, n)(rng);
    const SymMatrix a = random_cone_matrix(n, k, false, rng);
    const SmallVector ev = eigenvalues(a);
    std::vector<double> x(ev.view().begin(), ev.view().end());
    const double scale = std::max(1.0, std::abs(ek_brute(x, k)));
    worst = std::max(worst, std::abs(elementary_symmetric(a, k) - ek_brute(x, k)) / scale);
    const SmallVector grad = ek_gradient(CurvatureVector(x), k);
    for (int p = 0; p < n; ++p) {
      std::vector<double> rest = x;
      rest.erase(rest.begin() + p);
      const double want = ek_brute(rest, k - 1) * choose(n - 1, k - 1) / choose(n, k);
      worst = std::max(worst, std::abs(grad[p] - want) / std::max(1.0, std::abs(want)));
    }
  }
  cr.clause("E_k and dE_k/dkappa vs subset enumeration", worst < 1e-10, F::fmt(worst));
  cr.runtime(5.0);
  return cr.finish();
}

bool ac3() {
  Criterion cr("AC-3");
  const NewtonMaclaurinBattery nm = run_newton_maclaurin_battery(1000, 3);
  cr.clause("no gap below -1e-12", nm.violations == 0,
            std::to_string(nm.violations) + " violations over " + std::to_string(nm.pairs) + " pairs, min gap " +
                F::fmt(nm.min_gap));
  cr.clause("no equality on non-constant vectors", nm.false_equalities == 0, std::to_string(nm.false_equalities));
  cr.clause("equality detected on constant vectors", nm.missed_equalities == 0, std::to_string(nm.missed_equalities));

  // independent: the gap from subset enumeration on fresh draws
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  int bad = 0, pairs = 0;
  double mismatch = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const int n = 2 + s % 5;
    const bool constant = s % 10 == 0;
    std::vector<double> x(static_cast<std::size_t>(n));
    const double c = u(rng);
    for (double& v : x) v = constant ? c : u(rng);
    for (int k = 1; k <= n; ++k)
      for (int m = k; m <= n; ++m) {
        ++pairs;
        const double gap = ek_brute(x, k) * ek_brute(x, m) - ek_brute(x, m + 1) * ek_brute(x, k - 1);
        mismatch = std::max(mismatch, std::abs(gap - newton_maclaurin_gap(CurvatureVector(x), k, m)));
        if (gap < -1e-12) ++bad;
        if (m < n && (gap < 1e-12) != constant) ++bad;
      }
  }
  cr.clause("subset-enumeration gaps: sign and equality case", bad == 0,
            std::to_string(bad) + " bad of " + std::to_string(pairs));
  cr.clause("library gap matches enumeration", mismatch < 1e-12, F::fmt(mismatch));
  return cr.finish();
}

bool ac4() {
  Criterion cr("AC-4");
  const MinkowskiStudy mk = run_minkowski_study({1.2, 1.0, 1.0}, {{48, 96}, {96, 192}});
  for (std::size_t k = 1; k <= mk.order.size(); ++k) {
    const double r = mk.residual[0][k - 1];
    cr.clause("k=" + std::to_string(k) + " residual at 48x96 < 5e-3", r < 5e-3, F::fmt(r));
    cr.clause("k=" + std::to_string(k) + " observed order >= 1.7", mk.order[k - 1] >= 1.7,
              F::fmt(mk.order[k - 1]) + " (96x192 residual " + F::fmt(mk.residual[1][k - 1]) + ")");
  }
  return cr.finish();
}

bool ac5() {
  Criterion cr("AC-5");
  const FlowTrace& t = ac5_run();
  cr.clause("terminates Converged", t.status == FlowStatus::Converged,
            to_string(t.status) + " at t=" + F::fmt(t.t_final) + ", " + std::to_string(t.steps) + " steps");
  double dev = 1e300;
  if (t.final_state) {
    dev = 0.0;
    for (double r : t.final_state->values()) dev = std::max(dev, std::abs(r - 1.0));
  }
  cr.clause("|r_final - 1| < 2e-3 everywhere", dev < 2e-3, F::fmt(dev));
  int breaches = 0;
  for (std::size_t i = 1; i < t.records.size(); ++i)
    if (t.records[i].Q > t.records[i - 1].Q * (1 + 1e-8)) ++breaches;
  cr.clause("Q nonincreasing, zero breaches above 1e-8 Q", breaches == 0 && t.breach_count == 0,
            std::to_string(breaches) + " between records, " + std::to_string(t.breach_count) + " in steps");
  const double qf = t.records.back().Q;
  cr.clause("final Q within 0.5% of 4 pi", std::abs(qf / (4 * pi) - 1) < 5e-3,
            "Q = " + F::fmt(qf) + ", rel " + F::fmt(qf / (4 * pi) - 1));
  cr.runtime(60.0);
  return cr.finish();
}

bool ac6() {
  Criterion cr("AC-6");
  const ScalarField h0 = ac6_initial(&cr);
  for (int k = 1; k <= 2; ++k) {
    const std::string tag = "k=" + std::to_string(k) + " ";
    const auto start = std::chrono::steady_clock::now();
    const FlowTrace t = run_flow(h0, SpeedProfile::constant(1.0), ac6_config(k));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    cr.note(tag + "run: " + to_string(t.status) + " at t=" + F::fmt(t.t_final) + ", " + std::to_string(t.steps) +
            " steps, " + F::fmt(secs) + " s");
    const std::size_t q = static_cast<std::size_t>(k - 1);
    const double v0 = t.records.front().quermass[q];
    double drift = 0.0, margin = 1e300;
    int breaches = 0;
    for (std::size_t i = 0; i < t.records.size(); ++i) {
      drift = std::max(drift, std::abs(t.records[i].quermass[q] / v0 - 1));
      margin = std::min(margin, t.records[i].margin);
      if (i && t.records[i].monotone > t.records[i - 1].monotone * (1 + 1e-8)) ++breaches;
    }
    cr.clause(tag + "V_{k-1} relative drift < 1e-3", drift < 1e-3, F::fmt(drift));
    cr.clause(tag + "monotone integral nonincreasing", breaches == 0 && t.breach_count == 0,
              std::to_string(breaches) + " between records, " + std::to_string(t.breach_count) + " in steps");
    const TraceRecord& last = t.records.back();
    cr.clause(tag + "static convexity margin >= -1e-6 throughout", margin >= -1e-6,
              "min " + F::fmt(margin) + ", initial " + F::fmt(t.records.front().margin) + ", final " +
                  F::fmt(last.margin));
    cr.clause(tag + "Converged with osc < 1e-3", t.status == FlowStatus::Converged && last.r_oscillation < 1e-3,
              to_string(t.status) + ", osc " + F::fmt(last.r_oscillation));
    if (t.final_state) {
      const auto& g = t.final_state->grid();
      double mean = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) mean += g.weight(i) * (*t.final_state)[i];
      const double R = mean / SphericalGrid::sphere_area(2);
      const double want = ball_quermass(2, k - 1, R);
      const double rel = last.quermass[q] / want - 1;
      cr.clause(tag + "final V_{k-1} = z_{k-1}(R_final) within 0.5%", std::abs(rel) < 5e-3,
                "R " + F::fmt(R) + ", rel " + F::fmt(rel));
    } else {
      cr.clause(tag + "final V_{k-1} = z_{k-1}(R_final) within 0.5%", false, "no final state");
    }
  }
  cr.runtime(120.0);
  return cr.finish();
}

bool ac7() {
  Criterion cr("AC-7");
  auto g = SphericalGrid::full_s2(48, 96);
  struct Tally {
    double min_rel = 1e300;
    double worst_sph = 0.0;
    int near = 0;
    int errors = 0;
  };
  std::map<std::string, Tally> tally;
  for (int s = 0; s < 50; ++s) {
    std::seed_seq seq{7u, 0u, static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    const auto geom = radial_geometry(random_starshaped_radial(g, 1.0, 0.3, rng));
    const double sph = sphericity(geom);
    for (const char* name : {"f = 1", "f = pinned profile"}) {
      Tally& ty = tally[name];
      std::vector<double> fv(geom.size(), 1.0);
      if (name[4] == 'p')
        for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = kPinned.value(geom[i].radius);
      try {
        const DeficitReport d = michael_simon_deficit_H(geom, ScalarField(g, fv));
        ty.min_rel = std::min(ty.min_rel, d.relative);
        if (d.relative < 1e-4) {
          ++ty.near;
          ty.worst_sph = std::max(ty.worst_sph, sph);
        }
      } catch (const Error&) {
        ++ty.errors;
      }
    }
  }
  for (const auto& [name, ty] : tally) {
    cr.clause(name + ": every relative deficit >= -1e-3", ty.min_rel >= -1e-3 && ty.errors == 0,
              "min " + F::fmt(ty.min_rel) + (ty.errors ? ", " + std::to_string(ty.errors) + " errors" : ""));
    cr.clause(name + ": relative deficit < 1e-4 only when sphericity < 1e-2", ty.worst_sph < 1e-2,
              std::to_string(ty.near) + " such samples, max sphericity " + F::fmt(ty.worst_sph));
  }
  cr.note("with the |S^n|^{1/n} constant the inequality is violated at second order by");
  cr.note("non-constant densities: on the unit sphere, f = 1 + e cos(theta) gives deficit");
  cr.note("-e^2 2pi/3 + O(e^3); the variable-density clauses are expected to fail");
  cr.runtime(120.0);
  return cr.finish();
}

bool ac8() {
  Criterion cr("AC-8");
  auto g = SphericalGrid::axisym(3, 128);
  int generated = 0;
  double min_rel = 1e300;
  for (int s = 0; s < 50; ++s) {
    std::seed_seq seq{11u, 0u, static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    try {
      const auto geom = support_geometry(random_support(g, 1.0, 0.1, SupportValidity::StaticConvex, rng));
      ++generated;
      min_rel = std::min(min_rel, michael_simon_deficit_k(geom, ScalarField(g, 1.0), 2).relative);
    } catch (const InsufficientData&) {
    }
  }
  cr.clause("50 static convex bodies generated", generated == 50, std::to_string(generated) + " of 50");
  cr.clause("every relative deficit >= -1e-3", generated > 0 && min_rel >= -1e-3,
            generated ? "min " + F::fmt(min_rel) : "no samples to evaluate");
  if (generated == 0) {
    cr.note("only centred spheres are static convex, so no perturbed sample can be drawn;");
    double conv = 1e300;
    for (int s = 0; s < 50; ++s) {
      std::seed_seq seq{11u, 0u, static_cast<std::uint32_t>(s)};
      std::mt19937_64 rng(seq);
      const auto geom = support_geometry(random_support(g, 1.0, 0.1, SupportValidity::Convex, rng));
      conv = std::min(conv, michael_simon_deficit_k(geom, ScalarField(g, 1.0), 2).relative);
    }
    cr.note("for reference, 50 convex draws of the same family give min relative deficit " + F::fmt(conv));
  }
  const auto unit = michael_simon_deficit_k(support_geometry(sphere_field(g, 1.0)), ScalarField(g, 1.0), 2);
  cr.clause("unit sphere |deficit| < 1e-10", std::abs(unit.deficit) < 1e-10, F::fmt(unit.deficit));
  return cr.finish();
}

bool ac9() {
  Criterion cr("AC-9");
  const FlowTrace& t = ac5_run();
  try {
    const DecayFit fit = estimate_decay_rate(t);
    cr.clause("gamma > 0", fit.gamma > 0, F::fmt(fit.gamma));
    cr.clause("R^2 > 0.95", fit.r_squared > 0.95, F::fmt(fit.r_squared) + " over " + std::to_string(fit.samples) + " samples");
  } catch (const InsufficientData& e) {
    cr.clause("decay fit available", false, e.what());
  }
  return cr.finish();
}

// one-sided three-point difference of the area against the integral H Phi
double area_rate_mismatch(FlowIntegrator integ, double* fd_out, double* exact_out) {
  const double delta = integ.stable_dt() / 10;
  const double exact = integ.area_rate();
  double a[3];
  a[0] = integ.geometry().area();
  for (int i = 1; i <= 2; ++i) {
    integ.step(delta);
    a[i] = integ.geometry().area();
  }
  const double fd = (-3 * a[0] + 4 * a[1] - a[2]) / (2 * delta);
  *fd_out = fd;
  *exact_out = exact;
  return std::abs(fd - exact) / std::abs(exact);
}

ScalarField convex_draw(int nt) {
  std::mt19937_64 rng(3);
  return random_support(SphericalGrid::full_s2(nt, 2 * nt), 1.0, 0.1, SupportValidity::Convex, rng);
}

bool ac10() {
  Criterion cr("AC-10");
  double fd = 0.0, exact = 0.0;
  const double r5 = area_rate_mismatch(FlowIntegrator(ac5_initial(), kPinned, ac5_config()), &fd, &exact);
  cr.clause("radial (AC-5 start): FD vs integral within 1%", r5 < 1e-2,
            "fd " + F::fmt(fd) + ", integral " + F::fmt(exact) + ", rel " + F::fmt(r5));
  // k = 1: for k = 2 the area is the preserved quantity and the rate vanishes identically
  const auto one = SpeedProfile::constant(1.0);
  const double r6 = area_rate_mismatch(FlowIntegrator(ac6_initial(nullptr), one, ac6_config(1)), &fd, &exact);
  cr.clause("support k=1 (AC-6 start): FD vs integral within 1%", r6 < 1e-2,
            "fd " + F::fmt(fd) + ", integral " + F::fmt(exact) + ", rel " + F::fmt(r6));
  if (r6 >= 1e-2) {
    std::ostringstream os;
    os << "same draw refined:";
    for (int nt : {32, 64, 128}) {
      FlowConfig c = ac6_config(1);
      os << " " << nt << "x" << 2 * nt << " rel " << F::fmt(area_rate_mismatch(FlowIntegrator(convex_draw(nt), one, c), &fd, &exact));
    }
    cr.note(os.str());
    cr.note("second-order truncation of the discrete area against the curvature integral; the");
    cr.note("rate itself is a small residual (the flow preserves volume), which amplifies it");
  }
  area_rate_mismatch(FlowIntegrator(ac6_initial(nullptr), one, ac6_config(2)), &fd, &exact);
  cr.note("k=2 for reference: integral " + F::fmt(exact) + " (zero by the Minkowski identity), fd " + F::fmt(fd));
  return cr.finish();
}

bool ac11() {
  Criterion cr("AC-11");
  auto g = SphericalGrid::axisym(2, 8);
  const double want = sphere_ode(kPinned, 2, 1.5, 1.0);
  std::vector<double> err;
  for (double dt : {0.1, 0.05, 0.025}) {
    FlowConfig c;
    c.kind = FlowKind::Radial;
    c.n = 2;
    c.t_end = 1.0;
    c.fixed_dt = dt;
    c.fhat_threshold = 1e-300;
    c.grad_threshold = 1e-300;
    const FlowTrace t = run_flow(sphere_field(g, 1.5), kPinned, c);
    err.push_back(std::abs((*t.final_state)[0] - want));
  }
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double ratio = err[i] / err[i + 1];
    cr.clause("error ratio dt=" + F::fmt(0.1 / (1 << i)) + " -> " + F::fmt(0.05 / (1 << i)) + " in [12, 20]",
              ratio >= 12 && ratio <= 20, F::fmt(ratio) + " (errors " + F::fmt(err[i]) + ", " + F::fmt(err[i + 1]) + ")");
  }
  return cr.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string only;
  app.add_option("--only", only, "run a single criterion, e.g. AC-5");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<bool()>>> all{
      {"AC-1", ac1}, {"AC-2", ac2}, {"AC-3", ac3}, {"AC-4", ac4},  {"AC-5", ac5},  {"AC-6", ac6},
      {"AC-7", ac7}, {"AC-8", ac8}, {"AC-9", ac9}, {"AC-10", ac10}, {"AC-11", ac11}};
  std::vector<std::pair<std::string, bool>> results;
  for (const auto& [id, fn] : all) {
    if (!only.empty() && only != id) continue;
    std::printf("%s\n", id.c_str());
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      std::printf("  FAIL unexpected exception: %s\n%s FAIL\n\n", e.what(), id.c_str());
    }
    results.emplace_back(id, ok);
  }
  if (results.empty()) {
    std::fprintf(stderr, "unknown criterion %s\n", only.c_str());
    return 2;
  }
  if (results.size() > 1) {
    std::printf("summary\n");
    for (const auto& [id, ok] : results) std::printf("  %-6s %s\n", id.c_str(), ok ? "PASS" : "FAIL");
  }
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.second; }) ? 0 : 1;
}
