#include "bergman/geometry.hpp"

#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

double CanonicalPoint::scale() const { return std::exp(log_scale); }

CanonicalPoint normalize_radial(const Annulus& ann, double log_distance) {
  if (std::isnan(log_distance)) {
    throw OutOfDomainError("point distance is not a number");
  }
  if (!(log_distance > ann.log_inner())) {
    std::ostringstream os;
    os << "point is not inside the ring: |z - c| = " << std::exp(log_distance)
       << " fails r < |z - c| with r = " << std::exp(ann.log_inner());
    throw OutOfDomainError(os.str());
  }
  if (!(log_distance < ann.log_outer())) {
    std::ostringstream os;
    os << "point is not inside the ring: |z - c| = " << std::exp(log_distance)
       << " fails |z - c| < R with R = " << std::exp(ann.log_outer());
    throw OutOfDomainError(os.str());
  }
  CanonicalPoint p;
  p.geometry.outer_gap = ann.log_outer() - log_distance;
  p.geometry.inner_gap = log_distance - ann.log_inner();
  p.log_scale = log_distance;
  return p;
}

CanonicalPoint normalize(const Annulus& ann, std::complex<double> z) {
  const double d = std::abs(z - ann.center());
  if (!(d > 0.0)) {
    throw OutOfDomainError("point coincides with the annulus center");
  }
  return normalize_radial(ann, std::log(d));
}

BergmanEval derive_eval(const JTriple& j) {
  BergmanEval e;
  e.j = j;
  e.canonical = j;
  e.kernel = j.j0;
  e.metric_sq = j.j1 / j.j0;
  e.defect = (j.j0 / j.j1) * (j.j2 / j.j1);
  e.curvature = 2.0 - e.defect;
  return e;
}

BergmanEval bergman_eval_canonical(const CanonicalPoint& p,
                                   const Truncation& trunc) {
  const CanonicalEvaluation c = evaluate_canonical(p.geometry, trunc);
  BergmanEval e;
  e.canonical = c.j;
  e.log_scale = p.log_scale;
  e.alpha = p.alpha();
  e.L = p.L();
  e.terms_used = c.table.terms_used;
  const double s = p.log_scale;
  e.j.j0 = c.j.j0 * std::exp(-2.0 * s);
  e.j.j1 = c.j.j1 * std::exp(-4.0 * s);
  e.j.j2 = c.j.j2 * std::exp(-6.0 * s);
  e.kernel = e.j.j0;
  e.metric_sq = (c.j.j1 / c.j.j0) * std::exp(-2.0 * s);
  e.defect = c.defect;
  e.curvature = 2.0 - c.defect;
  return e;
}

BergmanEval bergman_eval(const Annulus& ann, std::complex<double> z,
                         const Truncation& trunc) {
  return bergman_eval_canonical(normalize(ann, z), trunc);
}

BergmanEval bergman_eval_radial(const Annulus& ann, double log_distance,
                                const Truncation& trunc) {
  return bergman_eval_canonical(normalize_radial(ann, log_distance), trunc);
}

BergmanEval bergman_eval_power_point(double L, double alpha,
                                     const Truncation& trunc) {
  CanonicalPoint p;
  p.geometry = CanonicalGeometry::from_alpha(alpha, L);
  p.log_scale = -p.geometry.outer_gap;
  return bergman_eval_canonical(p, trunc);
}

MonotonicityReport inclusion_monotonicity_check(double q1, double q2,
                                                std::complex<double> z,
                                                const Truncation& trunc) {
  if (!(q1 >= q2) || !(q2 > 0.0) || !(q1 < 1.0)) {
    throw DomainError("inclusion check requires 0 < q2 <= q1 < 1");
  }
  const auto small = bergman_eval(Annulus::from_radii(0.0, q1, 1.0), z, trunc);
  const auto large = bergman_eval(Annulus::from_radii(0.0, q2, 1.0), z, trunc);
  MonotonicityReport rep;
  rep.smaller_domain = {small.j.j0, small.j.j1, small.j.j2};
  rep.larger_domain = {large.j.j0, large.j.j1, large.j.j2};
  rep.ok = true;
  for (std::size_t i = 0; i < 3; ++i) {
    rep.holds[i] =
        rep.smaller_domain[i] >= rep.larger_domain[i] * (1.0 - 1e-12);
    rep.ok = rep.ok && rep.holds[i];
  }
  return rep;
}

ExhaustionStudy prop1_exhaustion_study(ExhaustionMode mode, double q,
                                       std::complex<double> z, int steps,
                                       const Truncation& trunc) {
  if (!(q > 0.0 && q < 1.0) || steps < 1) {
    throw DomainError("exhaustion study requires q in (0,1) and steps >= 1");
  }
  const auto target = bergman_eval(Annulus::from_radii(0.0, q, 1.0), z, trunc);
  ExhaustionStudy study;
  study.target = {target.j.j0, target.j.j1, target.j.j2};

  std::array<double, 3> previous{};
  for (int nu = 1; nu <= steps; ++nu) {
    const double h = std::ldexp(1.0, -nu);
    double q_nu = q;
    switch (mode) {
      case ExhaustionMode::Increasing: q_nu = q * (1.0 + h); break;
      case ExhaustionMode::Oscillating:
        q_nu = q * (1.0 + ((nu % 2 == 0) ? h : -h));
        break;
      case ExhaustionMode::Constant: break;
    }
    const auto e = bergman_eval(Annulus::from_radii(0.0, q_nu, 1.0), z, trunc);
    const std::array<double, 3> value{e.j.j0, e.j.j1, e.j.j2};
    ExhaustionRow row;
    row.nu = nu;
    row.q = q_nu;
    for (std::size_t i = 0; i < 3; ++i) {
      row.rel_error[i] = std::fabs(value[i] - study.target[i]) / study.target[i];
      if (mode == ExhaustionMode::Increasing && nu > 1 &&
          value[i] > previous[i] * (1.0 + 1e-12)) {
        study.monotone = false;
      }
    }
    previous = value;
    study.rows.push_back(row);
  }
  const auto& last = study.rows.back().rel_error;
  study.converged = last[0] <= 1e-8 && last[1] <= 1e-8 && last[2] <= 1e-8;
  return study;
}

}  // namespace bergman
