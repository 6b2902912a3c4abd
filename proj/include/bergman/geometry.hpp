#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "bergman/annulus.hpp"
#include "bergman/series.hpp"

namespace bergman {

/// Result of mapping (annulus, point) onto the canonical ring at 1 by
/// translation, rotation and dilation: J_ann(z) = scale^(-2(j+1)) J_canon(1).
struct CanonicalPoint {
  CanonicalGeometry geometry;
  double log_scale = 0.0;  ///< log |z - center|

  double alpha() const { return geometry.alpha(); }
  double L() const { return geometry.L(); }
  double scale() const;
};

/// Throws OutOfDomainError naming the violated inequality.
CanonicalPoint normalize(const Annulus& ann, std::complex<double> z);
/// Same, with the point given by log |z - center| (rotation is irrelevant).
CanonicalPoint normalize_radial(const Annulus& ann, double log_distance);

struct BergmanEval {
  JTriple j;                ///< J^(0..2) at the query point
  double kernel = 0.0;      ///< K(z, z) = j0
  double metric_sq = 0.0;   ///< j1 / j0
  double curvature = 0.0;   ///< 2 - defect
  double defect = 0.0;      ///< j0 j2 / j1^2
  JTriple canonical;        ///< the same triple at the canonical point 1
  double log_scale = 0.0;
  double alpha = 0.0;
  double L = 0.0;
  std::size_t terms_used = 0;
};

/// Fill the derived fields from a triple given at the query point.
BergmanEval derive_eval(const JTriple& j);

/// At extreme scales j, kernel and metric_sq may overflow; curvature and
/// defect are computed from the canonical triple and never do.
BergmanEval bergman_eval(const Annulus& ann, std::complex<double> z,
                         const Truncation& trunc = {});
BergmanEval bergman_eval_radial(const Annulus& ann, double log_distance,
                                const Truncation& trunc = {});
BergmanEval bergman_eval_canonical(const CanonicalPoint& p,
                                   const Truncation& trunc = {});
/// P(r, 1) at the point r^alpha with r = exp(-L).
BergmanEval bergman_eval_power_point(double L, double alpha,
                                     const Truncation& trunc = {});

struct MonotonicityReport {
  std::array<double, 3> smaller_domain{};  ///< J^(j) on P(q1, 1)
  std::array<double, 3> larger_domain{};   ///< J^(j) on P(q2, 1)
  std::array<bool, 3> holds{};
  bool ok = false;
};

/// Checks J_{P(q1,1)}(z) >= J_{P(q2,1)}(z) for q1 >= q2, with 1e-12 relative
/// slack.
MonotonicityReport inclusion_monotonicity_check(double q1, double q2,
                                                std::complex<double> z,
                                                const Truncation& trunc = {});

enum class ExhaustionMode {
  Increasing,   ///< q_nu = q (1 + 2^-nu), nested increasing domains
  Oscillating,  ///< q_nu = q (1 + (-1)^nu 2^-nu), a general exhaustion
  Constant,     ///< q_nu = q
};

struct ExhaustionRow {
  int nu = 0;
  double q = 0.0;
  std::array<double, 3> rel_error{};
};

struct ExhaustionStudy {
  std::vector<ExhaustionRow> rows;
  std::array<double, 3> target{};
  /// Along nested increasing domains the J^(j) must not increase.
  bool monotone = true;
  /// Last row within 1e-8 relative for all three j.
  bool converged = false;
};

/// Exercises convergence of J^(j)_{P(q_nu,1)}(z) to J^(j)_{P(q,1)}(z).
/// Throws OutOfDomainError if some P(q_nu, 1) does not contain z.
ExhaustionStudy prop1_exhaustion_study(ExhaustionMode mode, double q,
                                       std::complex<double> z, int steps = 40,
                                       const Truncation& trunc = {});

}  // namespace bergman
