#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "bergman/annulus.hpp"
#include "bergman/series.hpp"

namespace bergman {

/// Closed disk of radius theta^(2n) centered at theta^n on the positive axis.
/// Lengths are carried as logs; plain values underflow past n ~ 540 at
/// theta = 1/2.
struct Hole {
  double log_center = 0.0;
  double log_radius = 0.0;
  int n = 0;

  static Hole from_theta(double theta, int n);
  double center() const;  ///< may underflow to 0
  double radius() const;
};

struct CurvatureInterval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Curvature bounds valid for every domain D with
/// P(c, rho, exp(log_outer)) inside D inside P(c, rho, 1), evaluated at distance
/// exp(log_distance) from the hole center c.
struct Sandwich {
  CurvatureInterval interval;
  JTriple small_canonical;  ///< J of P(c, rho, outer), canonical point
  JTriple large_canonical;  ///< J of P(c, rho, 1), canonical point
  double small_curvature = 0.0;
  double large_curvature = 0.0;
};

/// Throws OutOfDomainError unless rho < |z - c| < outer and DomainError
/// unless outer <= 1.
Sandwich sandwich_bounds(const Hole& hole, double log_outer, double log_distance,
                         const Truncation& trunc = {});
CurvatureInterval sandwich_curvature_bounds(const Hole& hole, double log_outer,
                                            double log_distance,
                                            const Truncation& trunc = {});

struct RatioReport {
  double L = 0.0, s = 0.0, alpha = 0.0, eps = 0.0;
  std::array<double, 3> ratios{};        ///< via the rescaling identity
  std::array<double, 3> direct_ratios{};  ///< P(r, s) evaluated as given
  double upper = 0.0;                     ///< r^-eps
  std::array<bool, 3> lower_ok{};
  std::array<bool, 3> upper_ok{};
  double route_discrepancy = 0.0;         ///< max relative gap between routes
  bool pass = false;
};

/// J^(j) of P(r, s) over P(r, 1) at r^alpha, r = exp(-L). Throws DomainError
/// for s outside (0, 1), r >= s, alpha outside (0, 1) or eps <= 0.
RatioReport ratio_bound_check(double L, double s, double alpha, double eps,
                              const Truncation& trunc = {});

/// Point exponents relative to the hole radius: |x - c| = rho^kXAlpha.
inline constexpr double kXAlpha = 0.75;
inline constexpr double kYAlpha = 0.5;

struct ZalcmanStage {
  Hole hole;
  double log_x = 0.0;            ///< x on the positive axis
  double log_y = 0.0;
  double log_clearance = 0.0;    ///< hole-free origin-centered radius r_k
  double log_small_outer = 0.0;  ///< r_k - center, outer radius of the inner sandwich
  CurvatureInterval x_cert;
  CurvatureInterval y_cert;
  double x_small = 0.0, x_large = 0.0;  ///< direct curvatures of both sandwich annuli
  double y_small = 0.0, y_large = 0.0;
};

struct ZalcmanDomain {
  double theta = 0.5;
  double slack = 0.0;
  std::string assumption = "finite-stage certificates only; Prop-1 limit step assumed";
  std::vector<ZalcmanStage> stages;
};

struct ConstructOptions {
  int ceiling = 2000;
  Truncation trunc{};
};

/// Deterministic hole schedule with per-stage sandwich certificates.
/// Throws DomainError on bad arguments and ConstructionError when a stage
/// exhausts the ceiling.
ZalcmanDomain construct(double theta, int K, double slack,
                        const ConstructOptions& opts = {});

struct GeometryReport {
  bool geometry_ok = true;
  bool certificates_ok = true;
  bool ok() const { return geometry_ok && certificates_ok; }
  std::string first_violation;
};

/// Re-checks every invariant in log arithmetic; the certificate check reads
/// the stored intervals.
GeometryReport validate_geometry(const ZalcmanDomain& dom);

/// Serialization with 17 significant digits; stable key order.
std::string to_json(const ZalcmanDomain& dom);
/// Throws DomainError on malformed input.
ZalcmanDomain from_json(const std::string& text);

/// log(exp(a) + exp(b)) and log(exp(a) - exp(b)) for a > b.
double log_add(double a, double b);
double log_sub(double a, double b);

}  // namespace bergman
