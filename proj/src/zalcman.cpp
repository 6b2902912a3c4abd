#include "bergman/zalcman.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double log_sub(double a, double b) {
  if (!(a > b)) return -std::numeric_limits<double>::infinity();
  return a + std::log1p(-std::exp(b - a));
}

Hole Hole::from_theta(double theta, int n) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0, 1)");
  if (n < 1) throw DomainError("hole index n must be positive");
  Hole h;
  h.n = n;
  h.log_center = n * std::log(theta);
  h.log_radius = 2.0 * n * std::log(theta);
  return h;
}

double Hole::center() const { return std::exp(log_center); }
double Hole::radius() const { return std::exp(log_radius); }

Sandwich sandwich_bounds(const Hole& hole, double log_outer, double log_distance,
                         const Truncation& trunc) {
  if (!(log_outer <= 0.0)) throw DomainError("sandwich outer radius must be <= 1");
  const Annulus small = Annulus::from_logs(0.0, hole.log_radius, log_outer);
  const Annulus large = Annulus::from_logs(0.0, hole.log_radius, 0.0);
  const BergmanEval s = bergman_eval_radial(small, log_distance, trunc);
  const BergmanEval l = bergman_eval_radial(large, log_distance, trunc);
  // Both annuli share the center and the point, so the scale factors cancel
  // and the canonical triples can be combined directly.
  const JTriple& hi_j = s.canonical;
  const JTriple& lo_j = l.canonical;
  Sandwich out;
  out.small_canonical = hi_j;
  out.large_canonical = lo_j;
  out.small_curvature = s.curvature;
  out.large_curvature = l.curvature;
  out.interval.lo = 2.0 - (hi_j.j0 / lo_j.j1) * (hi_j.j2 / lo_j.j1);
  out.interval.hi = 2.0 - (lo_j.j0 / hi_j.j1) * (lo_j.j2 / hi_j.j1);
  return out;
}

CurvatureInterval sandwich_curvature_bounds(const Hole& hole, double log_outer,
                                            double log_distance,
                                            const Truncation& trunc) {
  return sandwich_bounds(hole, log_outer, log_distance, trunc).interval;
}

RatioReport ratio_bound_check(double L, double s, double alpha, double eps,
                              const Truncation& trunc) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0, 1)");
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("L must be positive and finite");
  if (!(-L < std::log(s))) throw DomainError("ratio check needs r < s");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const double log_s = std::log(s);
  const double log_point = -alpha * L;
  if (!(log_point < log_s)) throw OutOfDomainError("r^alpha is not inside P(r, s)");

  RatioReport rep;
  rep.L = L;
  rep.s = s;
  rep.alpha = alpha;
  rep.eps = eps;
  rep.upper = std::exp(eps * L);

  const BergmanEval large = bergman_eval_radial(Annulus::from_logs(0.0, -L, 0.0), log_point, trunc);
  const BergmanEval direct = bergman_eval_radial(Annulus::from_logs(0.0, -L, log_s), log_point, trunc);
  // P(r/s, 1) at r^alpha / s, then the s^-2(j+1) factor.
  const BergmanEval scaled =
      bergman_eval_radial(Annulus::from_logs(0.0, -L - log_s, 0.0), log_point - log_s, trunc);
  const double lc[3] = {large.canonical.j0, large.canonical.j1, large.canonical.j2};
  const double dc[3] = {direct.canonical.j0, direct.canonical.j1, direct.canonical.j2};
  const double sc[3] = {scaled.canonical.j0, scaled.canonical.j1, scaled.canonical.j2};
  rep.pass = true;
  for (int j = 0; j < 3; ++j) {
    // J = canonical * |z|^-2(j+1); the rescaled point sits at r^alpha / s and
    // the identity multiplies by s^-2(j+1), so all length factors cancel
    // against those of P(r, 1) at r^alpha.
    const double log_factor = -2.0 * (j + 1) * ((log_point - log_s) + log_s - log_point);
    rep.ratios[j] = sc[j] * std::exp(log_factor) / lc[j];
    rep.direct_ratios[j] = dc[j] / lc[j];
    rep.route_discrepancy = std::max(rep.route_discrepancy,
                                     std::abs(rep.ratios[j] / rep.direct_ratios[j] - 1.0));
    rep.lower_ok[j] = rep.ratios[j] >= 1.0 - 1e-12;
    rep.upper_ok[j] = rep.ratios[j] <= rep.upper;
    rep.pass = rep.pass && rep.lower_ok[j] && rep.upper_ok[j];
  }
  return rep;
}

namespace {

struct Candidate {
  ZalcmanStage stage;
  std::string failure;
};

bool certify(int k, const Hole& hole, double log_r, double slack,
             const ZalcmanDomain& dom, const Truncation& trunc, Candidate& c) {
  const double log_half = std::log(0.5);
  const double log_right = log_add(hole.log_center, hole.log_radius);
  std::ostringstream why;
  why << "stage " << k << ", n = " << hole.n << ": ";
  if (!(log_right < log_r + std::log1p(-slack))) {
    why << "center + radius < clearance * (1 - slack) fails";
    c.failure = why.str();
    return false;
  }
  if (!(log_right < log_half)) {
    why << "hole not inside the disk of radius 1/2";
    c.failure = why.str();
    return false;
  }
  for (const auto& st : dom.stages) {
    if (!(log_right < log_sub(st.hole.log_center, st.hole.log_radius))) {
      why << "hole meets the hole of index n = " << st.hole.n;
      c.failure = why.str();
      return false;
    }
  }
  ZalcmanStage& s = c.stage;
  s.hole = hole;
  s.log_clearance = log_r;
  s.log_small_outer = log_sub(log_r, hole.log_center);
  const double log_dx = kXAlpha * hole.log_radius;
  const double log_dy = kYAlpha * hole.log_radius;
  if (!(log_dx < s.log_small_outer && log_dy < s.log_small_outer)) {
    why << "test points not inside the inner sandwich annulus";
    c.failure = why.str();
    return false;
  }
  s.log_x = log_add(hole.log_center, log_dx);
  s.log_y = log_add(hole.log_center, log_dy);
  const Sandwich xs = sandwich_bounds(hole, s.log_small_outer, log_dx, trunc);
  const Sandwich ys = sandwich_bounds(hole, s.log_small_outer, log_dy, trunc);
  s.x_cert = xs.interval;
  s.y_cert = ys.interval;
  s.x_small = xs.small_curvature;
  s.x_large = xs.large_curvature;
  s.y_small = ys.small_curvature;
  s.y_large = ys.large_curvature;
  // Widen on the defect scale: [2 - hi, 2 - lo] -> [(2 - hi)/(1+slack), (2 - lo)(1+slack)].
  const double x_defect_hi = (2.0 - s.x_cert.lo) * (1.0 + slack);
  const double y_defect_lo = (2.0 - s.y_cert.hi) / (1.0 + slack);
  if (!(2.0 - x_defect_hi > 2.0 - 1.0 / k)) {
    why << "x certificate lo > 2 - 1/k fails (lo = " << s.x_cert.lo << ")";
    c.failure = why.str();
    return false;
  }
  if (!(2.0 - y_defect_lo < -static_cast<double>(k))) {
    why << "y certificate hi < -k fails (hi = " << s.y_cert.hi << ")";
    c.failure = why.str();
    return false;
  }
  return true;
}

}  // namespace

ZalcmanDomain construct(double theta, int K, double slack, const ConstructOptions& opts) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0, 1)");
  if (K < 1) throw DomainError("stage count K must be >= 1");
  if (!(slack >= 0.0 && slack < 1.0)) throw DomainError("slack must lie in [0, 1)");
  opts.trunc.validate();
  const double log_theta = std::log(theta);
  const double log_quarter = std::log(0.25);

  int n0 = 1;
  while (log_add(n0 * log_theta, 2.0 * n0 * log_theta) >= log_quarter) ++n0;

  ZalcmanDomain dom;
  dom.theta = theta;
  dom.slack = slack;
  int prev = n0;
  double log_r = log_quarter;
  for (int k = 1; k <= K; ++k) {
    Candidate c;
    bool found = false;
    for (int n = 2 * prev + 1; n <= opts.ceiling; ++n) {
      bool ok = false;
      try {
        ok = certify(k, Hole::from_theta(theta, n), log_r, slack, dom, opts.trunc, c);
      } catch (const InternalError& e) {
        throw ConstructionError("stage " + std::to_string(k) + ", n = " + std::to_string(n) +
                                    ": evaluation failed: " + e.what(),
                                k);
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw ConstructionError("no certified hole up to the ceiling; last failure: " +
                                  (c.failure.empty() ? std::string("no candidates") : c.failure),
                              k);
    }
    dom.stages.push_back(c.stage);
    prev = c.stage.hole.n;
    log_r = log_sub(c.stage.hole.log_center, c.stage.hole.log_radius);
  }
  return dom;
}

GeometryReport validate_geometry(const ZalcmanDomain& dom) {
  GeometryReport rep;
  auto fail_geom = [&](const std::string& msg) {
    if (rep.geometry_ok && rep.certificates_ok) rep.first_violation = msg;
    rep.geometry_ok = false;
  };
  auto fail_cert = [&](const std::string& msg) {
    if (rep.geometry_ok && rep.certificates_ok) rep.first_violation = msg;
    rep.certificates_ok = false;
  };
  if (!(dom.theta > 0.0 && dom.theta < 1.0)) fail_geom("theta outside (0, 1)");
  const double log_half = std::log(0.5);
  const double tol = 1e-12;
  const auto& st = dom.stages;
  for (std::size_t i = 0; i < st.size(); ++i) {
    for (std::size_t j = 0; j < st.size(); ++j) {
      if (i == j) continue;
      const Hole& a = st[i].hole;
      const Hole& b = st[j].hole;
      if (a.log_center < b.log_center || (a.log_center == b.log_center && i > j)) continue;
      if (!(log_sub(a.log_center, a.log_radius) > log_add(b.log_center, b.log_radius))) {
        fail_geom("holes n = " + std::to_string(a.n) + " and n = " + std::to_string(b.n) +
                  " are not disjoint");
      }
    }
  }
  for (std::size_t i = 0; i < st.size(); ++i) {
    const ZalcmanStage& s = st[i];
    const Hole& h = s.hole;
    const std::string tag = "stage " + std::to_string(i + 1) + ": ";
    if (i > 0 && !(h.n > st[i - 1].hole.n)) fail_geom(tag + "n not strictly increasing");
    if (!(h.log_radius < h.log_center)) fail_geom(tag + "radius >= center");
    const double log_right = log_add(h.log_center, h.log_radius);
    if (!(log_right < log_half)) fail_geom(tag + "hole not inside the disk of radius 1/2");
    if (!(log_right < s.log_clearance)) fail_geom(tag + "hole reaches the clearance radius");
    const double bound = i == 0 ? std::log(0.25)
                                : log_sub(st[i - 1].hole.log_center, st[i - 1].hole.log_radius);
    if (!(s.log_clearance <= bound + tol)) fail_geom(tag + "clearance exceeds the hole-free radius");
    if (!(s.log_small_outer <= log_sub(s.log_clearance, h.log_center) + tol)) {
      fail_geom(tag + "inner sandwich annulus leaves the clearance disk");
    }
    for (const double lp : {s.log_x, s.log_y}) {
      const double ld = log_sub(lp, h.log_center);
      if (!(ld > h.log_radius && ld < s.log_small_outer)) {
        fail_geom(tag + "test point not inside P(center, radius, clearance - center)");
      }
    }
  }
  for (std::size_t i = 0; i < st.size(); ++i) {
    const ZalcmanStage& s = st[i];
    const double k = static_cast<double>(i + 1);
    const std::string tag = "stage " + std::to_string(i + 1) + ": ";
    for (const CurvatureInterval* c : {&s.x_cert, &s.y_cert}) {
      if (!(c->lo <= c->hi && c->hi < 2.0)) fail_cert(tag + "malformed certificate interval");
    }
    if (!(s.x_cert.lo > 2.0 - 1.0 / k)) fail_cert(tag + "x_cert.lo > 2 - 1/k fails");
    if (!(s.y_cert.hi < -k)) fail_cert(tag + "y_cert.hi < -k fails");
  }
  return rep;
}

namespace {

std::string num(double x) {
  if (!std::isfinite(x)) return x > 0 ? "1e999" : (x < 0 ? "-1e999" : "null");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string interval(const CurvatureInterval& c) {
  return "{\"lo\": " + num(c.lo) + ", \"hi\": " + num(c.hi) + "}";
}

}  // namespace

std::string to_json(const ZalcmanDomain& dom) {
  std::ostringstream os;
  os << "{\n  \"theta\": " << num(dom.theta) << ",\n";
  os << "  \"slack\": " << num(dom.slack) << ",\n";
  os << "  \"assumption\": " << nlohmann::json(dom.assumption).dump() << ",\n";
  os << "  \"stages\": [";
  for (std::size_t i = 0; i < dom.stages.size(); ++i) {
    const ZalcmanStage& s = dom.stages[i];
    os << (i ? ",\n" : "\n");
    os << "    {\"n\": " << s.hole.n << ", \"hole\": {\"center\": " << num(s.hole.center())
       << ", \"log_center\": " << num(s.hole.log_center)
       << ", \"log_radius\": " << num(s.hole.log_radius) << "}"
       << ", \"x\": " << num(std::exp(s.log_x)) << ", \"log_x\": " << num(s.log_x)
       << ", \"y\": " << num(std::exp(s.log_y)) << ", \"log_y\": " << num(s.log_y)
       << ", \"clearance\": " << num(std::exp(s.log_clearance))
       << ", \"log_clearance\": " << num(s.log_clearance)
       << ", \"log_small_outer\": " << num(s.log_small_outer)
       << ", \"x_cert\": " << interval(s.x_cert) << ", \"y_cert\": " << interval(s.y_cert)
       << "}";
  }
  os << (dom.stages.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

ZalcmanDomain from_json(const std::string& text) {
  using nlohmann::json;
  ZalcmanDomain dom;
  try {
    const json j = json::parse(text);
    dom.theta = j.at("theta").get<double>();
    dom.slack = j.value("slack", 0.0);
    dom.assumption = j.value("assumption", dom.assumption);
    auto log_of = [](const json& o, const char* log_key, const char* key) {
      return o.contains(log_key) ? o.at(log_key).get<double>() : std::log(o.at(key).get<double>());
    };
    for (const json& s : j.at("stages")) {
      ZalcmanStage st;
      st.hole.n = s.at("n").get<int>();
      const json& h = s.at("hole");
      st.hole.log_center = log_of(h, "log_center", "center");
      st.hole.log_radius = h.at("log_radius").get<double>();
      st.log_x = log_of(s, "log_x", "x");
      st.log_y = log_of(s, "log_y", "y");
      st.log_clearance = log_of(s, "log_clearance", "clearance");
      st.log_small_outer = s.contains("log_small_outer")
                               ? s.at("log_small_outer").get<double>()
                               : log_sub(st.log_clearance, st.hole.log_center);
      st.x_cert = {s.at("x_cert").at("lo").get<double>(), s.at("x_cert").at("hi").get<double>()};
      st.y_cert = {s.at("y_cert").at("lo").get<double>(), s.at("y_cert").at("hi").get<double>()};
      dom.stages.push_back(st);
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed domain JSON: ") + e.what());
  }
  return dom;
}

}  // namespace bergman
