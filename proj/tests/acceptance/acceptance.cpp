// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bergman/asymptotics.hpp"
#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/oracle.hpp"
#include "bergman/series.hpp"
#include "bergman/zalcman.hpp"

using namespace bergman;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= budget_s) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "runtime %.2fs over budget %.0fs", secs, budget_s);
    o.require(false, buf);
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d: %s  %s (%.2fs)%s%s\n", id, o.pass ? "PASS" : "FAIL", title, secs,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "disk limit on P(0, 1e-10, 1)", 1.0, [] {
    Outcome o;
    const Annulus ann = Annulus::from_radii(0.0, 1e-10, 1.0);
    for (double x : {0.3, 0.6, 0.9}) {
      const BergmanEval e = bergman_eval(ann, x);
      const double w = 1.0 - x * x;
      const double dk = rel(e.kernel, 1.0 / (kPi * w * w));
      const double dm = rel(e.metric_sq, 2.0 / (w * w));
      const double dc = rel(e.curvature, -1.0);
      o.require(dk <= 1e-5 && dm <= 1e-5 && dc <= 1e-5,
                fmt("|z| = %.1f: rel dev kernel %.3g, metric_sq %.3g", x, dk, dm) +
                    fmt(", curvature %.3g", dc));
    }
    return o;
  });

  criterion(2, "inversion symmetry of curvature", 1.0, [] {
    Outcome o;
    for (double q : {1e-2, 1e-4, 1e-6}) {
      const Annulus ann = Annulus::from_radii(0.0, q, 1.0);
      for (double a : {0.2, 0.35, 0.5}) {
        const double r1 = bergman_eval(ann, std::pow(q, a)).curvature;
        const double r2 = bergman_eval(ann, std::pow(q, 1.0 - a)).curvature;
        o.require(std::abs(r1 - r2) <= 1e-9 * std::abs(r1), fmt("q = %g, alpha = %g", q, a));
      }
    }
    return o;
  });

  criterion(3, "series path vs quadrature oracle", 30.0, [] {
    Outcome o;
    double worst = 0.0;
    for (double q : {0.05, 0.1, 0.3}) {
      for (double a : {0.25, 0.5, 0.75}) {
        const Annulus ann = Annulus::from_radii(0.0, q, 1.0);
        const double z = std::pow(q, a);
        const BergmanEval s = bergman_eval(ann, z);
        const BergmanEval r = oracle_bergman(ann, z, 40);
        const double d = std::max({rel(r.j.j0, s.j.j0), rel(r.j.j1, s.j.j1), rel(r.j.j2, s.j.j2)});
        worst = std::max(worst, d);
        o.require(d <= 1e-6, fmt("q = %g, alpha = %g: rel dev %.3g", q, a, d));
        o.require(rel(r.curvature, s.curvature) <= 1e-5, fmt("curvature q = %g, alpha = %g", q, a));
      }
    }
    if (o.pass) o.detail = fmt("worst rel dev %.2g", worst);
    return o;
  });

  criterion(4, "limit signs at alpha = 1/2 and alpha = 1/4", 1.0, [] {
    Outcome o;
    double prev = 0.0;
    for (int e = 4; e <= 6; ++e) {
      const double k = bergman_eval_power_point(e * std::log(10.0), 0.5).curvature;
      if (e == 4) o.require(k < -100.0, fmt("curvature %.6g at r = 1e-4", k));
      else o.require(k < prev, fmt("not decreasing at r = 1e-%g", e));
      prev = k;
    }
    const double d = 2.0 - bergman_eval_power_point(400.0, 0.25).curvature;
    o.require(d <= 0.1, fmt("2 - curvature = %.6g at L = 400", d));
    return o;
  });

  criterion(5, "rate constants 4, 2, 1/4", 5.0, [] {
    Outcome o;
    const std::vector<double> Ls{40, 60, 80};
    const double alphas[3] = {0.25, 0.4, 0.5}, target[3] = {4.0, 2.0, 0.25};
    std::string got;
    for (int i = 0; i < 3; ++i) {
      const RateStudy s = rate_constant_study(alphas[i], Ls);
      o.require(rel(s.last, target[i]) < 0.2, fmt("alpha = %g: %.6g", alphas[i], s.last));
      o.require(s.spread < 0.2, fmt("alpha = %g: spread %.3g", alphas[i], s.spread));
      got += (i ? ", " : "") + fmt("%.6g", s.last);
    }
    if (o.pass) o.detail = got;
    return o;
  });

  criterion(6, "tilde checks on the three leading-order displays", 5.0, [] {
    Outcome o;
    const std::vector<double> fitL{60, 90, 120}, al{0.8};
    const double A = fit_A(al, fitL).estimate;
    const std::vector<double> Ls{10, 20, 40, 80};
    for (double a : {0.25, 0.5, 0.75}) {
      const TildeSuite t = tilde_suite(a, Ls, 0.02, A);
      for (int d = 0; d < 3; ++d) {
        o.require(t.displays[d].pass, fmt("alpha = %g, display %g", a, d + 1));
      }
    }
    if (o.pass) o.detail = fmt("with measured constant %.10g", A);
    return o;
  });

  criterion(7, "fitted constant exceeds 100; synthetic recovery", 5.0, [] {
    Outcome o;
    const std::vector<double> Ls{30, 60, 90}, al{0.8};
    const AFit f = fit_A(al, Ls);
    o.require(f.estimate > 100.0, fmt("fitted A_mag = %.10g (rms residual %.2g)", f.estimate, f.residual));
    std::vector<ASample> syn;
    for (double L : Ls) syn.push_back({L, 0.8, predicted_leading_log(L, 0.8, 150.0).a_of_r});
    const double s = fit_A_samples(syn).estimate;
    o.require(rel(s, 150.0) <= 0.01, fmt("synthetic recovery %.10g", s));
    return o;
  });

  criterion(8, "ratio bounds for shrunken outer radius", 1.0, [] {
    Outcome o;
    struct Case {
      double r, s, a;
    };
    for (const Case c : {Case{1e-6, 0.25, 0.5}, Case{1e-8, 0.4, 0.3}}) {
      const RatioReport rep = ratio_bound_check(-std::log(c.r), c.s, c.a, 0.05);
      for (int j = 0; j < 3; ++j) {
        o.require(rep.ratios[j] >= 1.0, fmt("r = %g: ratio j = %g below 1", c.r, j));
      }
      o.require(rep.pass, fmt("r = %g, s = %g: ratios ", c.r, c.s) +
                              fmt("%.4g, %.4g, %.4g", rep.ratios[0], rep.ratios[1], rep.ratios[2]) +
                              fmt(" vs bound %.4g", rep.upper));
    }
    return o;
  });

  criterion(9, "cancellation integrity", 1.0, [] {
    Outcome o;
    phi_expansions();  // throws if the t^2 or t^3 coefficient survives
    double worst = 0.0;
    for (double a : {0.3, 0.5, 0.7}) {
      for (double L = 1.0; L <= 4.0 + 1e-12; L += 0.125) {
        const CanonicalEvaluation c = evaluate_canonical(CanonicalGeometry::from_alpha(a, L));
        const double d1 = c.discrepancy_j2;
        const double d2 = rel(j2_numerator_expanded(c.table), j2_numerator_naive(c.table));
        worst = std::max({worst, d1, d2});
        o.require(d1 <= 1e-8 && d2 <= 1e-8, fmt("alpha = %g, L = %g", a, L));
      }
    }
    if (o.pass) o.detail = fmt("worst rel dev %.2g", worst);
    return o;
  });

  criterion(10, "two-stage Zalcman construction", 60.0, [] {
    Outcome o;
    const ZalcmanDomain d = construct(0.5, 2, 0.1);
    const GeometryReport g = validate_geometry(d);
    o.require(g.ok(), "validate_geometry: " + g.first_violation);
    o.require(d.stages.size() == 2, "stage count");
    for (std::size_t i = 0; i < d.stages.size(); ++i) {
      const ZalcmanStage& s = d.stages[i];
      const double k = static_cast<double>(i + 1);
      o.require(s.x_cert.lo > 2.0 - 1.0 / k, fmt("stage %g x_cert.lo = %.6g", k, s.x_cert.lo));
      o.require(s.y_cert.hi < -k, fmt("stage %g y_cert.hi = %.6g", k, s.y_cert.hi));
      o.require(s.x_cert.contains(s.x_small) && s.x_cert.contains(s.x_large),
                fmt("stage %g x bounding curvatures", k));
      o.require(s.y_cert.contains(s.y_small) && s.y_cert.contains(s.y_large),
                fmt("stage %g y bounding curvatures", k));
    }
    if (o.pass) o.detail = fmt("n = %g, %g", d.stages[0].hole.n, d.stages[1].hole.n);
    return o;
  });

  criterion(11, "monotonicity suite", 5.0, [] {
    Outcome o;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double q1 = std::pow(10.0, -3.0 * u(rng)) * 0.9;
      const double q2 = q1 * std::pow(10.0, -4.0 * u(rng) - 1e-3);
      const double rho = std::exp(std::log(q1) * (0.02 + 0.96 * u(rng)));
      const std::complex<double> z = std::polar(rho, kTwoPi * u(rng));
      const MonotonicityReport m = inclusion_monotonicity_check(q1, q2, z);
      o.require(m.ok, fmt("q1 = %g, q2 = %g, |z| = %g", q1, q2, rho));
    }
    const Annulus ann = Annulus::from_radii(0.0, 0.1, 1.0);
    QuadratureSpec quad;
    quad.radial_nodes = 400;
    quad.angular_nodes = 4 * 40 + 4;
    for (double rho : {0.2, 0.5, 0.8}) {
      for (int j = 0; j < 3; ++j) {
        double prev = 0.0;
        for (int N = 4; N <= 40; N += 4) {
          const double v = extremal_j(build_gram(ann, N, quad), rho, j);
          o.require(v >= prev * (1.0 - 1e-12), fmt("oracle N = %g, |z| = %g, j = %g", N, rho, j));
          prev = v;
        }
      }
    }
    return o;
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
