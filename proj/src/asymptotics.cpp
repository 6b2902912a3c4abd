#include "bergman/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergman/errors.hpp"
#include "bergman/series.hpp"

namespace bergman {

double RateLaw::inverse_rate(double L) const {
  return std::exp(-exponent * L) * L;
}

std::string RateLaw::name() const {
  switch (regime) {
    case Regime::Log: return "LOG";
    case Regime::LeftPower: return "LEFT_POWER";
    case Regime::RightPower: return "RIGHT_POWER";
  }
  return "?";
}

RateLaw regime(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("regime: alpha must lie in (0, 1)");
  }
  constexpr double third = 1.0 / 3.0;
  constexpr double two_thirds = 2.0 / 3.0;
  if (alpha <= third || alpha >= two_thirds) return {Regime::Log, 0.0};
  if (alpha <= 0.5) return {Regime::LeftPower, 6.0 * alpha - 2.0};
  return {Regime::RightPower, 6.0 * (1.0 - alpha) - 2.0};
}

AsymptoticPrediction predicted_leading_log(double L, double alpha,
                                           double A_mag) {
  if (!(L > 0.0) || !(alpha > 0.0 && alpha < 1.0) || !(A_mag > 0.0)) {
    throw DomainError(
        "prediction requires L > 0, alpha in (0,1) and A_mag > 0");
  }
  const double one_m_r2 = -std::expm1(-2.0 * L);
  const double one_m_r4 = -std::expm1(-4.0 * L);
  AsymptoticPrediction p;
  p.A_mag = A_mag;
  p.j0_lead = 1.0 / L;
  p.j1_lead = (2.0 * std::exp(-2.0 * alpha * L) +
               2.0 * std::exp(-2.0 * (1.0 - alpha) * L)) /
              one_m_r2;
  p.a_of_r = kCoeffR2 * std::exp(-2.0 * L) / (one_m_r2 * one_m_r2) +
             A_mag * std::exp(-6.0 * (1.0 - alpha) * L) / (one_m_r2 * one_m_r4) +
             kCoeffR6Alpha * std::exp(-6.0 * alpha * L) / (one_m_r2 * one_m_r4);
  p.j2_lead = p.a_of_r / p.j1_lead;
  return p;
}

AsymptoticPrediction predicted_leading(double r, double alpha, double A_mag) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("prediction requires r in (0, 1)");
  }
  return predicted_leading_log(-std::log(r), alpha, A_mag);
}

std::array<double, 3> measured_leading(double L, double alpha,
                                       const Truncation& trunc) {
  const auto c =
      evaluate_canonical(CanonicalGeometry::from_alpha(alpha, L), trunc);
  return {c.j.j0 * kTwoPi, c.j.j1 * kTwoPi, c.j.j2 * kTwoPi};
}

RateStudy rate_constant_study(double alpha, std::span<const double> L_list,
                              const Truncation& trunc) {
  if (L_list.size() < 3) {
    throw DomainError("rate study needs at least three L values");
  }
  RateStudy s;
  s.law = regime(alpha);
  for (double L : L_list) {
    const auto c =
        evaluate_canonical(CanonicalGeometry::from_alpha(alpha, L), trunc);
    s.L.push_back(L);
    s.products.push_back(c.defect * s.law.inverse_rate(L));
  }
  const auto tail = std::span(s.products).last(3);
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  s.last = s.products.back();
  s.spread = (*hi - *lo) / std::fabs(s.last);
  s.cauchy = s.spread < 0.2;
  return s;
}

TildeReport tilde_verify(const Profile& measured, const Profile& predicted,
                         double eps, std::span<const double> L_list) {
  if (L_list.size() < 3) {
    throw DomainError("tilde check needs at least three L values");
  }
  TildeReport rep;
  for (double L : L_list) {
    const double p = predicted(L);
    if (p == 0.0 || !std::isfinite(p)) {
      throw DomainError("tilde check: predicted value is zero or not finite");
    }
    const double m = measured(L);
    rep.L.push_back(L);
    rep.e.push_back(std::fabs(m - p) / std::fabs(p) * std::exp(eps * L));
  }
  const std::size_t n = rep.e.size();
  rep.pass = true;
  for (std::size_t i = n - 3; i + 1 < n; ++i) {
    const double a = rep.e[i], b = rep.e[i + 1];
    const bool ok = (b < a) || (a == 0.0 && b == 0.0);
    rep.pass = rep.pass && ok;
  }
  return rep;
}

TildeSuite tilde_suite(double alpha, std::span<const double> L_list,
                       double eps, double A_mag, const Truncation& trunc) {
  TildeSuite suite;
  suite.pass = true;
  for (std::size_t which = 0; which < 3; ++which) {
    const Profile measured = [=](double L) {
      return measured_leading(L, alpha, trunc)[which];
    };
    const Profile predicted = [=](double L) {
      const auto p = predicted_leading_log(L, alpha, A_mag);
      return which == 0 ? p.j0_lead : which == 1 ? p.j1_lead : p.j2_lead;
    };
    suite.displays[which] = tilde_verify(measured, predicted, eps, L_list);
    suite.pass = suite.pass && suite.displays[which].pass;
  }
  return suite;
}

std::vector<ASample> measure_A_samples(std::span<const double> alpha_list,
                                       std::span<const double> L_list,
                                       const Truncation& trunc) {
  std::vector<ASample> out;
  for (double alpha : alpha_list) {
    for (double L : L_list) {
      const auto c =
          evaluate_canonical(CanonicalGeometry::from_alpha(alpha, L), trunc);
      out.push_back({L, alpha, std::fabs(c.numerator_linear)});
    }
  }
  return out;
}

AFit fit_A_samples(std::span<const ASample> samples) {
  if (samples.empty()) throw FitError("no samples to fit");
  struct Row {
    double known, u, y;
  };
  std::vector<Row> rows;
  double num = 0.0, den = 0.0;
  for (const auto& s : samples) {
    const double L = s.L;
    const double one_m_r2 = -std::expm1(-2.0 * L);
    const double one_m_r4 = -std::expm1(-4.0 * L);
    Row r;
    r.known = kCoeffR2 * std::exp(-2.0 * L) / (one_m_r2 * one_m_r2) +
              kCoeffR6Alpha * std::exp(-6.0 * s.alpha * L) /
                  (one_m_r2 * one_m_r4);
    r.u = std::exp(-6.0 * (1.0 - s.alpha) * L) / (one_m_r2 * one_m_r4);
    r.y = s.value;
    if (!(r.y > 0.0) || !(r.u > 0.0)) {
      throw FitError("sample underflowed; choose smaller L");
    }
    // relative weighting: minimize sum ((y - known - A u) / y)^2
    num += (r.y - r.known) * r.u / (r.y * r.y);
    den += r.u * r.u / (r.y * r.y);
    rows.push_back(r);
  }
  AFit fit;
  fit.samples = rows.size();
  fit.estimate = num / den;
  double sq = 0.0;
  fit.dominance = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    const double res = (r.y - r.known - fit.estimate * r.u) / r.y;
    sq += res * res;
    fit.dominance = std::min(fit.dominance, fit.estimate * r.u / r.known);
  }
  fit.residual = std::sqrt(sq / static_cast<double>(rows.size()));
  if (!(fit.dominance >= 10.0)) {
    throw FitError(
        "the r^(6(1-alpha)) term does not dominate (ratio " +
        std::to_string(fit.dominance) +
        " < 10); use alpha in (2/3, 1) and larger L");
  }
  fit.exceeds_bound = fit.estimate > 100.0;
  return fit;
}

AFit fit_A(std::span<const double> alpha_list, std::span<const double> L_list,
           const Truncation& trunc) {
  const auto samples = measure_A_samples(alpha_list, L_list, trunc);
  return fit_A_samples(samples);
}

}  // namespace bergman
