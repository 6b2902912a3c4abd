#include "bergman/series.hpp"

#include <cmath>
#include <span>
#include <string>

#include "bergman/compensated_sum.hpp"
#include "bergman/errors.hpp"

namespace bergman {
namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

CanonicalGeometry CanonicalGeometry::from_alpha(double alpha, double L) {
  if (!std::isfinite(alpha) || !(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1)");
  }
  if (!std::isfinite(L) || !(L > 0.0)) {
    throw DomainError("L = -log r must be positive and finite");
  }
  const double outer = alpha * L;
  return {outer, L - outer};
}

LaurentWeights laurent_weights(const CanonicalGeometry& g,
                               const Truncation& trunc) {
  trunc.validate();
  if (!(g.outer_gap > 0.0) || !(g.inner_gap > 0.0) ||
      !std::isfinite(g.outer_gap) || !std::isfinite(g.inner_gap)) {
    throw DomainError("canonical geometry requires positive finite gaps");
  }
  LaurentWeights w;
  w.L = g.L();
  w.center = 1.0 / w.L;
  w.compensated = trunc.compensated;

  const double rho_out = std::exp(-2.0 * g.outer_gap);
  const double rho_in = std::exp(-2.0 * g.inner_gap);
  std::array<double, 5> abs_sum{};
  double last_term = 0.0;

  for (std::size_t m = 1; m <= trunc.n_max; ++m) {
    const double md = static_cast<double>(m);
    const double den = -std::expm1(-2.0 * md * w.L);
    const double wo = 2.0 * md * std::exp(-2.0 * md * g.outer_gap) / den;
    const double wi = 2.0 * md * std::exp(-2.0 * md * g.inner_gap) / den;
    w.outer.push_back(wo);
    w.inner.push_back(wi);

    bool small = true;
    last_term = 0.0;
    for (int j = 0; j < 5; ++j) {
      const double to = ipow(md - 1.0, j) * wo;
      const double ti = ipow(md + 1.0, j) * wi;
      abs_sum[j] += to + ti;
      const double t = std::max(to, ti);
      last_term = std::max(last_term, t);
      small = small && t <= trunc.rel_tol * abs_sum[j];
    }
    if (m < trunc.n_min || !small) continue;

    // Beyond m every psi summand is bounded by f(m') = 2 m' (m'+1)^4 rho^m' /
    // (1 - q^2), whose successive ratios are at most kappa.
    const double growth = std::pow((md + 2.0) / (md + 1.0), 5);
    const double kappa_out = growth * rho_out;
    const double kappa_in = growth * rho_in;
    if (kappa_out >= 1.0 || kappa_in >= 1.0) continue;

    const double den1 = -std::expm1(-2.0 * w.L);
    auto majorant = [&](double gap) {
      return 2.0 * (md + 1.0) * ipow(md + 2.0, 4) *
             std::exp(-2.0 * (md + 1.0) * gap) / den1;
    };
    w.tail_bound = majorant(g.outer_gap) / (1.0 - kappa_out) +
                   majorant(g.inner_gap) / (1.0 - kappa_in);
    return w;
  }
  throw ConvergenceError(
      "Laurent series did not converge within n_max = " +
          std::to_string(trunc.n_max) +
          " terms (last term magnitude " + std::to_string(last_term) + ")",
      last_term);
}

PhiTable phi_psi_table(const LaurentWeights& w, double alpha) {
  PhiTable t;
  t.alpha = alpha;
  t.L = w.L;
  t.terms_used = w.terms();
  t.tail_bound = w.tail_bound;
  for (int j = 0; j < 5; ++j) {
    CompensatedSum acc(w.compensated);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < w.terms(); ++i) {
      const double m = static_cast<double>(i + 1);
      acc += ipow(m - 1.0, j) * w.outer[i];
      acc += sign * ipow(m + 1.0, j) * w.inner[i];
    }
    t.psi[j] = acc.value();
    t.phi[j] = sign / w.L + t.psi[j];
  }
  return t;
}

PhiTable phi_psi_table(double alpha, double L, const Truncation& trunc) {
  const auto g = CanonicalGeometry::from_alpha(alpha, L);
  return phi_psi_table(laurent_weights(g, trunc), alpha);
}

// ---------------------------------------------------------------------------

namespace {

using Poly6 = IntPolynomial<6>;  // variables: t, psi0..psi4

PsiPolynomial drop_t(const Poly6& p) {
  PsiPolynomial out;
  for (const auto& [e, c] : p.terms()) {
    PsiPolynomial::Exponents r{};
    for (std::size_t i = 0; i < 5; ++i) r[i] = e[i + 1];
    out.add_term(r, c);
  }
  return out;
}

LinearInT split_linear(const Poly6& p, const char* name) {
  for (int power = 2; power <= p.degree_in(0); ++power) {
    if (!p.coefficient(0, power).is_zero()) {
      throw InternalError(std::string("expansion of ") + name +
                          " has a nonvanishing 1/L^" + std::to_string(power) +
                          " coefficient");
    }
  }
  return {drop_t(p.coefficient(0, 1)), drop_t(p.coefficient(0, 0))};
}

PhiExpansions build_expansions() {
  const Poly6 t = Poly6::variable(0);
  std::array<Poly6, 5> phi;
  for (std::size_t j = 0; j < 5; ++j) {
    const std::int64_t sign = (j % 2 == 0) ? 1 : -1;
    phi[j] = sign * t + Poly6::variable(j + 1);
  }
  const Poly6 numerator = phi[4] * phi[1] * phi[1] - phi[4] * phi[2] * phi[0] -
                          2 * (phi[3] * phi[2] * phi[1]) +
                          phi[3] * phi[3] * phi[0] + phi[2] * phi[2] * phi[2];
  const Poly6 denominator = phi[1] * phi[1] - phi[2] * phi[0];
  const Poly6 beta_num = phi[2] * phi[1] - phi[3] * phi[0];
  const Poly6 gamma_num = phi[1] * phi[3] - phi[2] * phi[2];
  return {split_linear(numerator, "J2 numerator"),
          split_linear(denominator, "J2 denominator"),
          split_linear(beta_num, "beta numerator"),
          split_linear(gamma_num, "gamma numerator")};
}

}  // namespace

double LinearInT::evaluate(const PhiTable& t) const {
  const std::span<const double, 5> psi(t.psi);
  return linear.evaluate(psi) / t.L + constant.evaluate(psi);
}

const PhiExpansions& phi_expansions() {
  static const PhiExpansions cached = build_expansions();
  return cached;
}

double j2_numerator_expanded(const PhiTable& t) {
  return phi_expansions().numerator.evaluate(t);
}

double j2_denominator_expanded(const PhiTable& t) {
  return phi_expansions().denominator.evaluate(t);
}

double j2_numerator_naive(const PhiTable& t) {
  const auto& p = t.phi;
  return p[4] * p[1] * p[1] - p[4] * p[2] * p[0] - 2.0 * p[3] * p[2] * p[1] +
         p[3] * p[3] * p[0] + p[2] * p[2] * p[2];
}

double j2_denominator_naive(const PhiTable& t) {
  const auto& p = t.phi;
  return p[1] * p[1] - p[2] * p[0];
}

ExtremalShift extremal_shift(const PhiTable& t) {
  const auto& ex = phi_expansions();
  const double den = ex.denominator.evaluate(t);
  if (!(den < 0.0)) {
    throw InternalError(
        "phi(1)^2 - phi(2)phi(0) is not negative; series data is corrupted");
  }
  return {ex.beta_numerator.evaluate(t) / den,
          ex.gamma_numerator.evaluate(t) / den};
}

// ---------------------------------------------------------------------------

CanonicalEvaluation evaluate_canonical(const CanonicalGeometry& g,
                                       const Truncation& trunc) {
  const LaurentWeights w = laurent_weights(g, trunc);
  CanonicalEvaluation out;
  out.table = phi_psi_table(w, g.alpha());
  const std::size_t K = w.terms();

  // Moments of the k != 0 part in the shifted index.
  std::array<double, 5> s{};
  for (int j = 0; j < 5; ++j) {
    CompensatedSum acc(w.compensated);
    for (std::size_t i = 0; i < K; ++i) {
      const double m = static_cast<double>(i + 1);
      acc += ipow(m, j) * w.outer[i];
      acc += ipow(-m, j) * w.inner[i];
    }
    s[j] = acc.value();
  }
  const double mu0 = w.center + s[0];

  // J1 (2*pi-free) is the weighted variance sum(w_k (k - mean)^2) over all k;
  // the mean's own rounding only enters at second order.
  const double mean = s[1] / mu0;
  CompensatedSum var(w.compensated);
  var += w.center * mean * mean;
  for (std::size_t i = 0; i < K; ++i) {
    const double m = static_cast<double>(i + 1);
    var += w.outer[i] * (m - mean) * (m - mean);
    var += w.inner[i] * (m + mean) * (m + mean);
  }
  const double j1 = var.value();

  // J2 = det3 / det2 with det2 = mu0 * J1. det3 splits into the triples that
  // contain k = 0, center * (s2 s4 - s3^2), plus the triples that do not. The
  // first factor is s2 times a variance under the measure k^2 w_k.
  const double mean2 = s[3] / s[2];
  CompensatedSum var2(w.compensated);
  for (std::size_t i = 0; i < K; ++i) {
    const double m = static_cast<double>(i + 1);
    var2 += m * m * w.outer[i] * (m - mean2) * (m - mean2);
    var2 += m * m * w.inner[i] * (m + mean2) * (m + mean2);
  }
  // Everything is normalized by s2 so that no product of three tiny weights
  // is ever formed; otherwise the result underflows long before the weights do.
  const double v2 = var2.value();
  const double h0 = s[0] / s[2], h1 = s[1] / s[2], h3 = s[3] / s[2],
               h4 = s[4] / s[2];
  const double rest_hat = h0 * (v2 / s[2]) - h1 * h1 * h4 + 2.0 * h1 * h3 - 1.0;
  const double scale = (s[2] / j1) / mu0;
  const double j2 = scale * (w.center * v2 + s[2] * s[2] * rest_hat);

  if (!(mu0 > 0.0) || !(j1 > 0.0) || !(v2 > 0.0) || !(j2 > 0.0) ||
      !std::isfinite(j2)) {
    throw InternalError(
        "non-positive extremal value (weights underflowed; L = " +
        std::to_string(w.L) + ", alpha = " + std::to_string(g.alpha()) + ")");
  }

  out.j = {mu0 / kTwoPi, j1 / kTwoPi, j2 / kTwoPi};
  out.defect = (mu0 / j1) * (j2 / j1);
  out.numerator_linear = -s[2] * v2;
  out.denominator_linear = -s[2];

  const auto& p = out.table.phi;
  out.naive.j0 = p[0] / kTwoPi;
  out.naive.j1 = (p[2] * p[0] - p[1] * p[1]) / p[0] / kTwoPi;
  out.naive.j2 =
      j2_numerator_naive(out.table) / j2_denominator_naive(out.table) / kTwoPi;
  out.discrepancy_j1 = std::fabs(out.naive.j1 - out.j.j1) / out.j.j1;
  out.discrepancy_j2 = std::fabs(out.naive.j2 - out.j.j2) / out.j.j2;
  return out;
}

JTriple j_triple_at_one(double alpha, double L, const Truncation& trunc) {
  return evaluate_canonical(CanonicalGeometry::from_alpha(alpha, L), trunc).j;
}

}  // namespace bergman
