#pragma once

// Laurent-series evaluation of the extremal quantities J^(0..2) at the point 1
// of the canonical ring P(q^(1-alpha), q^(-alpha)), q = exp(-L).
//
// Two index conventions appear below. `n` is the Laurent exponent of z^n.
// `k = n + 1` is the shifted index in which the weight sequence is symmetric
// under alpha <-> 1 - alpha and the k = 0 term carries the 1/L singularity
// alone. All weights are 2*pi-free; the factor is reapplied on JTriple.

#include <array>
#include <cstddef>
#include <vector>

#include "bergman/annulus.hpp"
#include "bergman/polynomial.hpp"

namespace bergman {

/// alpha*L and (1-alpha)*L kept separately so both decay rates survive when
/// one of them is tiny relative to L.
struct CanonicalGeometry {
  double outer_gap;  ///< alpha * L  = log(outer radius) at the point 1
  double inner_gap;  ///< (1-alpha) * L = -log(inner radius)

  static CanonicalGeometry from_alpha(double alpha, double L);
  double L() const { return outer_gap + inner_gap; }
  double alpha() const { return outer_gap / L(); }
};

/// Weights 1/alpha_n (2*pi-free) in the shifted index k = n + 1.
struct LaurentWeights {
  double L = 0.0;
  double center = 0.0;        ///< k = 0, i.e. 1/L
  std::vector<double> outer;  ///< outer[m-1] is the weight at k = +m
  std::vector<double> inner;  ///< inner[m-1] is the weight at k = -m
  double tail_bound = 0.0;    ///< majorant for the dropped |k| > K terms
  bool compensated = true;

  std::size_t terms() const { return outer.size(); }
};

/// Throws ConvergenceError if the cap is hit, DomainError on bad geometry.
LaurentWeights laurent_weights(const CanonicalGeometry& g,
                               const Truncation& trunc = {});

struct PhiTable {
  double alpha = 0.0;
  double L = 0.0;
  std::array<double, 5> psi{};
  std::array<double, 5> phi{};
  std::size_t terms_used = 0;
  double tail_bound = 0.0;
};

PhiTable phi_psi_table(double alpha, double L, const Truncation& trunc = {});
PhiTable phi_psi_table(const LaurentWeights& w, double alpha);

struct ExtremalShift {
  double beta = 0.0;
  double gamma = 0.0;
};

/// Unique solution of the 2x2 normal equations for n^2 - beta*n - gamma.
/// Throws InternalError if the Cauchy-Schwarz denominator is not negative.
ExtremalShift extremal_shift(const PhiTable& t);

struct JTriple {
  double j0 = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
};

/// Everything computed for one canonical evaluation. `j` is the canonical
/// (cancellation-free) result in true L2 normalization; `naive` is the plain
/// phi-quotient route, kept for cross-checking only.
struct CanonicalEvaluation {
  JTriple j;
  JTriple naive;
  PhiTable table;
  double discrepancy_j1 = 0.0;  ///< |naive - j| / j
  double discrepancy_j2 = 0.0;
  double defect = 0.0;          ///< j0*j2/j1^2, scale and 2*pi free
  /// 1/L coefficients of the J^(2) numerator and denominator (2*pi-free),
  /// evaluated without cancellation: -(s2 s4 - s3^2) and -s2 in the shifted
  /// moments s_j = sum_{k != 0} k^j w_k.
  double numerator_linear = 0.0;
  double denominator_linear = 0.0;
};

CanonicalEvaluation evaluate_canonical(const CanonicalGeometry& g,
                                       const Truncation& trunc = {});

/// J^(0..2) of P(q^(1-alpha), q^(-alpha)) at 1, q = exp(-L).
JTriple j_triple_at_one(double alpha, double L, const Truncation& trunc = {});

// ---------------------------------------------------------------------------
// Expansions in t = 1/L. Substituting phi(j) = (-1)^j t + psi(j) into the
// phi-quotient numerators gives polynomials in (t, psi0..psi4). They are
// expanded exactly once with integer arithmetic; the t^2 and t^3 coefficients
// must vanish identically, and construction throws InternalError otherwise.

using PsiPolynomial = IntPolynomial<5>;

struct LinearInT {
  PsiPolynomial linear;    ///< coefficient of t
  PsiPolynomial constant;  ///< coefficient of t^0

  double evaluate(const PhiTable& t) const;
};

struct PhiExpansions {
  LinearInT numerator;    ///< phi4 phi1^2 - phi4 phi2 phi0 - 2 phi3 phi2 phi1 + phi3^2 phi0 + phi2^3
  LinearInT denominator;  ///< phi1^2 - phi2 phi0
  LinearInT beta_numerator;   ///< phi2 phi1 - phi3 phi0
  LinearInT gamma_numerator;  ///< phi1 phi3 - phi2^2
};

/// Cached, built on first use.
const PhiExpansions& phi_expansions();

/// The J^(2) numerator as linear(psi)/L + constant(psi).
double j2_numerator_expanded(const PhiTable& t);
/// phi1^2 - phi2 phi0 as linear(psi)/L + constant(psi).
double j2_denominator_expanded(const PhiTable& t);
/// The same two quantities by direct products of phi values.
double j2_numerator_naive(const PhiTable& t);
double j2_denominator_naive(const PhiTable& t);

}  // namespace bergman
