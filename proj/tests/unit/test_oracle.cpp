#include <cmath>
#include <complex>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/oracle.hpp"
#include "bergman/quadrature.hpp"
#include "doctest.h"

using namespace bergman;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("Gauss-Legendre rule") {
  for (int n : {1, 2, 5, 64, 301}) {
    const GaussLegendreRule g = gauss_legendre(n);
    double w = 0.0, x2 = 0.0;
    for (int i = 0; i < n; ++i) {
      w += g.weights[i];
      x2 += g.weights[i] * g.nodes[i] * g.nodes[i];
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    if (n >= 2) CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  // integral of exp over [-1, 1]
  const GaussLegendreRule g = gauss_legendre(20);
  double s = 0.0;
  for (int i = 0; i < 20; ++i) s += g.weights[i] * std::exp(g.nodes[i]);
  CHECK(s == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("Gram matrix: diagonal, orthogonality, Hermitian") {
  const Annulus ann = Annulus::from_radii(0.0, 0.3, 1.0);
  const GramSystem g = build_gram(ann, 30);
  CHECK(g.size() == 61);
  CHECK(g.quad.radial_nodes >= 64);
  CHECK(g.quad.angular_nodes >= 4 * 30 + 4);
  for (int n = -30; n <= 30; ++n) {
    const double exact = alpha_norm(n, std::log(0.3), 0.0);
    CHECK(rel(g.entry(n, n).real(), exact) < 1e-10);
  }
  double off = 0.0, herm = 0.0;
  for (long a = 0; a < 61; ++a) {
    for (long b = 0; b < 61; ++b) {
      herm = std::max(herm, std::abs(g.normalized(a, b) - std::conj(g.normalized(b, a))));
      if (a != b) off = std::max(off, std::abs(g.normalized(a, b)));
    }
  }
  CHECK(off <= 1e-12);
  CHECK(herm <= 1e-13);
}

TEST_CASE("Gram reproduces the norm of 1 + z") {
  const Annulus ann = Annulus::from_radii(0.0, 0.5, 1.0);
  const GramSystem g = build_gram(ann, 4);
  const double v = (g.entry(0, 0) + g.entry(0, 1) + g.entry(1, 0) + g.entry(1, 1)).real();
  CHECK(rel(v, alpha_norm(0, std::log(0.5), 0.0) + alpha_norm(1, std::log(0.5), 0.0)) < 1e-12);
}

TEST_CASE("Gram argument checks") {
  const Annulus ann = Annulus::from_radii(0.0, 0.5, 1.0);
  CHECK_THROWS_AS(build_gram(ann, 3), DomainError);
  QuadratureSpec q;
  q.radial_nodes = 10;
  CHECK_THROWS_AS(build_gram(ann, 10, q), DomainError);
  q.radial_nodes = 100;
  q.angular_nodes = 20;
  CHECK_THROWS_AS(build_gram(ann, 10, q), DomainError);
}

TEST_CASE("j = 0 near the disk: truncated disk kernel plus the z^-1 term") {
  const Annulus ann = Annulus::from_radii(0.0, 1e-3, 1.0);
  const GramSystem g = build_gram(ann, 40);
  double disk = 0.0;
  for (int n = 0; n <= 40; ++n) disk += (n + 1) * std::pow(0.25, n) / kPi;
  const double extra = 1.0 / (kTwoPi * 0.25 * std::log(1e3));
  CHECK(rel(extremal_j(g, 0.5, 0), disk + extra) < 1e-4);
}

TEST_CASE("subspace monotonicity in N") {
  const Annulus ann = Annulus::from_radii(0.0, 0.1, 1.0);
  QuadratureSpec q;
  q.radial_nodes = 400;
  q.angular_nodes = 4 * 40 + 4;
  for (std::complex<double> z : {std::complex<double>(0.3), std::polar(0.5, 1.0), std::complex<double>(0.9)}) {
    for (int j = 0; j < 3; ++j) {
      double prev = 0.0;
      for (int N : {4, 6, 10, 20, 40}) {
        const double v = extremal_j(build_gram(ann, N, q), z, j);
        CHECK(v >= prev * (1.0 - 1e-12));
        prev = v;
      }
    }
  }
}

TEST_CASE("oracle agrees with the series path") {
  for (double q : {0.05, 0.1, 0.3}) {
    for (double a : {0.25, 0.5, 0.75}) {
      const Annulus ann = Annulus::from_radii(0.0, q, 1.0);
      const std::complex<double> z = std::polar(std::pow(q, a), 0.4);
      const BergmanEval o = oracle_bergman(ann, z, 40);
      const BergmanEval s = bergman_eval(ann, z);
      CAPTURE(q);
      CAPTURE(a);
      CHECK(rel(o.j.j0, s.j.j0) < 1e-6);
      CHECK(rel(o.j.j1, s.j.j1) < 1e-6);
      CHECK(rel(o.j.j2, s.j.j2) < 1e-6);
      CHECK(std::abs(o.curvature - s.curvature) < 1e-5 * std::abs(s.curvature));
    }
  }
  const Annulus p = Annulus::from_radii(0.0, 0.3, 1.0);
  const GramSystem g = build_gram(p, 40);
  const double z = std::sqrt(0.3);
  const BergmanEval s = bergman_eval(p, z);
  CHECK(rel(extremal_j(g, z, 0), s.j.j0) < 1e-6);
  CHECK(rel(extremal_j(g, z, 1), s.j.j1) < 1e-6);
  CHECK(rel(extremal_j(g, z, 2), s.j.j2) < 1e-6);
}

TEST_CASE("maximizer satisfies the vanishing constraints") {
  const Annulus ann = Annulus::from_radii({0.1, 0.2}, 0.08, 1.3);
  const GramSystem g = build_gram(ann, 30);
  for (int j = 1; j <= 2; ++j) {
    const ExtremalSolution s = extremal_solve(g, ann.center() + std::polar(0.4, -2.0), j);
    CHECK(s.constraint_residual <= 1e-10);
    CHECK(s.value > 0.0);
  }
}

TEST_CASE("oracle curvature is rotation invariant") {
  const Annulus ann = Annulus::from_radii(0.0, 0.2, 1.0);
  const double base = oracle_bergman(ann, 0.45, 30).curvature;
  for (int k = 1; k < 8; ++k) {
    CHECK(std::abs(oracle_bergman(ann, std::polar(0.45, k * kPi / 4), 30).curvature - base) <=
          1e-8 * std::abs(base));
  }
}

TEST_CASE("oracle at the middle point of a thin ring") {
  const double q = 0.05;
  const Annulus ann = Annulus::from_radii(0.0, q, 1.0);
  const BergmanEval o = oracle_bergman(ann, std::sqrt(q), 40);
  CHECK(o.curvature < 0.0);
  CHECK(o.curvature == doctest::Approx(bergman_eval(ann, std::sqrt(q)).curvature).epsilon(1e-8));
}

TEST_CASE("oracle envelope and argument errors") {
  CHECK_THROWS_AS(oracle_bergman(Annulus::from_radii(0.0, 1e-8, 1.0), 0.5, 40), EnvelopeError);
  CHECK_THROWS_AS(oracle_bergman(Annulus::from_radii(0.0, 0.95, 1.0), 0.97, 40), EnvelopeError);
  CHECK_THROWS_AS(oracle_bergman(Annulus::from_radii(0.0, 0.1, 1.0), 0.5, 61), EnvelopeError);
  const GramSystem g = build_gram(Annulus::from_radii(0.0, 0.1, 1.0), 10);
  CHECK_THROWS_AS(extremal_j(g, 0.05, 0), OutOfDomainError);
  CHECK_THROWS_AS(extremal_j(g, 0.5, 3), DomainError);
}

TEST_CASE("balanced window") {
  CHECK(balanced_window(40, 0.5) == std::pair<int, int>{-40, 40});
  const auto [lo, hi] = balanced_window(40, 0.25);
  CHECK(hi - lo == 80);
  CHECK(hi == 60);
  int plo = 0, phi = 0;
  for (int N = 4; N <= 60; ++N) {
    const auto w = balanced_window(N, 0.3);
    CHECK(w.first <= plo);
    CHECK(w.second >= phi);
    plo = w.first;
    phi = w.second;
  }
}
