#include <cmath>
#include <vector>

#include "bergman/asymptotics.hpp"
#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "doctest.h"

using namespace bergman;

TEST_CASE("regime table") {
  CHECK(regime(0.25).regime == Regime::Log);
  CHECK(regime(0.25).exponent == 0.0);
  CHECK(regime(1.0 / 3.0).regime == Regime::Log);
  CHECK(regime(0.4).regime == Regime::LeftPower);
  CHECK(regime(0.4).exponent == doctest::Approx(0.4));
  CHECK(regime(0.5).exponent == doctest::Approx(1.0));
  CHECK(regime(0.5 + 1e-12).regime == Regime::RightPower);
  CHECK(regime(0.5 + 1e-12).exponent == doctest::Approx(1.0));
  CHECK(regime(2.0 / 3.0).regime == Regime::Log);
  CHECK(regime(0.6).exponent == doctest::Approx(0.4));
  CHECK_THROWS_AS(regime(0.0), DomainError);
  CHECK_THROWS_AS(regime(1.0), DomainError);
  CHECK_THROWS_AS(regime(1.2), DomainError);
}

TEST_CASE("predicted leading terms") {
  CHECK(predicted_leading(1e-3, 0.5, 150).j0_lead == doctest::Approx(1.0 / (3.0 * std::log(10.0))));
  CHECK(predicted_leading(0.01, 0.3, 150).j1_lead ==
        doctest::Approx(predicted_leading(0.01, 0.7, 150).j1_lead).epsilon(1e-15));
  const double r = 0.1;
  const double expect = 16 * r * r / std::pow(1 - r * r, 2) +
                        150 * std::pow(r, 3) / ((1 - r * r) * (1 - std::pow(r, 4))) +
                        32 * std::pow(r, 3) / ((1 - r * r) * (1 - std::pow(r, 4)));
  const AsymptoticPrediction p = predicted_leading(r, 0.5, 150);
  CHECK(p.a_of_r == doctest::Approx(expect).epsilon(1e-14));
  CHECK(p.a_of_r == doctest::Approx(0.34710).epsilon(1e-4));
  CHECK(p.j2_lead == doctest::Approx(p.a_of_r / p.j1_lead));
  CHECK_THROWS_AS(predicted_leading(1.5, 0.5, 150), DomainError);
}

TEST_CASE("rate constants") {
  const std::vector<double> Ls{20, 40, 80};
  const RateStudy a = rate_constant_study(0.25, Ls);
  CHECK(a.last == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(a.cauchy);
  const RateStudy b = rate_constant_study(0.4, Ls);
  CHECK(b.last == doctest::Approx(2.0).epsilon(1e-6));
  const RateStudy c = rate_constant_study(0.5, Ls);
  CHECK(c.last == doctest::Approx(0.25).epsilon(1e-6));
  for (double p : a.products) CHECK(p > 0.0);
}

TEST_CASE("rate studies are symmetric in alpha") {
  const std::vector<double> Ls{10, 20, 40};
  for (double alpha : {0.2, 0.4, 0.45}) {
    const RateStudy x = rate_constant_study(alpha, Ls);
    const RateStudy y = rate_constant_study(1.0 - alpha, Ls);
    for (std::size_t i = 0; i < Ls.size(); ++i) {
      CHECK(x.products[i] == doctest::Approx(y.products[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("limit behaviour") {
  double prev = 0.0;
  for (double L : {10.0, 20.0, 40.0}) {
    const double k = bergman_eval_power_point(L, 0.5).curvature;
    if (L == 10.0) CHECK(k < -100.0);
    else CHECK(k < prev);
    prev = k;
  }
  for (double alpha : {0.2, 0.8}) {
    const double d = bergman_eval_power_point(60.0, alpha).defect * 60.0;
    CHECK(d >= 2.0);
    CHECK(d <= 8.0);
  }
}

TEST_CASE("tilde_verify") {
  const std::vector<double> Ls{10, 20, 40, 80};
  const Profile pred = [](double L) { return 1.0 / L; };
  const TildeReport same = tilde_verify(pred, pred, 0.02, Ls);
  CHECK(same.pass);
  for (double e : same.e) CHECK(e == 0.0);
  const Profile off = [](double L) { return (1.0 / L) * (1.0 + std::exp(-0.01 * L)); };
  CHECK_FALSE(tilde_verify(off, pred, 0.02, Ls).pass);
  const Profile j0 = [](double L) { return measured_leading(L, 0.5)[0]; };
  CHECK(tilde_verify(j0, pred, 0.02, Ls).pass);
  const Profile zero = [](double) { return 0.0; };
  CHECK_THROWS_AS(tilde_verify(pred, zero, 0.02, Ls), DomainError);
}

TEST_CASE("tilde suite with the measured constant") {
  const std::vector<double> fitL{60, 90, 120};
  const std::vector<double> al{0.8};
  const double A = fit_A(al, fitL).estimate;
  const std::vector<double> Ls{10, 20, 40, 80};
  for (double alpha : {0.25, 0.5, 0.75}) {
    CAPTURE(alpha);
    CHECK(tilde_suite(alpha, Ls, 0.02, A).pass);
  }
}

TEST_CASE("fitting the unknown constant") {
  // Synthetic data from the template is recovered.
  std::vector<ASample> syn;
  for (double L : {30.0, 60.0, 90.0}) {
    syn.push_back({L, 0.8, predicted_leading_log(L, 0.8, 150.0).a_of_r});
  }
  CHECK(fit_A_samples(syn).estimate == doctest::Approx(150.0).epsilon(1e-10));

  // Measured data: the constant is 32, matching the alpha <-> 1 - alpha
  // mirror of the r^(6 alpha) coefficient.
  const std::vector<double> Ls{60, 90, 120};
  for (double alpha : {0.75, 0.8, 0.85}) {
    const std::vector<double> al{alpha};
    const AFit f = fit_A(al, Ls);
    CAPTURE(alpha);
    CHECK(f.estimate == doctest::Approx(32.0).epsilon(1e-6));
    CHECK(f.residual < 1e-6);
    CHECK_FALSE(f.exceeds_bound);
  }
  const std::vector<double> mid{0.5};
  CHECK_THROWS_AS(fit_A(mid, Ls), FitError);
}
