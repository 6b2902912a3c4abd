#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bergman/annulus.hpp"

namespace bergman {

// Small-r behaviour of P(r, 1) at the point r^alpha. Every quantity here is
// taken in the 2*pi-free convention (canonical J times 2*pi), and radii enter
// through L = -log r so that r itself may underflow.

enum class Regime { Log, LeftPower, RightPower };

/// The defect j0 j2 / j1^2 behaves like 1 / (r^exponent (-log r)).
struct RateLaw {
  Regime regime = Regime::Log;
  double exponent = 0.0;

  /// r^exponent * L, the reciprocal of the rate (never overflows).
  double inverse_rate(double L) const;
  std::string name() const;
};

/// Throws DomainError outside (0, 1). Intervals are (0,1/3], (1/3,1/2],
/// (1/2,2/3), [2/3,1).
RateLaw regime(double alpha);

inline constexpr double kAssumedAMag = 150.0;
inline constexpr double kCoeffR2 = 16.0;
inline constexpr double kCoeffR6Alpha = 32.0;

/// Magnitudes of the predicted leading values of r^(2a) J0, r^(4a) J1 and
/// r^(6a) J2. The denominator asymptotic and A(r) are negative quantities;
/// only magnitudes are kept.
struct AsymptoticPrediction {
  double j0_lead = 0.0;
  double j1_lead = 0.0;
  double j2_lead = 0.0;
  double a_of_r = 0.0;  ///< |A(r)|
  double A_mag = 0.0;
};

AsymptoticPrediction predicted_leading(double r, double alpha, double A_mag);
AsymptoticPrediction predicted_leading_log(double L, double alpha,
                                           double A_mag);

/// The three measured leading quantities at L (2*pi-free).
std::array<double, 3> measured_leading(double L, double alpha,
                                       const Truncation& trunc = {});

struct RateStudy {
  RateLaw law;
  std::vector<double> L;
  std::vector<double> products;  ///< defect * r^p * L
  double last = 0.0;
  double spread = 0.0;  ///< (max - min) / |last| over the final three
  bool cauchy = false;  ///< spread < 0.2
};

RateStudy rate_constant_study(double alpha, std::span<const double> L_list,
                              const Truncation& trunc = {});

struct TildeReport {
  std::vector<double> L;
  std::vector<double> e;  ///< |measured - predicted| / (|predicted| r^eps)
  bool pass = false;      ///< e non-increasing (strictly unless zero) at the end
};

using Profile = std::function<double(double L)>;

/// Throws DomainError if predicted vanishes or fewer than three L are given.
TildeReport tilde_verify(const Profile& measured, const Profile& predicted,
                         double eps, std::span<const double> L_list);

struct TildeSuite {
  std::array<TildeReport, 3> displays;
  bool pass = false;
};

/// Runs tilde_verify on all three leading-order displays at fixed alpha.
TildeSuite tilde_suite(double alpha, std::span<const double> L_list,
                       double eps, double A_mag, const Truncation& trunc = {});

struct ASample {
  double L = 0.0;
  double alpha = 0.0;
  double value = 0.0;  ///< |A(r)|, magnitude of the numerator's 1/L coefficient
};

std::vector<ASample> measure_A_samples(std::span<const double> alpha_list,
                                       std::span<const double> L_list,
                                       const Truncation& trunc = {});

struct AFit {
  double estimate = 0.0;
  double residual = 0.0;   ///< rms relative misfit
  double dominance = 0.0;  ///< min over samples of A u / (other terms)
  std::size_t samples = 0;
  bool exceeds_bound = false;  ///< estimate > 100
};

/// Weighted least squares for |A| with the r^2 and r^(6 alpha) coefficients
/// held at 16 and 32. Throws FitError if the free term is not dominant
/// (ratio < 10) in every sample.
AFit fit_A_samples(std::span<const ASample> samples);
AFit fit_A(std::span<const double> alpha_list, std::span<const double> L_list,
           const Truncation& trunc = {});

}  // namespace bergman
