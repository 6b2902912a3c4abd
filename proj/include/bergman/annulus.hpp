#pragma once

#include <complex>
#include <cstddef>

namespace bergman {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

/// Centered ring r < |z - center| < R with radii kept as logarithms so that
/// holes of radius 1e-120 and below stay representable.
class Annulus {
 public:
  /// Throws DomainError unless both logs are finite and log_inner < log_outer.
  static Annulus from_logs(std::complex<double> center, double log_inner,
                           double log_outer);
  /// Plain-radius convenience; radii must be positive and finite.
  static Annulus from_radii(std::complex<double> center, double inner,
                            double outer);

  std::complex<double> center() const { return center_; }
  double log_inner() const { return log_inner_; }
  double log_outer() const { return log_outer_; }
  /// -log of the modulus ratio inner/outer; always > 0.
  double log_modulus() const { return log_outer_ - log_inner_; }

 private:
  Annulus(std::complex<double> c, double li, double lo)
      : center_(c), log_inner_(li), log_outer_(lo) {}

  std::complex<double> center_;
  double log_inner_;
  double log_outer_;
};

/// Controls the bi-infinite Laurent sums.
struct Truncation {
  double rel_tol = 1e-14;
  std::size_t n_min = 8;
  std::size_t n_max = 100000;
  bool compensated = true;

  /// Throws DomainError when 0 < rel_tol < 1 or 0 < n_min <= n_max fails.
  void validate() const;
};

/// Squared L2 norm of z^n over the ring exp(log_r) < |z| < exp(log_R),
/// including the 2*pi angular factor. Evaluated in the log domain; the result
/// may still overflow to +inf for extreme (n, radius) combinations, in which
/// case log_alpha_norm is the usable form.
double alpha_norm(long n, double log_r, double log_R);

/// Natural log of alpha_norm, finite whenever the inputs are.
double log_alpha_norm(long n, double log_r, double log_R);

}  // namespace bergman
