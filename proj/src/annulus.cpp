#include "bergman/annulus.hpp"

#include <cmath>
#include <string>

#include "bergman/errors.hpp"

namespace bergman {

Annulus Annulus::from_logs(std::complex<double> center, double log_inner,
                           double log_outer) {
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) {
    throw DomainError("annulus center must be finite");
  }
  if (!std::isfinite(log_inner) || !std::isfinite(log_outer)) {
    throw DomainError("annulus radii must be positive and finite");
  }
  if (!(log_inner < log_outer)) {
    throw DomainError("annulus requires inner radius < outer radius");
  }
  return Annulus(center, log_inner, log_outer);
}

Annulus Annulus::from_radii(std::complex<double> center, double inner,
                            double outer) {
  if (!(inner > 0.0) || !(outer > 0.0) || !std::isfinite(inner) ||
      !std::isfinite(outer)) {
    throw DomainError("annulus radii must be positive and finite");
  }
  return from_logs(center, std::log(inner), std::log(outer));
}

void Truncation::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("truncation rel_tol must lie in (0, 1)");
  }
  if (n_min == 0 || n_min > n_max) {
    throw DomainError("truncation requires 0 < n_min <= n_max");
  }
}

double log_alpha_norm(long n, double log_r, double log_R) {
  if (!std::isfinite(log_r) || !std::isfinite(log_R)) {
    throw DomainError("alpha_norm: radii must be positive and finite");
  }
  if (!(log_r < log_R)) {
    throw DomainError("alpha_norm: requires r < R");
  }
  const double width = log_R - log_r;
  if (n == -1) {
    return std::log(kTwoPi * width);
  }
  // (R^e - r^e) / e with e = 2(n+1), factored around the dominant radius.
  const double e = 2.0 * static_cast<double>(n + 1);
  if (e > 0.0) {
    return std::log(kTwoPi / e) + e * log_R + std::log(-std::expm1(-e * width));
  }
  return std::log(kTwoPi / -e) + e * log_r + std::log(-std::expm1(e * width));
}

double alpha_norm(long n, double log_r, double log_R) {
  return std::exp(log_alpha_norm(n, log_r, log_R));
}

}  // namespace bergman
