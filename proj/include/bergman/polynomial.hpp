#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "bergman/compensated_sum.hpp"

namespace bergman {

/*!
  Sparse multivariate polynomial with exact integer coefficients.

  Only what the closed-form expansions need: ring operations, extraction of
  the coefficient of a power of one variable, and floating evaluation. Terms
  with zero coefficient are never stored, so `is_zero()` is an exact test.
*/
template <std::size_t Vars>
class IntPolynomial {
 public:
  using Exponents = std::array<std::uint8_t, Vars>;

  IntPolynomial() = default;

  static IntPolynomial constant(std::int64_t c) {
    IntPolynomial p;
    p.add_term(Exponents{}, c);
    return p;
  }

  static IntPolynomial variable(std::size_t index) {
    Exponents e{};
    e.at(index) = 1;
    IntPolynomial p;
    p.add_term(e, 1);
    return p;
  }

  void add_term(const Exponents& e, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Exponents, std::int64_t>& terms() const { return terms_; }

  /// Highest power of variable `index` that occurs.
  int degree_in(std::size_t index) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max<int>(d, e.at(index));
    return d;
  }

  /// Coefficient of var^power, with that variable removed (exponent zeroed).
  IntPolynomial coefficient(std::size_t index, int power) const {
    IntPolynomial out;
    for (const auto& [e, c] : terms_) {
      if (e.at(index) != power) continue;
      Exponents reduced = e;
      reduced.at(index) = 0;
      out.add_term(reduced, c);
    }
    return out;
  }

  double evaluate(std::span<const double, Vars> x) const {
    CompensatedSum acc;
    for (const auto& [e, c] : terms_) {
      double term = static_cast<double>(c);
      for (std::size_t i = 0; i < Vars; ++i) {
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      }
      acc += term;
    }
    return acc.value();
  }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  IntPolynomial& operator-=(const IntPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) {
    return a += b;
  }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) {
    return a -= b;
  }

  friend IntPolynomial operator*(const IntPolynomial& a,
                                 const IntPolynomial& b) {
    IntPolynomial out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e{};
        for (std::size_t i = 0; i < Vars; ++i) {
          e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
        }
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend IntPolynomial operator*(std::int64_t s, const IntPolynomial& a) {
    return constant(s) * a;
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// Human-readable form, variables named by `names`.
  std::string to_string(const std::array<const char*, Vars>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      const std::int64_t mag = c < 0 ? -c : c;
      std::string factors;
      for (std::size_t i = 0; i < Vars; ++i) {
        if (e[i] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += names[i];
        if (e[i] > 1) factors += "^" + std::to_string(e[i]);
      }
      if (factors.empty()) {
        s += std::to_string(mag);
      } else {
        s += (mag == 1 ? "" : std::to_string(mag) + "*") + factors;
      }
    }
    return s;
  }

 private:
  std::map<Exponents, std::int64_t> terms_;
};

}  // namespace bergman
