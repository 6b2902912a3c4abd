#include "bergman/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& xs) {
  double m = kMinusInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kMinusInf) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

int auto_radial_nodes(int basis_lo, int basis_hi, double L) {
  const double cmax = std::max(std::abs(2.0 * basis_lo + 2.0), std::abs(2.0 * basis_hi + 2.0));
  const double x = 0.5 * cmax * L;
  return std::max(64, static_cast<int>(std::ceil(1.5 * x)) + 40);
}

// In-place Cholesky A = L L^*; returns the failing pivot or -1.
long cholesky(Eigen::MatrixXcd& a) {
  const long n = a.rows();
  for (long k = 0; k < n; ++k) {
    double d = a(k, k).real();
    for (long p = 0; p < k; ++p) d -= std::norm(a(k, p));
    if (!(d > 0.0) || !std::isfinite(d)) return k;
    d = std::sqrt(d);
    a(k, k) = d;
    for (long i = k + 1; i < n; ++i) {
      std::complex<double> s = a(i, k);
      for (long p = 0; p < k; ++p) s -= a(i, p) * std::conj(a(k, p));
      a(i, k) = s / d;
    }
    for (long i = 0; i < k; ++i) a(i, k) = 0.0;
  }
  return -1;
}

// Cholesky with one ridge retry; returns true if the ridge was needed.
bool factor(Eigen::MatrixXcd& a, const char* what) {
  Eigen::MatrixXcd work = a;
  long piv = cholesky(work);
  if (piv < 0) {
    a = std::move(work);
    return false;
  }
  const double ridge = 1e-14 * a.diagonal().real().sum();
  work = a;
  work.diagonal().array() += ridge;
  const long piv2 = cholesky(work);
  if (piv2 >= 0) {
    std::ostringstream os;
    os << what << ": Cholesky failed at pivot " << piv2
       << " (quadrature too coarse or basis ill-conditioned)";
    throw QuadratureError(os.str(), static_cast<std::size_t>(piv2));
  }
  a = std::move(work);
  return true;
}

// log of the falling factorial n (n-1) ... (n-i+1) in magnitude, with sign.
bool falling(int n, int i, double& log_mag, double& sign) {
  log_mag = 0.0;
  sign = 1.0;
  for (int k = 0; k < i; ++k) {
    const int f = n - k;
    if (f == 0) return false;
    log_mag += std::log(std::abs(static_cast<double>(f)));
    if (f < 0) sign = -sign;
  }
  return true;
}

}  // namespace

std::complex<double> GramSystem::entry(int m, int n) const {
  const long a = m - basis_lo, b = n - basis_lo;
  return normalized(a, b) * std::exp(0.5 * (log_diag[a] + log_diag[b]));
}

Eigen::MatrixXcd GramSystem::gram() const {
  const long w = static_cast<long>(size());
  Eigen::MatrixXcd g(w, w);
  for (long a = 0; a < w; ++a)
    for (long b = 0; b < w; ++b)
      g(a, b) = entry(basis_lo + static_cast<int>(a), basis_lo + static_cast<int>(b));
  return g;
}

GramSystem build_gram(const Annulus& ann, int N, const QuadratureSpec& quad) {
  if (N < 4) throw DomainError("oracle basis needs N >= 4");
  return build_gram_window(ann, -N, N, quad);
}

GramSystem build_gram_window(const Annulus& ann, int basis_lo, int basis_hi,
                             const QuadratureSpec& quad) {
  if (basis_hi - basis_lo < 8) {
    throw DomainError("oracle basis window needs at least 9 monomials");
  }
  const int width = basis_hi - basis_lo;
  const double L = ann.log_modulus();
  GramSystem g;
  g.basis_lo = basis_lo;
  g.basis_hi = basis_hi;
  g.ann = ann;
  g.quad = quad;
  if (g.quad.radial_nodes == 0) g.quad.radial_nodes = auto_radial_nodes(basis_lo, basis_hi, L);
  if (g.quad.angular_nodes == 0) g.quad.angular_nodes = 2 * width + 4;
  if (g.quad.radial_nodes < 64) throw DomainError("oracle needs radial_nodes >= 64");
  if (g.quad.angular_nodes < 2 * width + 2) {
    std::ostringstream os;
    os << "oracle needs angular_nodes >= " << 2 * width + 2 << " for this window";
    throw DomainError(os.str());
  }

  // Radial factor: log of int_{log r}^{log R} e^{c u} du for c = m + n + 2.
  const GaussLegendreRule rule = gauss_legendre(g.quad.radial_nodes);
  const double lo = ann.log_inner(), hi = ann.log_outer();
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const int cmin = 2 * basis_lo + 2, cmax = 2 * basis_hi + 2;
  std::vector<double> log_radial(cmax - cmin + 1);
  std::vector<double> terms(rule.nodes.size());
  for (int c = cmin; c <= cmax; ++c) {
    const double ustar = c >= 0 ? hi : lo;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = mid + half * rule.nodes[i];
      terms[i] = std::log(rule.weights[i] * half) + c * (u - ustar);
    }
    log_radial[c - cmin] = c * ustar + log_sum_exp(terms);
  }

  // Angular factor relative to the zero frequency.
  const int M = g.quad.angular_nodes;
  std::vector<std::complex<double>> ang(2 * width + 1);
  for (int k = -width; k <= width; ++k) {
    std::complex<double> s = 0.0;
    for (int t = 0; t < M; ++t) {
      const double th = kTwoPi * t / M;
      s += std::polar(1.0, k * th);
    }
    ang[k + width] = s / static_cast<double>(M);
  }

  const long w = width + 1;
  g.log_diag.resize(w);
  for (long a = 0; a < w; ++a) {
    g.log_diag[a] = log_radial[2 * a] + std::log(kTwoPi);
  }
  g.normalized.resize(w, w);
  for (long a = 0; a < w; ++a) {
    for (long b = 0; b < w; ++b) {
      const double lr = log_radial[a + b] - 0.5 * (log_radial[2 * a] + log_radial[2 * b]);
      g.normalized(a, b) = std::exp(lr) * ang[(a - b) + width];
    }
  }

  Eigen::MatrixXcd check = g.normalized;
  factor(check, "Gram matrix");
  return g;
}

std::pair<int, int> balanced_window(int N, double alpha) {
  if (N < 4) throw DomainError("oracle basis needs N >= 4");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  int pos = static_cast<int>(std::lround(2.0 * N * (1.0 - alpha)));
  pos = std::clamp(pos, 2, 2 * N - 2);
  return {pos - 2 * N, pos};
}

ExtremalSolution extremal_solve(const GramSystem& g, std::complex<double> z, int j) {
  if (j < 0 || j > 2) throw DomainError("derivative order must be 0, 1 or 2");
  const CanonicalPoint p = normalize(g.ann, z);
  const std::complex<double> zc = z - g.ann.center();
  const double log_abs = p.log_scale, arg = std::arg(zc);
  const long w = static_cast<long>(g.size());

  // Functionals in the Jacobi-scaled basis: e_i(n) = d_i(n) / sqrt(G_nn).
  // Each row is stored divided by exp(shift[i]).
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(j + 1, w);
  std::vector<double> shift(j + 1), log_dnorm(j + 1);
  std::vector<double> logs(w), dlogs(w);
  for (int i = 0; i <= j; ++i) {
    std::vector<double> mags(w, kMinusInf), signs(w, 1.0);
    for (long a = 0; a < w; ++a) {
      const int n = g.basis_lo + static_cast<int>(a);
      double lm, sg;
      if (!falling(n, i, lm, sg)) {
        logs[a] = kMinusInf;
        dlogs[a] = kMinusInf;
        continue;
      }
      const double ld = lm + (n - i) * log_abs;
      dlogs[a] = 2.0 * ld;
      mags[a] = ld - 0.5 * g.log_diag[a];
      signs[a] = sg;
      logs[a] = mags[a];
    }
    shift[i] = *std::max_element(mags.begin(), mags.end());
    log_dnorm[i] = 0.5 * log_sum_exp(dlogs);
    for (long a = 0; a < w; ++a) {
      if (mags[a] == kMinusInf) continue;
      const int n = g.basis_lo + static_cast<int>(a);
      E(i, a) = signs[a] * std::exp(mags[a] - shift[i]) * std::polar(1.0, (n - i) * arg);
    }
  }

  // Null space of the constraint rows 0..j-1 by Gauss-Jordan elimination with
  // complete pivoting.
  Eigen::MatrixXcd C = E.topRows(j);
  std::vector<long> pivots;
  std::vector<bool> is_pivot(w, false);
  for (int r = 0; r < j; ++r) {
    double best = 0.0;
    long br = -1, bc = -1;
    for (int i = r; i < j; ++i)
      for (long a = 0; a < w; ++a)
        if (!is_pivot[a] && std::abs(C(i, a)) > best) {
          best = std::abs(C(i, a));
          br = i;
          bc = a;
        }
    if (br < 0 || best < 1e-13) {
      throw InternalError("oracle constraint rows are rank-deficient");
    }
    C.row(r).swap(C.row(br));
    C.row(r) /= C(r, bc);
    for (int i = 0; i < j; ++i)
      if (i != r) C.row(i) -= C(i, bc) * C.row(r);
    pivots.push_back(bc);
    is_pivot[bc] = true;
  }
  const long f = w - j;
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(w, f);
  long col = 0;
  for (long a = 0; a < w; ++a) {
    if (is_pivot[a]) continue;
    Q(a, col) = 1.0;
    for (int r = 0; r < j; ++r) Q(pivots[r], col) = -C(r, a);
    ++col;
  }

  Eigen::MatrixXcd H = Q.adjoint() * g.normalized * Q;
  H = 0.5 * (H + H.adjoint()).eval();
  ExtremalSolution sol;
  sol.ridge_used = factor(H, "constrained Gram matrix");
  // maximize |v^T y|^2 subject to y^* H y <= 1: value c^* H^-1 c, c = conj(v).
  const Eigen::VectorXcd v = (E.row(j) * Q).transpose();
  const Eigen::VectorXcd c = v.conjugate();
  const auto Lf = H.triangularView<Eigen::Lower>();
  const Eigen::VectorXcd t = Lf.solve(c);
  const double val_scaled = t.squaredNorm();
  if (!(val_scaled > 0.0) || !std::isfinite(val_scaled)) {
    throw InternalError("oracle extremal value is not positive");
  }
  sol.value = val_scaled * std::exp(2.0 * shift[j]);
  const Eigen::VectorXcd y = Lf.adjoint().solve(t) / std::sqrt(val_scaled);
  sol.coefficients = Q * y;

  // |d_i.a| = |e_i.b| exp(shift_i); ||a||^2 = sum |b_n|^2 G_nn.
  std::vector<double> alogs(w);
  for (long a = 0; a < w; ++a) {
    const double m = std::abs(sol.coefficients[a]);
    alogs[a] = m > 0.0 ? 2.0 * std::log(m) + g.log_diag[a] : kMinusInf;
  }
  const double log_anorm = 0.5 * log_sum_exp(alogs);
  for (int i = 0; i < j; ++i) {
    const double dot = std::abs(E.row(i).dot(sol.coefficients.conjugate()));
    if (dot == 0.0) continue;
    const double rel = std::exp(std::log(dot) + shift[i] - log_dnorm[i] - log_anorm);
    sol.constraint_residual = std::max(sol.constraint_residual, rel);
  }
  return sol;
}

double extremal_j(const GramSystem& g, std::complex<double> z, int j) {
  return extremal_solve(g, z, j).value;
}

void check_envelope(const Annulus& ann, int N) {
  const double q = std::exp(-ann.log_modulus());
  std::ostringstream os;
  if (!(q >= 0.02 && q <= 0.9)) {
    os << "oracle envelope: modulus ratio " << q << " outside [0.02, 0.9]";
    throw EnvelopeError(os.str());
  }
  if (N < 4 || N > 60) {
    os << "oracle envelope: basis size N = " << N << " outside [4, 60]";
    throw EnvelopeError(os.str());
  }
}

BergmanEval oracle_bergman(const Annulus& ann, std::complex<double> z, int N,
                           const QuadratureSpec& quad) {
  check_envelope(ann, N);
  const CanonicalPoint p = normalize(ann, z);
  const auto [lo, hi] = balanced_window(N, p.alpha());
  const GramSystem g = build_gram_window(ann, lo, hi, quad);
  JTriple t{extremal_j(g, z, 0), extremal_j(g, z, 1), extremal_j(g, z, 2)};
  BergmanEval e = derive_eval(t);
  e.log_scale = p.log_scale;
  e.alpha = p.alpha();
  e.L = p.L();
  e.terms_used = g.size();
  const double s = p.log_scale;
  e.canonical = {t.j0 * std::exp(2.0 * s), t.j1 * std::exp(4.0 * s), t.j2 * std::exp(6.0 * s)};
  return e;
}

}  // namespace bergman
