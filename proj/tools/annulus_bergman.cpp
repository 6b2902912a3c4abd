// annulus-bergman: point evaluation, sweeps, asymptotic checks, oracle
// cross-checks and Zalcman-type construction.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bergman/asymptotics.hpp"
#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/oracle.hpp"
#include "bergman/zalcman.hpp"

using namespace bergman;

namespace {

enum Exit { kOk = 0, kUsage = 1, kMath = 2, kEnvelope = 3, kConstruction = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double plain_radius(double v, const char* flag) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string(flag) + " must be a positive finite radius");
  }
  if (v < 1e-300) {
    throw UsageError(std::string(flag) +
                     " below 1e-300 loses precision; pass the natural log with the --log-* form");
  }
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number in list: '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

// Radii from either plain or log flags.
struct RingFlags {
  std::optional<double> inner, outer, log_inner, log_outer;
  double center = 0.0, center_im = 0.0;

  void add(CLI::App* app) {
    auto* i = app->add_option("--inner", inner, "inner radius");
    auto* li = app->add_option("--log-inner", log_inner, "natural log of the inner radius");
    auto* o = app->add_option("--outer", outer, "outer radius (default 1)");
    auto* lo = app->add_option("--log-outer", log_outer, "natural log of the outer radius");
    i->excludes(li);
    o->excludes(lo);
    app->add_option("--center", center, "center, real part");
    app->add_option("--center-im", center_im, "center, imaginary part");
  }

  bool given() const { return inner || log_inner; }

  Annulus ring() const {
    double li, lo = 0.0;
    if (inner) li = std::log(plain_radius(*inner, "--inner"));
    else if (log_inner) li = *log_inner;
    else throw UsageError("--inner or --log-inner is required");
    if (outer) lo = std::log(plain_radius(*outer, "--outer"));
    else if (log_outer) lo = *log_outer;
    return Annulus::from_logs({center, center_im}, li, lo);
  }
};

Truncation make_trunc(double tol, std::size_t nmax) {
  Truncation t;
  t.rel_tol = tol;
  t.n_max = nmax;
  t.validate();
  return t;
}

// ---------------------------------------------------------------- eval

struct EvalFlags {
  RingFlags ring;
  std::optional<double> point;
  double point_im = 0.0;
  std::optional<double> alpha, log_r;
  double tol = 1e-14;
  std::size_t nmax = 100000;
  std::string format = "csv";
};

int run_eval(const EvalFlags& f) {
  const Truncation trunc = make_trunc(f.tol, f.nmax);
  BergmanEval e;
  double r_out;
  if (f.alpha) {
    if (f.ring.given()) throw UsageError("--alpha selects P(r, 1); do not combine with --inner");
    if (!f.log_r) throw UsageError("--alpha needs --log-r (the value of -log r)");
    if (!(*f.log_r > 0.0)) throw UsageError("--log-r is -log r and must be positive");
    if (!(*f.alpha > 0.0 && *f.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    e = bergman_eval_power_point(*f.log_r, *f.alpha, trunc);
    r_out = std::exp(-*f.log_r);
  } else {
    if (f.log_r) throw UsageError("--log-r is only used with --alpha");
    if (!f.point) throw UsageError("--point (or --alpha with --log-r) is required");
    const Annulus ann = f.ring.ring();
    e = bergman_eval(ann, {*f.point, f.point_im}, trunc);
    r_out = std::exp(ann.log_inner());
  }
  const std::vector<std::pair<std::string, std::string>> rec = {
      {"r", fmt(r_out)},
      {"L", fmt(e.L)},
      {"alpha", fmt(e.alpha)},
      {"J0", fmt(e.j.j0)},
      {"J1", fmt(e.j.j1)},
      {"J2", fmt(e.j.j2)},
      {"kernel", fmt(e.kernel)},
      {"metric_sq", fmt(e.metric_sq)},
      {"curvature", fmt(e.curvature)},
      {"defect", fmt(e.defect)},
      {"terms_used", std::to_string(e.terms_used)},
  };
  if (f.format == "json") {
    std::cout << "{";
    for (std::size_t i = 0; i < rec.size(); ++i) {
      std::cout << (i ? ", " : "") << '"' << rec[i].first << "\": " << rec[i].second;
    }
    std::cout << "}\n";
  } else {
    for (std::size_t i = 0; i < rec.size(); ++i) std::cout << (i ? "," : "") << rec[i].first;
    std::cout << "\n";
    for (std::size_t i = 0; i < rec.size(); ++i) std::cout << (i ? "," : "") << rec[i].second;
    std::cout << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
  double a_start = 0.25, a_stop = 0.75;
  int a_steps = 3;
  double L_start = 5.0, L_stop = 20.0;
  int L_steps = 4;
  std::string spacing = "linear";
  double tol = 1e-14;
  std::size_t nmax = 100000;
  std::string out = "-";
};

std::vector<double> grid(double start, double stop, int steps, bool log_spacing) {
  if (steps < 1) throw UsageError("grid steps must be >= 1");
  if (!(start < stop) && steps > 1) throw UsageError("grid needs start < stop");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw UsageError("grid bounds must be finite");
  if (log_spacing && !(start > 0.0)) throw UsageError("log spacing needs a positive start");
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    g[i] = log_spacing ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                       : start + t * (stop - start);
  }
  return g;
}

int run_sweep(const SweepFlags& f) {
  const Truncation trunc = make_trunc(f.tol, f.nmax);
  const auto alphas = grid(f.a_start, f.a_stop, f.a_steps, false);
  const auto Ls = grid(f.L_start, f.L_stop, f.L_steps, f.spacing == "log");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw UsageError("alpha grid must lie in (0, 1)");
  }
  for (double L : Ls) {
    if (!(L > 0.0)) throw UsageError("L grid must be positive");
  }
  std::ofstream file;
  if (f.out != "-") {
    file.open(f.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << f.out << " for writing\n";
      return kMath;
    }
  }
  std::ostream& os = f.out == "-" ? std::cout : file;
  os << "L,r,alpha,J0,J1,J2,kernel,metric_sq,curvature,defect,regime,rate,defect_times_inv_rate\n";
  int failures = 0;
  for (double a : alphas) {
    const RateLaw law = regime(a);
    for (double L : Ls) {
      os << fmt(L) << ',' << fmt(std::exp(-L)) << ',' << fmt(a) << ',';
      try {
        const BergmanEval e = bergman_eval_power_point(L, a, trunc);
        const double inv = law.inverse_rate(L);
        os << fmt(e.j.j0) << ',' << fmt(e.j.j1) << ',' << fmt(e.j.j2) << ',' << fmt(e.kernel)
           << ',' << fmt(e.metric_sq) << ',' << fmt(e.curvature) << ',' << fmt(e.defect) << ','
           << law.name() << ',' << fmt(1.0 / inv) << ',' << fmt(e.defect * inv) << '\n';
      } catch (const Error& err) {
        ++failures;
        std::cerr << "warning: cell (alpha=" << fmt(a) << ", L=" << fmt(L)
                  << ") failed: " << err.what() << "\n";
        os << "nan,nan,nan,nan,nan,nan,nan," << law.name() << ",nan,nan\n";
      }
    }
  }
  os.flush();
  if (!os) {
    std::cerr << "error: write failed\n";
    return kMath;
  }
  return failures ? kMath : kOk;
}

// ---------------------------------------------------------------- asym

struct AsymFlags {
  double alpha = 0.5;
  std::string L_list = "10,20,40,80";
  double eps = 0.02;
  bool fit = false;
  std::string fit_L = "60,90,120";
  std::optional<double> A_mag;
  std::string csv;
};

int run_asym(const AsymFlags& f) {
  if (!(f.alpha > 0.0 && f.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  if (!(f.eps > 0.0)) throw UsageError("--eps must be positive");
  const auto Ls = parse_list(f.L_list);
  const auto fit_Ls = parse_list(f.fit_L);

  // The third display carries an unknown constant; measure it unless given.
  double A = 0.0;
  if (f.A_mag) {
    A = *f.A_mag;
  } else {
    const std::vector<double> fit_alpha{0.8};
    A = fit_A(fit_alpha, fit_Ls).estimate;
  }
  const TildeSuite suite = tilde_suite(f.alpha, Ls, f.eps, A);
  static const char* names[3] = {"J0", "J1", "J2"};
  std::cout << "alpha = " << fmt(f.alpha) << ", eps = " << fmt(f.eps) << ", A_mag = " << fmt(A)
            << (f.A_mag ? " (given)" : " (fitted)") << "\n";
  for (int d = 0; d < 3; ++d) {
    const TildeReport& t = suite.displays[d];
    std::cout << "tilde " << names[d] << ": " << (t.pass ? "pass" : "FAIL") << "  e =";
    for (double e : t.e) std::cout << ' ' << fmt(e);
    std::cout << "\n";
  }
  try {
    const RateStudy rs = rate_constant_study(f.alpha, Ls);
    std::cout << "rate " << rs.law.name() << " p = " << fmt(rs.law.exponent)
              << ": defect * r^p * L = " << fmt(rs.last) << " (spread " << fmt(rs.spread)
              << (rs.cauchy ? ", settled)" : ", not settled)") << "\n";
  } catch (const Error& e) {
    std::cout << "rate study unavailable: " << e.what() << "\n";
  }
  if (f.fit) {
    const std::vector<double> al{f.alpha};
    const AFit fit = fit_A(al, fit_Ls);
    std::cout << "fit A_mag = " << fmt(fit.estimate) << " (rms rel residual " << fmt(fit.residual)
              << ", dominance " << fmt(fit.dominance) << ", > 100: "
              << (fit.exceeds_bound ? "yes" : "no") << ")\n";
  }
  if (!f.csv.empty()) {
    std::ofstream out(f.csv, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << f.csv << "\n";
      return kMath;
    }
    out << "L,e_j0,e_j1,e_j2\n";
    for (std::size_t i = 0; i < Ls.size(); ++i) {
      out << fmt(Ls[i]) << ',' << fmt(suite.displays[0].e[i]) << ','
          << fmt(suite.displays[1].e[i]) << ',' << fmt(suite.displays[2].e[i]) << '\n';
    }
  }
  return suite.pass ? kOk : kMath;
}

// ---------------------------------------------------------------- oracle

struct OracleFlags {
  RingFlags ring;
  std::optional<double> point;
  double point_im = 0.0;
  int basis = 40;
  int radial = 0, angular = 0;
  double rel_tol = 1e-6;
};

int run_oracle(const OracleFlags& f) {
  if (!f.point) throw UsageError("--point is required");
  const Annulus ann = f.ring.ring();
  const std::complex<double> z{*f.point, f.point_im};
  QuadratureSpec q;
  q.radial_nodes = f.radial;
  q.angular_nodes = f.angular;
  const BergmanEval o = oracle_bergman(ann, z, f.basis, q);
  const BergmanEval m = bergman_eval(ann, z);
  const double main_v[4] = {m.j.j0, m.j.j1, m.j.j2, m.curvature};
  const double orac_v[4] = {o.j.j0, o.j.j1, o.j.j2, o.curvature};
  static const char* names[4] = {"J0", "J1", "J2", "curvature"};
  bool ok = true;
  std::cout << "quantity,series,oracle,rel_dev\n";
  for (int i = 0; i < 4; ++i) {
    const double dev = std::abs(orac_v[i] - main_v[i]) / std::abs(main_v[i]);
    if (i < 3) ok = ok && dev <= f.rel_tol;
    std::cout << names[i] << ',' << fmt(main_v[i]) << ',' << fmt(orac_v[i]) << ',' << fmt(dev)
              << "\n";
  }
  std::cout << "basis_terms," << o.terms_used << "\n";
  return ok ? kOk : kMath;
}

// ---------------------------------------------------------------- zalcman

struct ZalcmanFlags {
  double theta = 0.5;
  int levels = 2;
  double slack = 0.1;
  int ceiling = 2000;
  std::string out = "-";
  std::string validate;
};

int run_zalcman(const ZalcmanFlags& f) {
  if (!f.validate.empty()) {
    std::ifstream in(f.validate, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << f.validate << "\n";
      return kUsage;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const GeometryReport rep = validate_geometry(from_json(ss.str()));
    if (rep.ok()) {
      std::cout << "pass\n";
      return kOk;
    }
    std::cout << "fail: " << rep.first_violation << "\n";
    return kConstruction;
  }
  if (f.levels < 1) throw UsageError("--levels must be >= 1");
  if (!(f.theta > 0.0 && f.theta < 1.0)) throw UsageError("--theta must lie in (0, 1)");
  if (!(f.slack >= 0.0 && f.slack < 1.0)) throw UsageError("--slack must lie in [0, 1)");
  ConstructOptions opts;
  opts.ceiling = f.ceiling;
  const std::string json = to_json(construct(f.theta, f.levels, f.slack, opts));
  if (f.out == "-") {
    std::cout << json;
  } else {
    std::ofstream out(f.out, std::ios::binary);
    out << json;
    if (!out) {
      std::cerr << "error: cannot write " << f.out << "\n";
      return kMath;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman kernel, metric and curvature on annuli"};
  app.require_subcommand(1);

  EvalFlags ef;
  auto* eval = app.add_subcommand("eval", "evaluate J0..J2, metric and curvature at a point");
  ef.ring.add(eval);
  auto* p = eval->add_option("--point", ef.point, "query point, real part");
  eval->add_option("--point-im", ef.point_im, "query point, imaginary part");
  auto* al = eval->add_option("--alpha", ef.alpha, "canonical P(r, 1) at r^alpha");
  eval->add_option("--log-r", ef.log_r, "-log r for the canonical form");
  p->excludes(al);
  eval->add_option("--tol", ef.tol, "series relative tolerance");
  eval->add_option("--nmax", ef.nmax, "series term cap");
  eval->add_option("--format", ef.format)->check(CLI::IsMember({"csv", "json"}));

  SweepFlags sf;
  auto* sweep = app.add_subcommand("sweep", "grid over (alpha, L) on P(r, 1) at r^alpha");
  sweep->add_option("--alpha-start", sf.a_start);
  sweep->add_option("--alpha-stop", sf.a_stop);
  sweep->add_option("--alpha-steps", sf.a_steps);
  sweep->add_option("--L-start", sf.L_start);
  sweep->add_option("--L-stop", sf.L_stop);
  sweep->add_option("--L-steps", sf.L_steps);
  sweep->add_option("--L-spacing", sf.spacing)->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--tol", sf.tol);
  sweep->add_option("--nmax", sf.nmax);
  sweep->add_option("--out", sf.out, "CSV path, - for stdout");

  AsymFlags af;
  auto* asym = app.add_subcommand("asym", "leading-order and rate checks as r -> 0");
  asym->add_option("--alpha", af.alpha)->required();
  asym->add_option("--L-list", af.L_list, "comma-separated L = -log r values");
  asym->add_option("--eps", af.eps);
  asym->add_flag("--fit-A", af.fit, "fit the constant of the third display at this alpha");
  asym->add_option("--fit-L", af.fit_L, "L values for the fit");
  asym->add_option("--A-mag", af.A_mag, "use this constant instead of fitting it");
  asym->add_option("--csv", af.csv, "write normalized errors here");

  OracleFlags of;
  auto* orc = app.add_subcommand("oracle", "compare the series path with the quadrature oracle");
  of.ring.add(orc);
  orc->add_option("--point", of.point);
  orc->add_option("--point-im", of.point_im);
  orc->add_option("--basis", of.basis, "Laurent basis size N (2N+1 terms)");
  orc->add_option("--radial-nodes", of.radial);
  orc->add_option("--angular-nodes", of.angular);
  orc->add_option("--rel-tol", of.rel_tol);

  ZalcmanFlags zf;
  auto* zal = app.add_subcommand("zalcman", "construct a certified hole sequence");
  zal->add_option("--theta", zf.theta);
  zal->add_option("--levels", zf.levels, "number of stages K");
  zal->add_option("--slack", zf.slack);
  zal->add_option("--ceiling", zf.ceiling, "largest hole index tried");
  zal->add_option("--out", zf.out, "JSON path, - for stdout");
  zal->add_option("--validate", zf.validate, "re-check a saved domain instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return run_eval(ef);
    if (*sweep) return run_sweep(sf);
    if (*asym) return run_asym(af);
    if (*orc) return run_oracle(of);
    if (*zal) return run_zalcman(zf);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const EnvelopeError& e) {
    std::cerr << "envelope error: " << e.what() << "\n";
    return kEnvelope;
  } catch (const ConstructionError& e) {
    std::cerr << "construction failed at stage " << e.stage() << ": " << e.what() << "\n";
    return kConstruction;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMath;
  }
  return kUsage;
}
