#include "modlat/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "json.hpp"
#include "modlat/errors.hpp"

namespace modlat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxTerms = 1'000'000;

// Interval-style propagation of absolute truncation bounds.
Bounded operator*(const Bounded& x, const Bounded& y) {
  return {x.value * y.value,
          std::abs(x.value) * y.tail + std::abs(y.value) * x.tail + x.tail * y.tail,
          x.terms + y.terms};
}

Bounded operator+(const Bounded& x, const Bounded& y) {
  return {x.value + y.value, x.tail + y.tail, x.terms + y.terms};
}

Bounded scaled(const Bounded& x, double c) { return {c * x.value, std::abs(c) * x.tail, x.terms}; }

Bounded power(const Bounded& x, int e) {
  Bounded out{1.0, 0.0, 0};
  for (int i = 0; i < e; ++i) out = out * x;
  out.terms = x.terms;
  return out;
}

// sum over m in Z of sign^m exp(-pi t (m + shift)^2), shift in {0, 1/2}.
Bounded jacobi_numeric(double t, bool half_shift, bool alternating, double eps) {
  const auto exponent = [&](std::size_t m) {
    const double x = half_shift ? static_cast<double>(m) + 0.5 : static_cast<double>(m);
    return x * x;
  };
  double sum = 0.0;
  for (std::size_t m = 0; m < kMaxTerms; ++m) {
    const double weight = (m == 0 && !half_shift) ? 1.0 : 2.0;
    const double sign = (alternating && m % 2 == 1) ? -1.0 : 1.0;
    sum += sign * weight * std::exp(-kPi * t * exponent(m));
    const double next = 2.0 * std::exp(-kPi * t * exponent(m + 1));
    if (next < eps * std::abs(sum)) {
      // Successive term ratios only shrink from here on.
      const double ratio = std::exp(-kPi * t * (exponent(m + 2) - exponent(m + 1)));
      return {sum, next / (1.0 - ratio), m + 1};
    }
  }
  throw TailBoundNotMet("theta sum did not converge at t = " + std::to_string(t));
}

// eta(i t) = exp(-pi t / 12) prod_{m >= 1} (1 - exp(-2 pi t m)).
Bounded eta_numeric(double t, double eps) {
  const double x = std::exp(-2.0 * kPi * t);
  double prod = 1.0;
  double xm = 1.0;
  for (std::size_t m = 1; m < kMaxTerms; ++m) {
    xm *= x;
    prod *= 1.0 - xm;
    const double next = xm * x;
    if (next < eps) {
      // The rest of the product lies in [exp(-s), 1].
      const double s = next / ((1.0 - x) * (1.0 - next));
      const double value = std::exp(-kPi * t / 12.0) * prod;
      return {value, value * -std::expm1(-s), m};
    }
  }
  throw TailBoundNotMet("eta product did not converge at t = " + std::to_string(t));
}

Bounded form_at(FormName name, double t, double eps) {
  const auto th2 = [&](double s) { return jacobi_numeric(s, true, false, eps); };
  const auto th3 = [&](double s) { return jacobi_numeric(s, false, false, eps); };
  const auto th4 = [&](double s) { return jacobi_numeric(s, false, true, eps); };
  const auto eta = [&](double s) { return eta_numeric(s, eps); };
  switch (name) {
    case FormName::Theta2: return th2(t);
    case FormName::Theta3: return th3(t);
    case FormName::Theta4: return th4(t);
    case FormName::Eta: return eta(t);
    case FormName::ThetaD4: return scaled(power(th3(t), 4) + power(th4(t), 4), 0.5);
    case FormName::Delta16: return power(eta(t) * eta(2 * t), 8);
    case FormName::ThetaA2: return th2(2 * t) * th2(6 * t) + th3(2 * t) * th3(6 * t);
    case FormName::Delta12: return power(eta(t) * eta(3 * t), 6);
    case FormName::ThetaE8:
      return scaled(power(th2(t), 8) + power(th3(t), 8) + power(th4(t), 8), 0.5);
    case FormName::Delta24: return power(eta(t), 24);
    case FormName::F1Ell2: return th3(t) * th3(2 * t);
    case FormName::Delta4: return scaled(power(th2(2 * t), 2) * power(th4(t), 2), 0.25);
  }
  throw Error("unhandled form");
}

void check_point(double y, double eps) {
  if (!(y > 0.0) || !std::isfinite(y)) throw Error("evaluation point y must be positive");
  if (!(eps > 0.0)) throw Error("eps must be positive");
}

// log of (1 + 2 sqrt(r / minimum))^n: the packing bound on #{v : |v|^2 <= r}.
double log_count_bound(double r, double minimum, std::size_t n) {
  return static_cast<double>(n) * std::log1p(2.0 * std::sqrt(r / minimum));
}

// Upper bound on sum over |v|^2 > m of exp(-pi y |v|^2), shell by shell.
double packing_tail(double m, double y, double minimum, std::size_t n) {
  const double h = std::max(minimum / 4.0, 0.25);
  double sum = 0.0;
  for (std::size_t j = 0; j < kMaxTerms; ++j) {
    const double lo = m + static_cast<double>(j) * h;
    const double log_term = -kPi * y * lo + log_count_bound(lo + h, minimum, n);
    const double term = std::exp(log_term);
    sum += term;
    // Past the peak of the shell bound and negligible: stop.
    const double slope = -kPi * y + static_cast<double>(n) / (std::sqrt(lo * minimum) + 2.0 * lo);
    if (slope < 0 && term < 1e-6 * sum) {
      const double ratio = std::exp(slope * h);
      return sum + term * ratio / (1.0 - ratio);
    }
  }
  return INFINITY;
}

}  // namespace

Bounded eval_theta_numeric(const NamedForm& form, double y, double eps) {
  check_point(y, eps);
  return form_at(form.name, to_double(form.scale) * y, eps);
}

Bounded eval_theta_numeric(const ThetaDecomposition& d, double y, double eps) {
  check_point(y, eps);
  const auto [theta, cusp] = generator_forms(d.basis);
  const Bounded t = form_at(theta, y, eps);
  const Bounded c = form_at(cusp, y, eps);
  Bounded out{0.0, 0.0, 0};
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
    if (d.coeffs[i] == 0) continue;
    const BasisTerm& term = d.basis.terms[i];
    out = out + scaled(power(t, term.lambda) * power(c, term.mu), to_double(d.coeffs[i]));
  }
  out.terms = t.terms + c.terms;
  return out;
}

Bounded eval_theta_numeric(const GramMatrix& g, double y, double eps,
                           const EnumerationOptions& options) {
  check_point(y, eps);
  double minimum = 0.0;
  try {
    minimum = to_double(minimum_norm(g, options));
  } catch (const BoundTooLarge& e) {
    throw TailBoundNotMet(std::string("minimum norm beyond the enumeration budget (") + e.what() + ")");
  }
  const std::size_t n = g.dim();
  const double step = std::max(to_double(norm_step(g)), 0.25);
  double m = minimum;
  double tail = packing_tail(m, y, minimum, n);
  while (tail >= eps) {
    m += step;
    if (m > 1e4) throw TailBoundNotMet("no finite norm cutoff reaches eps");
    tail = packing_tail(m, y, minimum, n);
  }
  std::vector<NormCount> counts;
  try {
    counts = theta_coefficients(g, Rational(std::ceil(m)), options);
  } catch (const BoundTooLarge& e) {
    throw TailBoundNotMet("eps needs norms up to " + std::to_string(std::ceil(m)) +
                          ", beyond the enumeration budget (" + e.what() + ")");
  }
  // Sum small terms first.
  double sum = 0.0;
  for (auto it = counts.rbegin(); it != counts.rend(); ++it)
    sum += static_cast<double>(it->count) * std::exp(-kPi * y * to_double(it->norm));
  return {sum, packing_tail(std::ceil(m), y, minimum, n), counts.size()};
}

SecrecySource SecrecySource::from_decomposition(const ThetaDecomposition& d) {
  return SecrecySource{d, d.basis.ell, d.basis.dim(), {}};
}

SecrecySource SecrecySource::from_gram(const GramMatrix& g, int ell) {
  return SecrecySource{g, ell, static_cast<int>(g.dim()), {}};
}

SecrecySource SecrecySource::cubic(int n) {
  if (n < 1) throw Error("dimension must be positive");
  return SecrecySource{CubicLattice{n}, 1, n, {}};
}

std::string SecrecySource::label() const {
  if (const auto* d = std::get_if<ThetaDecomposition>(&lattice)) return pretty(*d);
  if (std::holds_alternative<GramMatrix>(lattice)) return "gram(" + std::to_string(n) + ")";
  return "Z" + std::to_string(n);
}

SecrecyEvaluation secrecy_function(const SecrecySource& source, double y, double eps) {
  check_point(y, eps);
  Bounded lattice;
  if (const auto* d = std::get_if<ThetaDecomposition>(&source.lattice)) {
    lattice = eval_theta_numeric(*d, y, eps);
  } else if (const auto* g = std::get_if<GramMatrix>(&source.lattice)) {
    lattice = eval_theta_numeric(*g, y, eps, source.enumeration);
  } else {
    const auto& z = std::get<CubicLattice>(source.lattice);
    lattice = power(jacobi_numeric(y, false, false, eps), z.n);
  }
  const Bounded reference =
      power(jacobi_numeric(std::sqrt(static_cast<double>(source.ell)) * y, false, false, eps), source.n);
  if (lattice.value - lattice.tail <= 0.0) throw TailBoundNotMet("lattice theta value not bounded away from 0");

  SecrecyEvaluation out;
  out.y = y;
  out.theta_lattice = lattice.value;
  out.theta_reference = reference.value;
  out.xi = reference.value / lattice.value;
  out.terms_used = lattice.terms + reference.terms;
  // |a/b - A/B| with |a-A| <= da, |b-B| <= db.
  out.bound_on_tail =
      (reference.tail + out.xi * lattice.tail) / (lattice.value - lattice.tail);
  return out;
}

SecrecyEvaluation weak_secrecy_gain(const SecrecySource& source, double eps) {
  return secrecy_function(source, 1.0 / std::sqrt(static_cast<double>(source.ell)), eps);
}

double to_db(double y) { return 10.0 * std::log10(y); }
double from_db(double y_db) { return std::pow(10.0, y_db / 10.0); }
double symmetry_point_db(int ell) { return -5.0 * std::log10(static_cast<double>(ell)); }

std::vector<CurvePoint> secrecy_curve(const SecrecySource& source, double lo_db, double hi_db,
                                      int samples, double eps) {
  if (!(lo_db < hi_db)) throw Error("curve range must have lo < hi");
  if (samples < 2) throw Error("curve needs at least 2 samples");
  std::vector<CurvePoint> out;
  for (int i = 0; i < samples; ++i) {
    const double x = lo_db + (hi_db - lo_db) * i / (samples - 1);
    out.push_back({x, secrecy_function(source, from_db(x), eps).xi});
  }
  return out;
}

std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "y_db,xi\n";
  char line[64];
  for (const auto& p : curve) {
    std::snprintf(line, sizeof line, "%.6f,%.10f\n", p.y_db, p.xi);
    out += line;
  }
  return out;
}

std::string curve_to_json(const std::vector<CurvePoint>& curve) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : curve) j.push_back({{"y_db", p.y_db}, {"xi", p.xi}});
  return j.dump();
}

MaximumReport locate_maximum(const SecrecySource& source, double lo_db, double hi_db,
                             double tol_db, double eps) {
  constexpr int kScan = 97;
  const auto f = [&](double x) { return secrecy_function(source, from_db(x), eps).xi; };
  const std::vector<CurvePoint> scan = secrecy_curve(source, lo_db, hi_db, kScan, eps);

  MaximumReport report;
  std::size_t best = 0;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (scan[i].xi > scan[best].xi) best = i;
    if (i > 0 && i + 1 < scan.size() && scan[i].xi > scan[i - 1].xi && scan[i].xi > scan[i + 1].xi)
      ++report.local_maxima;
  }
  report.unimodal = report.local_maxima <= 1;

  double a = scan[best == 0 ? 0 : best - 1].y_db;
  double b = scan[std::min(best + 1, scan.size() - 1)].y_db;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol_db) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  report.y_db = 0.5 * (a + b);
  report.xi = f(report.y_db);
  if (scan[best].xi > report.xi) {
    report.y_db = scan[best].y_db;
    report.xi = scan[best].xi;
  }
  return report;
}

}  // namespace modlat
