// Acceptance checks. `modlat_acceptance` runs all criteria, `modlat_acceptance N`
// runs one. Each prints a PASS/FAIL line followed by indented details of
// whatever went wrong; the exit status is nonzero if any selected criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "modlat/codes.hpp"
#include "modlat/fixtures.hpp"
#include "modlat/lattice.hpp"
#include "modlat/modform.hpp"
#include "modlat/secrecy.hpp"
#include "modlat/theta.hpp"
#include "support.hpp"

using namespace modlat;

namespace {

// Pinned tolerances.
constexpr double kGainTol = 1e-5;        // printed gains carry six significant digits
constexpr double kSymmetryTol = 1e-9;    // Xi(y) against Xi(1/(ell y))
constexpr double kPeakDbTol = 1e-4;      // located maximum against the symmetry point
constexpr double kPeakValueTol = 1e-5;   // located maximum against the gain
constexpr double kBw16Gain = 2.20564;
constexpr int kRoundTrips = 200;

// Wall-clock targets in seconds.
constexpr double kTable1Seconds = 10;
constexpr double kTable2Seconds = 30;
constexpr double kCodeSeconds = 5;
constexpr double kEnumerationSeconds = 60;

struct Outcome {
  std::vector<std::string> problems;
  std::string summary;
  void fail(std::string s) { problems.push_back(std::move(s)); }
  bool ok() const { return problems.empty(); }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<KnownCoefficient> enumerated(const GramMatrix& g, int through) {
  std::vector<KnownCoefficient> out;
  for (const auto& nc : theta_coefficients(g, through))
    out.push_back({nc.norm, Rational(Integer(static_cast<unsigned long>(nc.count)))});
  return out;
}

void check_runtime(Outcome& o, double seconds, double target) {
  if (seconds > target) o.fail("took " + fmt("%.2f", seconds) + " s, target " + fmt("%.0f", target) + " s");
}

// 1: even-level table. Decompositions solve back to the shipped coefficients
// and their gains match the printed values.
void table1(Outcome& o) {
  const auto checks = verify_table(TableId::Even);
  const auto rows = even_table();
  int good = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    for (const auto& f : checks[i].failures) o.fail(r.name + ": " + f);
    const BasisSpec basis = build_basis(r.ell, r.dim, BasisKind::Even);
    std::vector<KnownCoefficient> data;
    if (r.known) data = *r.known;
    else if (r.catalog) data = enumerated(catalog(*r.catalog).gram, 8);
    const ThetaDecomposition solved = solve_coefficients(basis, data);
    if (solved.coeffs != r.coeffs) o.fail(r.name + ": solved " + pretty(solved));
    const double chi = weak_secrecy_gain(SecrecySource::from_decomposition(solved)).xi;
    if (std::abs(chi - r.chi_w) > kGainTol) {
      o.fail(r.name + ": chi_w " + fmt("%.7f", chi) + " vs printed " + r.chi_w_printed + " (diff " +
             fmt("%.2e", std::abs(chi - r.chi_w)) + ")");
    } else {
      ++good;
    }
  }
  o.summary = std::to_string(good) + "/" + std::to_string(rows.size()) + " gains within " + fmt("%.0e", kGainTol);
}

// 2: level-2 table with the general basis, plus the dimension 8 code pipeline.
void table2(Outcome& o) {
  const auto checks = verify_table(TableId::Odd);
  const auto rows = odd_table();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string label = "dim " + std::to_string(r.dim);
    for (const auto& f : checks[i].failures) o.fail(label + ": " + f);
    const double chi = weak_secrecy_gain(SecrecySource::from_decomposition(
                                             make_decomposition(2, r.dim, BasisKind::General, r.coeffs)))
                           .xi;
    if (std::abs(chi - r.chi_w) > kGainTol)
      o.fail(label + ": chi_w " + fmt("%.7f", chi) + " vs printed " + r.chi_w_printed);
  }

  const CodeOverR code = load_code("PSole_dim8");
  if (enumerate_codewords(code).size() != 81) o.fail("code does not have 81 codewords");
  const auto lwe = length_weight_enumerator(code);
  if (pretty(lwe) != "a^4 + 4a^2d^2 + 16abcd + 8ad^3 + 8b^3d + 4b^2c^2 + 24bcd^2 + 8c^3d + 8d^4")
    o.fail("lwe " + pretty(lwe));
  const QSeries theta = theta_from_lwe(lwe, 5);
  if (pretty(theta) != "1 + 32q^2 + 128q^3 + 240q^4") o.fail("theta " + pretty(theta));
  std::vector<KnownCoefficient> known;
  for (int e = 0; e <= 4; ++e) known.push_back({e, theta.coeff_at(e)});
  const ThetaDecomposition d = solve_coefficients(build_basis(2, 8, BasisKind::General), known);
  if (d.coeffs != std::vector<Rational>{1, -8, 0}) o.fail("code decomposition " + pretty(d));
  o.summary = std::to_string(rows.size()) + " rows, code pipeline gives " + pretty(d);
}

// 3: the enumerator substitution agrees with enumerating the Construction A lattice.
void code_theta(Outcome& o) {
  const CodeOverR code = load_code("PSole_dim8");
  const QSeries theta = theta_from_lwe(length_weight_enumerator(code), 7);
  const GramMatrix g = construction_a_gram(code);
  if (determinant(g) != 16) o.fail("det " + determinant(g).get_str());
  for (const GramMatrix& h : {g, catalog("ExampleDim8").gram})
    for (const auto& nc : theta_coefficients(h, 6))
      if (theta.coeff_at(nc.norm) != Rational(Integer(static_cast<unsigned long>(nc.count))))
        o.fail("norm " + nc.norm.get_str() + ": " + theta.coeff_at(nc.norm).get_str() + " vs " +
               std::to_string(nc.count));
  o.summary = "through norm 6, det 16";
}

// 4: theta/eta identities, alternative forms and coset completeness.
void identities(Outcome& o) {
  const Rational order = 12;
  int count = 0;
  for (const auto& c : verify_theta_eta_identities(order)) {
    ++count;
    if (!c.pass) o.fail(c.name);
  }
  for (const auto& c : verify_alternative_forms(order)) {
    ++count;
    if (!c.pass) o.fail(c.name);
  }
  const auto t = coset_thetas(order);
  const QSeries whole = expand({FormName::Theta3, Rational(1, 3)}, order) *
                        expand({FormName::Theta3, Rational(2, 3)}, order);
  if (t[0] + 2 * t[1] + 2 * t[2] + 4 * t[3] != whole) o.fail("coset completeness");
  o.summary = std::to_string(count + 1) + " identities through q^12";
}

std::vector<ThetaDecomposition> all_rows() {
  std::vector<ThetaDecomposition> out;
  for (const auto& r : even_table()) out.push_back(make_decomposition(r.ell, r.dim, BasisKind::Even, r.coeffs));
  for (const auto& r : odd_table()) out.push_back(make_decomposition(2, r.dim, BasisKind::General, r.coeffs));
  return out;
}

// 5: every shipped row is symmetric about 1/sqrt(ell) and peaks there.
void symmetry(Outcome& o) {
  double worst = 0.0;
  double worst_db = 0.0;
  for (const auto& d : all_rows()) {
    const SecrecySource src = SecrecySource::from_decomposition(d);
    const std::string label = "ell=" + std::to_string(d.basis.ell) + " n=" + std::to_string(d.basis.dim());
    for (int i = 0; i < 20; ++i) {
      const double y = 0.2 * std::pow(25.0, i / 19.0);
      const double diff = std::abs(secrecy_function(src, y).xi - secrecy_function(src, 1.0 / (d.basis.ell * y)).xi);
      worst = std::max(worst, diff);
      if (diff > kSymmetryTol) o.fail(label + ": asymmetric by " + fmt("%.2e", diff) + " at y=" + fmt("%.4f", y));
    }
    const double center = symmetry_point_db(d.basis.ell);
    const MaximumReport peak = locate_maximum(src, center - 6, center + 6);
    const double chi = weak_secrecy_gain(src).xi;
    worst_db = std::max(worst_db, std::abs(peak.y_db - center));
    if (std::abs(peak.y_db - center) > kPeakDbTol) o.fail(label + ": peak at " + fmt("%.6f", peak.y_db) + " dB");
    if (std::abs(peak.xi - chi) > kPeakValueTol) o.fail(label + ": peak value " + fmt("%.7f", peak.xi));
    if (!peak.unimodal) o.fail(label + ": " + std::to_string(peak.local_maxima) + " local maxima");
  }
  o.summary = "max asymmetry " + fmt("%.1e", worst) + ", max peak offset " + fmt("%.1e", worst_db) + " dB";
}

// 6: enumerated theta series equal the modular-form expansions through norm 8.
void enumeration(Outcome& o) {
  const std::vector<std::pair<std::string, ThetaDecomposition>> cases{
      {"A2", make_decomposition(3, 2, BasisKind::Even, {1})},
      {"D4", make_decomposition(2, 4, BasisKind::Even, {1})},
      {"E8", make_decomposition(1, 8, BasisKind::Even, {1})},
      {"ExampleDim8", make_decomposition(2, 8, BasisKind::General, {1, -8})},
      {"BW16", make_decomposition(2, 16, BasisKind::Even, {1, -96})},
  };
  for (const auto& [name, d] : cases) {
    const QSeries s = expand_decomposition(d, 9);
    for (const auto& nc : theta_coefficients(catalog(name).gram, 8))
      if (s.coeff_at(nc.norm) != Rational(Integer(static_cast<unsigned long>(nc.count))))
        o.fail(name + " norm " + nc.norm.get_str() + ": " + std::to_string(nc.count) + " vs " +
               s.coeff_at(nc.norm).get_str());
  }
  o.summary = std::to_string(cases.size()) + " lattices through norm 8";
}

// 7: random decompositions expand and solve back exactly.
void round_trips(Outcome& o) {
  std::mt19937 rng(20240611);
  const std::vector<std::tuple<int, int, BasisKind>> shapes{
      {1, 24, BasisKind::Even}, {2, 16, BasisKind::Even}, {2, 24, BasisKind::Even},
      {3, 12, BasisKind::Even}, {3, 24, BasisKind::Even}, {2, 8, BasisKind::General},
      {2, 22, BasisKind::General}, {2, 30, BasisKind::General},
  };
  int total = 0;
  for (const auto& [ell, n, kind] : shapes) {
    const BasisSpec basis = build_basis(ell, n, kind);
    const Rational order = floor(fitting_exponents(basis).back()) + 3;
    std::vector<QSeries> terms;
    for (std::size_t i = 0; i < basis.terms.size(); ++i) terms.push_back(expand_term(basis, i, order));
    for (int trial = 0; trial < kRoundTrips; ++trial, ++total) {
      ThetaDecomposition d{basis, {}};
      QSeries s = QSeries::zero(order);
      for (std::size_t i = 0; i < basis.terms.size(); ++i) {
        d.coeffs.push_back(modlat::testing::random_rational(rng, 1000, 9));
        s = s + d.coeffs.back() * terms[i];
      }
      std::vector<KnownCoefficient> known;
      for (Rational e = 0; e < order; e += 1) known.push_back({e, s.coeff_at(e)});
      if (!(solve_coefficients(basis, known) == d)) {
        o.fail("ell=" + std::to_string(ell) + " n=" + std::to_string(n) + " trial " + std::to_string(trial));
        break;
      }
    }
  }
  o.summary = std::to_string(total) + " round trips over " + std::to_string(shapes.size()) + " shapes";
}

// 8: BW16 secrecy curve.
void bw16_curve(Outcome& o) {
  const SecrecySource src = SecrecySource::from_decomposition(make_decomposition(2, 16, BasisKind::Even, {1, -96}));
  const auto curve = secrecy_curve(src, -6, 3, 200);
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < curve.size(); ++i)
    maxima += curve[i].xi > curve[i - 1].xi && curve[i].xi > curve[i + 1].xi;
  if (maxima != 1) o.fail(std::to_string(maxima) + " local maxima on the sampled curve");
  const double center = symmetry_point_db(2);
  double worst = 0.0;
  for (const auto& p : curve) {
    const double mirrored = secrecy_function(src, from_db(2 * center - p.y_db)).xi;
    worst = std::max(worst, std::abs(mirrored - p.xi));
  }
  if (worst > kSymmetryTol) o.fail("mirror asymmetry " + fmt("%.2e", worst));
  const MaximumReport peak = locate_maximum(src, -6, 3);
  if (std::abs(peak.xi - kBw16Gain) > kPeakValueTol) o.fail("peak value " + fmt("%.7f", peak.xi));
  if (std::abs(peak.y_db - center) > kPeakDbTol) o.fail("peak at " + fmt("%.6f", peak.y_db) + " dB");
  o.summary = "peak " + fmt("%.7f", peak.xi) + " at " + fmt("%.6f", peak.y_db) + " dB";
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> body;
  double seconds_target;  // 0: none
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "even-level table decompositions and gains", table1, kTable1Seconds},
      {2, "level-2 general-basis table and code pipeline", table2, kTable2Seconds},
      {3, "code enumerator theta equals lattice enumeration", code_theta, kCodeSeconds},
      {4, "q-series identities", identities, 0},
      {5, "secrecy function symmetry and peak location", symmetry, 0},
      {6, "enumeration against modular-form expansions", enumeration, kEnumerationSeconds},
      {7, "decomposition round trips", round_trips, 0},
      {8, "BW16 secrecy curve", bw16_curve, 0},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all_ok = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    ran = true;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds_target > 0) check_runtime(o, seconds, c.seconds_target);
    std::cout << (o.ok() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title;
    if (!o.summary.empty()) std::cout << " (" << o.summary << ")";
    std::cout << " [" << fmt("%.2f", seconds) << " s]\n";
    for (const auto& p : o.problems) std::cout << "    " << p << "\n";
    all_ok = all_ok && o.ok();
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all_ok ? 0 : 1;
}
