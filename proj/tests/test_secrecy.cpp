#include <cmath>
#include <numbers>

#include "doctest.h"
#include "modlat/errors.hpp"
#include "modlat/fixtures.hpp"
#include "modlat/secrecy.hpp"

using namespace modlat;

namespace {

ThetaDecomposition bw16() { return make_decomposition(2, 16, BasisKind::Even, {1, -96}); }
ThetaDecomposition dim8() { return make_decomposition(2, 8, BasisKind::General, {1, -8}); }

std::vector<ThetaDecomposition> table_decompositions() {
  std::vector<ThetaDecomposition> out;
  for (const auto& r : even_table()) out.push_back(make_decomposition(r.ell, r.dim, BasisKind::Even, r.coeffs));
  for (const auto& r : odd_table()) out.push_back(make_decomposition(2, r.dim, BasisKind::General, r.coeffs));
  return out;
}

}  // namespace

TEST_CASE("theta3 at y = 1") {
  // pi^{1/4} / Gamma(3/4).
  const double exact = std::pow(std::numbers::pi, 0.25) / std::tgamma(0.75);
  const Bounded t = eval_theta_numeric(NamedForm{FormName::Theta3, 1}, 1.0, 1e-15);
  const Bounded coarse = eval_theta_numeric(NamedForm{FormName::Theta3, 1}, 1.0);
  CHECK(std::abs(coarse.value - exact) <= coarse.tail + 1e-15);
  CHECK(t.value == doctest::Approx(exact).epsilon(1e-14));
  CHECK(std::abs(t.value - exact) <= t.tail + 1e-15);
  CHECK(t.value == doctest::Approx(1.0864348112133080).epsilon(1e-14));
}

TEST_CASE("two evaluation routes of Theta_D4") {
  for (double y : {0.3, 0.7, 1.0, 2.5}) {
    const double eps = 1e-13;
    const Bounded d4 = eval_theta_numeric(NamedForm{FormName::ThetaD4, 1}, y, eps);
    const double t2 = eval_theta_numeric(NamedForm{FormName::Theta2, 1}, y, eps).value;
    const double t3 = eval_theta_numeric(NamedForm{FormName::Theta3, 1}, y, eps).value;
    CHECK(std::abs(d4.value - (std::pow(t3, 4) - std::pow(t2, 4) / 2)) < 2 * eps * d4.value + 1e-14);
  }
}

TEST_CASE("large y limit") {
  for (const auto& d : table_decompositions()) CHECK(std::abs(eval_theta_numeric(d, 50.0).value - 1.0) < 1e-12);
  CHECK(std::abs(eval_theta_numeric(catalog("D4").gram, 50.0).value - 1.0) < 1e-12);
  CHECK_THROWS(eval_theta_numeric(NamedForm{FormName::Theta3, 1}, 0.0));
  CHECK_THROWS(eval_theta_numeric(NamedForm{FormName::Theta3, 1}, 1.0, 0.0));
}

TEST_CASE("weak secrecy gains") {
  CHECK(std::abs(weak_secrecy_gain(SecrecySource::from_decomposition(bw16())).xi - 2.20564) < 1e-5);
  CHECK(std::abs(weak_secrecy_gain(SecrecySource::from_decomposition(dim8())).xi - 1.22672) < 1e-5);
  CHECK(weak_secrecy_gain(SecrecySource::cubic(16)).xi == doctest::Approx(1.0).epsilon(1e-15));
  const auto e = weak_secrecy_gain(SecrecySource::from_decomposition(bw16()));
  CHECK(e.theta_lattice >= 1.0);
  CHECK(e.xi == doctest::Approx(e.theta_reference / e.theta_lattice));
  CHECK(e.bound_on_tail < 1e-9);
  for (const auto& d : table_decompositions()) CHECK(weak_secrecy_gain(SecrecySource::from_decomposition(d)).xi >= 1.0);
}

TEST_CASE("decomposition and Gram evaluations agree") {
  const std::vector<std::pair<std::string, ThetaDecomposition>> cases{
      {"D4", make_decomposition(2, 4, BasisKind::Even, {1})},
      {"A2", make_decomposition(3, 2, BasisKind::Even, {1})},
      {"ExampleDim8", dim8()},
  };
  for (const auto& [name, d] : cases) {
    const CatalogEntry entry = catalog(name);
    for (double y : {0.5, 1.0 / std::sqrt(static_cast<double>(entry.ell)), 2.0}) {
      CAPTURE(name);
      CAPTURE(y);
      const Bounded a = eval_theta_numeric(d, y);
      const Bounded b = eval_theta_numeric(entry.gram, y);
      CHECK(std::abs(a.value - b.value) <= a.tail + b.tail + 1e-13 * a.value);
    }
  }
}

TEST_CASE("tail bounds shrink with eps") {
  const auto loose = eval_theta_numeric(bw16(), 0.5, 1e-6);
  const auto tight = eval_theta_numeric(bw16(), 0.5, 1e-12);
  CHECK(tight.tail < loose.tail);
  CHECK(tight.terms > loose.terms);
  const auto gloose = eval_theta_numeric(catalog("D4").gram, 0.8, 1e-6);
  const auto gtight = eval_theta_numeric(catalog("D4").gram, 0.8, 1e-12);
  CHECK(gtight.tail < gloose.tail);
  CHECK(std::abs(gtight.value - gloose.value) <= gloose.tail + gtight.tail);
}

TEST_CASE("Gram path refuses unreachable precision") {
  EnumerationOptions small;
  small.budget = 20000;
  CHECK_THROWS_AS(eval_theta_numeric(catalog("BW16").gram, 0.3, 1e-12, small), TailBoundNotMet);
}

TEST_CASE("symmetry about the symmetry point") {
  for (const auto& d : table_decompositions()) {
    const SecrecySource src = SecrecySource::from_decomposition(d);
    for (double y : {0.2, 0.45, 1.3, 5.0}) {
      const double a = secrecy_function(src, y).xi;
      const double b = secrecy_function(src, 1.0 / (src.ell * y)).xi;
      CAPTURE(d.basis.dim());
      CHECK(std::abs(a - b) < 1e-9);
    }
  }
}

TEST_CASE("curves and maxima") {
  CHECK(to_db(1.0) == 0.0);
  CHECK(from_db(to_db(0.3)) == doctest::Approx(0.3));
  CHECK(symmetry_point_db(2) == doctest::Approx(-1.50515).epsilon(1e-5));

  for (const auto& p : secrecy_curve(SecrecySource::cubic(8), -6, 3, 10)) CHECK(p.xi == doctest::Approx(1.0));
  CHECK_THROWS(secrecy_curve(SecrecySource::cubic(8), 3, -6, 10));
  CHECK_THROWS(secrecy_curve(SecrecySource::cubic(8), -6, 3, 1));

  const auto bw = locate_maximum(SecrecySource::from_decomposition(bw16()), -6, 3);
  CHECK(bw.unimodal);
  CHECK(std::abs(bw.y_db - symmetry_point_db(2)) < 1e-4);
  CHECK(std::abs(bw.xi - 2.20564) < 1e-5);

  const auto k12 = locate_maximum(
      SecrecySource::from_decomposition(make_decomposition(3, 12, BasisKind::Even, {1, -36})), -8, 4);
  CHECK(std::abs(k12.y_db - symmetry_point_db(3)) < 1e-4);
  CHECK(std::abs(k12.xi - 1.66839) < 1e-5);

  const auto flat = locate_maximum(SecrecySource::cubic(4), -6, 3);
  CHECK(flat.xi == doctest::Approx(1.0));

  const auto curve = secrecy_curve(SecrecySource::from_decomposition(dim8()), -1, 1, 3);
  CHECK(curve_to_csv(curve).rfind("y_db,xi\n-1.000000,", 0) == 0);
  CHECK(curve_to_json(curve).front() == '[');
}
