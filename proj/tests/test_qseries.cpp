#include <random>

#include "doctest.h"
#include "modlat/errors.hpp"
#include "modlat/qseries.hpp"
#include "support.hpp"

using namespace modlat;
using modlat::testing::random_series;

namespace {

QSeries series(std::initializer_list<std::pair<Rational, Rational>> terms, const Rational& order) {
  return QSeries::from_exponents(std::vector<std::pair<Rational, Rational>>(terms), order);
}

}  // namespace

TEST_CASE("construction normalizes") {
  const QSeries s = QSeries::from_terms(4, {{0, 1}, {2, 0}, {4, 3}, {40, 5}}, 8);
  CHECK(s.denominator() == 1);  // 4/4 = 1, the zero at 2/4 is dropped, 40/4 is past T
  CHECK(s.coeff_at(1) == 3);
  CHECK(s.coeff_at(Rational(1, 2)) == 0);
  CHECK(s.truncation() == 8);
  CHECK_THROWS_AS(s.coeff_at(8), QueryBeyondTruncation);
  CHECK(QSeries::zero(3).is_zero());
  CHECK_FALSE(QSeries().leading_exponent());
}

TEST_CASE("pretty printing") {
  CHECK(pretty(QSeries::zero(4)) == "0");
  CHECK(pretty(series({{0, 1}, {2, 24}}, 4)) == "1 + 24q^2");
  CHECK(pretty(series({{1, -1}, {3, Rational(1, 2)}}, 4)) == "-q + (1/2)q^3");
  CHECK(pretty(series({{Rational(1, 4), 2}}, 4)) == "2q^(1/4)");
}

TEST_CASE("truncation rule of products") {
  const QSeries a = series({{0, 1}, {1, 1}}, 5);
  const QSeries b = series({{0, 1}, {2, 1}}, 3);
  const QSeries p = a * b;
  CHECK(p.truncation() == 3);
  CHECK(pretty(p) == "1 + q + q^2");
  CHECK(pow(a, 0) == QSeries::constant(1, 5));

  // Negative lowest exponent lowers the bound of the other factor.
  const QSeries inv = invert_unit(series({{1, 1}, {2, 1}}, 6));
  CHECK(*inv.leading_exponent() == -1);
  CHECK(inv.truncation() == 4);
  const QSeries back = inv * series({{1, 1}, {2, 1}}, 6);
  CHECK(back.truncation() == 4);  // conservative: the rule ignores that s starts at q^1
  CHECK(back == QSeries::constant(1, 4));
}

TEST_CASE("invert_unit") {
  CHECK_THROWS_AS(invert_unit(QSeries::zero(5)), NotInvertible);
  // 1 / (1 - q) = 1 + q + q^2 + ...
  CHECK(pretty(invert_unit(series({{0, 1}, {1, -1}}, 5))) == "1 + q + q^2 + q^3 + q^4");
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    QSeries s = random_series(rng);
    if (s.is_zero() || *s.leading_exponent() != 0) s = s + QSeries::constant(1, s.truncation());
    if (s.coeff_at(0) == 0) continue;
    CHECK(s * invert_unit(s) == QSeries::constant(1, s.truncation()));
  }
}

TEST_CASE("ring axioms on random series") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 150; ++i) {
    const QSeries a = random_series(rng);
    const QSeries b = random_series(rng);
    const QSeries c = random_series(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == QSeries::zero(a.truncation()));
    CHECK(-(-a) == a);
  }
}

TEST_CASE("scale_argument composes and pow adds") {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    const QSeries s = random_series(rng);
    const Rational c1(1 + i % 3, 1 + i % 2);
    const Rational c2(2, 1 + i % 5);
    CHECK(scale_argument(scale_argument(s, c1), c2) == scale_argument(s, c1 * c2));
    const unsigned e1 = static_cast<unsigned>(i % 3);
    const unsigned e2 = static_cast<unsigned>(i % 4);
    CHECK(pow(s, e1) * pow(s, e2) == pow(s, e1 + e2));
  }
}

TEST_CASE("shift and first_mismatch") {
  const QSeries s = series({{0, 1}, {2, 3}}, 4);
  const QSeries t = s.shifted(Rational(1, 2));
  CHECK(t.truncation() == Rational(9, 2));
  CHECK(t.coeff_at(Rational(5, 2)) == 3);
  CHECK_FALSE(first_mismatch(s, s, 4));
  CHECK(*first_mismatch(s, series({{0, 1}, {3, 1}}, 4), 4) == 2);
  CHECK_THROWS_AS(first_mismatch(s, s, 5), QueryBeyondTruncation);
}

TEST_CASE("serialization round trips") {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    const QSeries s = random_series(rng);
    CHECK(qseries_from_text(to_text(s)) == s);
    CHECK(qseries_from_json(to_json(s)) == s);
  }
  CHECK(to_json(series({{0, 1}, {2, 24}}, 16)) == R"({"terms":[[0,1,"1"],[2,1,"24"]],"truncation":"16"})");
  CHECK_THROWS_AS(qseries_from_text("nonsense"), ParseError);
  CHECK_THROWS_AS(qseries_from_json("{"), ParseError);
}
