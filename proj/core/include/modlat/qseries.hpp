#pragma once

// Exact truncated q-expansions with rational exponents.
//
// Nome convention: q = exp(pi i tau) throughout the library, so the theta
// series of a lattice is sum_v q^{|v|^2} and exponents are squared norms.
// Many references use exp(2 pi i tau); every expansion here uses the former.
//
// A QSeries stores coefficients of q^{n/D} for integer numerators n on a single
// denominator D, plus a truncation order T: all terms with exponent < T are
// exact, terms with exponent >= T are unknown and never stored. Numerators are
// non-negative except after invert_unit() of a series with positive leading
// exponent, which shifts the result by a single negative power.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modlat/rational.hpp"

namespace modlat {

class QSeries {
 public:
  using Terms = std::map<std::int64_t, Rational>;

  /// The zero series known exactly below order 0 (i.e. nothing is known).
  QSeries();

  static QSeries zero(const Rational& order);
  static QSeries constant(const Rational& c, const Rational& order);
  static QSeries monomial(const Rational& exponent, const Rational& c,
                          const Rational& order);
  /// Builds from numerators on `denominator`; drops zero coefficients and
  /// terms at or beyond `order`, then reduces the denominator.
  static QSeries from_terms(std::int64_t denominator, Terms terms,
                            const Rational& order);
  /// Same, from (exponent, coefficient) pairs; repeated exponents accumulate.
  static QSeries from_exponents(
      const std::vector<std::pair<Rational, Rational>>& terms,
      const Rational& order);

  std::int64_t denominator() const { return denominator_; }
  const Terms& terms() const { return terms_; }
  const Rational& truncation() const { return truncation_; }

  /// Coefficient of q^exponent; throws QueryBeyondTruncation at or past T.
  Rational coeff_at(const Rational& exponent) const;

  std::optional<Rational> leading_exponent() const;
  bool is_zero() const { return terms_.empty(); }

  /// (exponent, coefficient) pairs in ascending exponent order.
  std::vector<std::pair<Rational, Rational>> exponent_terms() const;

  /// Drops everything at or beyond min(order, T).
  QSeries truncated(const Rational& order) const;
  /// Multiplies by q^e; the truncation order moves with it.
  QSeries shifted(const Rational& e) const;

  friend bool operator==(const QSeries& a, const QSeries& b) = default;

 private:
  QSeries(std::int64_t denominator, Terms terms, Rational truncation);

  std::int64_t denominator_ = 1;
  Terms terms_;
  Rational truncation_;
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries negate(const QSeries& a);
QSeries scale(const QSeries& a, const Rational& c);

/// Cauchy product. The result is exact below
/// min(T_a + min(0, v_b), T_b + min(0, v_a)) with v the lowest exponent; for
/// series with non-negative exponents this is min(T_a, T_b). No sharper bound
/// is claimed even when one factor is known to vanish to high order.
QSeries mul(const QSeries& a, const QSeries& b);

/// Binary exponentiation; e == 0 gives the constant 1 at a's truncation order.
QSeries pow(const QSeries& a, unsigned e);

/// Realizes tau -> c tau: every exponent and the truncation order scale by c.
QSeries scale_argument(const QSeries& a, const Rational& c);

/// Multiplicative inverse of a series with lowest term c q^{e0}. The result
/// starts at q^{-e0} and is exact below T - 2 e0. Throws NotInvertible on the
/// zero series.
QSeries invert_unit(const QSeries& a);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator-(const QSeries& a) { return negate(a); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
inline QSeries operator*(const Rational& c, const QSeries& a) { return scale(a, c); }

/// First exponent below `order` where the two series differ, or nullopt if
/// they agree there. Throws QueryBeyondTruncation if either series is not
/// known up to `order`.
std::optional<Rational> first_mismatch(const QSeries& a, const QSeries& b,
                                       const Rational& order);

// Serialization. The text form is line oriented:
//   qseries
//   truncation <p/q>
//   term <numerator> <denominator> <coefficient p/q>
// Both forms round-trip bit-exactly.
std::string to_text(const QSeries& s);
QSeries qseries_from_text(const std::string& text);
/// {"truncation":"16","terms":[[0,1,"1"],[2,1,"24"]]}
std::string to_json(const QSeries& s);
QSeries qseries_from_json(const std::string& json);

/// "1 + 24q^2 + 24q^4 + 96q^6"; fractional exponents print as q^(1/4),
/// fractional coefficients as (1/2)q^3.
std::string pretty(const QSeries& s);

}  // namespace modlat
