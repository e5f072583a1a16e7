#include "modlat/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "modlat/errors.hpp"

namespace modlat {

namespace {

// Smallest numerator bound: n / denominator < order  <=>  n < limit.
std::int64_t numerator_limit(const Rational& order, std::int64_t denominator) {
  return to_int64(ceil(order * Rational(denominator)));
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

QSeries::Terms rebase(const QSeries& s, std::int64_t denominator) {
  const std::int64_t factor = denominator / s.denominator();
  QSeries::Terms out;
  for (const auto& [n, c] : s.terms()) out.emplace_hint(out.end(), n * factor, c);
  return out;
}

}  // namespace

QSeries::QSeries() : truncation_(0) {}

QSeries::QSeries(std::int64_t denominator, Terms terms, Rational truncation)
    : denominator_(denominator),
      terms_(std::move(terms)),
      truncation_(std::move(truncation)) {}

QSeries QSeries::zero(const Rational& order) { return QSeries(1, {}, order); }

QSeries QSeries::constant(const Rational& c, const Rational& order) {
  return from_terms(1, {{0, c}}, order);
}

QSeries QSeries::monomial(const Rational& exponent, const Rational& c,
                          const Rational& order) {
  return from_exponents({{exponent, c}}, order);
}

QSeries QSeries::from_terms(std::int64_t denominator, Terms terms,
                            const Rational& order) {
  if (denominator <= 0) throw Error("QSeries denominator must be positive");
  const std::int64_t limit = numerator_limit(order, denominator);
  std::int64_t g = denominator;
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0 || it->first >= limit) {
      it = terms.erase(it);
    } else {
      g = std::gcd(g, it->first);
      ++it;
    }
  }
  if (g > 1) {
    Terms reduced;
    for (auto& [n, c] : terms) reduced.emplace_hint(reduced.end(), n / g, std::move(c));
    terms = std::move(reduced);
    denominator /= g;
  }
  return QSeries(denominator, std::move(terms), order);
}

QSeries QSeries::from_exponents(
    const std::vector<std::pair<Rational, Rational>>& terms, const Rational& order) {
  std::int64_t denominator = 1;
  for (const auto& [e, c] : terms) denominator = lcm64(denominator, to_int64(e.get_den()));
  Terms out;
  for (const auto& [e, c] : terms) {
    const Rational scaled = e * Rational(denominator);
    out[to_int64(scaled.get_num())] += c;
  }
  return from_terms(denominator, std::move(out), order);
}

Rational QSeries::coeff_at(const Rational& exponent) const {
  if (exponent >= truncation_)
    throw QueryBeyondTruncation("exponent " + to_string(exponent) +
                                " is not below truncation order " +
                                to_string(truncation_));
  const Rational scaled = exponent * Rational(denominator_);
  if (!is_integer(scaled)) return 0;
  const auto it = terms_.find(to_int64(scaled.get_num()));
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Rational> QSeries::leading_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return Rational(terms_.begin()->first, denominator_);
}

std::vector<std::pair<Rational, Rational>> QSeries::exponent_terms() const {
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(terms_.size());
  for (const auto& [n, c] : terms_) {
    Rational e(n, denominator_);
    e.canonicalize();
    out.emplace_back(e, c);
  }
  return out;
}

QSeries QSeries::truncated(const Rational& order) const {
  return from_terms(denominator_, terms_, std::min(order, truncation_));
}

QSeries QSeries::shifted(const Rational& e) const {
  const std::int64_t d = lcm64(denominator_, to_int64(e.get_den()));
  const std::int64_t offset = to_int64(Rational(e * d).get_num());
  Terms out;
  for (auto& [n, c] : rebase(*this, d)) out.emplace_hint(out.end(), n + offset, c);
  return from_terms(d, std::move(out), truncation_ + e);
}

QSeries add(const QSeries& a, const QSeries& b) {
  const std::int64_t d = lcm64(a.denominator(), b.denominator());
  QSeries::Terms out = rebase(a, d);
  for (const auto& [n, c] : rebase(b, d)) out[n] += c;
  return QSeries::from_terms(d, std::move(out), std::min(a.truncation(), b.truncation()));
}

QSeries negate(const QSeries& a) { return scale(a, -1); }

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, negate(b)); }

QSeries scale(const QSeries& a, const Rational& c) {
  QSeries::Terms out;
  if (c != 0)
    for (const auto& [n, v] : a.terms()) out.emplace_hint(out.end(), n, v * c);
  return QSeries::from_terms(a.denominator(), std::move(out), a.truncation());
}

QSeries mul(const QSeries& a, const QSeries& b) {
  const Rational va = a.is_zero() ? Rational(0) : *a.leading_exponent();
  const Rational vb = b.is_zero() ? Rational(0) : *b.leading_exponent();
  const Rational order = std::min(a.truncation() + std::min(Rational(0), vb),
                                  b.truncation() + std::min(Rational(0), va));
  if (a.is_zero() || b.is_zero()) return QSeries::zero(order);

  const std::int64_t d = lcm64(a.denominator(), b.denominator());
  const std::int64_t limit = numerator_limit(order, d);
  const QSeries::Terms ta = rebase(a, d);
  const QSeries::Terms tb = rebase(b, d);
  const std::int64_t base = ta.begin()->first + tb.begin()->first;
  if (base >= limit) return QSeries::zero(order);

  std::vector<Rational> dense(static_cast<std::size_t>(limit - base));
  Rational product;
  for (const auto& [na, ca] : ta) {
    for (const auto& [nb, cb] : tb) {
      const std::int64_t n = na + nb;
      if (n >= limit) break;
      mpq_mul(product.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      dense[static_cast<std::size_t>(n - base)] += product;
    }
  }
  QSeries::Terms out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0)
      out.emplace_hint(out.end(), base + static_cast<std::int64_t>(i), std::move(dense[i]));
  return QSeries::from_terms(d, std::move(out), order);
}

QSeries pow(const QSeries& a, unsigned e) {
  QSeries result = QSeries::constant(1, a.truncation());
  QSeries base = a;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    e >>= 1u;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

QSeries scale_argument(const QSeries& a, const Rational& c) {
  if (c <= 0) throw Error("scale_argument requires a positive factor");
  Rational cc = c;
  cc.canonicalize();
  const std::int64_t cn = to_int64(cc.get_num());
  const std::int64_t cd = to_int64(cc.get_den());
  QSeries::Terms out;
  for (const auto& [n, v] : a.terms()) out.emplace_hint(out.end(), n * cn, v);
  return QSeries::from_terms(a.denominator() * cd, std::move(out), a.truncation() * cc);
}

QSeries invert_unit(const QSeries& a) {
  if (a.is_zero()) throw NotInvertible("cannot invert the zero series");
  const Rational e0 = *a.leading_exponent();
  const Rational lead = a.terms().begin()->second;
  const std::int64_t d = a.denominator();
  const std::int64_t n0 = a.terms().begin()->first;

  // u = a q^{-e0} / lead has constant term 1 and is exact below T - e0.
  const Rational unit_order = a.truncation() - e0;
  const std::int64_t limit = numerator_limit(unit_order, d);
  if (limit <= 0)
    throw NotInvertible("series carries no information below its leading term");
  std::vector<std::pair<std::int64_t, Rational>> unit;
  for (const auto& [n, c] : a.terms()) {
    if (n - n0 >= limit) break;
    if (n != n0) unit.emplace_back(n - n0, c / lead);
  }

  // b_0 = 1, b_m = -sum_{j>=1} u_j b_{m-j}
  std::vector<Rational> inv(static_cast<std::size_t>(limit));
  inv[0] = 1;
  Rational product;
  for (std::int64_t m = 1; m < limit; ++m) {
    Rational acc;
    for (const auto& [j, uj] : unit) {
      if (j > m) break;
      const Rational& prev = inv[static_cast<std::size_t>(m - j)];
      if (prev == 0) continue;
      mpq_mul(product.get_mpq_t(), uj.get_mpq_t(), prev.get_mpq_t());
      acc -= product;
    }
    inv[static_cast<std::size_t>(m)] = acc;
  }
  QSeries::Terms out;
  for (std::int64_t m = 0; m < limit; ++m)
    if (inv[static_cast<std::size_t>(m)] != 0)
      out.emplace_hint(out.end(), m, inv[static_cast<std::size_t>(m)] / lead);
  return QSeries::from_terms(d, std::move(out), unit_order).shifted(-e0);
}

std::optional<Rational> first_mismatch(const QSeries& a, const QSeries& b,
                                       const Rational& order) {
  if (a.truncation() < order || b.truncation() < order)
    throw QueryBeyondTruncation("comparison order " + to_string(order) +
                                " exceeds a truncation order");
  const QSeries diff = sub(a.truncated(order), b.truncated(order));
  return diff.leading_exponent();
}

std::string to_text(const QSeries& s) {
  std::ostringstream out;
  out << "qseries\n" << "truncation " << to_string(s.truncation()) << '\n';
  for (const auto& [n, c] : s.terms())
    out << "term " << n << ' ' << s.denominator() << ' ' << to_string(c) << '\n';
  return out.str();
}

QSeries qseries_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header = false;
  std::optional<Rational> order;
  std::vector<std::pair<Rational, Rational>> terms;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    if (key == "qseries") {
      header = true;
    } else if (key == "truncation") {
      std::string value;
      if (!(fields >> value)) throw ParseError("truncation line without value");
      order = parse_rational(value);
    } else if (key == "term") {
      std::int64_t n = 0;
      std::int64_t d = 0;
      std::string c;
      if (!(fields >> n >> d >> c) || d <= 0) throw ParseError("malformed term line: " + line);
      terms.emplace_back(Rational(n, d), parse_rational(c));
      terms.back().first.canonicalize();
    } else {
      throw ParseError("unexpected line: " + line);
    }
  }
  if (!header || !order) throw ParseError("missing qseries header or truncation");
  return QSeries::from_exponents(terms, *order);
}

std::string to_json(const QSeries& s) {
  nlohmann::json j;
  j["truncation"] = to_string(s.truncation());
  j["terms"] = nlohmann::json::array();
  for (const auto& [n, c] : s.terms())
    j["terms"].push_back({n, s.denominator(), to_string(c)});
  return j.dump();
}

QSeries qseries_from_json(const std::string& json) {
  try {
    const auto j = nlohmann::json::parse(json);
    std::vector<std::pair<Rational, Rational>> terms;
    for (const auto& t : j.at("terms")) {
      const auto n = t.at(0).get<std::int64_t>();
      const auto d = t.at(1).get<std::int64_t>();
      if (d <= 0) throw ParseError("non-positive denominator");
      Rational e(n, d);
      e.canonicalize();
      terms.emplace_back(e, parse_rational(t.at(2).get<std::string>()));
    }
    return QSeries::from_exponents(terms, parse_rational(j.at("truncation").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

std::string pretty(const QSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : s.exponent_terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string coef;
    if (e == 0) {
      coef = to_string(mag);
    } else if (mag != 1) {
      coef = is_integer(mag) ? to_string(mag) : "(" + to_string(mag) + ")";
    }
    out += coef;
    if (e != 0) {
      out += "q";
      if (e != 1) out += is_integer(e) ? "^" + to_string(e) : "^(" + to_string(e) + ")";
    }
  }
  return out;
}

}  // namespace modlat
