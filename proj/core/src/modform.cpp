#include "modlat/modform.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "modlat/errors.hpp"
#include "modlat/lattice.hpp"

namespace modlat {

namespace {

constexpr int kCheckDepth = 8;

// Divisors of the supported levels.
std::vector<int> divisors(int ell) {
  std::vector<int> out;
  for (int d = 1; d <= ell; ++d)
    if (ell % d == 0) out.push_back(d);
  return out;
}

bool level_listed(int ell) {
  for (int l : {1, 2, 3, 5, 6, 7, 11, 14, 15, 23})
    if (l == ell) return true;
  return false;
}

std::vector<KnownCoefficient> known_from_series(const QSeries& s, int through) {
  std::vector<KnownCoefficient> out;
  for (int e = 0; e <= through; ++e) out.push_back({e, s.coeff_at(e)});
  return out;
}

}  // namespace

std::string_view basis_kind_id(BasisKind kind) {
  return kind == BasisKind::Even ? "even" : "general";
}

BasisKind parse_basis_kind(std::string_view id) {
  if (id == "even") return BasisKind::Even;
  if (id == "general") return BasisKind::General;
  throw ParseError("basis kind must be 'even' or 'general'");
}

int theta_weight(int ell) {
  switch (ell) {
    case 1: return 4;
    case 2: return 2;
    case 3: return 1;
    default: throw UnsupportedLevel("level " + std::to_string(ell) + " has no shipped theta generator");
  }
}

int cusp_weight(int ell) {
  if (ell < 1 || ell > 3) throw UnsupportedLevel("level " + std::to_string(ell) + " is not 1, 2 or 3");
  return 24 / (1 + ell);
}

int dim_c_ell(int ell) {
  if (!level_listed(ell)) throw UnsupportedLevel("level " + std::to_string(ell));
  return static_cast<int>(divisors(ell).size());
}

Rational ord1_f1(int ell) {
  if (!level_listed(ell)) throw UnsupportedLevel("level " + std::to_string(ell));
  int sigma = 0;
  for (int d : divisors(ell)) sigma += d;
  Rational r(sigma, ell % 2 == 1 ? 8 : 6);
  r.canonicalize();
  return r;
}

BasisSpec build_basis(int ell, int n, BasisKind kind) {
  if (n <= 0 || n % 2 != 0) throw EmptyBasis("dimension must be a positive even integer");
  BasisSpec basis;
  basis.ell = ell;
  basis.kind = kind;
  basis.k = n / 2;
  if (kind == BasisKind::Even) {
    const int k0 = theta_weight(ell);
    const int k1 = cusp_weight(ell);
    for (int mu = 0; k1 * mu <= basis.k; ++mu) {
      const int rest = basis.k - k1 * mu;
      if (rest % k0 == 0) basis.terms.push_back({rest / k0, mu});
    }
  } else {
    if (ell != 2) throw UnsupportedLevel("general decomposition is shipped for level 2 only");
    // dim C^2 = 2, so k = n / 2 copies of f1 and i <= floor(k * ord1(f1)).
    const Integer top = floor(Rational(basis.k) * ord1_f1(ell));
    for (int i = 0; i <= to_int64(top); ++i) basis.terms.push_back({basis.k - 2 * i, i});
  }
  if (basis.terms.empty())
    throw EmptyBasis("no monomials of weight " + std::to_string(basis.k) + " at level " +
                     std::to_string(ell));
  return basis;
}

std::pair<FormName, FormName> generator_forms(const BasisSpec& basis) {
  if (basis.kind == BasisKind::General) return {FormName::F1Ell2, FormName::Delta4};
  switch (basis.ell) {
    case 1: return {FormName::ThetaE8, FormName::Delta24};
    case 2: return {FormName::ThetaD4, FormName::Delta16};
    case 3: return {FormName::ThetaA2, FormName::Delta12};
    default: throw UnsupportedLevel("level " + std::to_string(basis.ell));
  }
}

QSeries expand_term(const BasisSpec& basis, std::size_t index, const Rational& order) {
  const auto [theta, cusp] = generator_forms(basis);
  const BasisTerm& t = basis.terms.at(index);
  return pow(expand({theta, 1}, order), static_cast<unsigned>(t.lambda)) *
         pow(expand({cusp, 1}, order), static_cast<unsigned>(t.mu));
}

std::vector<Rational> fitting_exponents(const BasisSpec& basis) {
  const int stride = basis.kind == BasisKind::Even ? 2 : 1;
  std::vector<Rational> out;
  for (std::size_t i = 0; i < basis.terms.size(); ++i) out.emplace_back(static_cast<long>(i) * stride);
  return out;
}

ThetaDecomposition solve_coefficients(const BasisSpec& basis,
                                      const std::vector<KnownCoefficient>& known) {
  std::map<Rational, Rational> values;
  for (const auto& kc : known) values[kc.exponent] = kc.value;
  const std::vector<Rational> fit = fitting_exponents(basis);
  for (const auto& e : fit)
    if (!values.contains(e))
      throw InsufficientData("no known theta coefficient at q^" + to_string(e));

  const Rational order = std::max(values.rbegin()->first, fit.back()) + 1;
  const std::size_t t = basis.terms.size();
  std::vector<QSeries> expansions;
  for (std::size_t c = 0; c < t; ++c) expansions.push_back(expand_term(basis, c, order));

  // Augmented system rows: coefficient of term c at fitting exponent r.
  std::vector<std::vector<Rational>> a(t, std::vector<Rational>(t + 1));
  for (std::size_t r = 0; r < t; ++r) {
    for (std::size_t c = 0; c < t; ++c) a[r][c] = expansions[c].coeff_at(fit[r]);
    a[r][t] = values[fit[r]];
  }
  for (std::size_t col = 0; col < t; ++col) {
    std::size_t p = col;
    while (p < t && a[p][col] == 0) ++p;
    if (p == t)
      throw SingularSystem("basis expansions are dependent on the fitted coefficients; "
                           "supply more coefficients");
    std::swap(a[p], a[col]);
    for (std::size_t r = 0; r < t; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t j = col; j <= t; ++j) a[r][j] -= f * a[col][j];
    }
  }
  ThetaDecomposition d{basis, {}};
  for (std::size_t r = 0; r < t; ++r) d.coeffs.push_back(a[r][t] / a[r][r]);

  for (const auto& [e, v] : values) {
    if (std::find(fit.begin(), fit.end(), e) != fit.end()) continue;
    Rational predicted;
    for (std::size_t c = 0; c < t; ++c) predicted += d.coeffs[c] * expansions[c].coeff_at(e);
    if (predicted != v)
      throw InconsistentSurplus("solution predicts " + to_string(predicted) + " at q^" +
                                to_string(e) + " but the known value is " + to_string(v));
  }
  return d;
}

QSeries expand_decomposition(const ThetaDecomposition& d, const Rational& order) {
  if (d.coeffs.size() != d.basis.terms.size())
    throw Error("decomposition has " + std::to_string(d.coeffs.size()) + " coefficients for " +
                std::to_string(d.basis.terms.size()) + " terms");
  QSeries out = QSeries::zero(order);
  for (std::size_t i = 0; i < d.coeffs.size(); ++i)
    if (d.coeffs[i] != 0) out = out + d.coeffs[i] * expand_term(d.basis, i, order);
  return out;
}

std::string pretty(const ThetaDecomposition& d) {
  const bool general = d.basis.kind == BasisKind::General;
  const auto [theta, cusp] = generator_forms(d.basis);
  const std::string theta_name = general ? "f1" : std::string(form_id(theta));
  const std::string cusp_name(form_id(cusp));
  const auto power = [](const std::string& base, int e) {
    return e == 1 ? base : base + "^" + std::to_string(e);
  };
  std::string out;
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
    const Rational& c = d.coeffs[i];
    if (c == 0) continue;
    const BasisTerm& t = d.basis.terms[i];
    std::vector<std::string> factors;
    if (t.lambda > 0) factors.push_back(power(theta_name, t.lambda));
    if (t.mu > 0) factors.push_back(power(cusp_name, t.mu));
    const Rational mag = c < 0 ? Rational(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string body;
    for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
    if (body.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += body;
    } else {
      out += to_string(mag) + "*" + body;
    }
  }
  return out.empty() ? "0" : out;
}

std::string to_json(const ThetaDecomposition& d) {
  nlohmann::json j;
  j["ell"] = d.basis.ell;
  j["kind"] = std::string(basis_kind_id(d.basis.kind));
  j["n"] = d.basis.dim();
  j["terms"] = nlohmann::json::array();
  for (const auto& t : d.basis.terms) j["terms"].push_back({t.lambda, t.mu});
  j["coeffs"] = nlohmann::json::array();
  for (const auto& c : d.coeffs) j["coeffs"].push_back(to_string(c));
  return j.dump();
}

ThetaDecomposition decomposition_from_json(const std::string& json) {
  try {
    const auto j = nlohmann::json::parse(json);
    BasisSpec basis = build_basis(j.at("ell").get<int>(), j.at("n").get<int>(),
                                  parse_basis_kind(j.at("kind").get<std::string>()));
    if (j.contains("terms")) {
      std::vector<BasisTerm> terms;
      for (const auto& t : j.at("terms")) terms.push_back({t.at(0).get<int>(), t.at(1).get<int>()});
      if (terms != basis.terms) throw ParseError("terms do not match the basis for ell/n/kind");
    }
    ThetaDecomposition d{basis, {}};
    for (const auto& c : j.at("coeffs")) d.coeffs.push_back(parse_rational(c.get<std::string>()));
    if (d.coeffs.size() != basis.terms.size()) throw ParseError("coefficient count does not match the basis");
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

ThetaDecomposition make_decomposition(int ell, int n, BasisKind kind,
                                      const std::vector<Rational>& leading) {
  ThetaDecomposition d{build_basis(ell, n, kind), leading};
  if (d.coeffs.size() > d.basis.terms.size())
    throw Error("more coefficients than basis terms");
  d.coeffs.resize(d.basis.terms.size());
  return d;
}

namespace {

void check_expansion(RowCheck& row, const QSeries& s, bool even, int through) {
  const auto fail = [&](std::string why) {
    row.pass = false;
    row.failures.push_back(std::move(why));
  };
  if (s.coeff_at(0) != 1) fail("constant term is " + to_string(s.coeff_at(0)));
  for (const auto& [e, c] : s.exponent_terms()) {
    if (e > through) break;
    if (!is_integer(e)) fail("fractional exponent " + to_string(e));
    if (!is_integer(c) || c < 0) fail("coefficient " + to_string(c) + " at q^" + to_string(e));
    if (even && is_integer(e) && e.get_num() % 2 != 0)
      fail("odd exponent q^" + to_string(e) + " in an even lattice");
  }
}

void check_oracle(RowCheck& row, const QSeries& s, const std::string& catalog_name) {
  const CatalogEntry entry = catalog(catalog_name);
  for (const auto& [norm, count] : theta_coefficients(entry.gram, kCheckDepth)) {
    if (s.coeff_at(norm) != Rational(Integer(static_cast<unsigned long>(count)))) {
      row.pass = false;
      row.failures.push_back("enumeration gives A_" + to_string(norm) + " = " +
                             std::to_string(count) + ", expansion gives " +
                             to_string(s.coeff_at(norm)));
    }
  }
}

std::vector<KnownCoefficient> enumerated_known(const std::string& catalog_name) {
  std::vector<KnownCoefficient> known;
  for (const auto& [norm, count] : theta_coefficients(catalog(catalog_name).gram, kCheckDepth))
    known.push_back({norm, Rational(Integer(static_cast<unsigned long>(count)))});
  return known;
}

void check_solve(RowCheck& row, const ThetaDecomposition& expected,
                 const std::vector<KnownCoefficient>& known) {
  try {
    const ThetaDecomposition solved = solve_coefficients(expected.basis, known);
    if (solved != expected) {
      row.pass = false;
      row.failures.push_back("solved " + pretty(solved) + " differs from " + pretty(expected));
    }
  } catch (const Error& e) {
    row.pass = false;
    row.failures.push_back(e.what());
  }
}

}  // namespace

std::vector<RowCheck> verify_table(TableId table) {
  constexpr int kThrough = 16;
  std::vector<RowCheck> out;
  if (table == TableId::Even) {
    for (const auto& r : even_table()) {
      RowCheck row{r.name, true, {}};
      const ThetaDecomposition d = make_decomposition(r.ell, r.dim, BasisKind::Even, r.coeffs);
      const QSeries s = expand_decomposition(d, kThrough + 1);
      check_expansion(row, s, true, kThrough);
      check_solve(row, d, r.known ? *r.known : enumerated_known(*r.catalog));
      if (r.catalog) check_oracle(row, s, *r.catalog);
      out.push_back(std::move(row));
    }
  } else {
    for (const auto& r : odd_table()) {
      RowCheck row{"dim " + std::to_string(r.dim), true, {}};
      const ThetaDecomposition d = make_decomposition(2, r.dim, BasisKind::General, r.coeffs);
      const QSeries s = expand_decomposition(d, kThrough + 1);
      check_expansion(row, s, false, kThrough);
      check_solve(row, d,
                  r.catalog ? enumerated_known(*r.catalog)
                            : known_from_series(s, static_cast<int>(d.basis.terms.size()) - 1));
      if (r.catalog) check_oracle(row, s, *r.catalog);
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace modlat
