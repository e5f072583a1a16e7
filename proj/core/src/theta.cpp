#include "modlat/theta.hpp"

#include <array>
#include <map>
#include <mutex>
#include <tuple>

#include "modlat/errors.hpp"

namespace modlat {

namespace {

constexpr std::array<std::pair<FormName, std::string_view>, 12> kFormIds{{
    {FormName::Theta2, "theta2"},
    {FormName::Theta3, "theta3"},
    {FormName::Theta4, "theta4"},
    {FormName::Eta, "eta"},
    {FormName::ThetaD4, "Theta_D4"},
    {FormName::Delta16, "Delta_16"},
    {FormName::ThetaA2, "Theta_A2"},
    {FormName::Delta12, "Delta_12"},
    {FormName::ThetaE8, "Theta_E8"},
    {FormName::Delta24, "Delta_24"},
    {FormName::F1Ell2, "f1_l2"},
    {FormName::Delta4, "Delta_4"},
}};

// sum over m in Z of sign^m q^{(m + shift)^2}, shift in {0, 1/2}.
QSeries jacobi_sum(bool half_shift, bool alternating, const Rational& order) {
  const std::int64_t d = half_shift ? 4 : 1;
  QSeries::Terms terms;
  for (std::int64_t m = 0;; ++m) {
    const std::int64_t base = half_shift ? 2 * m + 1 : m;
    const std::int64_t n = base * base;
    if (Rational(n, d) >= order) break;
    Rational c = (m == 0 && !half_shift) ? 1 : 2;
    if (alternating && (m % 2 == 1)) c = -c;
    terms.emplace(n, c);
  }
  return QSeries::from_terms(d, std::move(terms), order);
}

// prod_{m>=1} (1 - q^{2 c m}) exact below `order`. A factor (1 - q^{2cm})
// only touches exponents >= 2cm, so factors with 2cm >= order are skipped.
QSeries eta_unit(const Rational& c, const Rational& order) {
  if (order <= 0) return QSeries::zero(order);
  const Rational step = 2 * c;
  const std::int64_t len = to_int64(ceil(order / step));
  std::vector<Integer> poly(static_cast<std::size_t>(len));
  poly[0] = 1;
  for (std::int64_t m = 1; m < len; ++m)
    for (std::int64_t i = len - 1; i >= m; --i)
      poly[static_cast<std::size_t>(i)] -= poly[static_cast<std::size_t>(i - m)];
  QSeries::Terms terms;
  for (std::int64_t i = 0; i < len; ++i)
    if (poly[static_cast<std::size_t>(i)] != 0) terms.emplace(i, Rational(poly[static_cast<std::size_t>(i)]));
  return scale_argument(QSeries::from_terms(1, std::move(terms), order / step), step);
}

QSeries expand_eta(const Rational& order) {
  // eta = q^{1/12} * prod (1 - q^{2m}); with the unit part exact below
  // order - 1/12 this uses factors m <= ceil(order/2) + 1 at most.
  const Rational lead(1, 12);
  return eta_unit(1, order - lead).shifted(lead);
}

QSeries at(FormName name, const Rational& scale, const Rational& order) {
  return expand(NamedForm{name, scale}, order);
}

QSeries expand_base(FormName name, const Rational& order) {
  switch (name) {
    case FormName::Theta2:
      return jacobi_sum(true, false, order);
    case FormName::Theta3:
      return jacobi_sum(false, false, order);
    case FormName::Theta4:
      return jacobi_sum(false, true, order);
    case FormName::Eta:
      return expand_eta(order);
    case FormName::ThetaD4: {
      const QSeries t3 = at(FormName::Theta3, 1, order);
      const QSeries t4 = at(FormName::Theta4, 1, order);
      return Rational(1, 2) * (pow(t3, 4) + pow(t4, 4));
    }
    case FormName::Delta16:
      return eta_quotient({{1, 8}, {2, 8}}, {}, order);
    case FormName::ThetaA2:
      return at(FormName::Theta2, 2, order) * at(FormName::Theta2, 6, order) +
             at(FormName::Theta3, 2, order) * at(FormName::Theta3, 6, order);
    case FormName::Delta12:
      return eta_quotient({{1, 6}, {3, 6}}, {}, order);
    case FormName::ThetaE8:
      return Rational(1, 2) * (pow(at(FormName::Theta2, 1, order), 8) +
                               pow(at(FormName::Theta3, 1, order), 8) +
                               pow(at(FormName::Theta4, 1, order), 8));
    case FormName::Delta24:
      return eta_quotient({{1, 24}}, {}, order);
    case FormName::F1Ell2:
      return at(FormName::Theta3, 1, order) * at(FormName::Theta3, 2, order);
    case FormName::Delta4:
      return Rational(1, 4) * pow(at(FormName::Theta2, 2, order), 2) *
             pow(at(FormName::Theta4, 1, order), 2);
  }
  throw Error("unhandled form");
}

bool is_composite(FormName name) {
  return !(name == FormName::Theta2 || name == FormName::Theta3 ||
           name == FormName::Theta4 || name == FormName::Eta);
}

using CacheKey = std::tuple<int, std::string, std::string>;

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<CacheKey, QSeries>& cache() {
  static std::map<CacheKey, QSeries> c;
  return c;
}

QSeries unit_product(const std::vector<EtaFactor>& factors, const Rational& order) {
  QSeries out = QSeries::constant(1, order);
  for (const auto& f : factors) out = out * pow(eta_unit(f.scale, order), static_cast<unsigned>(f.exponent));
  return out;
}

IdentityCheck compare(std::string name, const QSeries& lhs, const QSeries& rhs,
                      const Rational& order) {
  IdentityCheck check;
  check.name = std::move(name);
  check.first_mismatch = first_mismatch(lhs, rhs, order);
  check.pass = !check.first_mismatch.has_value();
  return check;
}

}  // namespace

std::string_view form_id(FormName name) {
  for (const auto& [n, id] : kFormIds)
    if (n == name) return id;
  return "?";
}

std::optional<FormName> parse_form_name(std::string_view id) {
  for (const auto& [n, s] : kFormIds)
    if (s == id) return n;
  return std::nullopt;
}

std::vector<FormName> all_forms() {
  std::vector<FormName> out;
  for (const auto& [n, id] : kFormIds) out.push_back(n);
  return out;
}

QSeries expand(const NamedForm& form, const Rational& order) {
  if (order <= 0) throw Error("expansion order must be positive");
  if (form.scale <= 0) throw Error("argument scale must be positive");
  if (!is_composite(form.name))
    return scale_argument(expand_base(form.name, order / form.scale), form.scale);

  const CacheKey key{static_cast<int>(form.name), to_string(form.scale), to_string(order)};
  {
    std::lock_guard lock(cache_mutex());
    if (const auto it = cache().find(key); it != cache().end()) return it->second;
  }
  QSeries value = scale_argument(expand_base(form.name, order / form.scale), form.scale);
  std::lock_guard lock(cache_mutex());
  return cache().try_emplace(key, std::move(value)).first->second;
}

QSeries eta_quotient(const std::vector<EtaFactor>& numerator,
                     const std::vector<EtaFactor>& denominator, const Rational& order) {
  std::vector<EtaFactor> num;
  std::vector<EtaFactor> den;
  Rational lead;
  for (const auto& f : numerator) {
    if (f.scale <= 0) throw Error("eta scale must be positive");
    (f.exponent >= 0 ? num : den).push_back({f.scale, std::abs(f.exponent)});
  }
  for (const auto& f : denominator) {
    if (f.scale <= 0) throw Error("eta scale must be positive");
    (f.exponent >= 0 ? den : num).push_back({f.scale, std::abs(f.exponent)});
  }
  for (const auto& f : num) lead += f.scale * f.exponent / 12;
  for (const auto& f : den) lead -= f.scale * f.exponent / 12;

  const Rational unit_order = order - lead;
  if (unit_order <= 0) return QSeries::zero(order);
  const QSeries top = unit_product(num, unit_order);
  const QSeries bottom = unit_product(den, unit_order);
  return (top * invert_unit(bottom)).shifted(lead);
}

std::vector<IdentityCheck> verify_theta_eta_identities(const Rational& order,
                                                       const EtaSource& eta) {
  if (order < 4) throw Error("identity checks need order >= 4");
  const EtaSource source = eta ? eta : [](const Rational& c, const Rational& o) {
    return expand(NamedForm{FormName::Eta, c}, o);
  };
  const Rational inner = order + 2;
  const auto quotient = [&](const std::vector<EtaFactor>& top,
                            const std::vector<EtaFactor>& bottom) {
    QSeries n = QSeries::constant(1, inner);
    QSeries d = QSeries::constant(1, inner);
    for (const auto& f : top) n = n * pow(source(f.scale, inner), static_cast<unsigned>(f.exponent));
    for (const auto& f : bottom) d = d * pow(source(f.scale, inner), static_cast<unsigned>(f.exponent));
    return n * invert_unit(d);
  };
  const Rational half(1, 2);
  std::vector<IdentityCheck> out;
  out.push_back(compare("theta2 = 2 eta(2t)^2 / eta(t)", at(FormName::Theta2, 1, order),
                        2 * quotient({{2, 2}}, {{1, 1}}), order));
  out.push_back(compare("theta3 = eta(t)^5 / (eta(t/2)^2 eta(2t)^2)",
                        at(FormName::Theta3, 1, order),
                        quotient({{1, 5}}, {{half, 2}, {2, 2}}), order));
  out.push_back(compare("theta4 = eta(t/2)^2 / eta(t)", at(FormName::Theta4, 1, order),
                        quotient({{half, 2}}, {{1, 1}}), order));
  return out;
}

QSeries f2_level2(const Rational& order) {
  return eta_quotient({{Rational(1, 2), 8}, {4, 8}}, {{1, 8}, {2, 8}}, order);
}

std::vector<IdentityCheck> verify_alternative_forms(const Rational& order) {
  const QSeries t2 = at(FormName::Theta2, 1, order);
  const QSeries t3 = at(FormName::Theta3, 1, order);
  const QSeries t4 = at(FormName::Theta4, 1, order);
  std::vector<IdentityCheck> out;
  out.push_back(compare("Delta_16 = (eta(t) eta(2t))^8 = theta2^8 theta3^4 theta4^4 / 256",
                        at(FormName::Delta16, 1, order),
                        Rational(1, 256) * pow(t2, 8) * pow(t3, 4) * pow(t4, 4), order));
  const QSeries f1 = at(FormName::F1Ell2, 1, order);
  out.push_back(compare("Delta_4 = f1^2 f2 = theta2(2t)^2 theta4(t)^2 / 4",
                        at(FormName::Delta4, 1, order), pow(f1, 2) * f2_level2(order), order));
  out.push_back(compare("theta3^4 = theta2^4 + theta4^4", pow(t3, 4), pow(t2, 4) + pow(t4, 4),
                        order));
  out.push_back(compare("Theta_D4 = (theta3^4 + theta4^4)/2 = theta3^4 - theta2^4/2",
                        at(FormName::ThetaD4, 1, order),
                        pow(t3, 4) - Rational(1, 2) * pow(t2, 4), order));
  return out;
}

QSeries split_residue_theta(int residue, const Rational& scale, const Rational& order) {
  if (residue == 0) return at(FormName::Theta3, 9 * scale, order);
  if (residue == 1 || residue == -1)
    return Rational(1, 2) * (at(FormName::Theta3, scale, order) -
                             at(FormName::Theta3, 9 * scale, order));
  throw Error("residue must be 0 or +-1 modulo 3");
}

}  // namespace modlat
