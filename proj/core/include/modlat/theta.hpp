#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modlat/qseries.hpp"

namespace modlat {

enum class FormName {
  Theta2,
  Theta3,
  Theta4,
  Eta,
  ThetaD4,
  Delta16,
  ThetaA2,
  Delta12,
  ThetaE8,
  Delta24,
  F1Ell2,
  Delta4,
};

/// f(c tau) for one of the named forms.
struct NamedForm {
  FormName name;
  Rational scale{1};
};

/// Stable CLI identifiers: "theta2", "Theta_D4", "f1_l2", ...
std::string_view form_id(FormName name);
std::optional<FormName> parse_form_name(std::string_view id);
std::vector<FormName> all_forms();

/// q-expansion of `form` exact below `order` (order > 0).
///
///   theta2 = sum q^{(m+1/2)^2},  theta3 = sum q^{m^2},  theta4 = sum (-q)^{m^2}
///   eta    = q^{1/12} prod_{m>=1} (1 - q^{2m})
///   Theta_D4 = (theta3^4 + theta4^4) / 2          Delta_16 = (eta(t) eta(2t))^8
///   Theta_A2 = theta2(2t)theta2(6t) + theta3(2t)theta3(6t)
///                                                 Delta_12 = (eta(t) eta(3t))^6
///   Theta_E8 = (theta2^8 + theta3^8 + theta4^8)/2 Delta_24 = eta^24
///   f1_l2    = theta3(t) theta3(2t)               Delta_4  = theta2(2t)^2 theta4(t)^2 / 4
///
/// Theta_A2 is the hexagonal lattice scaled to minimum norm 2. Composite forms
/// are memoized per (name, scale, order); the cache is thread-safe and
/// invisible to callers.
QSeries expand(const NamedForm& form, const Rational& order);

/// One factor eta(scale * tau)^exponent of an eta quotient.
struct EtaFactor {
  Rational scale;
  int exponent;
};

/// prod eta(c_i tau)^{e_i} / prod eta(d_j tau)^{f_j}, exact below `order`.
/// Each eta(c tau) is q^{c/12} times a unit series; the unit parts are
/// multiplied, the denominator inverted with invert_unit, and the total
/// leading power reattached.
QSeries eta_quotient(const std::vector<EtaFactor>& numerator,
                     const std::vector<EtaFactor>& denominator,
                     const Rational& order);

/// Supplies eta(scale * tau) expanded below `order`. Used to inject a
/// corrupted eta for negative controls.
using EtaSource = std::function<QSeries(const Rational& scale, const Rational& order)>;

struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::optional<Rational> first_mismatch;
};

/// Checks as exact equalities below `order` (>= 4):
///   theta2(t) = 2 eta(2t)^2 / eta(t)
///   theta3(t) = eta(t)^5 / (eta(t/2)^2 eta(2t)^2)
///   theta4(t) = eta(t/2)^2 / eta(t)
std::vector<IdentityCheck> verify_theta_eta_identities(const Rational& order,
                                                       const EtaSource& eta = {});

/// The secondary forms of Delta_16, Delta_4 and Theta_D4 checked against
/// expand(): (eta(t)eta(2t))^8 vs theta2^8 theta3^4 theta4^4 / 256,
/// f1^2 f2 vs theta2(2t)^2 theta4(t)^2 / 4, and the D4 coefficients.
std::vector<IdentityCheck> verify_alternative_forms(const Rational& order);

/// f2 = (eta(t/2) eta(4t) / (eta(t) eta(2t)))^8 for level 2.
QSeries f2_level2(const Rational& order);

/// Sums of q^{m^2} over m in a residue class mod 3, argument scaled by c:
///   residue 0: theta3(9 c tau)
///   residue 1: (theta3(c tau) - theta3(9 c tau)) / 2   (classes +1 and -1 coincide)
QSeries split_residue_theta(int residue, const Rational& scale, const Rational& order);

}  // namespace modlat
