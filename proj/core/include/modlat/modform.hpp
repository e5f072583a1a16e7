#pragma once

#include <string>
#include <vector>

#include "modlat/fixtures.hpp"
#include "modlat/qseries.hpp"
#include "modlat/theta.hpp"

namespace modlat {

enum class BasisKind {
  /// Theta^lambda Delta^mu with k0 lambda + k1 mu = k (even lattices, ell = 1, 2, 3).
  Even,
  /// f1^(k - 2i) Delta_4^i, i = 0..floor(k/2) (any parity, ell = 2).
  General,
};

std::string_view basis_kind_id(BasisKind kind);  // "even" / "general"
BasisKind parse_basis_kind(std::string_view id);

/// Exponent pair of one monomial. For Even: Theta^lambda Delta^mu.
/// For General: f1^lambda Delta_4^mu with lambda = k - 2 mu.
struct BasisTerm {
  int lambda = 0;
  int mu = 0;
  friend bool operator==(const BasisTerm&, const BasisTerm&) = default;
};

struct BasisSpec {
  int ell = 2;
  BasisKind kind = BasisKind::Even;
  /// Weight; the lattice dimension is 2k in both shapes used here.
  int k = 0;
  std::vector<BasisTerm> terms;

  int dim() const { return 2 * k; }
  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

/// Weight of the theta generator (k0) and of the cusp form (k1 = 24/(1+ell)).
int theta_weight(int ell);
int cusp_weight(int ell);

/// Number of divisors of ell, i.e. dim C^ell.
int dim_c_ell(int ell);
/// Order of f1 = Theta_{C^ell} at the cusp: sum_{d|ell} d / 8 for odd ell,
/// / 6 for even ell.
Rational ord1_f1(int ell);

/// Terms ordered by ascending mu (resp. i). Throws UnsupportedLevel for
/// ell outside {1, 2, 3} (and ell != 2 for General), EmptyBasis if the
/// weight equation has no solution.
BasisSpec build_basis(int ell, int n, BasisKind kind);

/// The two generator forms of the basis: (Theta_E8|Theta_D4|Theta_A2,
/// Delta_24|Delta_16|Delta_12) or (f1_l2, Delta_4).
std::pair<FormName, FormName> generator_forms(const BasisSpec& basis);

QSeries expand_term(const BasisSpec& basis, std::size_t index, const Rational& order);

/// q-exponents matched by the linear system: 0, 2, 4, ... for Even,
/// 0, 1, 2, ... for General; one per term.
std::vector<Rational> fitting_exponents(const BasisSpec& basis);

struct ThetaDecomposition {
  BasisSpec basis;
  std::vector<Rational> coeffs;  // one per basis term, same order
  friend bool operator==(const ThetaDecomposition&, const ThetaDecomposition&) = default;
};

/// Solves exactly for the coefficients from leading theta coefficients.
/// Known values at the fitting exponents determine the system; every other
/// known value is checked against the solution.
/// Throws InsufficientData, SingularSystem or InconsistentSurplus.
ThetaDecomposition solve_coefficients(const BasisSpec& basis,
                                      const std::vector<KnownCoefficient>& known);

QSeries expand_decomposition(const ThetaDecomposition& d, const Rational& order);

/// "Theta_D4^4 - 96*Delta_16", "f1^4 - 8*f1^2*Delta_4". Zero terms omitted.
std::string pretty(const ThetaDecomposition& d);
/// {"ell":2,"kind":"even","n":16,"terms":[[4,0],[0,1]],"coeffs":["1","-96"]}
std::string to_json(const ThetaDecomposition& d);
ThetaDecomposition decomposition_from_json(const std::string& json);

/// Decomposition with coefficients padded with zeros to the basis size.
ThetaDecomposition make_decomposition(int ell, int n, BasisKind kind,
                                      const std::vector<Rational>& leading);

enum class TableId { Even, Odd };

struct RowCheck {
  std::string label;
  bool pass = true;
  std::vector<std::string> failures;
};

/// Per-row structural checks of a shipped table: constant term 1,
/// non-negative integer coefficients, vanishing odd coefficients for even
/// rows, exact solve from known/enumerated coefficients, and agreement with
/// the enumeration oracle wherever a catalog Gram exists (through norm 8).
std::vector<RowCheck> verify_table(TableId table);

}  // namespace modlat
