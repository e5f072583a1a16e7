#pragma once
// Numerical theta values on the imaginary axis tau = i y (q = exp(-pi y)) and
// the secrecy function Xi(i y) = theta3(i sqrt(ell) y)^n / Theta_L(i y).
//
// Everything is double precision. Truncation errors are tracked as explicit
// absolute bounds; rounding error is not included in them.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modlat/lattice.hpp"
#include "modlat/modform.hpp"
#include "modlat/theta.hpp"

namespace modlat {

inline constexpr double kDefaultEps = 1e-12;

/// A value with an absolute bound on the neglected tail.
struct Bounded {
  double value = 0.0;
  double tail = 0.0;
  std::size_t terms = 0;
};

/// Named form at tau = i y; the form's argument scale multiplies y.
Bounded eval_theta_numeric(const NamedForm& form, double y, double eps = kDefaultEps);
Bounded eval_theta_numeric(const ThetaDecomposition& d, double y, double eps = kDefaultEps);
/// Direct lattice sum from enumerated norms, truncated where a packing
/// bound on the remaining points drops below eps. Throws TailBoundNotMet when
/// that needs more than the enumeration budget.
Bounded eval_theta_numeric(const GramMatrix& g, double y, double eps = kDefaultEps,
                           const EnumerationOptions& options = {});

struct CubicLattice {
  int n = 1;
};

/// What is being evaluated: a closed form, a Gram matrix, or Z^n. Carries the
/// level and dimension of the volume-matched reference ell^{1/4} Z^n.
struct SecrecySource {
  std::variant<ThetaDecomposition, GramMatrix, CubicLattice> lattice;
  int ell = 1;
  int n = 1;
  EnumerationOptions enumeration{};

  static SecrecySource from_decomposition(const ThetaDecomposition& d);
  static SecrecySource from_gram(const GramMatrix& g, int ell);
  static SecrecySource cubic(int n);
  std::string label() const;
};

struct SecrecyEvaluation {
  double y = 0.0;
  double xi = 0.0;
  double theta_lattice = 0.0;
  double theta_reference = 0.0;
  std::size_t terms_used = 0;
  double bound_on_tail = 0.0;
};

SecrecyEvaluation secrecy_function(const SecrecySource& source, double y, double eps = kDefaultEps);

/// Xi at the symmetry point y = 1/sqrt(ell): theta3(i)^n / Theta_L(i/sqrt(ell)).
SecrecyEvaluation weak_secrecy_gain(const SecrecySource& source, double eps = kDefaultEps);

/// 10 log10(y) and back.
double to_db(double y);
double from_db(double y_db);
/// 10 log10(ell^{-1/2}).
double symmetry_point_db(int ell);

struct CurvePoint {
  double y_db = 0.0;
  double xi = 0.0;
};

/// Uniform grid of `samples` points on [lo_db, hi_db] (endpoints included).
std::vector<CurvePoint> secrecy_curve(const SecrecySource& source, double lo_db, double hi_db,
                                      int samples, double eps = kDefaultEps);
std::string curve_to_csv(const std::vector<CurvePoint>& curve);
std::string curve_to_json(const std::vector<CurvePoint>& curve);

struct MaximumReport {
  double y_db = 0.0;
  double xi = 0.0;
  /// Number of strict local maxima seen on the coarse scan; 1 when unimodal.
  int local_maxima = 0;
  bool unimodal = true;
};

/// Coarse scan of the dB range followed by golden-section refinement of the
/// best bracket down to `tol_db`. Never throws for multimodal curves; the
/// report says so instead.
MaximumReport locate_maximum(const SecrecySource& source, double lo_db, double hi_db,
                             double tol_db = 1e-7, double eps = kDefaultEps);

}  // namespace modlat
