#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modlat/rational.hpp"

namespace modlat {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Symmetric positive-definite rational matrix; the constructor rejects
/// anything else (NotPositiveDefinite).
class GramMatrix {
 public:
  explicit GramMatrix(const RationalMatrix& rows);

  std::size_t dim() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  RationalMatrix rows() const;

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> entries_;
};

/// Exact determinant of a square rational matrix (fraction-free elimination).
Rational determinant(const RationalMatrix& m);
Rational determinant(const GramMatrix& g);

bool is_integral(const GramMatrix& g);

/// Even iff every diagonal entry is even; throws NotIntegral for a
/// non-integral Gram.
bool is_even(const GramMatrix& g);

/// M * M^T; throws RankDeficient when the rows are dependent.
GramMatrix gram_from_generator(const RationalMatrix& rows);

/// Row-style Hermite normal form of an integer generating set; returns the
/// nonzero rows, a basis of the Z-span.
std::vector<std::vector<Integer>> hermite_basis(std::vector<std::vector<Integer>> generators);

struct NormCount {
  Rational norm;
  std::uint64_t count = 0;
  friend bool operator==(const NormCount&, const NormCount&) = default;
};

struct EnumerationOptions {
  /// Upper limit on search-tree nodes (and on the a priori point estimate).
  std::uint64_t budget = 100'000'000;
};

/// Spacing of the norm grid: every norm x^T G x lies in step * Z.
Rational norm_step(const GramMatrix& g);

/// Counts A_m of lattice vectors of each norm m <= max_norm, listed on the
/// full norm grid (zero counts included); A_0 = 1.
///
/// Fincke-Pohst enumeration: a floating-point LDL^T bounds each coordinate
/// with a guard band so no vector is missed, and each candidate's norm is
/// then computed exactly in integer arithmetic before it is counted.
/// Throws BoundTooLarge when the estimate or the node count exceeds the budget.
std::vector<NormCount> theta_coefficients(const GramMatrix& g, const Rational& max_norm,
                                          const EnumerationOptions& options = {});

/// Smallest nonzero norm.
Rational minimum_norm(const GramMatrix& g, const EnumerationOptions& options = {});

enum class Parity { Even, Odd };

struct CatalogEntry {
  std::string name;
  GramMatrix gram;
  int ell = 1;
  Parity parity = Parity::Odd;
  std::string source;  // "published" or "derived"
  std::string note;
};

/// Known names: "Z<n>" for any n >= 1, A2, D4, E8, C1, C2, C3, K12, BW16,
/// ExampleDim8. Throws UnknownLattice otherwise.
CatalogEntry catalog(std::string_view name);

/// Names for listing; the cubic family is shown as "Zn".
std::vector<std::string> catalog_names();

// Gram I/O. JSON: {"n": 2, "entries": [["2","1"],["1","2"]]} with exact
// "p/q" strings. Text: one row per line, whitespace separated, '#' comments.
std::string gram_to_json(const GramMatrix& g);
GramMatrix gram_from_json(const std::string& json);
std::string gram_to_text(const GramMatrix& g);
GramMatrix gram_from_text(const std::string& text);

}  // namespace modlat
