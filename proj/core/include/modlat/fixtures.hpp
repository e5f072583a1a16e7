#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modlat/rational.hpp"

namespace modlat {

/// Contents of a file from the data/ directory, embedded at build time.
/// Throws Error for unknown paths.
std::string_view fixture_text(std::string_view relative_path);
std::vector<std::string> fixture_paths();

struct KnownCoefficient {
  Rational exponent;
  Rational value;
};

struct EvenTableRow {
  std::string name;
  int dim = 0;
  int ell = 0;
  std::vector<Rational> coeffs;
  std::string chi_w_printed;
  double chi_w = 0.0;
  /// nullopt: enumerate from the catalog Gram.
  std::optional<std::vector<KnownCoefficient>> known;
  std::optional<std::string> catalog;
};

struct OddTableRow {
  int dim = 0;
  std::vector<Rational> coeffs;
  std::string chi_w_printed;
  double chi_w = 0.0;
  std::optional<std::string> code;
  std::optional<std::string> catalog;
};

struct ComparisonRow {
  int dim = 0;
  std::string lattice;
  int ell = 0;
  std::string printed;
  double value = 0.0;
  bool lower_bound = false;
  std::string origin;
};

std::vector<EvenTableRow> even_table();
std::vector<OddTableRow> odd_table();
std::vector<ComparisonRow> comparison_table();

/// Named code generator matrices ("PSole_dim8") as text.
std::optional<std::string> code_fixture(std::string_view name);
std::vector<std::string> code_fixture_names();

}  // namespace modlat
