#pragma once
// Shared helpers for the unit tests: random series and an independent
// brute-force theta oracle.

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "modlat/lattice.hpp"
#include "modlat/qseries.hpp"

namespace modlat::testing {

inline Rational random_rational(std::mt19937& rng, int span = 9, int max_den = 4) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

/// Random series with exponents on 1/d for d in {1, 2, 3}, non-negative,
/// exact below a random order in [4, 9].
inline QSeries random_series(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick_d(1, 3);
  std::uniform_int_distribution<int> pick_order(4, 9);
  std::uniform_int_distribution<int> count(0, 6);
  const int d = pick_d(rng);
  const int order = pick_order(rng);
  std::uniform_int_distribution<int> exponent(0, order * d - 1);
  std::vector<std::pair<Rational, Rational>> terms;
  for (int i = count(rng); i > 0; --i) terms.emplace_back(Rational(exponent(rng), d), random_rational(rng));
  return QSeries::from_exponents(terms, order);
}

/// Counts by exact norm over a coordinate box large enough for max_norm.
/// Slow, independent of the library enumeration (only GramMatrix access).
inline std::map<Rational, std::uint64_t> brute_force_counts(const GramMatrix& g, const Rational& max_norm) {
  const std::size_t n = g.dim();
  // Box from the diagonal of G^{-1}: |x_i| <= sqrt(N (G^{-1})_ii).
  std::vector<std::vector<double>> a(n, std::vector<double>(2 * n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = to_double(g(i, j));
    a[i][n + i] = 1.0;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[p], a[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<long> bound(n);
  for (std::size_t i = 0; i < n; ++i)
    bound[i] = static_cast<long>(std::floor(std::sqrt(to_double(max_norm) * a[i][n + i] / a[i][i]) + 1e-9));

  std::map<Rational, std::uint64_t> counts;
  std::vector<long> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -bound[i];
  for (;;) {
    Rational norm;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (x[i] != 0 && x[j] != 0) norm += g(i, j) * x[i] * x[j];
    if (norm <= max_norm) ++counts[norm];
    std::size_t i = 0;
    while (i < n && x[i] == bound[i]) x[i] = -bound[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  return counts;
}

}  // namespace modlat::testing
