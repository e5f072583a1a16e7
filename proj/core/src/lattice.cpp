#include "modlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "modlat/errors.hpp"
#include "modlat/fixtures.hpp"

namespace modlat {

namespace {

__extension__ typedef __int128 Int128;

RationalMatrix square_check(const RationalMatrix& rows) {
  const std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw Error("Gram matrix must be square");
  return rows;
}

// Leading principal minors via exact Gaussian elimination; all pivots of a
// symmetric matrix are positive iff it is positive definite.
bool positive_definite(RationalMatrix a) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

}  // namespace

GramMatrix::GramMatrix(const RationalMatrix& rows) : n_(rows.size()) {
  square_check(rows);
  if (n_ == 0) throw NotPositiveDefinite("empty Gram matrix");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (rows[i][j] != rows[j][i]) throw NotPositiveDefinite("Gram matrix is not symmetric");
  if (!positive_definite(rows)) throw NotPositiveDefinite("Gram matrix is not positive definite");
  entries_.reserve(n_ * n_);
  for (const auto& r : rows)
    for (const auto& v : r) entries_.push_back(v);
}

RationalMatrix GramMatrix::rows() const {
  RationalMatrix out(n_, std::vector<Rational>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

Rational determinant(const RationalMatrix& m) {
  RationalMatrix a = square_check(m);
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

Rational determinant(const GramMatrix& g) { return determinant(g.rows()); }

bool is_integral(const GramMatrix& g) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j)
      if (!is_integer(g(i, j))) return false;
  return true;
}

bool is_even(const GramMatrix& g) {
  if (!is_integral(g)) throw NotIntegral("Gram matrix has non-integer entries");
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (g(i, i).get_num() % 2 != 0) return false;
  return true;
}

GramMatrix gram_from_generator(const RationalMatrix& rows) {
  if (rows.empty()) throw RankDeficient("no generator rows");
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != n) throw Error("generator rows differ in length");
  RationalMatrix gram(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational s;
      for (std::size_t k = 0; k < n; ++k) s += rows[i][k] * rows[j][k];
      gram[i][j] = s;
      gram[j][i] = s;
    }
  if (m > n || determinant(gram) == 0) throw RankDeficient("generator rows are linearly dependent");
  return GramMatrix(gram);
}

std::vector<std::vector<Integer>> hermite_basis(std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return {};
  const std::size_t n = rows.front().size();
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < n && pivot < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])))
          best = r;
      if (best == rows.size()) break;
      std::swap(rows[pivot], rows[best]);
      bool done = true;
      for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[pivot][col].get_mpz_t());
        for (std::size_t j = col; j < n; ++j) rows[r][j] -= q * rows[pivot][j];
        if (rows[r][col] != 0) done = false;
      }
      if (done) {
        if (rows[pivot][col] < 0)
          for (auto& v : rows[pivot]) v = -v;
        ++pivot;
        break;
      }
    }
  }
  rows.resize(pivot);
  return rows;
}

Rational norm_step(const GramMatrix& g) {
  Integer l = 1;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i; j < g.dim(); ++j) {
      const Rational v = i == j ? g(i, i) : 2 * g(i, j);
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
  return Rational(1, l);
}

std::vector<NormCount> theta_coefficients(const GramMatrix& g, const Rational& max_norm,
                                          const EnumerationOptions& options) {
  if (max_norm < 0) throw Error("max_norm must be non-negative");
  const std::size_t n = g.dim();
  const Rational step = norm_step(g);
  const Integer scale = step.get_den();
  const std::int64_t top = to_int64(floor(max_norm * Rational(scale)));

  // Exact integer form: norm * scale = sum diag_i x_i^2 + sum_{i<j} off_ij x_i x_j.
  std::vector<std::int64_t> diag(n);
  std::vector<std::int64_t> off(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = to_int64(Rational(g(i, i) * scale).get_num());
    for (std::size_t j = i + 1; j < n; ++j) off[i * n + j] = to_int64(Rational(2 * g(i, j) * scale).get_num());
  }

  // x^T G x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
  std::vector<double> q(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i * n + j] = to_double(g(i, j));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) q[i * n + i] -= q[k * n + k] * q[k * n + i] * q[k * n + i];
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < i; ++k) q[i * n + j] -= q[k * n + k] * q[k * n + i] * q[k * n + j];
      q[i * n + j] /= q[i * n + i];
    }
  }

  const double bound = to_double(max_norm);
  const double guarded = bound * (1.0 + 1e-9) + 1e-9;

  // Gaussian estimate of the number of points in the ball.
  const double log_points = 0.5 * static_cast<double>(n) * std::log(std::numbers::pi * guarded) -
                            std::lgamma(0.5 * static_cast<double>(n) + 1.0) -
                            0.5 * std::log(to_double(determinant(g)));
  if (log_points > std::log(static_cast<double>(options.budget)))
    throw BoundTooLarge("estimated " + std::to_string(std::exp(log_points)) +
                        " lattice points exceed the enumeration budget");

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(top) + 1, 0);
  std::vector<std::int64_t> x(n, 0);
  std::vector<Int128> exact(n + 1, 0);  // exact partial norm of x_{i..n-1}
  std::uint64_t nodes = 0;

  const auto recurse = [&](auto&& self, std::size_t level, double remaining) -> void {
    const std::size_t i = level - 1;
    double center = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) center -= q[i * n + j] * static_cast<double>(x[j]);
    const double radius = std::sqrt(std::max(0.0, remaining / q[i * n + i])) + 1e-9;
    const auto lo = static_cast<std::int64_t>(std::ceil(center - radius));
    const auto hi = static_cast<std::int64_t>(std::floor(center + radius));
    Int128 cross = 0;
    for (std::size_t j = i + 1; j < n; ++j) cross += static_cast<Int128>(off[i * n + j]) * x[j];
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (++nodes > options.budget)
        throw BoundTooLarge("enumeration exceeded " + std::to_string(options.budget) + " nodes");
      const double t = static_cast<double>(v) - center;
      const double left = remaining - q[i * n + i] * t * t;
      if (left < -1e-9 * (1.0 + bound)) continue;
      x[i] = v;
      exact[i] = exact[i + 1] + static_cast<Int128>(diag[i]) * v * v + cross * v;
      if (i == 0) {
        if (exact[0] <= top) ++counts[static_cast<std::size_t>(exact[0])];
      } else {
        self(self, i, left);
      }
    }
    x[i] = 0;
  };
  recurse(recurse, n, guarded);

  std::vector<NormCount> out;
  out.reserve(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    Rational norm(Integer(static_cast<unsigned long>(k)), scale);
    norm.canonicalize();
    out.push_back({norm, counts[k]});
  }
  return out;
}

Rational minimum_norm(const GramMatrix& g, const EnumerationOptions& options) {
  Rational cap = g(0, 0);
  for (std::size_t i = 1; i < g.dim(); ++i) cap = std::min(cap, g(i, i));
  for (const auto& [norm, count] : theta_coefficients(g, cap, options))
    if (norm > 0 && count > 0) return norm;
  return cap;
}

namespace {

GramMatrix integer_gram(const std::vector<std::vector<int>>& rows) {
  RationalMatrix m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (int v : r) m.back().emplace_back(v);
  }
  return GramMatrix(m);
}

GramMatrix cartan(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 2;
  for (const auto& [a, b] : edges) {
    m[a][b] = -1;
    m[b][a] = -1;
  }
  return integer_gram(m);
}

// basis * block * basis^T where the form is block-diagonal with `block`
// repeated over consecutive coordinate groups.
GramMatrix gram_of_basis(const std::vector<std::vector<Integer>>& basis, const RationalMatrix& block) {
  const std::size_t b = block.size();
  const std::size_t m = basis.size();
  RationalMatrix gram(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational s;
      for (std::size_t k0 = 0; k0 < basis[i].size(); k0 += b)
        for (std::size_t u = 0; u < b; ++u)
          for (std::size_t v = 0; v < b; ++v)
            s += block[u][v] * Rational(basis[i][k0 + u] * basis[j][k0 + v]);
      gram[i][j] = s;
      gram[j][i] = s;
    }
  return GramMatrix(gram);
}

// (1/sqrt 2) {x in Z^16 : x mod 2 in RM(1,4), sum x = 0 mod 4}
GramMatrix barnes_wall_16() {
  std::vector<std::vector<Integer>> gens;
  gens.emplace_back(16, Integer(1));
  for (int bit = 0; bit < 4; ++bit) {
    std::vector<Integer> row(16);
    for (int i = 0; i < 16; ++i) row[i] = (i >> bit) & 1;
    gens.push_back(row);
  }
  for (int i = 0; i + 1 < 16; ++i) {
    std::vector<Integer> row(16, Integer(0));
    row[i] = 2;
    row[i + 1] = -2;
    gens.push_back(row);
  }
  std::vector<Integer> row(16, Integer(0));
  row[0] = 2;
  row[1] = 2;
  gens.push_back(row);
  return gram_of_basis(hermite_basis(gens), {{Rational(1, 2)}});
}

// Coxeter-Todd: {x in Z[w]^6 : x_i = x_j mod sqrt(-3), sum x_i = 0 mod 3}
// with norm (2/3) sum |x_i|^2. Coordinates (a, b) stand for a + b w.
GramMatrix coxeter_todd_12() {
  using Eis = std::pair<long, long>;
  const auto mul = [](Eis x, Eis y) {
    return Eis{x.first * y.first - x.second * y.second,
               x.first * y.second + x.second * y.first - x.second * y.second};
  };
  const Eis theta{1, 2};
  const Eis omega{0, 1};
  std::vector<std::vector<Eis>> module_gens;
  module_gens.emplace_back(6, Eis{1, 0});
  for (int i = 0; i + 1 < 6; ++i) {
    std::vector<Eis> v(6, Eis{0, 0});
    v[i] = theta;
    v[i + 1] = mul(theta, Eis{-1, 0});
    module_gens.push_back(v);
  }
  std::vector<Eis> three(6, Eis{0, 0});
  three[0] = Eis{3, 0};
  module_gens.push_back(three);

  std::vector<std::vector<Integer>> gens;
  for (const auto& v : module_gens)
    for (const Eis& unit : {Eis{1, 0}, omega}) {
      std::vector<Integer> row;
      for (const auto& c : v) {
        const Eis p = mul(unit, c);
        row.emplace_back(p.first);
        row.emplace_back(p.second);
      }
      gens.push_back(row);
    }
  return gram_of_basis(hermite_basis(gens),
                       {{Rational(2, 3), Rational(-1, 3)}, {Rational(-1, 3), Rational(2, 3)}});
}

CatalogEntry make_entry(std::string name, GramMatrix gram, int ell, std::string source,
                        std::string note) {
  const Parity parity = is_integral(gram) && is_even(gram) ? Parity::Even : Parity::Odd;
  return CatalogEntry{std::move(name), std::move(gram), ell, parity, std::move(source), std::move(note)};
}

}  // namespace

CatalogEntry catalog(std::string_view name) {
  if (name.size() > 1 && name[0] == 'Z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const int n = std::stoi(std::string(name.substr(1)));
    if (n < 1 || n > 64) throw UnknownLattice("cubic lattice dimension out of range");
    std::vector<std::vector<int>> id(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    return make_entry(std::string(name), integer_gram(id), 1, "derived", "cubic lattice Z^n");
  }
  if (name == "A2")
    return make_entry("A2", integer_gram({{2, 1}, {1, 2}}), 3, "derived",
                      "hexagonal lattice, minimum norm 2");
  if (name == "D4")
    return make_entry("D4", cartan(4, {{0, 1}, {1, 2}, {1, 3}}), 2, "derived", "D4 root lattice");
  if (name == "E8")
    return make_entry("E8", cartan(8, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}}), 1,
                      "derived", "E8 root lattice");
  if (name == "C1") return make_entry("C1", integer_gram({{1}}), 1, "derived", "Z");
  if (name == "C2") return make_entry("C2", integer_gram({{1, 0}, {0, 2}}), 2, "derived", "Z + sqrt2 Z");
  if (name == "C3") return make_entry("C3", integer_gram({{1, 0}, {0, 3}}), 3, "derived", "Z + sqrt3 Z");
  if (name == "K12")
    return make_entry("K12", coxeter_todd_12(), 3, "derived",
                      "Coxeter-Todd lattice from Eisenstein integers");
  if (name == "BW16")
    return make_entry("BW16", barnes_wall_16(), 2, "derived",
                      "Barnes-Wall lattice from RM(1,4), minimum norm 4");
  if (name == "ExampleDim8")
    return make_entry("ExampleDim8", gram_from_text(std::string(fixture_text("lattices/example_dim8.txt"))),
                      2, "published", "odd 2-modular Construction A lattice of the PSole_dim8 code");
  throw UnknownLattice("no catalog entry named '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"Zn", "A2", "D4", "E8", "C1", "C2", "C3", "K12", "BW16", "ExampleDim8"};
}

std::string gram_to_json(const GramMatrix& g) {
  nlohmann::json j;
  j["n"] = g.dim();
  j["entries"] = nlohmann::json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < g.dim(); ++k) row.push_back(to_string(g(i, k)));
    j["entries"].push_back(row);
  }
  return j.dump();
}

GramMatrix gram_from_json(const std::string& json) {
  try {
    const auto j = nlohmann::json::parse(json);
    RationalMatrix m;
    for (const auto& row : j.at("entries")) {
      m.emplace_back();
      for (const auto& v : row)
        m.back().push_back(v.is_number_integer() ? Rational(Integer(v.get<long>()))
                                                 : parse_rational(v.get<std::string>()));
    }
    if (j.contains("n") && j.at("n").get<std::size_t>() != m.size())
      throw ParseError("declared n does not match entries");
    return GramMatrix(m);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

std::string gram_to_text(const GramMatrix& g) {
  std::ostringstream out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t k = 0; k < g.dim(); ++k) out << (k ? " " : "") << to_string(g(i, k));
    out << '\n';
  }
  return out.str();
}

GramMatrix gram_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  RationalMatrix m;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tok;
    std::vector<Rational> row;
    while (fields >> tok) row.push_back(parse_rational(tok));
    if (!row.empty()) m.push_back(std::move(row));
  }
  if (m.empty()) throw ParseError("no Gram rows");
  for (const auto& r : m)
    if (r.size() != m.size()) throw ParseError("Gram text is not square");
  return GramMatrix(m);
}

}  // namespace modlat
