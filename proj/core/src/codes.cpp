#include "modlat/codes.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "modlat/errors.hpp"
#include "modlat/fixtures.hpp"
#include "modlat/theta.hpp"

namespace modlat {

namespace {

int centered(int x) { return x == 2 ? -1 : x; }

std::uint64_t checked_pow9(std::size_t m, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (total > budget / 9)
      throw EnumerationTooLarge("9^" + std::to_string(m) + " combinations exceed the budget of " +
                                std::to_string(budget));
    total *= 9;
  }
  return total;
}

// --- Z[sqrt(-2)] arithmetic -------------------------------------------------

Integer norm(const OkElem& x) { return x.a * x.a + 2 * x.b * x.b; }
bool is_zero(const OkElem& x) { return x.a == 0 && x.b == 0; }

OkElem mul(const OkElem& x, const OkElem& y) {
  return {x.a * y.a - 2 * x.b * y.b, x.a * y.b + x.b * y.a};
}

// floor(n / d + 1/2) for d > 0.
Integer round_div(const Integer& n, const Integer& d) {
  Integer num = 2 * n + d;
  Integer den = 2 * d;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

OkElem nearest_quotient(const OkElem& x, const OkElem& y) {
  const OkElem num = mul(x, {y.a, -y.b});
  const Integer n = norm(y);
  return {round_div(num.a, n), round_div(num.b, n)};
}

using OkRow = std::vector<OkElem>;

void subtract_multiple(OkRow& row, const OkElem& q, const OkRow& pivot) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    const OkElem t = mul(q, pivot[j]);
    row[j].a -= t.a;
    row[j].b -= t.b;
  }
}

std::vector<OkRow> ok_hermite(std::vector<OkRow> rows, std::size_t k) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < k && rank < rows.size(); ++col) {
    for (;;) {
      // Smallest nonzero entry in this column becomes the pivot.
      std::size_t best = rows.size();
      for (std::size_t r = rank; r < rows.size(); ++r)
        if (!is_zero(rows[r][col]) && (best == rows.size() || norm(rows[r][col]) < norm(rows[best][col])))
          best = r;
      if (best == rows.size()) break;
      std::swap(rows[rank], rows[best]);
      bool clean = true;
      for (std::size_t r = rank + 1; r < rows.size(); ++r) {
        if (is_zero(rows[r][col])) continue;
        subtract_multiple(rows[r], nearest_quotient(rows[r][col], rows[rank][col]), rows[rank]);
        if (!is_zero(rows[r][col])) clean = false;
      }
      if (clean) {
        ++rank;
        break;
      }
    }
  }
  rows.resize(rank);
  return rows;
}

// Inner product of the realified vectors under (a, b sqrt 2), unscaled.
Integer real_dot(const OkRow& x, const OkRow& y) {
  Integer s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j].a * y[j].a + 2 * x[j].b * y[j].b;
  return s;
}

std::vector<std::string> split_rows(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

}  // namespace

std::array<RingElem, 9> ring_elements() {
  std::array<RingElem, 9> out;
  for (int i = 0; i < 9; ++i) out[static_cast<std::size_t>(i)] = RingElem::from_index(i);
  return out;
}

RingElem parse_ring_elem(std::string_view text) {
  const std::string s(text);
  const auto bad = [&] { return ParseError("bad ring element '" + s + "'"); };
  if (s.empty()) throw bad();
  if (const auto comma = s.find(','); comma != std::string::npos) {
    try {
      std::size_t used = 0;
      const int a = std::stoi(s.substr(0, comma), &used);
      if (used != comma) throw bad();
      const std::string rest = s.substr(comma + 1);
      const int b = std::stoi(rest, &used);
      if (used != rest.size()) throw bad();
      return {a, b};
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  int a = 0;
  int b = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw bad();
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    const bool has_digits = pos > start;
    const int value = has_digits ? std::stoi(s.substr(start, pos - start)) % 3 : 1;
    if (pos < s.size() && s[pos] == 'v') {
      b += sign * value;
      ++pos;
    } else if (has_digits) {
      a += sign * value;
    } else {
      throw bad();
    }
  }
  return {a, b};
}

std::string to_string(RingElem r) {
  const int a = centered(r.a());
  const int b = centered(r.b());
  if (a == 0 && b == 0) return "0";
  std::string out;
  if (a != 0) out = a > 0 ? "1" : "-1";
  if (b != 0) out += b > 0 ? (out.empty() ? "v" : "+v") : "-v";
  return out;
}

int length_of(RingElem r) {
  const int a = centered(r.a());
  const int b = centered(r.b());
  return a * a + 2 * b * b;
}

CodeOverR parse_code(const std::string& text) {
  CodeOverR code;
  bool first = true;
  for (const auto& line : split_rows(text)) {
    std::istringstream fields(line);
    Codeword row;
    for (std::string tok; fields >> tok;) row.push_back(parse_ring_elem(tok));
    if (first) {
      code.length = row.size();
      first = false;
    } else if (row.size() != code.length) {
      throw ParseError("code rows have different lengths");
    }
    code.generators.push_back(std::move(row));
  }
  if (first) throw ParseError("code has no rows");
  return code;
}

std::string code_to_text(const CodeOverR& code) {
  std::string out;
  for (const auto& row : code.generators) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + to_string(row[j]);
    out += "\n";
  }
  return out;
}

CodeOverR load_code(const std::string& name_or_path) {
  if (const auto fixture = code_fixture(name_or_path)) return parse_code(*fixture);
  std::ifstream in(name_or_path);
  if (!in) throw Error("no code fixture or readable file named '" + name_or_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str());
}

std::vector<Codeword> enumerate_codewords(const CodeOverR& code, const CodeOptions& options) {
  const std::size_t m = code.generators.size();
  const std::uint64_t combos = checked_pow9(m, options.budget);
  std::set<std::vector<unsigned char>> seen;
  std::vector<int> digits(m, 0);
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::uint64_t rest = c;
    for (std::size_t i = 0; i < m; ++i) {
      digits[i] = static_cast<int>(rest % 9);
      rest /= 9;
    }
    Codeword word(code.length);
    for (std::size_t i = 0; i < m; ++i) {
      if (digits[i] == 0) continue;
      const RingElem s = RingElem::from_index(digits[i]);
      for (std::size_t j = 0; j < code.length; ++j) word[j] = word[j] + s * code.generators[i][j];
    }
    std::vector<unsigned char> key(code.length);
    for (std::size_t j = 0; j < code.length; ++j) key[j] = static_cast<unsigned char>(word[j].index());
    seen.insert(std::move(key));
  }
  std::vector<Codeword> out;
  out.reserve(seen.size());
  for (const auto& key : seen) {
    Codeword word;
    for (unsigned char i : key) word.push_back(RingElem::from_index(i));
    out.push_back(std::move(word));
  }
  return out;
}

std::uint64_t LengthWeightEnumerator::total() const {
  std::uint64_t s = 0;
  for (const auto& [comp, count] : counts) s += count;
  return s;
}

LengthWeightEnumerator length_weight_enumerator(const CodeOverR& code, const CodeOptions& options) {
  LengthWeightEnumerator lwe;
  lwe.length = code.length;
  for (const auto& word : enumerate_codewords(code, options)) {
    Composition comp{0, 0, 0, 0};
    for (const auto& r : word) ++comp[static_cast<std::size_t>(length_of(r))];
    ++lwe.counts[comp];
  }
  return lwe;
}

std::string pretty(const LengthWeightEnumerator& lwe) {
  static constexpr char kVars[] = {'a', 'b', 'c', 'd'};
  std::string out;
  for (const auto& [comp, count] : lwe.counts) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < 4; ++i) {
      if (comp[i] == 0) continue;
      mono += kVars[i];
      if (comp[i] > 1) mono += "^" + std::to_string(comp[i]);
    }
    if (count != 1 || mono.empty()) out += std::to_string(count);
    out += mono;
  }
  return out.empty() ? "0" : out;
}

std::string to_json(const LengthWeightEnumerator& lwe) {
  nlohmann::json j;
  j["length"] = lwe.length;
  j["terms"] = nlohmann::json::array();
  for (const auto& [comp, count] : lwe.counts)
    j["terms"].push_back({{"composition", comp}, {"count", count}});
  return j.dump();
}

RingElem hermitian_product(const Codeword& x, const Codeword& y) {
  if (x.size() != y.size()) throw Error("codewords of different lengths");
  RingElem s;
  for (std::size_t i = 0; i < x.size(); ++i) s = s + x[i] * y[i].conj();
  return s;
}

SelfDualityReport check_hermitian_self_dual(const CodeOverR& code, const CodeOptions& options) {
  SelfDualityReport report;
  const auto& g = code.generators;
  for (std::size_t i = 0; i < g.size() && report.witness.empty(); ++i)
    for (std::size_t j = i; j < g.size(); ++j) {
      const RingElem p = hermitian_product(g[i], g[j]);
      if (!p.is_zero()) {
        report.witness = "rows " + std::to_string(i) + " and " + std::to_string(j) +
                         " have Hermitian product " + to_string(p);
        break;
      }
    }
  report.cardinality = enumerate_codewords(code, options).size();
  const Integer squared = Integer(static_cast<unsigned long>(report.cardinality)) *
                          Integer(static_cast<unsigned long>(report.cardinality));
  Integer full;
  mpz_ui_pow_ui(full.get_mpz_t(), 9, code.length);
  if (report.witness.empty() && squared != full)
    report.witness = "|C|^2 = " + to_string(squared) + " but 9^k = " + to_string(full);
  report.self_dual = report.witness.empty();
  return report;
}

ConstructionA construction_a(const CodeOverR& code, const CodeOptions& options) {
  const std::size_t k = code.length;
  if (k == 0) throw Error("code has length 0");
  std::vector<OkRow> rows;
  for (const auto& g : code.generators) {
    OkRow row;
    for (const auto& r : g) row.push_back({centered(r.a()), centered(r.b())});
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < k; ++j) {
    OkRow row(k, OkElem{0, 0});
    row[j] = {3, 0};
    rows.push_back(std::move(row));
  }
  std::vector<OkRow> basis = ok_hermite(std::move(rows), k);
  if (basis.size() != k) throw RankDeficient("O_K reduction produced " + std::to_string(basis.size()) + " rows");

  // Real basis: x_i and sqrt(-2) x_i for every O_K basis row.
  std::vector<OkRow> real;
  for (const auto& x : basis) {
    real.push_back(x);
    OkRow y;
    for (const auto& e : x) y.push_back(mul({0, 1}, e));
    real.push_back(std::move(y));
  }
  RationalMatrix gram(2 * k, std::vector<Rational>(2 * k));
  for (std::size_t i = 0; i < 2 * k; ++i)
    for (std::size_t j = 0; j < 2 * k; ++j) gram[i][j] = Rational(real_dot(real[i], real[j]), 3);
  for (auto& row : gram)
    for (auto& e : row) e.canonicalize();

  return ConstructionA{std::move(basis), GramMatrix(gram),
                       check_hermitian_self_dual(code, options).self_dual};
}

GramMatrix construction_a_gram(const CodeOverR& code, const CodeOptions& options) {
  return construction_a(code, options).gram;
}

std::array<QSeries, 4> coset_thetas(const Rational& order) {
  const Rational third(1, 3);
  const Rational two_thirds(2, 3);
  const QSeries r0 = split_residue_theta(0, third, order);        // theta3(3 tau)
  const QSeries r1 = split_residue_theta(1, third, order);        // a = +-1 mod 3
  const QSeries s0 = split_residue_theta(0, two_thirds, order);   // theta3(6 tau)
  const QSeries s1 = split_residue_theta(1, two_thirds, order);   // b = +-1 mod 3
  return {r0 * s0, r1 * s0, r0 * s1, r1 * s1};
}

QSeries theta_from_lwe(const LengthWeightEnumerator& lwe, const Rational& order) {
  const auto base = coset_thetas(order);
  std::array<std::vector<QSeries>, 4> powers;
  for (std::size_t i = 0; i < 4; ++i) powers[i].push_back(QSeries::constant(1, order));
  QSeries out = QSeries::zero(order);
  for (const auto& [comp, count] : lwe.counts) {
    QSeries term = QSeries::constant(Rational(Integer(static_cast<unsigned long>(count))), order);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto e = static_cast<std::size_t>(comp[i]);
      while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * base[i]);
      term = term * powers[i][e];
    }
    out = out + term;
  }
  return out;
}

}  // namespace modlat
