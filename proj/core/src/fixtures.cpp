#include "modlat/fixtures.hpp"

#include <sstream>

#include "fixture_data.hpp"
#include "modlat/errors.hpp"

namespace modlat {

namespace {

std::vector<std::vector<std::string>> table_rows(std::string_view path) {
  std::istringstream in{std::string(fixture_text(path))};
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> row;
    for (std::string tok; fields >> tok;) row.push_back(tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Rational> parse_coeffs(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_rational(part));
  return out;
}

std::optional<std::string> optional_name(const std::string& s) {
  if (s == "-") return std::nullopt;
  return s;
}

void expect_columns(const std::vector<std::string>& row, std::size_t n, std::string_view path) {
  if (row.size() != n) throw ParseError("bad row in " + std::string(path));
}

}  // namespace

std::string_view fixture_text(std::string_view relative_path) {
  for (const auto& [path, text] : detail::embedded_fixtures())
    if (path == relative_path) return text;
  throw Error("unknown fixture '" + std::string(relative_path) + "'");
}

std::vector<std::string> fixture_paths() {
  std::vector<std::string> out;
  for (const auto& [path, text] : detail::embedded_fixtures()) out.emplace_back(path);
  return out;
}

std::vector<EvenTableRow> even_table() {
  std::vector<EvenTableRow> out;
  for (const auto& r : table_rows("table1.txt")) {
    expect_columns(r, 7, "table1.txt");
    EvenTableRow row;
    row.name = r[0];
    row.dim = std::stoi(r[1]);
    row.ell = std::stoi(r[2]);
    row.coeffs = parse_coeffs(r[3]);
    row.chi_w_printed = r[4];
    row.chi_w = std::stod(r[4]);
    if (r[5] != "gram") {
      std::vector<KnownCoefficient> known;
      for (const auto& pair : split(r[5], ',')) {
        const auto nc = split(pair, ':');
        if (nc.size() != 2) throw ParseError("bad known coefficient '" + pair + "'");
        known.push_back({parse_rational(nc[0]), parse_rational(nc[1])});
      }
      row.known = std::move(known);
    }
    row.catalog = optional_name(r[6]);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<OddTableRow> odd_table() {
  std::vector<OddTableRow> out;
  for (const auto& r : table_rows("table2.txt")) {
    expect_columns(r, 5, "table2.txt");
    OddTableRow row;
    row.dim = std::stoi(r[0]);
    row.coeffs = parse_coeffs(r[1]);
    row.chi_w_printed = r[2];
    row.chi_w = std::stod(r[2]);
    row.code = optional_name(r[3]);
    row.catalog = optional_name(r[4]);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<ComparisonRow> comparison_table() {
  std::vector<ComparisonRow> out;
  for (const auto& r : table_rows("table3.txt")) {
    expect_columns(r, 5, "table3.txt");
    ComparisonRow row;
    row.dim = std::stoi(r[0]);
    row.lattice = r[1];
    row.ell = std::stoi(r[2]);
    row.printed = r[3];
    row.lower_bound = row.printed.rfind(">=", 0) == 0;
    row.value = std::stod(row.lower_bound ? row.printed.substr(2) : row.printed);
    row.origin = r[4];
    out.push_back(std::move(row));
  }
  return out;
}

std::optional<std::string> code_fixture(std::string_view name) {
  if (name == "PSole_dim8") return std::string(fixture_text("codes/psole_dim8.txt"));
  return std::nullopt;
}

std::vector<std::string> code_fixture_names() { return {"PSole_dim8"}; }

}  // namespace modlat
