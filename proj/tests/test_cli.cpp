#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<const char*> args) {
  args.insert(args.begin(), "modlat");
  std::ostringstream out, err;
  const int code = modlat::cli::run(static_cast<int>(args.size()), args.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(MODLAT_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void check_golden(std::vector<const char*> args, const std::string& name) {
  const Result r = run(std::move(args));
  CAPTURE(name);
  CAPTURE(r.err);
  CHECK(r.code == 0);
  CHECK(r.out == golden(name));
}

}  // namespace

TEST_CASE("expand") {
  check_golden({"expand", "Theta_D4"}, "expand_theta_d4.txt");
  check_golden({"expand", "Delta_4", "--order", "4"}, "expand_delta4.txt");
  CHECK(run({"expand", "theta3", "--order", "5"}).out == "1 + 2q + 2q^4\n");
  // A lattice name expands by enumeration.
  CHECK(run({"expand", "D4"}).out == golden("expand_theta_d4.txt"));
}

TEST_CASE("decompose") {
  check_golden({"decompose", "BW16"}, "decompose_bw16.txt");
  check_golden({"decompose", "ExampleDim8", "--ell", "2", "--kind", "general"}, "decompose_dim8.txt");
  check_golden({"--format", "json", "decompose", "BW16"}, "decompose_bw16.json");
  CHECK(run({"decompose", "A2"}).out == "Theta_A2\n");
}

TEST_CASE("code pipeline") {
  check_golden({"code", "PSole_dim8", "lwe"}, "code_lwe.txt");
  check_golden({"--format", "json", "code", "PSole_dim8", "lwe"}, "code_lwe.json");
  check_golden({"--order", "5", "code", "PSole_dim8", "theta"}, "code_theta.txt");
  check_golden({"code", "PSole_dim8", "selfdual"}, "code_selfdual.txt");
}

TEST_CASE("gain and curve") {
  check_golden({"gain", "BW16"}, "gain_bw16.txt");
  CHECK(run({"gain", "Zn", "--n", "16"}).out == "1\n");
  const Result curve = run({"curve", "BW16", "--range", "-2:0", "--samples", "5"});
  CHECK(curve.code == 0);
  CHECK(curve.out.rfind("y_db,xi\n-2.000000,", 0) == 0);
  CHECK(std::count(curve.out.begin(), curve.out.end(), '\n') == 6);
}

TEST_CASE("tables and catalog") {
  check_golden({"tables", "--which", "2"}, "tables2.txt");
  check_golden({"catalog"}, "catalog.txt");
}

TEST_CASE("exit codes") {
  CHECK(run({"tables", "--which", "2"}).code == 0);
  // Some shipped rows of the first table disagree with their printed gain.
  CHECK(run({"tables", "--which", "1"}).code == 1);
  CHECK(run({"gain", "nosuch"}).code == 2);
  CHECK(run({"gain", "nosuch"}).err.find("UnknownLattice") != std::string::npos);
  CHECK(run({"expand"}).code == 2);
  CHECK(run({"tables", "--which", "7"}).code == 2);
  CHECK(run({"--order", "-3", "expand", "theta3"}).code == 2);
}
