#pragma once
// Linear codes over R = F3 + vF3 (v^2 = 1), identified with O_K / 3 O_K for
// K = Q(sqrt(-2)) via a + 3O_K -> a and sqrt(-2) + 3O_K -> v.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "modlat/lattice.hpp"
#include "modlat/qseries.hpp"

namespace modlat {

/// a + b v with a, b in {0, 1, 2}.
class RingElem {
 public:
  constexpr RingElem() = default;
  constexpr RingElem(int a, int b) : a_(mod3(a)), b_(mod3(b)) {}

  constexpr int a() const { return a_; }
  constexpr int b() const { return b_; }
  /// 0..8, a + 3 b.
  constexpr int index() const { return a_ + 3 * b_; }
  static constexpr RingElem from_index(int i) { return {i % 3, i / 3}; }

  constexpr bool is_zero() const { return a_ == 0 && b_ == 0; }
  /// v -> -v.
  constexpr RingElem conj() const { return {a_, -b_}; }

  friend constexpr RingElem operator+(RingElem x, RingElem y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend constexpr RingElem operator-(RingElem x, RingElem y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend constexpr RingElem operator-(RingElem x) { return {-x.a_, -x.b_}; }
  friend constexpr RingElem operator*(RingElem x, RingElem y) {
    return {x.a_ * y.a_ + x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
  }
  friend constexpr bool operator==(RingElem, RingElem) = default;

 private:
  static constexpr int mod3(int x) { return ((x % 3) + 3) % 3; }
  int a_ = 0;
  int b_ = 0;
};

/// All nine elements, in index order.
std::array<RingElem, 9> ring_elements();

/// "0", "1", "-1", "v", "-v", "1+v", "-1-v", "2v", "2+2v", or a pair "a,b".
RingElem parse_ring_elem(std::string_view text);
/// Canonical form with entries in {-1, 0, 1}: "0", "1", "-1", "v", "1-v", ...
std::string to_string(RingElem r);

/// 0 for 0, 1 for +-1, 2 for +-v, 3 for +-1+-v: the least algebraic norm
/// a^2 + 2b^2 in the coset, with the lift of the entries to {-1, 0, 1}.
int length_of(RingElem r);

using Codeword = std::vector<RingElem>;

struct CodeOverR {
  std::size_t length = 0;              // k
  std::vector<Codeword> generators;    // m rows of length k
};

/// Rows of ring elements, whitespace separated; '#' starts a comment.
CodeOverR parse_code(const std::string& text);
std::string code_to_text(const CodeOverR& code);
/// A named fixture ("PSole_dim8") or a path to a code text file.
CodeOverR load_code(const std::string& name_or_path);

struct CodeOptions {
  /// Upper limit on 9^m generator combinations.
  std::uint64_t budget = 10'000'000;
};

/// All R-linear combinations of the generator rows, deduplicated and sorted
/// by index vector. Throws EnumerationTooLarge when 9^m exceeds the budget.
std::vector<Codeword> enumerate_codewords(const CodeOverR& code, const CodeOptions& options = {});

/// Composition (n0, n1, n2, n3): counts of coordinates of each length.
using Composition = std::array<int, 4>;

struct LengthWeightEnumerator {
  std::size_t length = 0;
  /// Ordered lexicographically descending, as printed.
  std::map<Composition, std::uint64_t, std::greater<>> counts;

  std::uint64_t total() const;
  friend bool operator==(const LengthWeightEnumerator&, const LengthWeightEnumerator&) = default;
};

LengthWeightEnumerator length_weight_enumerator(const CodeOverR& code, const CodeOptions& options = {});

/// "a^4 + 4a^2d^2 + 16abcd + ..."
std::string pretty(const LengthWeightEnumerator& lwe);
/// {"length":4,"terms":[{"composition":[4,0,0,0],"count":1},...]}
std::string to_json(const LengthWeightEnumerator& lwe);

/// Hermitian form sum x_i conj(y_i).
RingElem hermitian_product(const Codeword& x, const Codeword& y);

struct SelfDualityReport {
  bool self_dual = false;
  std::uint64_t cardinality = 0;
  /// Human readable reason when self_dual is false.
  std::string witness;
};

/// Pairwise Hermitian orthogonality of the generator rows and |C|^2 = 9^k.
SelfDualityReport check_hermitian_self_dual(const CodeOverR& code, const CodeOptions& options = {});

/// Element a + b sqrt(-2) of O_K.
struct OkElem {
  Integer a;
  Integer b;
};

struct ConstructionA {
  /// k x k O_K basis of rho^{-1}(C), upper triangular.
  std::vector<std::vector<OkElem>> ok_basis;
  /// Gram of the realified basis (x, sqrt(-2) x per row) under
  /// a + b sqrt(-2) -> (a, b sqrt 2), scaled by 1/sqrt 3. Exact and 2k x 2k.
  GramMatrix gram;
  /// When false the lattice is still built but need not be 2-modular.
  bool self_dual = false;
};

/// Lifts the generator rows to O_K with entries in {-1, 0, 1}, adjoins
/// 3 e_j and reduces to k rows by Euclidean elimination in Z[sqrt(-2)].
/// The division rule is a / b = round-to-nearest of both rational parts of
/// a conj(b) / N(b); the remainder then has norm at most 3/4 N(b).
ConstructionA construction_a(const CodeOverR& code, const CodeOptions& options = {});
GramMatrix construction_a_gram(const CodeOverR& code, const CodeOptions& options = {});

/// theta_0 .. theta_3 below `order`: the theta series of the cosets of
/// 3O_K / sqrt 3 indexed by length 0..3 (one representative each).
std::array<QSeries, 4> coset_thetas(const Rational& order);

/// lwe_C(theta_0, theta_1, theta_2, theta_3), exact below `order`.
QSeries theta_from_lwe(const LengthWeightEnumerator& lwe, const Rational& order);

}  // namespace modlat
