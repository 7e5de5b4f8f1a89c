#pragma once

// Linear [n,k]_q codes over small prime fields, their duals and weight
// enumerators, and the embedding of a code as a subgroup of Z_q^n.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "eqmix/abelian.hpp"

namespace eqmix {

/// Cap on q^k for anything that enumerates codewords.
inline constexpr std::size_t kDefaultEnumerationCap = 65536;

using Word = std::vector<int>;

class LinearCode {
 public:
  /// The [n,0]_q code {0}.
  static LinearCode zero(int n, int q);

  int length() const { return n_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  int field_size() const { return q_; }
  /// Reduced row-echelon generator rows, pivots leftmost.
  const std::vector<Word>& basis() const { return basis_; }
  /// Set when the generator rows handed in were linearly dependent.
  bool rank_deficient() const { return rank_deficient_; }
  std::vector<int> pivot_columns() const;

  friend bool operator==(const LinearCode& a, const LinearCode& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.basis_ == b.basis_;
  }

 private:
  LinearCode(int n, int q, std::vector<Word> basis, bool deficient)
      : n_(n), q_(q), basis_(std::move(basis)), rank_deficient_(deficient) {}
  friend LinearCode code_from_generator(const std::vector<Word>& rows, int q);

  int n_;
  int q_;
  std::vector<Word> basis_;
  bool rank_deficient_;
};

struct WeightEnumerator {
  std::vector<std::uint64_t> coefficients;  // A_0 .. A_n
};

bool is_supported_prime(int q);

/// Row-reduces mod q. Rank-deficient input is accepted and flagged.
LinearCode code_from_generator(const std::vector<Word>& rows, int q);

/// All q^k codewords in lexicographic message order (first message symbol most significant).
std::vector<Word> enumerate_codewords(const LinearCode& c, std::size_t cap = kDefaultEnumerationCap);

/// C^perp via the nullspace of the RREF basis.
LinearCode dual(const LinearCode& c);

WeightEnumerator weight_enumerator(const LinearCode& c, std::size_t cap = kDefaultEnumerationCap);

/// The ambient group Z_q^n.
GroupSpec code_group(const LinearCode& c, std::size_t order_cap = kDefaultOrderCap);

/// The codewords as an additive subgroup of Z_q^n.
Subgroup code_to_subgroup(const LinearCode& c, std::size_t order_cap = kDefaultOrderCap);

/// Text format: header line `n k q`, then k rows of n integers. `#` starts a comment line.
LinearCode parse_generator_text(std::string_view text);
LinearCode read_generator_file(const std::filesystem::path& path);

}  // namespace eqmix
