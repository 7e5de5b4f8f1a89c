#include "eqmix/codes.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace eqmix {

namespace {

int mod_inverse(int a, int q) {
  for (int x = 1; x < q; ++x)
    if (a * x % q == 1) return x;
  throw std::logic_error("no inverse mod q");
}

std::size_t checked_power(int q, int k, std::size_t cap) {
  std::size_t out = 1;
  for (int i = 0; i < k; ++i) {
    out *= static_cast<std::size_t>(q);
    if (out > cap)
      throw std::length_error("q^k = " + std::to_string(q) + "^" + std::to_string(k) + " exceeds enumeration cap " +
                              std::to_string(cap));
  }
  return out;
}

// In-place reduced row-echelon form mod q; returns the rank.
int rref(std::vector<Word>& m, int n, int q) {
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(m.size()); ++col) {
    auto pivot = std::find_if(m.begin() + rank, m.end(), [&](const Word& r) { return r[col] != 0; });
    if (pivot == m.end()) continue;
    std::iter_swap(m.begin() + rank, pivot);
    Word& prow = m[rank];
    const int inv = mod_inverse(prow[col], q);
    for (int& x : prow) x = x * inv % q;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (static_cast<int>(r) == rank || m[r][col] == 0) continue;
      const int factor = m[r][col];
      for (int j = 0; j < n; ++j) m[r][j] = ((m[r][j] - factor * prow[j]) % q + q) % q;
    }
    ++rank;
  }
  m.resize(rank);
  return rank;
}

}  // namespace

bool is_supported_prime(int q) {
  return q == 2 || q == 3 || q == 5 || q == 7 || q == 11 || q == 13;
}

LinearCode LinearCode::zero(int n, int q) {
  if (!is_supported_prime(q)) throw std::invalid_argument("q must be a prime <= 13");
  if (n < 1) throw std::invalid_argument("code length must be >= 1");
  return LinearCode(n, q, {}, false);
}

std::vector<int> LinearCode::pivot_columns() const {
  std::vector<int> pivots;
  for (const auto& row : basis_) {
    const auto it = std::find_if(row.begin(), row.end(), [](int x) { return x != 0; });
    pivots.push_back(static_cast<int>(it - row.begin()));
  }
  return pivots;
}

LinearCode code_from_generator(const std::vector<Word>& rows, int q) {
  if (!is_supported_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not a supported prime");
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty generator matrix");
  const int n = static_cast<int>(rows.front().size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("generator rows have different lengths");
    for (int x : r)
      if (x < 0 || x >= q) throw std::invalid_argument("generator entry outside [0, q)");
  }
  std::vector<Word> m = rows;
  const int rank = rref(m, n, q);
  return LinearCode(n, q, std::move(m), rank < static_cast<int>(rows.size()));
}

std::vector<Word> enumerate_codewords(const LinearCode& c, std::size_t cap) {
  const int k = c.dimension();
  const int n = c.length();
  const int q = c.field_size();
  const std::size_t count = checked_power(q, k, cap);
  std::vector<Word> out;
  out.reserve(count);
  Word message(static_cast<std::size_t>(k), 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (int i = k - 1; i >= 0; --i) {
      message[i] = static_cast<int>(rest % static_cast<std::size_t>(q));
      rest /= static_cast<std::size_t>(q);
    }
    Word w(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < k; ++i) {
      if (message[i] == 0) continue;
      for (int j = 0; j < n; ++j) w[j] = (w[j] + message[i] * c.basis()[i][j]) % q;
    }
    out.push_back(std::move(w));
  }
  return out;
}

LinearCode dual(const LinearCode& c) {
  const int n = c.length();
  const int q = c.field_size();
  const auto pivots = c.pivot_columns();
  std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
  for (int p : pivots) is_pivot[p] = 1;
  std::vector<Word> rows;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Word v(static_cast<std::size_t>(n), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (q - c.basis()[i][free]) % q;
    rows.push_back(std::move(v));
  }
  if (rows.empty()) return LinearCode::zero(n, q);
  return code_from_generator(rows, q);
}

WeightEnumerator weight_enumerator(const LinearCode& c, std::size_t cap) {
  WeightEnumerator out{std::vector<std::uint64_t>(static_cast<std::size_t>(c.length()) + 1, 0)};
  for (const auto& w : enumerate_codewords(c, cap))
    ++out.coefficients[static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](int x) { return x != 0; }))];
  return out;
}

GroupSpec code_group(const LinearCode& c, std::size_t order_cap) {
  return GroupSpec(std::vector<int>(static_cast<std::size_t>(c.length()), c.field_size()), order_cap);
}

Subgroup code_to_subgroup(const LinearCode& c, std::size_t order_cap) {
  const GroupSpec g = code_group(c, order_cap);
  std::vector<Element> gens;
  for (const auto& row : c.basis()) gens.emplace_back(g, std::span<const int>(row));
  return subgroup_generate(g, gens);
}

LinearCode parse_generator_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<long long>> lines;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<long long> nums;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw std::invalid_argument("generator file: bad token '" + tok + "'");
      nums.push_back(v);
    }
    lines.push_back(std::move(nums));
  }
  if (lines.empty() || lines.front().size() != 3)
    throw std::invalid_argument("generator file: first line must be `n k q`");
  const long long n = lines[0][0], k = lines[0][1], q = lines[0][2];
  if (n < 1 || n > 64 || k < 0 || k > n) throw std::invalid_argument("generator file: bad n or k");
  if (!is_supported_prime(static_cast<int>(q))) throw std::invalid_argument("generator file: q must be a prime <= 13");
  if (static_cast<long long>(lines.size()) - 1 != k)
    throw std::invalid_argument("generator file: expected " + std::to_string(k) + " rows, found " +
                                std::to_string(lines.size() - 1));
  if (k == 0) return LinearCode::zero(static_cast<int>(n), static_cast<int>(q));
  std::vector<Word> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (static_cast<long long>(lines[i].size()) != n)
      throw std::invalid_argument("generator file: row " + std::to_string(i) + " does not have n entries");
    Word r;
    for (long long v : lines[i]) {
      if (v < 0 || v >= q) throw std::invalid_argument("generator file: entry outside [0, q)");
      r.push_back(static_cast<int>(v));
    }
    rows.push_back(std::move(r));
  }
  return code_from_generator(rows, static_cast<int>(q));
}

LinearCode read_generator_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open generator file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_generator_text(ss.str());
}

}  // namespace eqmix
