#include "eqmix/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

namespace eqmix {

namespace {

std::string slurp(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(std::string("cannot open ") + what + " " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Non-comment lines of a text file, each split into unsigned integers.
std::vector<std::vector<std::size_t>> integer_lines(std::string_view text, const char* what) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<std::size_t>> out;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::size_t> nums;
    std::string tok;
    while (ls >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
        throw std::invalid_argument(std::string(what) + ": bad token '" + tok + "'");
      nums.push_back(std::stoul(tok));
    }
    out.push_back(std::move(nums));
  }
  return out;
}

double splitmix_unit(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

std::vector<double> multiply_transposed(const DenseMatrix& a, std::span<const double> x) {
  std::vector<double> out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out[j] += r[j] * x[i];
  }
  return out;
}

}  // namespace

bool is_normal(const DenseMatrix& a, double tol) {
  if (!a.square()) return false;
  const std::size_t n = a.rows();
  if (n <= 512) {
    const DenseMatrix at = transpose(a);
    return max_abs_diff(multiply(a, at), multiply(at, a)) <= tol;
  }
  // |(A A^T - A^T A) x|_i <= ||A A^T - A^T A||_max * ||x||_1, so any probe
  // exceeding that bound certifies non-normality.
  for (std::uint64_t probe = 0; probe < 4; ++probe) {
    std::vector<double> x(n);
    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = splitmix_unit(probe * 0x100000000ULL + i);
      l1 += std::abs(x[i]);
    }
    const auto left = multiply(a, multiply_transposed(a, x));
    const auto right = multiply_transposed(a, multiply(a, x));
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(left[i] - right[i]) > tol * l1) return false;
  }
  return true;
}

TransitionMatrix::TransitionMatrix(DenseMatrix m) : m_(std::move(m)) {
  if (!m_.square() || m_.rows() == 0) throw std::invalid_argument("transition matrix must be square and nonempty");
  for (double& v : m_.data()) {
    if (!std::isfinite(v)) throw std::invalid_argument("transition matrix has a non-finite entry");
    if (v < 0.0) {
      if (v < -1e-14) throw std::invalid_argument("transition matrix has a negative entry");
      v = 0.0;
    }
  }
  const std::size_t n = m_.rows();
  std::vector<double> col_sums(n, 0.0);
  bool rows_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    const auto r = m_.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      s += r[j];
      col_sums[j] += r[j];
    }
    rows_ok = rows_ok && std::abs(s - 1.0) <= kStochasticTolerance;
  }
  flags_.row_stochastic = rows_ok;
  flags_.column_stochastic =
      std::all_of(col_sums.begin(), col_sums.end(), [](double s) { return std::abs(s - 1.0) <= kStochasticTolerance; });
  bool sym = true;
  for (std::size_t i = 0; i < n && sym; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m_(i, j) - m_(j, i)) > kNormalTolerance) {
        sym = false;
        break;
      }
  flags_.symmetric = sym;
  flags_.normal = sym || is_normal(m_);
}

Graph parse_edge_list(std::string_view text) {
  Graph g;
  for (const auto& nums : integer_lines(text, "edge list")) {
    if (nums.size() != 2) throw std::invalid_argument("edge list: each line must hold exactly two vertices");
    g.edges.emplace_back(nums[0], nums[1]);
    g.vertices = std::max({g.vertices, nums[0] + 1, nums[1] + 1});
  }
  if (g.edges.empty()) throw std::invalid_argument("edge list: no edges");
  return g;
}

Graph read_edge_list(const std::filesystem::path& path) { return parse_edge_list(slurp(path, "edge list")); }

DenseMatrix adjacency_matrix(const Graph& g) {
  if (g.vertices == 0) throw std::invalid_argument("graph has no vertices");
  if (g.vertices > kDefaultStateCap) throw std::invalid_argument("graph exceeds the state cap");
  DenseMatrix adj(g.vertices, g.vertices);
  for (auto [u, v] : g.edges) {
    if (u >= g.vertices || v >= g.vertices) throw std::out_of_range("edge endpoint outside the vertex range");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (adj(u, v) != 0.0)
      throw std::invalid_argument("repeated edge " + std::to_string(u) + " " + std::to_string(v));
    adj(u, v) = adj(v, u) = 1.0;
  }
  return adj;
}

TransitionMatrix transition_from_graph(const Graph& g) {
  DenseMatrix adj = adjacency_matrix(g);
  const std::size_t n = g.vertices;
  std::vector<std::size_t> degrees(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) degrees[i] += adj(i, j) != 0.0 ? 1 : 0;
  const std::set<std::size_t> distinct(degrees.begin(), degrees.end());
  if (distinct.size() != 1 || *distinct.begin() == 0) {
    std::string msg = "graph is not regular; distinct degrees {";
    bool first = true;
    for (std::size_t d : distinct) {
      msg += (first ? "" : ",") + std::to_string(d);
      first = false;
    }
    throw NotRegular(msg + "}", std::move(degrees));
  }
  const double inv_d = 1.0 / static_cast<double>(degrees.front());
  for (double& v : adj.data()) v *= inv_d;
  return TransitionMatrix(std::move(adj));
}

TransitionMatrix transition_from_distribution(const Distribution& f) {
  const auto& g = f.group();
  const std::size_t n = g.order();
  if (n > kDefaultStateCap) throw std::invalid_argument("group order exceeds the dense-matrix cap");
  DenseMatrix t(n, n);
  for (std::size_t c2 = 0; c2 < n; ++c2) {
    const std::size_t minus_c2 = g.neg(c2);
    for (std::size_t c1 = 0; c1 < n; ++c1) t(c1, c2) = f[g.add(c1, minus_c2)];
  }
  return TransitionMatrix(std::move(t));
}

TransitionMatrix transition_cayley(const GroupSpec& g, std::span<const Element> connection_set) {
  std::set<std::size_t> s;
  for (const auto& e : connection_set) {
    require_same_group(g, e.group());
    if (e.flat_index() == 0) throw std::invalid_argument("connection set must not contain 0");
    s.insert(e.flat_index());
  }
  if (s.empty()) throw std::invalid_argument("connection set is empty");
  const std::vector<std::size_t> members(s.begin(), s.end());
  return transition_from_distribution(Distribution::uniform_on(g, members));
}

void require_distribution(std::span<const double> mu) {
  double sum = 0.0;
  for (double v : mu) {
    if (!(v >= -1e-14)) throw std::invalid_argument("state vector has a negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("state vector does not sum to 1");
}

std::vector<double> step(const TransitionMatrix& a, std::span<const double> mu) {
  if (!a.flags().column_stochastic) throw std::invalid_argument("walk operator is not column stochastic");
  if (mu.size() != a.size()) throw std::invalid_argument("state vector size does not match the walk");
  auto out = multiply(a.matrix(), mu);
  for (double& v : out)
    if (v < 0.0 && v >= -1e-14) v = 0.0;
  require_distribution(out);
  return out;
}

std::vector<double> power_step(const TransitionMatrix& a, std::span<const double> mu, int ell) {
  if (ell < 0) throw std::invalid_argument("negative step count");
  std::vector<double> cur(mu.begin(), mu.end());
  for (int i = 0; i < ell; ++i) cur = step(a, cur);
  return cur;
}

double tv_distance(std::span<const double> mu, std::span<const double> nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("distributions have different sizes");
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) acc += std::abs(mu[i] - nu[i]);
  return 0.5 * acc;
}

std::vector<double> exact_tv_curve(const TransitionMatrix& a, std::span<const double> mu0, int ell_max,
                                   std::size_t state_cap) {
  if (a.size() > state_cap) throw std::invalid_argument("state space exceeds the exact-TV cap");
  require_distribution(mu0);
  const std::vector<double> uniform(a.size(), 1.0 / static_cast<double>(a.size()));
  std::vector<double> cur(mu0.begin(), mu0.end());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(ell_max, 0)));
  for (int ell = 1; ell <= ell_max; ++ell) {
    cur = step(a, cur);
    out.push_back(tv_distance(uniform, cur));
  }
  return out;
}

std::vector<double> exact_tv_curve_group(const Distribution& f, const Distribution& mu0, int ell_max) {
  require_same_group(f.group(), mu0.group());
  const std::size_t n = f.group().order();
  const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
  GroupFunction cur = mu0.function();
  std::vector<double> out;
  for (int ell = 1; ell <= ell_max; ++ell) {
    cur = convolve(cur, f.function());
    out.push_back(tv_distance(uniform, cur.values));
  }
  return out;
}

Partition::Partition(std::size_t states, std::vector<std::vector<std::size_t>> blocks)
    : blocks_(std::move(blocks)), block_of_(states, static_cast<std::size_t>(-1)) {
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partition has an empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t s : blocks_[i]) {
      if (s >= states) throw std::out_of_range("partition mentions state " + std::to_string(s) + " out of range");
      if (block_of_[s] != static_cast<std::size_t>(-1))
        throw std::invalid_argument("state " + std::to_string(s) + " appears in two blocks");
      block_of_[s] = i;
    }
  }
  for (std::size_t s = 0; s < states; ++s)
    if (block_of_[s] == static_cast<std::size_t>(-1))
      throw std::invalid_argument("state " + std::to_string(s) + " is in no block");
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    auto [it, fresh] = ids.try_emplace(labels[s], blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(s);
  }
  return Partition(labels.size(), std::move(blocks));
}

Partition Partition::singletons(std::size_t states) {
  std::vector<std::vector<std::size_t>> blocks(states);
  for (std::size_t s = 0; s < states; ++s) blocks[s] = {s};
  return Partition(states, std::move(blocks));
}

Partition Partition::whole(std::size_t states) {
  std::vector<std::size_t> all(states);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return Partition(states, {std::move(all)});
}

Partition Partition::from_cosets(const CosetPartition& cosets) {
  return Partition(cosets.block_of.size(), cosets.blocks);
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.states() != states()) return false;
  return std::all_of(blocks_.begin(), blocks_.end(), [&](const auto& b) {
    return std::all_of(b.begin(), b.end(),
                       [&](std::size_t s) { return coarser.block_of(s) == coarser.block_of(b.front()); });
  });
}

Partition parse_partition_text(std::string_view text, std::size_t states) {
  return Partition(states, integer_lines(text, "partition file"));
}

Partition read_partition_file(const std::filesystem::path& path, std::size_t states) {
  return parse_partition_text(slurp(path, "partition file"), states);
}

EquitableCheck is_equitable(const DenseMatrix& a, const Partition& p, double tol) {
  if (!a.square() || a.rows() != p.states()) throw std::invalid_argument("partition does not match the matrix");
  const std::size_t r = p.block_count();
  std::vector<double> lo(r * r, std::numeric_limits<double>::infinity());
  std::vector<double> hi(r * r, -std::numeric_limits<double>::infinity());
  std::vector<double> total(r * r, 0.0);
  std::vector<double> sums(r);
  for (std::size_t s = 0; s < a.rows(); ++s) {
    std::fill(sums.begin(), sums.end(), 0.0);
    const auto row = a.row(s);
    for (std::size_t t = 0; t < row.size(); ++t) sums[p.block_of(t)] += row[t];
    const std::size_t i = p.block_of(s);
    for (std::size_t j = 0; j < r; ++j) {
      lo[i * r + j] = std::min(lo[i * r + j], sums[j]);
      hi[i * r + j] = std::max(hi[i * r + j], sums[j]);
      total[i * r + j] += sums[j];
    }
  }
  EquitableCheck out;
  for (std::size_t k = 0; k < r * r; ++k) out.max_spread = std::max(out.max_spread, hi[k] - lo[k]);
  out.equitable = out.max_spread <= tol;
  if (out.equitable) {
    DenseMatrix q(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) q(i, j) = total[i * r + j] / static_cast<double>(p.block(i).size());
    out.quotient = QuotientMatrix{std::move(q), p};
  }
  return out;
}

double intertwining_residual(const DenseMatrix& a, const QuotientMatrix& q) {
  const Partition& p = q.partition;
  const std::size_t r = p.block_count();
  std::vector<double> sums(r);
  double worst = 0.0;
  for (std::size_t s = 0; s < a.rows(); ++s) {
    std::fill(sums.begin(), sums.end(), 0.0);
    const auto row = a.row(s);
    for (std::size_t t = 0; t < row.size(); ++t) sums[p.block_of(t)] += row[t];
    const std::size_t i = p.block_of(s);
    for (std::size_t j = 0; j < r; ++j) worst = std::max(worst, std::abs(sums[j] - q.entries(i, j)));
  }
  return worst;
}

QuotientMatrix quotient(const DenseMatrix& a, const Partition& p, double tol) {
  auto check = is_equitable(a, p, tol);
  if (!check.equitable)
    throw NotEquitable("partition is not equitable (block row-sum spread " + std::to_string(check.max_spread) + ")");
  const double residual = intertwining_residual(a, *check.quotient);
  if (residual > kIntertwiningTolerance)
    throw std::logic_error("A M_P = M_P Q violated by " + std::to_string(residual));
  return std::move(*check.quotient);
}

Partition coarsest_equitable_refinement(const DenseMatrix& a, const Partition& initial, double grid) {
  if (!a.square() || a.rows() != initial.states()) throw std::invalid_argument("partition does not match the matrix");
  const std::size_t n = a.rows();
  Partition cur = initial;
  while (true) {
    const std::size_t r = cur.block_count();
    std::map<std::vector<long long>, std::size_t> ids;
    std::vector<std::size_t> labels(n);
    std::vector<double> sums(r);
    for (std::size_t s = 0; s < n; ++s) {
      std::fill(sums.begin(), sums.end(), 0.0);
      const auto row = a.row(s);
      for (std::size_t t = 0; t < n; ++t) sums[cur.block_of(t)] += row[t];
      std::vector<long long> signature;
      signature.reserve(r + 1);
      signature.push_back(static_cast<long long>(cur.block_of(s)));
      for (double v : sums) signature.push_back(std::llround(v / grid));
      labels[s] = ids.try_emplace(std::move(signature), ids.size()).first->second;
    }
    Partition next = Partition::from_labels(labels);
    if (next.block_count() == r) return next;
    cur = std::move(next);
  }
}

std::vector<double> lift(const Partition& p, std::span<const double> v) {
  if (v.size() != p.block_count()) throw std::invalid_argument("vector length does not match the block count");
  std::vector<double> out(p.states());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = v[p.block_of(s)];
  return out;
}

std::vector<Complex> lift(const Partition& p, std::span<const Complex> v) {
  if (v.size() != p.block_count()) throw std::invalid_argument("vector length does not match the block count");
  std::vector<Complex> out(p.states());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = v[p.block_of(s)];
  return out;
}

}  // namespace eqmix
