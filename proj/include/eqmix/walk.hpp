#pragma once

// Dense random-walk operators, exact total-variation evolution, partitions
// of the state set, equitable-partition testing and quotient matrices.
//
// Distributions are column vectors and propagate as mu_{l+1} = A mu_l, so the
// walk operator must be column stochastic; group walks T_f are doubly
// stochastic, which makes the row-sum convention A*1 = 1 hold as well.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "eqmix/abelian.hpp"
#include "eqmix/matrix.hpp"

namespace eqmix {

inline constexpr double kStochasticTolerance = 1e-10;
inline constexpr double kNormalTolerance = 1e-10;
inline constexpr double kEquitableTolerance = 1e-9;
inline constexpr double kIntertwiningTolerance = 1e-10;
inline constexpr std::size_t kDefaultStateCap = 65536;

struct StochasticFlags {
  bool row_stochastic = false;     // A * 1 = 1
  bool column_stochastic = false;  // 1^T A = 1^T
  bool symmetric = false;
  bool normal = false;
};

class TransitionMatrix {
 public:
  /// Clamps entries in [-1e-14, 0) to zero (anything more negative is rejected)
  /// and verifies the flags.
  explicit TransitionMatrix(DenseMatrix m);

  std::size_t size() const { return m_.rows(); }
  const DenseMatrix& matrix() const { return m_; }
  const StochasticFlags& flags() const { return flags_; }
  bool doubly_stochastic() const { return flags_.row_stochastic && flags_.column_stochastic; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  DenseMatrix m_;
  StochasticFlags flags_;
};

/// ||A A^T - A^T A||_max <= tol. Exact product for n <= 512, otherwise compared
/// on fixed pseudo-random probe vectors.
bool is_normal(const DenseMatrix& a, double tol = kNormalTolerance);

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Text edge list: one `u v` pair per line, 0-indexed, `#` comments.
Graph parse_edge_list(std::string_view text);
Graph read_edge_list(const std::filesystem::path& path);

class NotRegular : public std::invalid_argument {
 public:
  NotRegular(const std::string& what, std::vector<std::size_t> degrees)
      : std::invalid_argument(what), degrees_(std::move(degrees)) {}
  const std::vector<std::size_t>& degrees() const { return degrees_; }

 private:
  std::vector<std::size_t> degrees_;
};

/// 0/1 adjacency matrix of a simple undirected graph; rejects loops and repeated edges.
DenseMatrix adjacency_matrix(const Graph& g);
/// (1/d) * adjacency for a d-regular simple graph; throws NotRegular otherwise.
TransitionMatrix transition_from_graph(const Graph& g);
/// T_f with (g1, g2) entry f(g1 - g2).
TransitionMatrix transition_from_distribution(const Distribution& f);
/// Simple random walk on the Cayley graph Gamma(G, S): T_{u_S}.
TransitionMatrix transition_cayley(const GroupSpec& g, std::span<const Element> connection_set);

/// Checks a state vector is a probability distribution (sum within 1e-9).
void require_distribution(std::span<const double> mu);

std::vector<double> step(const TransitionMatrix& a, std::span<const double> mu);
std::vector<double> power_step(const TransitionMatrix& a, std::span<const double> mu, int ell);

/// Half the L1 distance.
double tv_distance(std::span<const double> mu, std::span<const double> nu);

/// [TV(u, A^l mu0)] for l = 1..ell_max.
std::vector<double> exact_tv_curve(const TransitionMatrix& a, std::span<const double> mu0, int ell_max,
                                   std::size_t state_cap = kDefaultStateCap);
/// [TV(u_G, mu0 *^l f)] for l = 1..ell_max, evolved by convolution.
std::vector<double> exact_tv_curve_group(const Distribution& f, const Distribution& mu0, int ell_max);

class Partition {
 public:
  /// Blocks are canonicalized: sorted internally, ordered by smallest member.
  Partition(std::size_t states, std::vector<std::vector<std::size_t>> blocks);
  /// From a block label per state; labels need not be contiguous.
  static Partition from_labels(std::span<const std::size_t> labels);
  static Partition singletons(std::size_t states);
  static Partition whole(std::size_t states);
  static Partition from_cosets(const CosetPartition& cosets);

  std::size_t states() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_of(std::size_t state) const { return block_of_[state]; }
  const std::vector<std::size_t>& block(std::size_t i) const { return blocks_[i]; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  /// True when every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Read a partition file: each non-comment line lists the states of one block.
Partition read_partition_file(const std::filesystem::path& path, std::size_t states);
Partition parse_partition_text(std::string_view text, std::size_t states);

struct QuotientMatrix {
  DenseMatrix entries;  // r x r, q_ij
  Partition partition;
};

struct EquitableCheck {
  bool equitable = false;
  double max_spread = 0.0;  // worst (max - min) block row-sum spread
  std::optional<QuotientMatrix> quotient;
};

EquitableCheck is_equitable(const DenseMatrix& a, const Partition& p, double tol = kEquitableTolerance);

class NotEquitable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// max-entry |A M_P - M_P Q|.
double intertwining_residual(const DenseMatrix& a, const QuotientMatrix& q);

/// Quotient of an equitable partition; throws NotEquitable otherwise and
/// std::logic_error if A M_P = M_P Q fails beyond 1e-10.
QuotientMatrix quotient(const DenseMatrix& a, const Partition& p, double tol = kEquitableTolerance);
inline QuotientMatrix quotient(const TransitionMatrix& a, const Partition& p, double tol = kEquitableTolerance) {
  return quotient(a.matrix(), p, tol);
}

/// Coarsest equitable partition refining `initial`: blocks are split by the
/// per-state vector of row sums into current blocks (rounded to `grid`) until stable.
Partition coarsest_equitable_refinement(const DenseMatrix& a, const Partition& initial, double grid = 1e-9);

/// M_P v: state s gets v[block(s)].
std::vector<double> lift(const Partition& p, std::span<const double> v);
std::vector<Complex> lift(const Partition& p, std::span<const Complex> v);

}  // namespace eqmix
