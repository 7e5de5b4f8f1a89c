#pragma once

// Finite abelian groups G = Z_{m_1} x ... x Z_{m_k}, their characters, the
// (1/|G|-normalized) Fourier transform, convolution, subgroups, cosets,
// annihilators and periodization.
//
// Elements are stored as flat mixed-radix indices, row-major with the first
// coordinate most significant. All types are immutable after construction.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqmix {

using Complex = std::complex<double>;

/// Default cap on |G| for anything that builds dense |G| x |G| objects.
inline constexpr std::size_t kDefaultOrderCap = 65536;
/// Cap for convolution-only paths, opted into explicitly.
inline constexpr std::size_t kConvolutionOrderCap = std::size_t{1} << 20;

class GroupSpec {
 public:
  explicit GroupSpec(std::vector<int> moduli, std::size_t order_cap = kDefaultOrderCap);

  /// Parses `Z<m>` atoms joined by `x`, with optional `^k` repetition,
  /// e.g. "Z2^7" or "Z4xZ6xZ5".
  static GroupSpec parse(std::string_view text, std::size_t order_cap = kDefaultOrderCap);

  const std::vector<int>& moduli() const { return data_->moduli; }
  std::size_t rank() const { return data_->moduli.size(); }
  std::size_t order() const { return data_->order; }

  std::size_t encode(std::span<const int> coords) const;
  std::vector<int> decode(std::size_t index) const;
  /// Coordinate j of the element with the given flat index (table lookup).
  int coord(std::size_t index, std::size_t j) const {
    return data_->coords[index * data_->moduli.size() + j];
  }

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;
  std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

  /// Phase of chi_a(g) in units of 2*pi/phase_modulus().
  std::size_t phase(std::size_t character, std::size_t element) const;
  std::size_t phase_modulus() const { return data_->lcm; }
  /// exp(2 pi i t / phase_modulus()).
  Complex root(std::size_t t) const { return data_->roots[t % data_->lcm]; }
  /// chi_a(g) = exp(2 pi i sum_j a_j g_j / m_j), read from a root-of-unity table.
  Complex character(std::size_t character, std::size_t element) const {
    return data_->roots[phase(character, element)];
  }

  std::string to_string() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.data_ == b.data_ || a.data_->moduli == b.data_->moduli;
  }

 private:
  struct Data {
    std::vector<int> moduli;
    std::size_t order = 1;
    std::size_t lcm = 1;
    bool binary = false;  // every modulus is 2: addition is XOR
    std::vector<std::size_t> phase_step;  // lcm / m_j
    std::vector<int> coords;              // order x rank table
    std::vector<Complex> roots;           // exp(2 pi i t / lcm)
  };
  std::shared_ptr<const Data> data_;
};

class GroupMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require_same_group(const GroupSpec& a, const GroupSpec& b);

class Element {
 public:
  Element(GroupSpec group, std::size_t flat_index);
  Element(GroupSpec group, std::span<const int> coords);
  static Element zero(const GroupSpec& group) { return Element(group, std::size_t{0}); }

  const GroupSpec& group() const { return group_; }
  std::size_t flat_index() const { return index_; }
  std::vector<int> coords() const { return group_.decode(index_); }

  friend bool operator==(const Element& a, const Element& b) {
    return a.group_ == b.group_ && a.index_ == b.index_;
  }

 private:
  GroupSpec group_;
  std::size_t index_;
};

/// Label a of the character chi_a; same shape as an Element.
class CharacterIndex {
 public:
  CharacterIndex(GroupSpec group, std::size_t flat_index);
  CharacterIndex(GroupSpec group, std::span<const int> coords);

  const GroupSpec& group() const { return group_; }
  std::size_t flat_index() const { return index_; }
  std::vector<int> coords() const { return group_.decode(index_); }

  friend bool operator==(const CharacterIndex& a, const CharacterIndex& b) {
    return a.group_ == b.group_ && a.index_ == b.index_;
  }

 private:
  GroupSpec group_;
  std::size_t index_;
};

Element elem_add(const Element& g, const Element& h);
Element elem_neg(const Element& g);
Element elem_sub(const Element& g, const Element& h);

Complex char_eval(const CharacterIndex& a, const Element& g);

/// Dense real function on a group, indexed by flat index.
struct GroupFunction {
  GroupSpec group;
  std::vector<double> values;

  GroupFunction(GroupSpec g, std::vector<double> v);
  static GroupFunction zeros(const GroupSpec& g) {
    return GroupFunction(g, std::vector<double>(g.order(), 0.0));
  }
};

/// Probability distribution on a group: nonnegative, sums to one.
class Distribution {
 public:
  inline static constexpr double kSumTolerance = 1e-12;

  /// Validates nonnegativity and |sum - 1| <= sum_tolerance.
  explicit Distribution(GroupFunction f, double sum_tolerance = kSumTolerance);
  /// Divides by the total mass after checking |sum - 1| <= sum_tolerance.
  static Distribution normalized(GroupFunction f, double sum_tolerance);
  /// Nonnegative weights with positive total, scaled to sum to one.
  static Distribution from_weights(GroupFunction w);

  static Distribution uniform(const GroupSpec& g);
  static Distribution delta(const Element& g);
  /// Uniform on the given set of flat indices.
  static Distribution uniform_on(const GroupSpec& g, std::span<const std::size_t> members);

  const GroupSpec& group() const { return f_.group; }
  const std::vector<double>& values() const { return f_.values; }
  double operator[](std::size_t i) const { return f_.values[i]; }
  const GroupFunction& function() const { return f_; }

 private:
  GroupFunction f_;
};

struct FourierTable {
  GroupSpec group;
  std::vector<Complex> values;  // indexed by CharacterIndex flat index
};

/// Reference transform: f^(chi) = (1/|G|) sum_g f(g) conj(chi(g)), O(|G|^2).
FourierTable fourier(const GroupFunction& f);
/// Same transform as a tensor product of per-factor DFTs, O(|G| sum m_j).
FourierTable fourier_fast(const GroupFunction& f);
/// f(g) = sum_chi f^(chi) chi(g); returns the real part.
GroupFunction inverse_fourier(const FourierTable& t);

/// (f * h)(g) = sum_x f(g - x) h(x).
GroupFunction convolve(const GroupFunction& f, const GroupFunction& h);
Distribution convolve(const Distribution& f, const Distribution& h);

class Subgroup {
 public:
  /// Validates that `members` contains 0 and is closed under + and negation.
  Subgroup(GroupSpec group, std::vector<std::size_t> members);

  static Subgroup trivial(const GroupSpec& g);
  static Subgroup whole(const GroupSpec& g);

  const GroupSpec& group() const { return group_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::size_t index() const { return group_.order() / members_.size(); }
  bool contains(std::size_t flat) const;

 private:
  struct Trusted {};
  Subgroup(GroupSpec group, std::vector<std::size_t> members, Trusted);
  friend Subgroup subgroup_generate(const GroupSpec&, std::span<const Element>);

  GroupSpec group_;
  std::vector<std::size_t> members_;
};

/// Closure of {0} and the generators under addition.
Subgroup subgroup_generate(const GroupSpec& group, std::span<const Element> gens);

struct CosetPartition {
  Subgroup subgroup;
  std::vector<std::vector<std::size_t>> blocks;  // ordered by representative
  std::vector<std::size_t> representatives;      // minimal index of each block
  std::vector<std::size_t> block_of;             // element -> block id
};

CosetPartition coset_partition(const Subgroup& h);

/// H^perp = { chi : chi(h) = 1 for all h in H }, sorted by flat index.
std::vector<CharacterIndex> annihilator(const Subgroup& h);

struct PeriodizedFunction {
  CosetPartition cosets;
  std::vector<double> values;  // one per block
};

PeriodizedFunction periodize(const GroupFunction& f, const Subgroup& h);

/// Max over chi in H^perp of |FT(f^{|H})(chi) - f^(chi)|, where the left side is
/// summed over coset representatives with weight 1/[G:H].
double poisson_check(const GroupFunction& f, const Subgroup& h);

}  // namespace eqmix
