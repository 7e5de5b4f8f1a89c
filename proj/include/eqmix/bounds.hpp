#pragma once

// Total-variation upper bounds from quotient spectra, the flatness condition,
// mixing-length search, and the soundness audit that checks every bound
// against exact TV computed by brute force.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "eqmix/abelian.hpp"
#include "eqmix/codes.hpp"
#include "eqmix/spectra.hpp"
#include "eqmix/walk.hpp"

namespace eqmix {

inline constexpr double kSoundnessTolerance = 1e-9;
inline constexpr double kFlatnessTolerance = 1e-9;
inline constexpr double kPeripheralTolerance = 1e-12;

/// A spectrum with one eigenvalue (the one closest to 1) removed.
struct StrippedSpectrum {
  std::vector<Complex> eigenvalues;
  bool peripheral_warning = false;  // some retained |lambda| >= 1 - 1e-12
  Provenance provenance = Provenance::numeric;
};

StrippedSpectrum strip_unit_eigenvalue(const SpectrumReport& s);

/// (1/2) sqrt( |V|/|V_i| sum |lambda|^{2 ell} ).
double bound_general(const StrippedSpectrum& s, std::size_t states, std::size_t start_block_size, int ell);
/// (1/2) sqrt( sum |lambda|^{2 ell} ); valid when the flatness condition holds.
double bound_flat(const StrippedSpectrum& s, int ell);

/// Flatness of block i against an eigenbasis of the quotient. Eigenvectors are
/// grouped by eigenvalue (within 1e-8); for each group the summed squared
/// overlaps |<u_{V_i}, M_P phi_j>|^2 must equal (group size)/|V| within 1e-9,
/// which for simple eigenvalues is exactly the per-vector condition.
bool check_flatness(const Partition& p, std::size_t block, const QuotientEigenbasis& basis,
                    double tol = kFlatnessTolerance);

/// Canonical group bound (1/2) sqrt( sum_{chi in H^perp, chi != chi_0} |lambda_chi|^{2 ell} ),
/// lambda_chi = |G| f^(chi). Independent of the coset representative.
double bound_group(const Subgroup& h, const Element& coset_rep, const Distribution& f, int ell);

enum class CodeNormalization { canonical, literal };

/// Code smoothing bound for binary codes. Canonical mode is bound_group on the
/// code subgroup; literal mode evaluates 2^{n-1} sqrt( sum_{x in C^perp \ 0} |f^(x)|^{2 ell} )
/// with the 1/|G| Fourier normalization.
double bound_code(const LinearCode& c, const Distribution& f, int ell, CodeNormalization mode);

/// Smallest ell in [1, ell_max] with bound(ell) <= eps.
std::optional<int> smoothing_ell(const std::function<double(int)>& bound, double eps, int ell_max);

struct GroupInstance {
  Subgroup subgroup;
  Element coset_rep;
  Distribution noise;
};

struct CodeInstance {
  LinearCode code;
  Distribution noise;  // on Z_q^n
};

struct GraphInstance {
  TransitionMatrix walk;  // symmetric
  Partition partition;    // equitable for walk
  std::size_t start_block = 0;
  std::string label;
};

using AuditInstance = std::variant<GroupInstance, CodeInstance, GraphInstance>;

std::string describe(const AuditInstance& instance);

struct AuditOptions {
  int ell_max = 10;
  bool exact = true;
  bool literal = false;  // add the literal code bound column (binary codes)
  double inject_error = 0.0;  // subtracted from every audited bound; test hook for the alarm path
  std::size_t crosscheck_order = 512;  // build T_f and its quotient for groups up to this order
};

struct BoundRow {
  int ell = 0;
  std::optional<double> exact_tv;
  double bound_general = 0.0;
  std::optional<double> bound_flat;
  std::optional<double> bound_literal;
  bool flatness = false;
  bool peripheral_warning = false;
  bool vacuous = false;  // applicable bound exceeds 1
};

struct BoundReport {
  std::vector<BoundRow> rows;
  std::size_t states = 0;
  std::size_t start_block_size = 0;
  Provenance provenance = Provenance::numeric;
  bool flatness = false;
  std::optional<double> intertwining_residual;
  std::string instance;
};

class SoundnessViolation : public std::runtime_error {
 public:
  SoundnessViolation(const std::string& what, BoundReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const BoundReport& report() const { return report_; }

 private:
  BoundReport report_;
};

/// Exact TV and every applicable bound per ell, without asserting.
BoundReport analyze(const AuditInstance& instance, const AuditOptions& options);

/// analyze() plus the row-wise check exact_tv <= bound + 1e-9 for every applicable
/// bound; throws SoundnessViolation carrying the full report on failure.
BoundReport soundness_audit(const AuditInstance& instance, const AuditOptions& options);

}  // namespace eqmix
