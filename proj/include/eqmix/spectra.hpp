#pragma once

// Spectra of walk operators and their quotients. Group walks are handled
// analytically through characters (eigenvalue |G| f^(chi) for character chi);
// symmetric walks go through a cyclic Jacobi eigensolver.

#include <cstddef>
#include <vector>

#include "eqmix/abelian.hpp"
#include "eqmix/matrix.hpp"
#include "eqmix/walk.hpp"

namespace eqmix {

enum class Provenance { analytic, numeric };

const char* to_string(Provenance p);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;
  std::vector<CharacterIndex> labels;  // empty, or one per eigenvalue
  Provenance provenance = Provenance::numeric;
  std::size_t unit_eigenvalue_count = 0;  // |lambda - 1| <= 1e-6
  std::size_t peripheral_count = 0;       // |lambda| >= 1 - 1e-12, not counting one unit eigenvalue

  static SpectrumReport make(std::vector<Complex> eigenvalues, std::vector<CharacterIndex> labels,
                             Provenance provenance);
};

/// Eigenvalues of a quotient together with eigenvectors phi_j (r-vectors)
/// normalized so that ||M_P phi_j||_2 = 1.
struct QuotientEigenbasis {
  std::vector<Complex> eigenvalues;
  std::vector<std::vector<Complex>> vectors;
};

/// Spec(T_f) = { |G| f^(chi) : chi in G^ }, labeled by character.
SpectrumReport group_walk_spectrum(const Distribution& f);

/// Spec of the coset quotient of T_f: { |G| f^(chi) : chi in H^perp }.
SpectrumReport quotient_spectrum_group(const Subgroup& h, const Distribution& f);

/// Characters in H^perp restricted to coset representatives, scaled by 1/sqrt|G|.
QuotientEigenbasis quotient_eigenbasis_group(const Subgroup& h, const Distribution& f);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  DenseMatrix vectors;         // column j pairs with values[j]
  int sweeps = 0;
};

/// Cyclic Jacobi; stops when off-diagonal Frobenius mass <= 1e-12 * ||M||_F.
SymmetricEigen symmetric_eigen(const DenseMatrix& m);

struct SymmetricQuotientEigensystem {
  QuotientMatrix quotient;
  SpectrumReport spectrum;
  QuotientEigenbasis basis;
};

/// Quotient of a symmetric walk, symmetrized by D^{1/2} Q D^{-1/2} with
/// D = diag(|V_i|) and diagonalized numerically.
SymmetricQuotientEigensystem quotient_eigensystem_symmetric(const TransitionMatrix& a, const Partition& p,
                                                            double tol = kEquitableTolerance);
inline SpectrumReport quotient_spectrum_symmetric(const TransitionMatrix& a, const Partition& p,
                                                  double tol = kEquitableTolerance) {
  return quotient_eigensystem_symmetric(a, p, tol).spectrum;
}

/// Set containment: every eigenvalue of `sub` lies within tol of one in `full`.
bool verify_spectrum_subset(const SpectrumReport& sub, const SpectrumReport& full, double tol = 1e-7);

/// Multiset equality after sorting by (real bucketed to 1e-8, imag).
bool spectra_match(std::vector<Complex> a, std::vector<Complex> b, double tol = 1e-8);

}  // namespace eqmix
