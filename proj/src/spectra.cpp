#include "eqmix/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace eqmix {

const char* to_string(Provenance p) { return p == Provenance::analytic ? "analytic" : "numeric"; }

SpectrumReport SpectrumReport::make(std::vector<Complex> eigenvalues, std::vector<CharacterIndex> labels,
                                    Provenance provenance) {
  if (!labels.empty() && labels.size() != eigenvalues.size())
    throw std::invalid_argument("one label per eigenvalue required");
  SpectrumReport out;
  std::size_t peripheral = 0;
  for (const auto& l : eigenvalues) {
    if (std::abs(l - 1.0) <= 1e-6) ++out.unit_eigenvalue_count;
    if (std::abs(l) >= 1.0 - 1e-12) ++peripheral;
  }
  out.peripheral_count = (out.unit_eigenvalue_count > 0 && peripheral > 0) ? peripheral - 1 : peripheral;
  out.eigenvalues = std::move(eigenvalues);
  out.labels = std::move(labels);
  out.provenance = provenance;
  return out;
}

SpectrumReport group_walk_spectrum(const Distribution& f) {
  const auto& g = f.group();
  const auto ft = fourier_fast(f.function());
  const double order = static_cast<double>(g.order());
  std::vector<Complex> eig(g.order());
  std::vector<CharacterIndex> labels;
  labels.reserve(g.order());
  for (std::size_t a = 0; a < g.order(); ++a) {
    eig[a] = order * ft.values[a];
    labels.emplace_back(g, a);
  }
  return SpectrumReport::make(std::move(eig), std::move(labels), Provenance::analytic);
}

SpectrumReport quotient_spectrum_group(const Subgroup& h, const Distribution& f) {
  require_same_group(h.group(), f.group());
  const auto ft = fourier_fast(f.function());
  const double order = static_cast<double>(f.group().order());
  auto chars = annihilator(h);
  std::vector<Complex> eig;
  eig.reserve(chars.size());
  for (const auto& chi : chars) eig.push_back(order * ft.values[chi.flat_index()]);
  return SpectrumReport::make(std::move(eig), std::move(chars), Provenance::analytic);
}

QuotientEigenbasis quotient_eigenbasis_group(const Subgroup& h, const Distribution& f) {
  const auto& g = f.group();
  const auto spectrum = quotient_spectrum_group(h, f);
  const auto cosets = coset_partition(h);
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.order()));
  QuotientEigenbasis out;
  out.eigenvalues = spectrum.eigenvalues;
  for (const auto& chi : spectrum.labels) {
    std::vector<Complex> v(cosets.representatives.size());
    for (std::size_t b = 0; b < v.size(); ++b) v[b] = g.character(chi.flat_index(), cosets.representatives[b]) * scale;
    out.vectors.push_back(std::move(v));
  }
  return out;
}

SymmetricEigen symmetric_eigen(const DenseMatrix& m) {
  if (!m.square()) throw std::invalid_argument("symmetric_eigen: matrix is not square");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-10) throw std::invalid_argument("symmetric_eigen: matrix is not symmetric");

  DenseMatrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
  DenseMatrix v = DenseMatrix::identity(n);
  const double threshold = 1e-12 * frobenius_norm(m);

  auto off_mass = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) acc += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(acc);
  };

  int sweeps = 0;
  constexpr int kMaxSweeps = 100;
  while (off_mass() > threshold) {
    if (++sweeps > kMaxSweeps) throw std::runtime_error("symmetric_eigen: Jacobi did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J with J the (p, q) rotation.
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  SymmetricEigen out{std::vector<double>(n), DenseMatrix(n, n), sweeps};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

SymmetricQuotientEigensystem quotient_eigensystem_symmetric(const TransitionMatrix& a, const Partition& p,
                                                            double tol) {
  if (!a.flags().symmetric) throw std::invalid_argument("walk operator is not symmetric");
  QuotientMatrix q = quotient(a, p, tol);
  const std::size_t r = p.block_count();
  std::vector<double> size(r);
  for (std::size_t i = 0; i < r; ++i) size[i] = static_cast<double>(p.block(i).size());
  DenseMatrix sym(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (std::abs(q.entries(i, j) * size[i] - q.entries(j, i) * size[j]) > 1e-9)
        throw std::invalid_argument("quotient fails the balance q_ij |V_i| = q_ji |V_j|");
      sym(i, j) = q.entries(i, j) * std::sqrt(size[i] / size[j]);
    }
  }
  // Entries (i,j) and (j,i) agree up to the balance error; average them.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) sym(i, j) = sym(j, i) = 0.5 * (sym(i, j) + sym(j, i));

  const SymmetricEigen eig = symmetric_eigen(sym);
  QuotientEigenbasis basis;
  std::vector<Complex> values;
  for (std::size_t j = 0; j < r; ++j) {
    values.emplace_back(eig.values[j], 0.0);
    std::vector<Complex> phi(r);
    // phi = D^{-1/2} w, so ||M_P phi||^2 = sum_i |V_i| phi_i^2 = ||w||^2 = 1.
    for (std::size_t i = 0; i < r; ++i) phi[i] = eig.vectors(i, j) / std::sqrt(size[i]);
    basis.vectors.push_back(std::move(phi));
  }
  basis.eigenvalues = values;
  return {std::move(q), SpectrumReport::make(std::move(values), {}, Provenance::numeric), std::move(basis)};
}

bool verify_spectrum_subset(const SpectrumReport& sub, const SpectrumReport& full, double tol) {
  return std::all_of(sub.eigenvalues.begin(), sub.eigenvalues.end(), [&](const Complex& l) {
    return std::any_of(full.eigenvalues.begin(), full.eigenvalues.end(),
                       [&](const Complex& m) { return std::abs(l - m) <= tol; });
  });
}

bool spectra_match(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  auto key = [](const Complex& z) { return std::make_pair(std::llround(z.real() / 1e-8), z.imag()); };
  auto less = [&](const Complex& x, const Complex& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace eqmix
