#include "eqmix/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace eqmix {

namespace {

double power_sum(const std::vector<Complex>& eig, int ell) {
  double acc = 0.0;
  for (const auto& l : eig) acc += std::pow(std::norm(l), ell);
  return acc;
}

void require_ell(int ell) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
}

template <typename T>
void dump_values(std::ostream& os, const std::vector<T>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
}

void dump_partition(std::ostream& os, const Partition& p) {
  os << '{';
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    os << (b ? "," : "");
    dump_values(os, p.block(b));
  }
  os << '}';
}

BoundReport analyze_group(const GroupInstance& in, const AuditOptions& opt) {
  const auto& h = in.subgroup;
  const auto& g = h.group();
  require_same_group(g, in.coset_rep.group());
  require_same_group(g, in.noise.group());

  BoundReport report;
  report.states = g.order();
  report.start_block_size = h.size();
  report.provenance = Provenance::analytic;

  const auto stripped = strip_unit_eigenvalue(quotient_spectrum_group(h, in.noise));
  const auto cosets = coset_partition(h);
  const Partition partition = Partition::from_cosets(cosets);
  const std::size_t start = cosets.block_of[in.coset_rep.flat_index()];
  report.flatness = check_flatness(partition, start, quotient_eigenbasis_group(h, in.noise));

  if (g.order() <= opt.crosscheck_order) {
    const auto walk = transition_from_distribution(in.noise);
    const auto q = quotient(walk, partition);
    report.intertwining_residual = intertwining_residual(walk.matrix(), q);
  }

  std::vector<double> exact;
  if (opt.exact) {
    exact = exact_tv_curve_group(in.noise, Distribution::uniform_on(g, cosets.blocks[start]), opt.ell_max);
  }
  for (int ell = 1; ell <= opt.ell_max; ++ell) {
    BoundRow row;
    row.ell = ell;
    if (opt.exact) row.exact_tv = exact[static_cast<std::size_t>(ell - 1)];
    row.bound_general = bound_general(stripped, report.states, report.start_block_size, ell);
    if (report.flatness) row.bound_flat = bound_flat(stripped, ell);
    row.flatness = report.flatness;
    row.peripheral_warning = stripped.peripheral_warning;
    row.vacuous = row.bound_flat.value_or(row.bound_general) > 1.0;
    report.rows.push_back(row);
  }
  return report;
}

BoundReport analyze_graph(const GraphInstance& in, const AuditOptions& opt) {
  const auto sys = quotient_eigensystem_symmetric(in.walk, in.partition);
  if (in.start_block >= in.partition.block_count()) throw std::out_of_range("start block out of range");

  BoundReport report;
  report.states = in.walk.size();
  report.start_block_size = in.partition.block(in.start_block).size();
  report.provenance = Provenance::numeric;
  report.intertwining_residual = intertwining_residual(in.walk.matrix(), sys.quotient);
  report.flatness = check_flatness(in.partition, in.start_block, sys.basis);
  const auto stripped = strip_unit_eigenvalue(sys.spectrum);

  std::vector<double> exact;
  if (opt.exact) {
    std::vector<double> mu0(report.states, 0.0);
    for (std::size_t s : in.partition.block(in.start_block)) mu0[s] = 1.0 / static_cast<double>(report.start_block_size);
    exact = exact_tv_curve(in.walk, mu0, opt.ell_max);
  }
  for (int ell = 1; ell <= opt.ell_max; ++ell) {
    BoundRow row;
    row.ell = ell;
    if (opt.exact) row.exact_tv = exact[static_cast<std::size_t>(ell - 1)];
    row.bound_general = bound_general(stripped, report.states, report.start_block_size, ell);
    if (report.flatness) row.bound_flat = bound_flat(stripped, ell);
    row.flatness = report.flatness;
    row.peripheral_warning = stripped.peripheral_warning;
    row.vacuous = row.bound_flat.value_or(row.bound_general) > 1.0;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

StrippedSpectrum strip_unit_eigenvalue(const SpectrumReport& s) {
  if (s.eigenvalues.empty()) throw std::invalid_argument("empty spectrum has no unit eigenvalue");
  const auto nearest = std::min_element(s.eigenvalues.begin(), s.eigenvalues.end(), [](const Complex& a, const Complex& b) {
    return std::abs(a - 1.0) < std::abs(b - 1.0);
  });
  if (std::abs(*nearest - 1.0) > 1e-6) throw std::invalid_argument("spectrum has no eigenvalue within 1e-6 of 1");
  StrippedSpectrum out;
  out.provenance = s.provenance;
  out.eigenvalues.reserve(s.eigenvalues.size() - 1);
  for (auto it = s.eigenvalues.begin(); it != s.eigenvalues.end(); ++it) {
    if (it == nearest) continue;
    out.eigenvalues.push_back(*it);
    if (std::abs(*it) >= 1.0 - kPeripheralTolerance) out.peripheral_warning = true;
  }
  return out;
}

double bound_general(const StrippedSpectrum& s, std::size_t states, std::size_t start_block_size, int ell) {
  require_ell(ell);
  if (start_block_size == 0 || start_block_size > states) throw std::invalid_argument("need 0 < |V_i| <= |V|");
  const double ratio = static_cast<double>(states) / static_cast<double>(start_block_size);
  return 0.5 * std::sqrt(ratio * power_sum(s.eigenvalues, ell));
}

double bound_flat(const StrippedSpectrum& s, int ell) {
  require_ell(ell);
  return 0.5 * std::sqrt(power_sum(s.eigenvalues, ell));
}

bool check_flatness(const Partition& p, std::size_t block, const QuotientEigenbasis& basis, double tol) {
  const std::size_t r = p.block_count();
  if (block >= r) throw std::out_of_range("flatness: block index out of range");
  if (basis.vectors.size() != basis.eigenvalues.size()) throw std::invalid_argument("flatness: basis/eigenvalue mismatch");
  const double states = static_cast<double>(p.states());
  const auto& members = p.block(block);
  const double weight = 1.0 / static_cast<double>(members.size());

  std::vector<double> overlap(basis.vectors.size());
  for (std::size_t j = 0; j < basis.vectors.size(); ++j) {
    const auto& phi = basis.vectors[j];
    if (phi.size() != r) throw std::invalid_argument("flatness: eigenvector length differs from block count");
    const auto lifted = lift(p, phi);
    double norm2 = 0.0;
    for (const auto& x : lifted) norm2 += std::norm(x);
    if (std::abs(norm2 - 1.0) > 1e-9) throw std::invalid_argument("flatness: eigenvector is not normalized");
    Complex inner{0.0, 0.0};
    for (std::size_t s : members) inner += weight * std::conj(lifted[s]);
    overlap[j] = std::norm(inner);
  }

  std::vector<std::size_t> cluster_of(basis.eigenvalues.size());
  std::vector<Complex> centers;
  for (std::size_t j = 0; j < basis.eigenvalues.size(); ++j) {
    std::size_t c = 0;
    while (c < centers.size() && std::abs(centers[c] - basis.eigenvalues[j]) > 1e-8) ++c;
    if (c == centers.size()) centers.push_back(basis.eigenvalues[j]);
    cluster_of[j] = c;
  }
  std::vector<double> mass(centers.size(), 0.0);
  std::vector<std::size_t> count(centers.size(), 0);
  for (std::size_t j = 0; j < overlap.size(); ++j) {
    mass[cluster_of[j]] += overlap[j];
    ++count[cluster_of[j]];
  }
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double want = static_cast<double>(count[c]) / states;
    if (std::abs(mass[c] - want) > tol * static_cast<double>(count[c])) return false;
  }
  return true;
}

double bound_group(const Subgroup& h, const Element& coset_rep, const Distribution& f, int ell) {
  require_same_group(h.group(), coset_rep.group());
  return bound_flat(strip_unit_eigenvalue(quotient_spectrum_group(h, f)), ell);
}

double bound_code(const LinearCode& c, const Distribution& f, int ell, CodeNormalization mode) {
  require_ell(ell);
  if (c.field_size() != 2) throw std::invalid_argument("code bound requires a binary code");
  const GroupSpec g = code_group(c);
  require_same_group(g, f.group());
  if (mode == CodeNormalization::canonical) return bound_group(code_to_subgroup(c), Element::zero(g), f, ell);

  const auto ft = fourier_fast(f.function());
  double acc = 0.0;
  for (const auto& x : enumerate_codewords(dual(c), g.order())) {
    const std::size_t idx = g.encode(x);
    if (idx == 0) continue;
    acc += std::pow(std::norm(ft.values[idx]), ell);
  }
  return std::ldexp(1.0, c.length() - 1) * std::sqrt(acc);
}

std::optional<int> smoothing_ell(const std::function<double(int)>& bound, double eps, int ell_max) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  for (int ell = 1; ell <= ell_max; ++ell)
    if (bound(ell) <= eps) return ell;
  return std::nullopt;
}

std::string describe(const AuditInstance& instance) {
  std::ostringstream os;
  os << std::setprecision(17);
  std::visit(
      [&](const auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, GroupInstance>) {
          os << "group " << in.subgroup.group().to_string() << " subgroup=";
          dump_values(os, in.subgroup.members());
          os << " coset_rep=" << in.coset_rep.flat_index() << " noise=";
          dump_values(os, in.noise.values());
        } else if constexpr (std::is_same_v<T, CodeInstance>) {
          os << "code n=" << in.code.length() << " k=" << in.code.dimension() << " q=" << in.code.field_size()
             << " basis=[";
          for (const auto& row : in.code.basis()) dump_values(os, row);
          os << "] noise=";
          dump_values(os, in.noise.values());
        } else {
          os << "graph " << in.label << " n=" << in.walk.size() << " partition=";
          dump_partition(os, in.partition);
          os << " start_block=" << in.start_block << " entries=[";
          for (std::size_t i = 0; i < in.walk.size(); ++i)
            for (std::size_t j = 0; j < in.walk.size(); ++j)
              if (in.walk(i, j) != 0.0) os << '(' << i << ',' << j << ',' << in.walk(i, j) << ')';
          os << ']';
        }
      },
      instance);
  return os.str();
}

BoundReport analyze(const AuditInstance& instance, const AuditOptions& options) {
  if (options.ell_max < 1) throw std::invalid_argument("ell_max must be >= 1");
  BoundReport report = std::visit(
      [&](const auto& in) -> BoundReport {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, GroupInstance>) {
          return analyze_group(in, options);
        } else if constexpr (std::is_same_v<T, CodeInstance>) {
          const GroupSpec g = code_group(in.code);
          BoundReport r = analyze_group(GroupInstance{code_to_subgroup(in.code), Element::zero(g), in.noise}, options);
          if (options.literal) {
            for (auto& row : r.rows)
              row.bound_literal = bound_code(in.code, in.noise, row.ell, CodeNormalization::literal);
          }
          return r;
        } else {
          return analyze_graph(in, options);
        }
      },
      instance);
  report.instance = describe(instance);
  return report;
}

BoundReport soundness_audit(const AuditInstance& instance, const AuditOptions& options) {
  BoundReport report = analyze(instance, options);
  for (auto& row : report.rows) {
    row.bound_general -= options.inject_error;
    if (row.bound_flat) *row.bound_flat -= options.inject_error;
  }
  for (const auto& row : report.rows) {
    if (!row.exact_tv) continue;
    const double exact = *row.exact_tv;
    const bool general_ok = exact <= row.bound_general + kSoundnessTolerance;
    const bool flat_ok = !row.bound_flat || exact <= *row.bound_flat + kSoundnessTolerance;
    if (!general_ok || !flat_ok) {
      std::ostringstream os;
      os << std::setprecision(17) << "soundness violation at ell=" << row.ell << ": exact_tv=" << exact
         << " bound_general=" << row.bound_general;
      if (row.bound_flat) os << " bound_flat=" << *row.bound_flat;
      os << " instance: " << report.instance;
      throw SoundnessViolation(os.str(), report);
    }
  }
  return report;
}

}  // namespace eqmix
