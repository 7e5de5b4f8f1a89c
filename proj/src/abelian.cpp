#include "eqmix/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <sstream>

namespace eqmix {

GroupSpec::GroupSpec(std::vector<int> moduli, std::size_t order_cap) {
  auto d = std::make_shared<Data>();
  if (moduli.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
  std::size_t order = 1;
  std::size_t lcm = 1;
  for (int m : moduli) {
    if (m < 2) throw std::invalid_argument("every modulus must be >= 2, got " + std::to_string(m));
    order *= static_cast<std::size_t>(m);
    if (order > order_cap)
      throw std::invalid_argument("group order exceeds cap " + std::to_string(order_cap));
    lcm = std::lcm(lcm, static_cast<std::size_t>(m));
  }
  d->binary = std::all_of(moduli.begin(), moduli.end(), [](int m) { return m == 2; });
  d->moduli = std::move(moduli);
  d->order = order;
  d->lcm = lcm;
  for (int m : d->moduli) d->phase_step.push_back(lcm / static_cast<std::size_t>(m));

  const std::size_t k = d->moduli.size();
  d->coords.resize(order * k);
  for (std::size_t idx = 0; idx < order; ++idx) {
    std::size_t rest = idx;
    for (std::size_t j = k; j-- > 0;) {
      const auto m = static_cast<std::size_t>(d->moduli[j]);
      d->coords[idx * k + j] = static_cast<int>(rest % m);
      rest /= m;
    }
  }
  d->roots.resize(lcm);
  for (std::size_t t = 0; t < lcm; ++t) {
    // Exact values on the axes keep trivial characters exactly real.
    if (4 * t == 0 || 4 * t == lcm || 4 * t == 2 * lcm || 4 * t == 3 * lcm) {
      static constexpr Complex kAxis[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      d->roots[t] = kAxis[4 * t / lcm];
    } else {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(lcm);
      d->roots[t] = Complex(std::cos(angle), std::sin(angle));
    }
  }
  data_ = std::move(d);
}

GroupSpec GroupSpec::parse(std::string_view text, std::size_t order_cap) {
  std::vector<int> moduli;
  auto fail = [&](const std::string& why) -> GroupSpec {
    throw std::invalid_argument("bad group spec '" + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  auto read_int = [&](const char* what) {
    const std::size_t start = pos;
    long long value = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      value = value * 10 + (text[pos] - '0');
      if (value > 1'000'000'000) fail(std::string(what) + " too large");
      ++pos;
    }
    if (pos == start) fail(std::string("expected ") + what);
    return static_cast<int>(value);
  };
  if (text.empty()) return fail("empty");
  while (true) {
    if (pos >= text.size() || text[pos] != 'Z') return fail("expected 'Z' at position " + std::to_string(pos));
    ++pos;
    const int m = read_int("modulus");
    int reps = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      reps = read_int("exponent");
      if (reps < 1) return fail("exponent must be >= 1");
      if (reps > 64) return fail("exponent too large");
    }
    for (int r = 0; r < reps; ++r) moduli.push_back(m);
    if (pos == text.size()) break;
    if (text[pos] != 'x') return fail("expected 'x' at position " + std::to_string(pos));
    ++pos;
  }
  return GroupSpec(std::move(moduli), order_cap);
}

std::size_t GroupSpec::encode(std::span<const int> coords) const {
  const auto& mod = data_->moduli;
  if (coords.size() != mod.size())
    throw GroupMismatch("element has " + std::to_string(coords.size()) + " coordinates, group has rank " +
                        std::to_string(mod.size()));
  std::size_t idx = 0;
  for (std::size_t j = 0; j < mod.size(); ++j) {
    if (coords[j] < 0 || coords[j] >= mod[j])
      throw std::out_of_range("coordinate " + std::to_string(j) + " = " + std::to_string(coords[j]) +
                              " outside [0, " + std::to_string(mod[j]) + ")");
    idx = idx * static_cast<std::size_t>(mod[j]) + static_cast<std::size_t>(coords[j]);
  }
  return idx;
}

std::vector<int> GroupSpec::decode(std::size_t index) const {
  if (index >= order()) throw std::out_of_range("flat index outside group");
  const std::size_t k = rank();
  return {data_->coords.begin() + static_cast<std::ptrdiff_t>(index * k),
          data_->coords.begin() + static_cast<std::ptrdiff_t>((index + 1) * k)};
}

std::size_t GroupSpec::add(std::size_t a, std::size_t b) const {
  if (data_->binary) return a ^ b;
  const auto& mod = data_->moduli;
  const std::size_t k = mod.size();
  const int* ca = &data_->coords[a * k];
  const int* cb = &data_->coords[b * k];
  std::size_t idx = 0;
  for (std::size_t j = 0; j < k; ++j) {
    int s = ca[j] + cb[j];
    if (s >= mod[j]) s -= mod[j];
    idx = idx * static_cast<std::size_t>(mod[j]) + static_cast<std::size_t>(s);
  }
  return idx;
}

std::size_t GroupSpec::neg(std::size_t a) const {
  if (data_->binary) return a;
  const auto& mod = data_->moduli;
  const std::size_t k = mod.size();
  const int* ca = &data_->coords[a * k];
  std::size_t idx = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const int s = ca[j] == 0 ? 0 : mod[j] - ca[j];
    idx = idx * static_cast<std::size_t>(mod[j]) + static_cast<std::size_t>(s);
  }
  return idx;
}

std::size_t GroupSpec::phase(std::size_t character, std::size_t element) const {
  const std::size_t k = rank();
  const int* ca = &data_->coords[character * k];
  const int* cg = &data_->coords[element * k];
  std::size_t acc = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const auto m = static_cast<std::size_t>(data_->moduli[j]);
    acc += (static_cast<std::size_t>(ca[j]) * static_cast<std::size_t>(cg[j]) % m) * data_->phase_step[j];
  }
  return acc % data_->lcm;
}

std::string GroupSpec::to_string() const {
  std::ostringstream os;
  const auto& mod = data_->moduli;
  for (std::size_t j = 0; j < mod.size();) {
    std::size_t run = 1;
    while (j + run < mod.size() && mod[j + run] == mod[j]) ++run;
    if (j > 0) os << 'x';
    os << 'Z' << mod[j];
    if (run > 1) os << '^' << run;
    j += run;
  }
  return os.str();
}

void require_same_group(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw GroupMismatch("group mismatch: " + a.to_string() + " vs " + b.to_string());
}

Element::Element(GroupSpec group, std::size_t flat_index) : group_(std::move(group)), index_(flat_index) {
  if (index_ >= group_.order()) throw std::out_of_range("flat index outside group");
}

Element::Element(GroupSpec group, std::span<const int> coords)
    : group_(std::move(group)), index_(group_.encode(coords)) {}

CharacterIndex::CharacterIndex(GroupSpec group, std::size_t flat_index)
    : group_(std::move(group)), index_(flat_index) {
  if (index_ >= group_.order()) throw std::out_of_range("character index outside group");
}

CharacterIndex::CharacterIndex(GroupSpec group, std::span<const int> coords)
    : group_(std::move(group)), index_(group_.encode(coords)) {}

Element elem_add(const Element& g, const Element& h) {
  require_same_group(g.group(), h.group());
  return Element(g.group(), g.group().add(g.flat_index(), h.flat_index()));
}

Element elem_neg(const Element& g) { return Element(g.group(), g.group().neg(g.flat_index())); }

Element elem_sub(const Element& g, const Element& h) {
  require_same_group(g.group(), h.group());
  return Element(g.group(), g.group().sub(g.flat_index(), h.flat_index()));
}

Complex char_eval(const CharacterIndex& a, const Element& g) {
  require_same_group(a.group(), g.group());
  return g.group().character(a.flat_index(), g.flat_index());
}

GroupFunction::GroupFunction(GroupSpec g, std::vector<double> v) : group(std::move(g)), values(std::move(v)) {
  if (values.size() != group.order())
    throw std::invalid_argument("function has " + std::to_string(values.size()) + " values, group order is " +
                                std::to_string(group.order()));
}

Distribution::Distribution(GroupFunction f, double sum_tolerance) : f_(std::move(f)) {
  double sum = 0.0;
  for (double& v : f_.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("distribution has a non-finite value");
    if (v < 0.0) {
      if (v < -1e-14) throw std::invalid_argument("distribution has a negative value");
      v = 0.0;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > sum_tolerance)
    throw std::invalid_argument("distribution sums to " + std::to_string(sum) + ", not 1");
}

Distribution Distribution::normalized(GroupFunction f, double sum_tolerance) {
  double sum = std::accumulate(f.values.begin(), f.values.end(), 0.0);
  if (!(std::abs(sum - 1.0) <= sum_tolerance))
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum) + ", not 1");
  for (double& v : f.values) v /= sum;
  return Distribution(std::move(f), 1e-12);
}

Distribution Distribution::from_weights(GroupFunction w) {
  double sum = 0.0;
  for (double v : w.values) {
    if (!(v >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    sum += v;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("weights sum to zero");
  for (double& v : w.values) v /= sum;
  return Distribution(std::move(w), 1e-12);
}

Distribution Distribution::uniform(const GroupSpec& g) {
  return Distribution(GroupFunction(g, std::vector<double>(g.order(), 1.0 / static_cast<double>(g.order()))));
}

Distribution Distribution::delta(const Element& g) {
  auto f = GroupFunction::zeros(g.group());
  f.values[g.flat_index()] = 1.0;
  return Distribution(std::move(f));
}

Distribution Distribution::uniform_on(const GroupSpec& g, std::span<const std::size_t> members) {
  if (members.empty()) throw std::invalid_argument("uniform distribution on an empty set");
  auto f = GroupFunction::zeros(g);
  const double w = 1.0 / static_cast<double>(members.size());
  for (std::size_t m : members) f.values.at(m) = w;
  return Distribution(std::move(f));
}

FourierTable fourier(const GroupFunction& f) {
  const auto& g = f.group;
  const std::size_t n = g.order();
  FourierTable out{g, std::vector<Complex>(n)};
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t a = 0; a < n; ++a) {
    Complex acc{0.0, 0.0};
    for (std::size_t x = 0; x < n; ++x) {
      if (f.values[x] != 0.0) acc += f.values[x] * std::conj(g.character(a, x));
    }
    out.values[a] = acc * scale;
  }
  return out;
}

FourierTable fourier_fast(const GroupFunction& f) {
  const auto& g = f.group;
  const std::size_t n = g.order();
  std::vector<Complex> buf(f.values.begin(), f.values.end());
  std::vector<Complex> line;
  const auto& mod = g.moduli();
  // DFT along each axis in turn; axis j has stride prod_{i>j} m_i.
  std::size_t stride = n;
  for (int mj : mod) {
    const auto m = static_cast<std::size_t>(mj);
    stride /= m;
    const std::size_t step = g.phase_modulus() / m;
    line.resize(m);
    for (std::size_t outer = 0; outer < n; outer += stride * m) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (std::size_t a = 0; a < m; ++a) {
          Complex acc{0.0, 0.0};
          for (std::size_t x = 0; x < m; ++x)
            acc += buf[base + x * stride] * std::conj(g.root((a * x % m) * step));
          line[a] = acc;
        }
        for (std::size_t a = 0; a < m; ++a) buf[base + a * stride] = line[a];
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : buf) v *= scale;
  return FourierTable{g, std::move(buf)};
}

GroupFunction inverse_fourier(const FourierTable& t) {
  const auto& g = t.group;
  const std::size_t n = g.order();
  auto out = GroupFunction::zeros(g);
  for (std::size_t x = 0; x < n; ++x) {
    Complex acc{0.0, 0.0};
    for (std::size_t a = 0; a < n; ++a) acc += t.values[a] * g.character(a, x);
    out.values[x] = acc.real();
  }
  return out;
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& h) {
  require_same_group(f.group, h.group);
  const auto& g = f.group;
  const std::size_t n = g.order();
  auto out = GroupFunction::zeros(g);
  for (std::size_t x = 0; x < n; ++x) {
    const double hx = h.values[x];
    if (hx == 0.0) continue;
    const std::size_t minus_x = g.neg(x);
    for (std::size_t y = 0; y < n; ++y) out.values[y] += f.values[g.add(y, minus_x)] * hx;
  }
  return out;
}

Distribution convolve(const Distribution& f, const Distribution& h) {
  return Distribution(convolve(f.function(), h.function()));
}

Subgroup::Subgroup(GroupSpec group, std::vector<std::size_t> members, Trusted)
    : group_(std::move(group)), members_(std::move(members)) {}

Subgroup::Subgroup(GroupSpec group, std::vector<std::size_t> members) : group_(std::move(group)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || members.front() != 0) throw std::invalid_argument("subgroup must contain 0");
  if (members.back() >= group_.order()) throw std::out_of_range("subgroup member outside group");
  // Rebuild the closure from a greedy generating set; a subgroup equals its closure.
  std::vector<char> in_closure(group_.order(), 0);
  std::vector<Element> gens;
  std::size_t closure_size = 1;
  in_closure[0] = 1;
  for (std::size_t m : members) {
    if (in_closure[m]) continue;
    gens.emplace_back(group_, m);
    const Subgroup closure = subgroup_generate(group_, gens);
    for (std::size_t c : closure.members()) in_closure[c] = 1;
    closure_size = closure.size();
    if (closure_size > members.size()) break;
  }
  if (closure_size != members.size())
    throw std::invalid_argument("member set is not closed under the group law");
  members_ = std::move(members);
}

Subgroup Subgroup::trivial(const GroupSpec& g) { return Subgroup(g, {0}, Trusted{}); }

Subgroup Subgroup::whole(const GroupSpec& g) {
  std::vector<std::size_t> all(g.order());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return Subgroup(g, std::move(all), Trusted{});
}

bool Subgroup::contains(std::size_t flat) const {
  return std::binary_search(members_.begin(), members_.end(), flat);
}

Subgroup subgroup_generate(const GroupSpec& group, std::span<const Element> gens) {
  std::vector<std::size_t> steps;
  for (const auto& e : gens) {
    require_same_group(group, e.group());
    steps.push_back(e.flat_index());
  }
  std::vector<char> seen(group.order(), 0);
  std::vector<std::size_t> members{0};
  seen[0] = 1;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t s : steps) {
      const std::size_t nxt = group.add(cur, s);
      if (!seen[nxt]) {
        seen[nxt] = 1;
        members.push_back(nxt);
        queue.push_back(nxt);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup(group, std::move(members), Subgroup::Trusted{});
}

CosetPartition coset_partition(const Subgroup& h) {
  const auto& g = h.group();
  const std::size_t n = g.order();
  constexpr auto kUnassigned = static_cast<std::size_t>(-1);
  CosetPartition out{h, {}, {}, std::vector<std::size_t>(n, kUnassigned)};
  out.blocks.reserve(h.index());
  for (std::size_t x = 0; x < n; ++x) {
    if (out.block_of[x] != kUnassigned) continue;
    const std::size_t id = out.blocks.size();
    std::vector<std::size_t> block;
    block.reserve(h.size());
    for (std::size_t m : h.members()) {
      const std::size_t y = g.add(x, m);
      out.block_of[y] = id;
      block.push_back(y);
    }
    std::sort(block.begin(), block.end());
    out.blocks.push_back(std::move(block));
    out.representatives.push_back(x);
  }
  return out;
}

std::vector<CharacterIndex> annihilator(const Subgroup& h) {
  const auto& g = h.group();
  // A small generating set of H suffices: chi is trivial on H iff it is trivial on generators.
  std::vector<std::size_t> gens;
  {
    std::vector<Element> elems;
    std::vector<char> covered(g.order(), 0);
    covered[0] = 1;
    for (std::size_t m : h.members()) {
      if (covered[m]) continue;
      elems.emplace_back(g, m);
      gens.push_back(m);
      const Subgroup span = subgroup_generate(g, elems);
      for (std::size_t c : span.members()) covered[c] = 1;
    }
  }
  std::vector<CharacterIndex> out;
  out.reserve(h.index());
  for (std::size_t a = 0; a < g.order(); ++a) {
    const bool trivial_on_h =
        std::all_of(gens.begin(), gens.end(), [&](std::size_t x) { return g.phase(a, x) == 0; });
    if (trivial_on_h) out.emplace_back(g, a);
  }
  return out;
}

PeriodizedFunction periodize(const GroupFunction& f, const Subgroup& h) {
  require_same_group(f.group, h.group());
  auto cosets = coset_partition(h);
  std::vector<double> values(cosets.blocks.size(), 0.0);
  const double scale = 1.0 / static_cast<double>(h.size());
  for (std::size_t b = 0; b < cosets.blocks.size(); ++b) {
    double acc = 0.0;
    const std::size_t rep = cosets.representatives[b];
    for (std::size_t m : h.members()) acc += f.values[f.group.add(rep, m)];
    values[b] = acc * scale;
  }
  return PeriodizedFunction{std::move(cosets), std::move(values)};
}

double poisson_check(const GroupFunction& f, const Subgroup& h) {
  const auto& g = f.group;
  const auto per = periodize(f, h);
  const auto chars = annihilator(h);
  const double inv_index = 1.0 / static_cast<double>(per.values.size());
  const double inv_order = 1.0 / static_cast<double>(g.order());
  double worst = 0.0;
  for (const auto& chi : chars) {
    const std::size_t a = chi.flat_index();
    Complex periodized{0.0, 0.0};
    for (std::size_t b = 0; b < per.values.size(); ++b)
      periodized += per.values[b] * std::conj(g.character(a, per.cosets.representatives[b]));
    periodized *= inv_index;
    Complex direct{0.0, 0.0};
    for (std::size_t x = 0; x < g.order(); ++x) direct += f.values[x] * std::conj(g.character(a, x));
    direct *= inv_order;
    worst = std::max(worst, std::abs(periodized - direct));
  }
  return worst;
}

}  // namespace eqmix
