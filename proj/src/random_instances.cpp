#include "eqmix/random_instances.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace eqmix {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % n;
}

GroupInstance random_group_instance(Rng& rng, std::size_t max_order, bool full_subgroup) {
  if (max_order < 2) throw std::invalid_argument("max_order must be >= 2");
  std::vector<int> moduli;
  while (true) {
    moduli.clear();
    const auto rank = rng.between(1, 3);
    std::size_t order = 1;
    for (std::int64_t j = 0; j < rank; ++j) {
      moduli.push_back(static_cast<int>(rng.between(2, 12)));
      order *= static_cast<std::size_t>(moduli.back());
    }
    if (order <= max_order) break;
  }
  const GroupSpec g(moduli);
  const std::size_t n = g.order();

  std::vector<Element> gens;
  const auto gen_count = rng.between(0, 2);
  for (std::int64_t i = 0; i < gen_count; ++i) gens.emplace_back(g, static_cast<std::size_t>(rng.below(n)));
  Subgroup h = full_subgroup ? Subgroup::whole(g) : subgroup_generate(g, gens);
  const Element rep(g, static_cast<std::size_t>(rng.below(n)));

  std::vector<double> weights(n, 0.0);
  const auto mode = rng.below(3);
  do {
    for (std::size_t x = 0; x < n; ++x) {
      if (mode == 1 && rng.below(2) == 0) continue;
      weights[x] = static_cast<double>(rng.between(mode == 0 ? 1 : 0, 9));
    }
    if (mode == 2) {  // symmetric noise f(x) = f(-x)
      for (std::size_t x = 0; x < n; ++x) weights[g.neg(x)] = weights[x] = std::max(weights[x], weights[g.neg(x)]);
    }
  } while (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; }));
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return GroupInstance{std::move(h), rep, Distribution(GroupFunction(g, std::move(weights)))};
}

Graph random_regular_graph(Rng& rng, std::size_t n, std::size_t d) {
  if (d == 0 || d >= n || (n * d) % 2 != 0) throw std::invalid_argument("no simple d-regular graph with these sizes");
  std::vector<std::size_t> stubs;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    Graph g{n, {}};
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      const auto u = std::min(stubs[i], stubs[i + 1]);
      const auto v = std::max(stubs[i], stubs[i + 1]);
      ok = u != v && seen.emplace(u, v).second;
      g.edges.emplace_back(u, v);
    }
    if (ok) return g;
  }
  throw std::runtime_error("pairing model failed to produce a simple graph");
}

GraphInstance random_graph_instance(Rng& rng, std::size_t max_vertices) {
  if (max_vertices < 4) throw std::invalid_argument("max_vertices must be >= 4");
  std::size_t n = 0;
  std::size_t d = 0;
  do {
    n = static_cast<std::size_t>(rng.between(4, static_cast<std::int64_t>(max_vertices)));
    d = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(std::min<std::size_t>(4, n - 1))));
  } while ((n * d) % 2 != 0);
  const Graph graph = random_regular_graph(rng, n, d);
  const DenseMatrix adj = adjacency_matrix(graph);
  const auto v = static_cast<std::size_t>(rng.below(n));
  std::vector<std::size_t> labels(n, 0);
  labels[v] = 1;
  Partition partition = coarsest_equitable_refinement(adj, Partition::from_labels(labels));
  const std::size_t start = partition.block_of(v);
  return GraphInstance{transition_from_graph(graph), std::move(partition), start,
                       "random " + std::to_string(d) + "-regular n=" + std::to_string(n) + " v=" + std::to_string(v)};
}

}  // namespace eqmix
