#include <gtest/gtest.h>

#include <random>

#include "eqmix/random_instances.hpp"
#include "eqmix/walk.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace eqmix;

namespace {

Subgroup gen(const GroupSpec& g, std::initializer_list<std::size_t> xs) {
  std::vector<Element> e;
  for (auto x : xs) e.emplace_back(g, x);
  return subgroup_generate(g, e);
}

Distribution random_distribution(const GroupSpec& g, std::mt19937_64& rng) {
  std::vector<double> f(g.order());
  for (auto& v : f) v = static_cast<double>(rng() % 7);
  f[rng() % g.order()] += 1.0;
  return Distribution::from_weights(GroupFunction(g, std::move(f)));
}

}  // namespace

TEST(Transition, FromDistribution) {
  const GroupSpec g({2, 3});
  const auto id = transition_from_distribution(Distribution::delta(Element::zero(g)));
  EXPECT_EQ(id.matrix(), DenseMatrix::identity(6));
  const auto u = transition_from_distribution(Distribution::uniform(g));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(u(i, j), 1.0 / 6, 1e-15);

  const GroupSpec z3({3});
  const auto c = transition_from_distribution(Distribution::delta(Element(z3, 1)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(c(i, j), i == (j + 1) % 3 ? 1.0 : 0.0);
  EXPECT_TRUE(c.doubly_stochastic());
  EXPECT_TRUE(c.flags().normal);
  EXPECT_FALSE(c.flags().symmetric);
}

TEST(Transition, GroupWalksAreDoublyStochasticAndNormal) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupSpec g({static_cast<int>(rng() % 5) + 2, static_cast<int>(rng() % 6) + 2});
    const auto f = random_distribution(g, rng);
    const auto t = transition_from_distribution(f);
    EXPECT_TRUE(t.doubly_stochastic());
    EXPECT_TRUE(t.flags().normal);
    EXPECT_LE(oracle::max_abs_diff(oracle::to_rows(t.matrix()), oracle::walk_matrix(g, f.values())), 0.0);
  }
}

TEST(Transition, FromGraph) {
  const auto k3 = transition_from_graph(fixtures::complete(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(k3(i, j), i == j ? 0.0 : 0.5);
  const auto c4 = transition_from_graph(fixtures::cycle(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(c4(i, j), (i + 4 - j) % 4 == 1 || (j + 4 - i) % 4 == 1 ? 0.5 : 0.0);
  try {
    transition_from_graph(fixtures::path(3));
    FAIL() << "path accepted";
  } catch (const NotRegular& e) {
    EXPECT_EQ(e.degrees(), (std::vector<std::size_t>{1, 2, 1}));
  }
  Graph loop{2, {{0, 0}, {1, 1}}};
  EXPECT_THROW(adjacency_matrix(loop), std::invalid_argument);
  Graph multi{2, {{0, 1}, {1, 0}}};
  EXPECT_THROW(adjacency_matrix(multi), std::invalid_argument);
}

TEST(Transition, Cayley) {
  const GroupSpec z4({4});
  const std::vector<Element> s{Element(z4, 1), Element(z4, 3)};
  EXPECT_EQ(transition_cayley(z4, s).matrix(), transition_from_graph(fixtures::cycle(4)).matrix());
  const GroupSpec z22({2, 2});
  const std::vector<Element> all{Element(z22, 1), Element(z22, 2), Element(z22, 3)};
  const auto k4 = transition_cayley(z22, all);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(k4(i, j), i == j ? 0.0 : 1.0 / 3, 1e-15);
  const std::vector<Element> one{Element(z4, 1)};
  const auto dir = transition_cayley(z4, one);
  EXPECT_TRUE(dir.flags().normal);
  EXPECT_FALSE(dir.flags().symmetric);
}

TEST(Transition, NormalityProbePathOnLargeMatrices) {
  const GroupSpec g({600});
  const auto t = transition_from_distribution(Distribution::delta(Element(g, 1)));
  EXPECT_TRUE(t.flags().normal);
  DenseMatrix m(600, 600);
  for (std::size_t i = 0; i + 1 < 600; ++i) m(i, i + 1) = 1.0;
  EXPECT_FALSE(is_normal(m));
}

TEST(Step, Examples) {
  const auto id = TransitionMatrix(DenseMatrix::identity(3));
  const std::vector<double> mu{0.2, 0.3, 0.5};
  EXPECT_EQ(step(id, mu), mu);
  const GroupSpec z2({2});
  const auto t = transition_from_distribution(Distribution::from_weights(GroupFunction(z2, {0.9, 0.1})));
  const std::vector<double> d0{1.0, 0.0};
  const auto s = step(t, d0);
  EXPECT_NEAR(s[0], 0.9, 1e-15);
  EXPECT_NEAR(s[1], 0.1, 1e-15);
  const auto k4 = transition_from_graph(fixtures::complete(4));
  const std::vector<double> u(4, 0.25);
  for (double v : power_step(k4, u, 5)) EXPECT_NEAR(v, 0.25, 1e-15);
  const std::vector<double> bad{0.5, 0.6};
  EXPECT_THROW(step(t, bad), std::invalid_argument);
}

TEST(TotalVariation, Examples) {
  const std::vector<double> a{0.3, 0.7}, b{1.0, 0.0}, c{0.0, 1.0}, u{0.5, 0.5};
  EXPECT_EQ(tv_distance(a, a), 0.0);
  EXPECT_EQ(tv_distance(b, c), 1.0);
  EXPECT_EQ(tv_distance(b, u), 0.5);
}

TEST(TotalVariation, Curves) {
  const GroupSpec z3({3});
  const auto tu = transition_from_distribution(Distribution::uniform(z3));
  const std::vector<double> d0{1, 0, 0};
  for (double v : exact_tv_curve(tu, d0, 5)) EXPECT_NEAR(v, 0.0, 1e-15);

  const GroupSpec z2({2});
  const auto b = Distribution::from_weights(GroupFunction(z2, {0.9, 0.1}));
  const std::vector<double> e0{1, 0};
  const auto curve = exact_tv_curve(transition_from_distribution(b), e0, 20);
  const auto gcurve = exact_tv_curve_group(b, Distribution::delta(Element::zero(z2)), 20);
  for (int l = 1; l <= 20; ++l) {
    EXPECT_NEAR(curve[l - 1], 0.5 * std::pow(0.8, l), 1e-14);
    EXPECT_NEAR(gcurve[l - 1], 0.5 * std::pow(0.8, l), 1e-14);
  }

  const GroupSpec z4({4});
  const auto shift = Distribution::delta(Element(z4, 1));
  const std::vector<double> uh{0.5, 0, 0.5, 0};
  for (double v : exact_tv_curve(transition_from_distribution(shift), uh, 20)) EXPECT_EQ(v, 0.5);
}

TEST(TotalVariation, MonotoneAndGroupPathAgrees) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupSpec g({static_cast<int>(rng() % 4) + 2, static_cast<int>(rng() % 5) + 2});
    const auto f = random_distribution(g, rng);
    const auto h = gen(g, {rng() % g.order()});
    const auto cosets = coset_partition(h);
    const auto mu0 = Distribution::uniform_on(g, cosets.blocks[rng() % cosets.blocks.size()]);
    const auto t = transition_from_distribution(f);
    const auto dense = exact_tv_curve(t, mu0.values(), 8);
    const auto conv = exact_tv_curve_group(f, mu0, 8);
    const auto brute = oracle::tv_curve(oracle::walk_matrix(g, f.values()), mu0.values(), 8);
    // u_H *^l f and T_f^l u_H coincide pointwise.
    auto a = mu0;
    std::vector<double> b = mu0.values();
    for (int l = 1; l <= 8; ++l) {
      a = convolve(a, f);
      b = step(t, b);
      for (std::size_t x = 0; x < g.order(); ++x) EXPECT_NEAR(a[x], b[x], 1e-12);
      EXPECT_NEAR(dense[l - 1], brute[l - 1], 1e-12);
      EXPECT_NEAR(conv[l - 1], brute[l - 1], 1e-12);
      if (l > 1) EXPECT_LE(dense[l - 1], dense[l - 2] + 1e-12);
    }
  }
}

TEST(Partition, Construction) {
  const Partition p(5, {{3, 1}, {0}, {4, 2}});
  EXPECT_EQ(p.blocks(), (std::vector<std::vector<std::size_t>>{{0}, {1, 3}, {2, 4}}));
  EXPECT_EQ(p.block_of(3), 1u);
  EXPECT_THROW(Partition(3, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(Partition(3, {{0, 1}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(Partition(3, {{0, 1, 2}, {}}), std::invalid_argument);
  const std::vector<std::size_t> labels{7, 7, 2};
  EXPECT_EQ(Partition::from_labels(labels), Partition(3, {{0, 1}, {2}}));
  EXPECT_TRUE(Partition::singletons(3).refines(Partition::whole(3)));
  EXPECT_FALSE(Partition::whole(3).refines(Partition::singletons(3)));
  EXPECT_EQ(parse_partition_text("# blocks\n0 2\n1\n", 3), Partition(3, {{0, 2}, {1}}));
  EXPECT_THROW(parse_partition_text("0 2\n", 3), std::invalid_argument);
}

TEST(Equitable, Examples) {
  const auto k4 = transition_from_graph(fixtures::complete(4));
  const auto single = is_equitable(k4.matrix(), Partition::singletons(4));
  ASSERT_TRUE(single.equitable);
  EXPECT_EQ(single.quotient->entries, k4.matrix());
  const auto whole = is_equitable(k4.matrix(), Partition::whole(4));
  ASSERT_TRUE(whole.equitable);
  EXPECT_NEAR(whole.quotient->entries(0, 0), 1.0, 1e-15);

  const GroupSpec z4({4});
  const auto t = transition_from_distribution(Distribution::delta(Element(z4, 1)));
  const auto cos = Partition::from_cosets(coset_partition(gen(z4, {2})));
  const auto q = quotient(t, cos);
  EXPECT_EQ(q.entries(0, 0), 0.0);
  EXPECT_EQ(q.entries(0, 1), 1.0);
  EXPECT_EQ(q.entries(1, 0), 1.0);
  EXPECT_EQ(q.entries(1, 1), 0.0);

  const auto p3 = adjacency_matrix(fixtures::path(3));
  EXPECT_FALSE(is_equitable(p3, Partition::whole(3)).equitable);
  EXPECT_THROW(quotient(p3, Partition::whole(3)), NotEquitable);
}

TEST(Quotient, CosetEntryFormula) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupSpec g({static_cast<int>(rng() % 4) + 2, static_cast<int>(rng() % 4) + 2});
    const auto f = random_distribution(g, rng);
    const auto h = gen(g, {rng() % g.order()});
    const auto cosets = coset_partition(h);
    const auto q = quotient(transition_from_distribution(f), Partition::from_cosets(cosets));
    const auto& reps = cosets.representatives;
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j) {
        double want = 0.0;
        for (auto x : h.members()) want += f[g.add(oracle::diff_index(g, reps[i], reps[j]), x)];
        EXPECT_NEAR(q.entries(i, j), want, 1e-14);
      }
    EXPECT_LE(intertwining_residual(transition_from_distribution(f).matrix(), q), 1e-10);
  }
}

TEST(Quotient, PetersenDistancePartition) {
  const auto g = fixtures::petersen();
  const auto t = transition_from_graph(g);
  const auto dist = oracle::bfs_distances(10, g.edges, 0);
  const auto p = Partition::from_labels(dist);
  const auto q = quotient(t, p);
  const double want[3][3] = {{0, 1, 0}, {1.0 / 3, 0, 2.0 / 3}, {0, 1.0 / 3, 2.0 / 3}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(q.entries(i, j), want[i][j], 1e-15);
  for (int i = 0; i < 3; ++i) {
    double row = 0.0;
    for (int j = 0; j < 3; ++j) row += q.entries(i, j);
    EXPECT_NEAR(row, 1.0, 1e-10);
  }
  EXPECT_LE(intertwining_residual(t.matrix(), q), 1e-10);
  EXPECT_EQ(quotient(t, Partition::whole(10)).entries.rows(), 1u);
}

TEST(Refinement, Examples) {
  const auto pet = transition_from_graph(fixtures::petersen());
  EXPECT_EQ(coarsest_equitable_refinement(pet.matrix(), Partition::whole(10)), Partition::whole(10));
  EXPECT_EQ(coarsest_equitable_refinement(adjacency_matrix(fixtures::path(3)), Partition::whole(3)),
            Partition(3, {{0, 2}, {1}}));
  EXPECT_EQ(coarsest_equitable_refinement(adjacency_matrix(fixtures::star(3)), Partition::whole(4)),
            Partition(4, {{0}, {1, 2, 3}}));
  // Petersen is distance-regular: refining {{0}, rest} yields the distance partition.
  const std::vector<std::size_t> seed{0, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  const auto dist = oracle::bfs_distances(10, fixtures::petersen().edges, 0);
  EXPECT_EQ(coarsest_equitable_refinement(pet.matrix(), Partition::from_labels(seed)), Partition::from_labels(dist));
}

TEST(Refinement, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = static_cast<double>(rng() % 2);
    std::vector<std::size_t> init(n);
    for (auto& l : init) l = rng() % 2;
    const auto got = coarsest_equitable_refinement(a, Partition::from_labels(init));
    EXPECT_TRUE(is_equitable(a, got).equitable);
    std::set<std::set<std::size_t>> blocks;
    for (const auto& b : got.blocks()) blocks.insert({b.begin(), b.end()});
    EXPECT_EQ(blocks, oracle::coarsest_equitable(oracle::to_rows(a), init));
  }
}

TEST(Lift, Examples) {
  const std::vector<double> ones{1, 1};
  EXPECT_EQ(lift(Partition(4, {{0, 2}, {1, 3}}), ones), (std::vector<double>(4, 1.0)));
  const std::vector<double> v{3, 1, 2};
  EXPECT_EQ(lift(Partition::singletons(3), v), v);
  const std::vector<double> pm{1, -1};
  EXPECT_EQ(lift(Partition(4, {{0, 2}, {1, 3}}), pm), (std::vector<double>{1, -1, 1, -1}));
}

TEST(RandomInstances, GraphsAreRegularAndPartitionsEquitable) {
  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const auto in = random_graph_instance(rng, 30);
    EXPECT_TRUE(in.walk.flags().symmetric);
    EXPECT_TRUE(in.walk.doubly_stochastic());
    EXPECT_TRUE(is_equitable(in.walk.matrix(), in.partition).equitable);
    EXPECT_EQ(in.partition.block(in.start_block).size(), 1u);
  }
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.below(1000), b.below(1000));
}
