#include <gtest/gtest.h>

#include <random>

#include "eqmix/bounds.hpp"
#include "eqmix/random_instances.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace eqmix;

namespace {

SpectrumReport reals(std::initializer_list<double> xs) {
  std::vector<Complex> v;
  for (double x : xs) v.emplace_back(x, 0.0);
  return SpectrumReport::make(std::move(v), {}, Provenance::numeric);
}

Subgroup gen(const GroupSpec& g, std::initializer_list<std::size_t> xs) {
  std::vector<Element> e;
  for (auto x : xs) e.emplace_back(g, x);
  return subgroup_generate(g, e);
}

const std::vector<Word> kHamming74 = {
    {1, 0, 0, 0, 1, 1, 0}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}};

Distribution bernoulli(std::size_t n, double p) {
  return Distribution::from_weights(GroupFunction(GroupSpec(std::vector<int>(n, 2)), oracle::bernoulli(n, p)));
}

}  // namespace

TEST(Strip, Examples) {
  EXPECT_TRUE(strip_unit_eigenvalue(reals({1})).eigenvalues.empty());
  const auto a = strip_unit_eigenvalue(reals({1, -1}));
  ASSERT_EQ(a.eigenvalues.size(), 1u);
  EXPECT_EQ(a.eigenvalues[0], Complex(-1, 0));
  EXPECT_TRUE(a.peripheral_warning);
  const auto b = strip_unit_eigenvalue(reals({1, 1, 0.5}));
  EXPECT_EQ(b.eigenvalues.size(), 2u);
  EXPECT_TRUE(b.peripheral_warning);
  const auto c = strip_unit_eigenvalue(reals({0.5, 1 - 1e-13, 0.2}));
  EXPECT_EQ(c.eigenvalues.size(), 2u);
  EXPECT_FALSE(c.peripheral_warning);

  // Two disconnected copies of a two-state walk.
  DenseMatrix m(4, 4);
  m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = 0.75;
  m(0, 1) = m(1, 0) = m(2, 3) = m(3, 2) = 0.25;
  const auto s = quotient_spectrum_symmetric(TransitionMatrix(m), Partition::singletons(4));
  const auto st = strip_unit_eigenvalue(s);
  EXPECT_TRUE(st.peripheral_warning);
  EXPECT_EQ(st.eigenvalues.size(), 3u);
}

TEST(BoundGeneral, Examples) {
  const StrippedSpectrum empty;
  for (int l = 1; l < 5; ++l) EXPECT_EQ(bound_general(empty, 10, 1, l), 0.0);
  const auto z2 = strip_unit_eigenvalue(reals({1, 0.8}));
  for (int l = 1; l <= 10; ++l)
    EXPECT_NEAR(bound_general(z2, 2, 1, l), std::sqrt(2.0) / 2 * std::pow(0.8, l), 1e-15);
  const auto pet = strip_unit_eigenvalue(reals({1, 1.0 / 3, -2.0 / 3}));
  const double want = 0.5 * std::sqrt(10 * (std::pow(1.0 / 3, 6) + std::pow(2.0 / 3, 6)));
  EXPECT_NEAR(bound_general(pet, 10, 1, 3), want, 1e-15);
  EXPECT_NEAR(want, 0.47214, 1e-5);
}

TEST(BoundFlat, Examples) {
  EXPECT_EQ(bound_flat(StrippedSpectrum{}, 3), 0.0);
  const auto z2 = strip_unit_eigenvalue(reals({1, 0.8}));
  const GroupSpec g({2});
  const auto f = Distribution::from_weights(GroupFunction(g, {0.9, 0.1}));
  const auto exact = exact_tv_curve_group(f, Distribution::delta(Element::zero(g)), 12);
  for (int l = 1; l <= 12; ++l) {
    EXPECT_NEAR(bound_flat(z2, l), 0.5 * std::pow(0.8, l), 1e-15);
    EXPECT_NEAR(bound_flat(z2, l), exact[l - 1], 1e-12);
    EXPECT_NEAR(bound_flat(z2, l), bound_general(z2, 2, 1, l) * std::sqrt(0.5), 1e-15);
  }
  const auto per = strip_unit_eigenvalue(reals({1, -1}));
  for (int l = 1; l <= 5; ++l) EXPECT_NEAR(bound_flat(per, l), 0.5, 1e-15);
}

TEST(Flatness, Examples) {
  const GroupSpec z4({4});
  const auto f = Distribution::delta(Element(z4, 1));
  const auto h = gen(z4, {2});
  const auto cos = Partition::from_cosets(coset_partition(h));
  const auto basis = quotient_eigenbasis_group(h, f);
  EXPECT_TRUE(check_flatness(cos, 0, basis));
  EXPECT_TRUE(check_flatness(cos, 1, basis));

  const GroupSpec g({3, 4});
  const auto t = Subgroup::trivial(g);
  const auto tb = quotient_eigenbasis_group(t, Distribution::uniform(g));
  const auto singles = Partition::from_cosets(coset_partition(t));
  for (std::size_t b = 0; b < g.order(); ++b) EXPECT_TRUE(check_flatness(singles, b, tb));

  const auto pet = transition_from_graph(fixtures::petersen());
  const auto dist = oracle::bfs_distances(10, fixtures::petersen().edges, 0);
  const auto p = Partition::from_labels(dist);
  EXPECT_FALSE(check_flatness(p, 0, quotient_eigensystem_symmetric(pet, p).basis));

  // K_4 singletons: the -1/3 eigenspace is three-dimensional, so flatness is
  // decided per eigenspace and holds for any orthonormal basis of it.
  const auto k4 = transition_from_graph(fixtures::complete(4));
  const auto sys = quotient_eigensystem_symmetric(k4, Partition::singletons(4));
  for (std::size_t b = 0; b < 4; ++b) EXPECT_TRUE(check_flatness(Partition::singletons(4), b, sys.basis));
}

TEST(Flatness, ExplicitOverlapsOnPetersen) {
  // Oracle: overlaps of u_{V_0} with the lifted eigenvectors are 1/10 for each
  // nontrivial eigenspace only if flat; Petersen gives 5/10 and 4/10 instead.
  const auto pet = transition_from_graph(fixtures::petersen());
  const auto p = Partition::from_labels(oracle::bfs_distances(10, fixtures::petersen().edges, 0));
  const auto sys = quotient_eigensystem_symmetric(pet, p);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto v = lift(p, sys.basis.vectors[j]);
    const double overlap = std::norm(v[0]);
    const double l = sys.basis.eigenvalues[j].real();
    const double mult = std::abs(l - 1) < 1e-9 ? 1 : std::abs(l - 1.0 / 3) < 1e-9 ? 5 : 4;
    EXPECT_NEAR(overlap, mult / 10.0, 1e-12);
  }
}

TEST(BoundGroup, Examples) {
  const GroupSpec g({6});
  const auto f = Distribution::from_weights(GroupFunction(g, {0.5, 0.1, 0.1, 0.1, 0.1, 0.1}));
  EXPECT_EQ(bound_group(Subgroup::whole(g), Element::zero(g), f, 1), 0.0);

  const auto code = code_from_generator(kHamming74, 2);
  for (double p : {0.05, 0.1, 0.25})
    for (int l = 1; l <= 6; ++l)
      EXPECT_NEAR(bound_group(code_to_subgroup(code), Element::zero(code_group(code)), bernoulli(7, p), l),
                  std::sqrt(7.0) / 2 * std::pow(1 - 2 * p, 4 * l), 1e-12);

  const GroupSpec z4({4});
  const auto h = gen(z4, {2});
  const auto d = Distribution::delta(Element(z4, 1));
  for (std::size_t rep = 0; rep < 4; ++rep)
    for (int l = 1; l <= 5; ++l) EXPECT_NEAR(bound_group(h, Element(z4, rep), d, l), 0.5, 1e-15);
}

TEST(BoundGroup, CosetInvarianceAndPathConsistency) {
  Rng rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    const auto in = random_group_instance(rng, 200);
    const auto& g = in.subgroup.group();
    const auto stripped = strip_unit_eigenvalue(quotient_spectrum_group(in.subgroup, in.noise));
    for (int l = 1; l <= 4; ++l) {
      const double b0 = bound_group(in.subgroup, Element::zero(g), in.noise, l);
      for (std::size_t rep = 0; rep < g.order(); rep += 1 + g.order() / 7)
        EXPECT_EQ(bound_group(in.subgroup, Element(g, rep), in.noise, l), b0);
      EXPECT_NEAR(b0, bound_flat(stripped, l), 1e-12);
    }
  }
}

TEST(BoundCode, Examples) {
  const auto full = code_from_generator({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 2);
  for (auto mode : {CodeNormalization::canonical, CodeNormalization::literal})
    EXPECT_EQ(bound_code(full, bernoulli(3, 0.2), 2, mode), 0.0);

  const auto ham = code_from_generator(kHamming74, 2);
  const auto f = bernoulli(7, 0.1);
  const double c1 = bound_code(ham, f, 1, CodeNormalization::canonical);
  EXPECT_NEAR(c1, std::sqrt(7.0) / 2 * std::pow(0.8, 4), 1e-12);
  EXPECT_NEAR(bound_code(ham, f, 1, CodeNormalization::literal), c1, 1e-12);
  const double c2 = bound_code(ham, f, 2, CodeNormalization::canonical);
  EXPECT_NEAR(c2, std::sqrt(7.0) / 2 * std::pow(0.8, 8), 1e-12);
  EXPECT_NEAR(c2 / bound_code(ham, f, 2, CodeNormalization::literal), 128.0, 1e-9);

  // Literal form evaluated independently from a brute-force transform.
  const auto ft = oracle::fourier(code_group(ham), oracle::bernoulli(7, 0.1));
  for (int l = 1; l <= 3; ++l) {
    double s = 0.0;
    for (const auto& w : enumerate_codewords(dual(ham))) {
      const auto y = code_group(ham).encode(w);
      if (y != 0) s += std::pow(std::abs(ft[y]), 2 * l);
    }
    EXPECT_NEAR(bound_code(ham, f, l, CodeNormalization::literal), 64.0 * std::sqrt(s), 1e-14);
  }
  const auto ternary = code_from_generator({{1, 2}}, 3);
  EXPECT_THROW(bound_code(ternary, Distribution::uniform(code_group(ternary)), 1, CodeNormalization::canonical),
               std::invalid_argument);
}

TEST(SmoothingEll, Examples) {
  EXPECT_EQ(smoothing_ell([](int) { return 0.0; }, 0.01, 10), 1);
  const auto z2 = strip_unit_eigenvalue(reals({1, 0.8}));
  EXPECT_EQ(smoothing_ell([&](int l) { return bound_flat(z2, l); }, 0.1, 20), 8);
  const auto per = strip_unit_eigenvalue(reals({1, -1}));
  EXPECT_EQ(smoothing_ell([&](int l) { return bound_flat(per, l); }, 0.4, 20), std::nullopt);
}

TEST(Audit, Examples) {
  std::mt19937_64 rng(83);
  AuditOptions opt;
  opt.ell_max = 10;
  // Random [4,k] code with Bernoulli(0.11) noise.
  std::vector<Word> rows(2, Word(4));
  for (auto& r : rows)
    for (auto& x : r) x = static_cast<int>(rng() % 2);
  rows[0][0] = 1;
  const auto c = code_from_generator(rows, 2);
  opt.literal = true;
  const auto r1 = soundness_audit(CodeInstance{c, bernoulli(4, 0.11)}, opt);
  EXPECT_EQ(r1.rows.size(), 10u);
  opt.literal = false;

  const GroupSpec g({6, 4});
  std::vector<double> w(24);
  for (auto& v : w) v = static_cast<double>(rng() % 10);
  w[5] += 1;
  const auto noise = Distribution::from_weights(GroupFunction(g, w));
  const auto h = gen(g, {rng() % 24});
  const auto r2 = soundness_audit(GroupInstance{h, Element(g, rng() % 24), noise}, opt);
  for (const auto& row : r2.rows) {
    ASSERT_TRUE(row.exact_tv && row.bound_flat);
    EXPECT_LE(*row.exact_tv, *row.bound_flat + 1e-9);
    EXPECT_LE(*row.bound_flat, row.bound_general + 1e-12);
    EXPECT_NEAR(*row.bound_flat, row.bound_general * std::sqrt(static_cast<double>(h.size()) / 24.0), 1e-12);
  }

  const auto pet = transition_from_graph(fixtures::petersen());
  const auto p = Partition::from_labels(oracle::bfs_distances(10, fixtures::petersen().edges, 0));
  const auto r3 = soundness_audit(GraphInstance{pet, p, 0, "petersen"}, opt);
  EXPECT_FALSE(r3.flatness);
  const auto brute = oracle::tv_curve(oracle::to_rows(pet.matrix()), {1, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 10);
  for (const auto& row : r3.rows) {
    EXPECT_FALSE(row.bound_flat.has_value());
    EXPECT_NEAR(*row.exact_tv, brute[row.ell - 1], 1e-12);
    EXPECT_LE(*row.exact_tv, row.bound_general + 1e-9);
  }
}

TEST(Audit, MonotoneWithoutPeripheralWarning) {
  Rng rng(89);
  for (int trial = 0; trial < 40; ++trial) {
    const auto in = random_group_instance(rng, 128);
    AuditOptions opt;
    opt.ell_max = 8;
    const auto r = analyze(in, opt);
    if (r.rows.front().peripheral_warning || r.rows.front().bound_general == 0.0) continue;
    for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_LT(r.rows[i].bound_general, r.rows[i - 1].bound_general);
  }
}

TEST(Audit, AlarmCarriesReport) {
  const GroupSpec g({2});
  AuditOptions opt;
  opt.ell_max = 3;
  opt.inject_error = 1.0;
  const auto in = GroupInstance{Subgroup::trivial(g), Element::zero(g), Distribution::from_weights(GroupFunction(g, {0.9, 0.1}))};
  try {
    soundness_audit(in, opt);
    FAIL() << "no violation raised";
  } catch (const SoundnessViolation& v) {
    EXPECT_EQ(v.report().rows.size(), 3u);
    EXPECT_NE(std::string(v.what()).find("Z2"), std::string::npos);
  }
}
