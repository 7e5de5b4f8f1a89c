#include "eqmix/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqmix/bounds.hpp"
#include "eqmix/codes.hpp"
#include "eqmix/io.hpp"
#include "eqmix/random_instances.hpp"

namespace eqmix {

namespace {

constexpr std::size_t kExactStateCap = 8192;

struct RunConfig {
  std::string group;
  std::string noise;
  std::string code;
  std::string graph;
  std::string partition;
  std::string subgroup;
  std::string coset;
  std::size_t start = 0;
  int ell_max = 10;
  double eps = 0.1;
  std::optional<bool> exact;
  std::string format = "csv";
  double tol = kEquitableTolerance;
  std::string normalization = "canonical";
  bool audit = false;
  std::uint64_t seed = 1;
  int instances = 200;
  std::size_t max_order = 512;
  std::size_t max_vertices = 64;
  bool force_full_subgroup = false;
  bool inject_error = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_input_options(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("--group", c.group, "group, e.g. Z6xZ4 or Z2^7");
  cmd.add_option("--noise", c.noise, "bernoulli:p=, weight:t=, uniform, delta:<coords>, file:<path>");
  cmd.add_option("--code", c.code, "generator matrix file");
  cmd.add_option("--graph", c.graph, "edge list of a regular graph");
  cmd.add_option("--partition", c.partition, "partition file (one block per line)");
  cmd.add_option("--subgroup", c.subgroup, "subgroup generators, e.g. \"1,0;0,2\"");
  cmd.add_option("--coset", c.coset, "coset representative coordinates");
  cmd.add_option("--start", c.start, "start vertex; its block is V_i");
  cmd.add_option("--lmax", c.ell_max, "largest ell")->check(CLI::Range(1, 100000));
  cmd.add_flag("--exact,!--no-exact", c.exact, "exact TV (default: on when states <= 8192)");
  cmd.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--normalization", c.normalization, "code bound constant")
      ->check(CLI::IsMember({"canonical", "literal", "both"}));
  cmd.add_option("--tol", c.tol, "equitability tolerance")->check(CLI::PositiveNumber);
  cmd.add_flag("--audit", c.audit, "fail with exit 3 if a bound is below exact TV");
}

AuditOptions options_for(const RunConfig& c, std::size_t states) {
  AuditOptions o;
  o.ell_max = c.ell_max;
  o.exact = c.exact.value_or(states <= kExactStateCap);
  o.literal = c.normalization != "canonical";
  return o;
}

AuditInstance code_instance(const RunConfig& c, std::ostream& err) {
  if (c.noise.empty()) throw InputError("--noise is required with --code");
  LinearCode code = read_generator_file(c.code);
  if (code.rank_deficient())
    err << "warning: generator rows are linearly dependent; using the rank-" << code.dimension() << " span\n";
  const GroupSpec g = code_group(code);
  Distribution noise = parse_noise_spec(c.noise, g);
  return CodeInstance{std::move(code), std::move(noise)};
}

AuditInstance group_instance(const RunConfig& c) {
  if (c.group.empty() || c.noise.empty()) throw InputError("--group and --noise are required");
  const GroupSpec g = GroupSpec::parse(c.group);
  const auto gens = parse_element_list(c.subgroup, g);
  Subgroup h = subgroup_generate(g, gens);
  Element rep = c.coset.empty() ? Element::zero(g) : parse_element(c.coset, g);
  return GroupInstance{std::move(h), std::move(rep), parse_noise_spec(c.noise, g)};
}

AuditInstance graph_instance(const RunConfig& c) {
  const Graph graph = read_edge_list(c.graph);
  TransitionMatrix walk = transition_from_graph(graph);
  const std::size_t n = walk.size();
  if (c.start >= n) throw InputError("--start is not a vertex");
  Partition p = Partition::singletons(n);
  if (!c.partition.empty()) {
    p = read_partition_file(c.partition, n);
  } else {
    std::vector<std::size_t> labels(n, 1);
    labels[c.start] = 0;
    p = coarsest_equitable_refinement(walk.matrix(), Partition::from_labels(labels));
  }
  const auto check = is_equitable(walk.matrix(), p, c.tol);
  if (!check.equitable)
    throw NotEquitable("partition is not equitable (spread " + format_number(check.max_spread) + ")");
  const std::size_t block = p.block_of(c.start);
  return GraphInstance{std::move(walk), std::move(p), block, c.graph};
}

AuditInstance instance_from(const RunConfig& c, std::ostream& err) {
  const int families = !c.code.empty() + !c.graph.empty() + !c.group.empty();
  if (families != 1) throw InputError("give exactly one of --group, --code, --graph");
  if (!c.code.empty()) return code_instance(c, err);
  if (!c.graph.empty()) return graph_instance(c);
  return group_instance(c);
}

std::size_t state_count(const AuditInstance& in) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, GroupInstance>) return x.subgroup.group().order();
        else if constexpr (std::is_same_v<T, CodeInstance>) return x.noise.group().order();
        else return x.walk.size();
      },
      in);
}

BoundReport run_analysis(const RunConfig& c, const AuditInstance& in) {
  const AuditOptions o = options_for(c, state_count(in));
  return c.audit ? soundness_audit(in, o) : analyze(in, o);
}

void emit(const RunConfig& c, const BoundReport& r, std::ostream& out) {
  if (c.format == "json") {
    out << to_json(r).dump(2) << '\n';
  } else {
    write_csv(out, r);
  }
}

int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const AuditInstance in = instance_from(c, err);
  emit(c, run_analysis(c, in), out);
  return kExitOk;
}

int cmd_mixing(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const AuditInstance in = instance_from(c, err);
  const BoundReport r = run_analysis(c, in);
  std::optional<int> bound_ell;
  std::optional<int> exact_ell;
  for (const auto& row : r.rows) {
    if (!bound_ell && row.bound_flat.value_or(row.bound_general) <= c.eps) bound_ell = row.ell;
    if (!exact_ell && row.exact_tv && *row.exact_tv <= c.eps) exact_ell = row.ell;
  }
  auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("not reached (lmax)"); };
  const bool have_exact = !r.rows.empty() && r.rows.front().exact_tv.has_value();
  if (c.format == "json") {
    nlohmann::json j{{"eps", c.eps}, {"lmax", c.ell_max}, {"bound_ell", bound_ell ? nlohmann::json(*bound_ell) : nullptr}};
    if (have_exact) j["exact_ell"] = exact_ell ? nlohmann::json(*exact_ell) : nullptr;
    out << j.dump(2) << '\n';
  } else {
    out << "bound-ell = " << show(bound_ell) << '\n';
    if (have_exact) out << "exact-ell = " << show(exact_ell) << '\n';
  }
  return kExitOk;
}

int cmd_audit(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.instances < 0) throw InputError("--instances must be nonnegative");
  Rng rng(c.seed);
  int passed = 0;
  for (int i = 0; i < c.instances; ++i) {
    const bool graph = !c.force_full_subgroup && i % 4 == 3;
    const AuditInstance in = graph ? AuditInstance(random_graph_instance(rng, c.max_vertices))
                                   : AuditInstance(random_group_instance(rng, c.max_order, c.force_full_subgroup));
    AuditOptions o;
    o.ell_max = c.ell_max;
    o.exact = true;
    o.inject_error = c.inject_error ? 1.0 : 0.0;
    try {
      soundness_audit(in, o);
      ++passed;
    } catch (const SoundnessViolation& v) {
      err << "instance " << i << " FAIL: " << v.what() << '\n';
    }
  }
  if (c.format == "json") {
    out << nlohmann::json{{"instances", c.instances}, {"passed", passed}, {"seed", c.seed}}.dump(2) << '\n';
  } else {
    out << passed << '/' << c.instances << " pass\n";
  }
  return passed == c.instances ? kExitOk : kExitSoundness;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixing bounds for random walks via equitable partitions"};
  app.require_subcommand(1);
  RunConfig c;

  auto* code = app.add_subcommand("code-analyze", "bounds for a linear code under noise");
  auto* group = app.add_subcommand("group-analyze", "bounds for u_{g+H} convolved with noise");
  auto* graph = app.add_subcommand("graph-analyze", "bounds for a simple random walk on a regular graph");
  auto* mixing = app.add_subcommand("mixing", "smallest ell reaching --eps");
  for (auto* cmd : {code, group, graph, mixing}) add_input_options(*cmd, c);
  mixing->add_option("--eps", c.eps, "target distance")->check(CLI::PositiveNumber);

  auto* audit = app.add_subcommand("audit", "soundness audit on seeded random instances");
  audit->add_option("--seed", c.seed, "64-bit seed (mt19937_64)");
  audit->add_option("--instances", c.instances, "number of instances");
  audit->add_option("--max-order", c.max_order, "largest group order")->check(CLI::Range(2, 65536));
  audit->add_option("--max-vertices", c.max_vertices, "largest graph")->check(CLI::Range(4, 512));
  audit->add_option("--lmax", c.ell_max, "largest ell")->check(CLI::Range(1, 100000));
  audit->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  audit->add_flag("--force-full-subgroup", c.force_full_subgroup, "every instance uses H = G");
  audit->add_flag("--inject-error", c.inject_error, "subtract 1 from every bound (alarm test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code_out = app.exit(e, out, err);
    return code_out == 0 ? kExitOk : kExitInputError;
  }
  if (audit->parsed() && audit->count("--lmax") == 0) c.ell_max = 16;

  try {
    if (audit->parsed()) return cmd_audit(c, out, err);
    if (mixing->parsed()) return cmd_mixing(c, out, err);
    if (code->parsed() && c.code.empty()) throw InputError("code-analyze needs --code");
    if (graph->parsed() && c.graph.empty()) throw InputError("graph-analyze needs --graph");
    if (group->parsed() && c.group.empty()) throw InputError("group-analyze needs --group");
    return cmd_analyze(c, out, err);
  } catch (const SoundnessViolation& v) {
    err << v.what() << '\n';
    return kExitSoundness;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace eqmix
