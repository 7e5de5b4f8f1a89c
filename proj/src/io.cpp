#include "eqmix/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eqmix {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, const char* what) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v))
    throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  return v;
}

long long parse_int(std::string_view text, const char* what) {
  const std::string s = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  return v;
}

void require_binary(const GroupSpec& g, std::string_view spec) {
  for (int m : g.moduli())
    if (m != 2) throw std::invalid_argument("noise '" + std::string(spec) + "' requires every modulus to be 2");
}

int hamming_weight(const GroupSpec& g, std::size_t x) {
  int w = 0;
  for (std::size_t j = 0; j < g.rank(); ++j) w += g.coord(x, j) != 0 ? 1 : 0;
  return w;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

Distribution parse_noise_spec(std::string_view spec, const GroupSpec& g) {
  const std::size_t n = g.order();
  if (spec == "uniform") return Distribution::uniform(g);
  if (spec.starts_with("bernoulli:p=")) {
    require_binary(g, spec);
    const double p = parse_double(spec.substr(12), "bernoulli probability");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bernoulli probability must lie in [0, 1]");
    const int len = static_cast<int>(g.rank());
    auto f = GroupFunction::zeros(g);
    for (std::size_t x = 0; x < n; ++x) {
      const int w = hamming_weight(g, x);
      f.values[x] = std::pow(p, w) * std::pow(1.0 - p, len - w);
    }
    return Distribution::normalized(std::move(f), 1e-9);
  }
  if (spec.starts_with("weight:t=")) {
    require_binary(g, spec);
    const long long t = parse_int(spec.substr(9), "weight");
    if (t < 0 || t > static_cast<long long>(g.rank())) throw std::invalid_argument("weight t outside [0, n]");
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < n; ++x)
      if (hamming_weight(g, x) == t) members.push_back(x);
    return Distribution::uniform_on(g, members);
  }
  if (spec.starts_with("delta:")) {
    try {
      return Distribution::delta(parse_element(spec.substr(6), g));
    } catch (const std::out_of_range& e) {
      throw std::invalid_argument(std::string("delta: ") + e.what());
    }
  }
  if (spec.starts_with("file:")) {
    Distribution d = read_distribution_json(std::string(spec.substr(5)));
    if (!(d.group() == g))
      throw std::invalid_argument("distribution file is on " + d.group().to_string() + ", expected " + g.to_string());
    return d;
  }
  throw std::invalid_argument("unrecognized noise spec '" + std::string(spec) + "'");
}

Distribution parse_distribution_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("distribution JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("moduli") || !j.contains("probs"))
    throw std::invalid_argument("distribution JSON needs `moduli` and `probs`");
  try {
    const GroupSpec g(j.at("moduli").get<std::vector<int>>());
    auto probs = j.at("probs").get<std::vector<double>>();
    for (double p : probs)
      if (p < 0.0) throw std::invalid_argument("distribution JSON: negative probability");
    return Distribution::normalized(GroupFunction(g, std::move(probs)), 1e-9);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("distribution JSON: ") + e.what());
  }
}

Distribution read_distribution_json(const std::filesystem::path& path) { return parse_distribution_json(slurp(path)); }

Element parse_element(std::string_view text, const GroupSpec& g) {
  std::vector<int> coords;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    coords.push_back(static_cast<int>(parse_int(text.substr(pos, comma - pos), "coordinate")));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Element(g, coords);
}

std::vector<Element> parse_element_list(std::string_view text, const GroupSpec& g) {
  std::vector<Element> out;
  if (trim(text).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto semi = text.find(';', pos);
    const auto item = text.substr(pos, semi - pos);
    if (!trim(item).empty()) out.push_back(parse_element(item, g));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const BoundReport& report) {
  os << kCsvHeader << '\n';
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& row : report.rows) {
    os << row.ell << ',' << opt(row.exact_tv) << ',' << format_number(row.bound_general) << ',' << opt(row.bound_flat)
       << ',' << opt(row.bound_literal) << ',' << (row.flatness ? "true" : "false") << ','
       << (row.peripheral_warning ? "true" : "false") << '\n';
  }
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"ell", row.ell},
                    {"exact_tv", optional_number(row.exact_tv)},
                    {"bound_general", row.bound_general},
                    {"bound_flat", optional_number(row.bound_flat)},
                    {"bound_literal", optional_number(row.bound_literal)},
                    {"flatness", row.flatness},
                    {"peripheral_warning", row.peripheral_warning},
                    {"vacuous", row.vacuous}});
  }
  return {{"states", report.states},
          {"start_block_size", report.start_block_size},
          {"provenance", to_string(report.provenance)},
          {"flatness", report.flatness},
          {"intertwining_residual", optional_number(report.intertwining_residual)},
          {"rows", std::move(rows)}};
}

nlohmann::json to_json(const SpectrumReport& report) {
  nlohmann::json eig = nlohmann::json::array();
  for (const auto& l : report.eigenvalues) eig.push_back({l.real(), l.imag()});
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& chi : report.labels) labels.push_back(chi.coords());
  return {{"eigenvalues", std::move(eig)},
          {"labels", std::move(labels)},
          {"provenance", to_string(report.provenance)},
          {"unit_eigenvalue_count", report.unit_eigenvalue_count},
          {"peripheral_count", report.peripheral_count}};
}

}  // namespace eqmix
