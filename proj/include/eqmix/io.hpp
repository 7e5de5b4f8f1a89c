#pragma once

// Text front-end formats: noise specs, element lists, distribution JSON, and
// CSV/JSON serialization of reports.

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eqmix/abelian.hpp"
#include "eqmix/bounds.hpp"
#include "eqmix/spectra.hpp"

namespace eqmix {

/// `bernoulli:p=<float>`, `weight:t=<int>`, `uniform`, `delta:<coords>` or `file:<path>`.
Distribution parse_noise_spec(std::string_view spec, const GroupSpec& g);

/// `{"moduli":[2,2],"probs":[...]}`; probabilities must sum to 1 within 1e-9.
Distribution parse_distribution_json(std::string_view text);
Distribution read_distribution_json(const std::filesystem::path& path);

/// Comma-separated coordinates, e.g. "1,0".
Element parse_element(std::string_view text, const GroupSpec& g);
/// Semicolon-separated coordinate tuples, e.g. "1,0;0,1". Empty text gives no elements.
std::vector<Element> parse_element_list(std::string_view text, const GroupSpec& g);

/// 12 significant digits.
std::string format_number(double v);

inline constexpr std::string_view kCsvHeader =
    "ell,exact_tv,bound_general,bound_flat,bound_literal,flatness,peripheral_warning";

void write_csv(std::ostream& os, const BoundReport& report);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const SpectrumReport& report);

}  // namespace eqmix
