#pragma once

#include <string>

#include <json.hpp>

#include "geoclust/convexity.hpp"
#include "geoclust/error.hpp"
#include "geoclust/instances.hpp"

namespace geoclust {

inline constexpr int kFormatVersion = 1;

// Instance files: {format_version, n, edges: [[u, v, "p/q"], ...], labels,
// k, seeds, params: {beta, gamma, radii}, family, construction_record}.
// `radii` is either one string (shared radius) or one per cluster.
nlohmann::json instance_to_json(const Instance& inst);
// Throws InvalidInput describing the first problem found.
Instance instance_from_json(const nlohmann::json& j);

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

nlohmann::json verdict_to_json(const ConvexityVerdict& verdict);
nlohmann::json error_to_json(const Error& e);

// Two-space indented JSON with a trailing newline.
std::string dump(const nlohmann::json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace geoclust
