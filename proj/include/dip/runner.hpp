#pragma once

#include <json.hpp>

#include <string>

#include "dip/config.hpp"

namespace dip {

// Command implementations shared by the CLI and in-process callers (tests).
// Each returns the structured result; emit() writes it where the config asks.

nlohmann::json run_graph_stats(const RunConfig& cfg);
nlohmann::json run_solve(const RunConfig& cfg);
nlohmann::json run_base_tap(const RunConfig& cfg);
nlohmann::json run_mtap(const RunConfig& cfg);
nlohmann::json run_simulate(const RunConfig& cfg);
std::string run_sweep_csv(const RunConfig& cfg);

std::string render_json(const nlohmann::json& j);

// Writes to cfg-style output path, or stdout when the path is empty.
void emit_text(const std::string& text, const std::string& out_path);

}  // namespace dip
