#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hchain/experiments.hpp"

namespace hchain {

/// Oscillator index list from the CLI grammar: comma-separated entries, each a
/// 1-based index or an inclusive range "a-b". Returns 0-based indices.
std::vector<std::size_t> parse_group_spec(const std::string& spec);

/// ScenarioConfig from a JSON document; errors name the offending field.
ScenarioConfig parse_scenario_json(const std::string& text);

/// parse_scenario_json applied to a file.
ScenarioConfig load_scenario(const std::string& path);

/// Full command dispatch. Exit codes: 0 success, 1 validation error,
/// 2 numerical/runtime error. Errors print to err only; out stays clean.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hchain
