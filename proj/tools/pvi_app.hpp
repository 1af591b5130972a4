#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "pvi/errors.hpp"
#include "pvi/painleve6.hpp"

namespace pvi::app {

struct ConfigParseError : ParseError {
  using ParseError::ParseError;
};

inline constexpr int kSchemaVersion = 1;

// Canonical task order; tasks always run in this order.
inline const std::vector<std::string> kTaskOrder{"expand", "polygon", "fuchs", "rationality", "verify"};

struct RunConfig {
  FamilySpec family;
  PVIParams params;
  int K = 4;
  int J = 24;
  int max_deg = 12;
  std::vector<std::string> tasks;  // subset of kTaskOrder, canonical order, no repeats
};

// Scalars are exact strings ("1/2", "3-2i", "1/3*i") or JSON integers.
// Throws ConfigParseError on malformed input and ConstraintViolation when the
// family preconditions fail.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const RunConfig& cfg);

// Sorted, deduplicated, validated task list.
std::vector<std::string> canonical_tasks(const std::vector<std::string>& tasks);

struct RunResult {
  nlohmann::json report;  // {"schema", "payload", "metadata"}
  bool certified = false;
  std::vector<std::string> summary;  // one human-readable line per task
};

RunResult run(const RunConfig& cfg);

// Two-space indented dump followed by a newline.
std::string render(const nlohmann::json& report);

// Entry point of the pvi executable. 0: every certification passed;
// 1: a certification failed or a task raised; 2: usage or config error.
int main_entry(int argc, char** argv);

}  // namespace pvi::app
