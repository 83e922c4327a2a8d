#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mpw::cli {

using Value = std::variant<double, std::string, std::vector<double>>;

struct ScenarioResult {
  std::string name;
  std::map<std::string, std::string> inputs;
  /// Insertion-ordered outputs.
  std::vector<std::pair<std::string, Value>> outputs;
  std::optional<bool> pass;
  long long runtime_ms = 0;

  void put(std::string key, Value v) { outputs.emplace_back(std::move(key), std::move(v)); }
  const Value* find(const std::string& key) const;
  double scalar(const std::string& key) const;
};

struct FlagSpec {
  std::string key;
  std::string default_value;  ///< empty means required when `required` is set
  std::string help;
  bool required = false;
};

struct ScenarioSpec {
  std::string name;
  std::string summary;
  std::vector<FlagSpec> flags;
  bool randomized = false;  ///< needs --seed
};

const std::vector<ScenarioSpec>& registered_scenarios();
const ScenarioSpec* find_scenario(const std::string& name);

/// Runs a scenario. Missing flags take their defaults; unknown scenarios and
/// missing seeds raise usage errors, malformed or unknown flags parse errors.
ScenarioResult run_scenario(const std::string& name,
                            const std::map<std::string, std::string>& flags);

enum class Format { json, csv };

/// JSON object {name, inputs, outputs, pass, runtime_ms}.
std::string to_json(const ScenarioResult& r);

/// Header of array outputs in insertion order, then one row per index. Without
/// array outputs the scalars form a single row.
std::string to_csv(const ScenarioResult& r);

/// Writes to `path`, or to standard output when the path is empty or "-".
void emit(const ScenarioResult& r, Format format, const std::string& path);

}  // namespace mpw::cli
