#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fklab {

/// Flat key/value configuration. Grammar, one item per line:
///   # comment
///   [section]          keys below become "section.key"
///   key = value
/// Keys outside any section are top level. Later assignments override earlier ones.
class ExperimentConfig {
public:
    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig parse_string(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::int64_t> get_ints(const std::string& key, const std::vector<std::int64_t>& fallback) const;
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

    std::string scenario() const { return get("scenario", ""); }
    std::uint64_t seed() const { return get_u64("seed", 1); }
    std::string out_dir() const { return get("out", "out"); }

    /// Canonical "key=value" lines in key order, without keys that cannot change artifacts (out, jobs).
    std::string canonical() const;
    /// FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;

private:
    std::map<std::string, std::string> values_;
};

struct Artifact {
    std::string name;      // file name inside the output directory
    std::string content;
};

struct ScenarioResult {
    std::vector<Artifact> artifacts;
    std::vector<std::pair<std::string, bool>> checks;   // assertion mode only
    std::string summary;
    std::int64_t start_index = 0, end_index = 0;
    bool passed() const;
};

struct ScenarioInfo {
    std::string name;
    std::string description;
    bool assertion_mode = false;
    std::function<ScenarioResult(const ExperimentConfig&)> run;
};

/// Built-in scenarios in a fixed order.
const std::vector<ScenarioInfo>& scenario_registry();
const ScenarioInfo& find_scenario(const std::string& name);
std::vector<std::pair<std::string, std::string>> list_scenarios();

struct RunOutcome {
    int exit_code = 0;
    ScenarioResult result;
    std::string manifest;                 // manifest.json content
    std::vector<std::string> written;     // paths, in write order
};

inline constexpr const char* kToolVersion = "0.3.1";

/// Runs the configured scenario and writes its artifacts plus manifest.json to out_dir()
/// (each file through a temporary name and a rename). Exit code 0, or 1 when an assertion fails.
/// jobs > 0 sets the OpenMP team size; `write` = false skips the filesystem.
RunOutcome run_experiment(const ExperimentConfig& config, int jobs = 0, bool write = true);

/// FNV-1a 64 as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);
void write_atomic(const std::string& path, const std::string& content);

}  // namespace fklab
