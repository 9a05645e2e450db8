#include "fklab/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fklab/error.hpp"
#include "fklab/kernels.hpp"
#include "fklab/literals.hpp"

namespace fklab {

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    ExperimentConfig c;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        c.set(section.empty() ? key : section + "." + key, trim(t.substr(eq + 1)));
    }
    return c;
}

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open config " + path);
    return parse(in);
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::int64_t ExperimentConfig::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return parse_int(it->second);
    } catch (const Error&) {
        throw Error(ErrorCode::ParseError, "config key '" + key + "' is not an integer: " + it->second);
    }
}

std::uint64_t ExperimentConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const auto v = std::stoull(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "config key '" + key + "' is not an unsigned integer: " + it->second);
    }
}

bool ExperimentConfig::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw Error(ErrorCode::ParseError, "config key '" + key + "' is not a boolean: " + it->second);
}

std::vector<std::int64_t> ExperimentConfig::get_ints(const std::string& key, const std::vector<std::int64_t>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::int64_t> out;
    for (const auto& piece : split(it->second, ',')) {
        try {
            out.push_back(parse_int(trim(piece)));
        } catch (const Error&) {
            throw Error(ErrorCode::ParseError, "config key '" + key + "' needs a comma-separated integer list");
        }
    }
    return out;
}

std::string ExperimentConfig::canonical() const {
    std::string s;
    for (const auto& [k, v] : values_) {
        if (k == "out" || k == "jobs") continue;
        s += k + "=" + v + "\n";
    }
    return s;
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(canonical()); }

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp);
        out << content;
        if (!out.flush()) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

bool ScenarioResult::passed() const {
    for (const auto& [name, ok] : checks)
        if (!ok) return false;
    return true;
}

const ScenarioInfo& find_scenario(const std::string& name) {
    for (const auto& s : scenario_registry())
        if (s.name == name) return s;
    throw Error(ErrorCode::ParseError, "unknown scenario '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> list_scenarios() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : scenario_registry()) out.emplace_back(s.name, s.description);
    return out;
}

RunOutcome run_experiment(const ExperimentConfig& config, int jobs, bool write) {
    const ScenarioInfo& info = find_scenario(config.scenario());
    const int saved = kernels::threads();
    if (jobs > 0) kernels::set_threads(jobs);
    RunOutcome out;
    try {
        out.result = info.run(config);
    } catch (...) {
        kernels::set_threads(saved);
        throw;
    }
    kernels::set_threads(saved);

    const bool ok = !info.assertion_mode || out.result.passed();
    out.exit_code = ok ? 0 : 1;

    nlohmann::ordered_json m;
    m["tool"] = "fklab";
    m["tool_version"] = kToolVersion;
    m["scenario"] = info.name;
    m["mode"] = info.assertion_mode ? "assertion" : "report";
    m["config_hash"] = config.hash();
    m["seed"] = config.seed();
    m["start_index"] = out.result.start_index;
    m["end_index"] = out.result.end_index;
    m["files"] = nlohmann::ordered_json::array();
    for (const auto& a : out.result.artifacts)
        m["files"].push_back({{"name", a.name}, {"bytes", a.content.size()}, {"fnv1a64", fnv1a_hex(a.content)}});
    m["checks"] = nlohmann::ordered_json::array();
    for (const auto& [name, pass] : out.result.checks) m["checks"].push_back({{"name", name}, {"passed", pass}});
    m["passed"] = ok;
    out.manifest = m.dump(2) + "\n";

    if (write) {
        const std::filesystem::path dir(config.out_dir());
        std::filesystem::create_directories(dir);
        for (const auto& a : out.result.artifacts) {
            const auto path = (dir / a.name).string();
            write_atomic(path, a.content);
            out.written.push_back(path);
        }
        const auto mpath = (dir / "manifest.json").string();
        write_atomic(mpath, out.manifest);
        out.written.push_back(mpath);
    }
    return out;
}

}  // namespace fklab
