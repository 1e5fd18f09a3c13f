// Scenario files, built-in presets and the experiment runner.
#pragma once

#include "leocov/constellation.hpp"
#include "leocov/metrics.hpp"
#include "leocov/propagation.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leocov {

/// Raw "[section]" / "key = value" content with source line numbers.
/// Later assignments of the same key replace earlier ones, except for keys
/// listed as repeatable (sites.site), which accumulate.
class ScenarioDocument {
public:
    struct Entry {
        std::vector<std::string> values;
        std::size_t line = 0; ///< 0 for values injected programmatically
    };

    /// Throws ConfigError("<origin>:<line>: ...") on malformed lines.
    static ScenarioDocument parse(std::string_view text, std::string origin = "scenario");

    void set(const std::string& section, const std::string& key, std::string value);
    void add(const std::string& section, const std::string& key, std::string value);
    bool has_section(const std::string& section) const;
    const Entry* find(const std::string& section, const std::string& key) const;

    const std::map<std::string, std::map<std::string, Entry>>& sections() const { return sections_; }
    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::map<std::string, Entry>> sections_;
    std::string origin_ = "scenario";
};

enum class ScenarioMode { SingleRun, Sweep, Map };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Elevation;
    std::vector<double> values;
    std::vector<double> latitudes;
    std::vector<double> longitudes = default_sweep_longitudes();
};

struct Scenario {
    std::string name = "scenario";
    WalkerShell shell;
    double mask_deg = 40.0;
    TimeGrid grid;
    PropagationOptions propagation;
    ScenarioMode mode = ScenarioMode::SingleRun;
    std::optional<SweepSpec> sweep;
    std::optional<MapRegion> region;
    std::vector<GeoPoint> sites;
    std::filesystem::path output_dir = "out";
    std::vector<std::string> products;
    std::string hash; ///< FNV-1a of the canonical document

    /// Builds and validates; ConfigError names the offending field and line.
    static Scenario from_document(const ScenarioDocument& doc);
    void validate() const;
};

/// Shell fields of a document ([shell] preset, notation and explicit keys),
/// validated. Defaults to the classic phasing convention.
WalkerShell build_shell(const ScenarioDocument& doc);

/// "a:b:step" inclusive range, e.g. "55:90:1".
std::vector<double> parse_range(std::string_view text);

/// "i:T/P/F" Walker notation; fills inclination, total, planes, phasing.
void apply_walker_notation(WalkerShell& shell, std::string_view text);

struct Preset {
    std::string name;
    std::string description;
    std::string text; ///< scenario document
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

struct RunResult {
    std::vector<std::filesystem::path> files;
};

/// Runs the scenario and writes its products plus manifest.json into
/// scenario.output_dir. Output bytes depend only on the scenario (the
/// manifest timestamp aside).
RunResult run_scenario(const Scenario& scenario);

/// Convenience: parse file, build, run.
RunResult run_scenario(const std::filesystem::path& path);

} // namespace leocov
