// Free-space path loss, tabulated atmospheric excess and LoS probability.
#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace leocov {

/// Friis free-space loss with path-loss exponent two [dB]. Throws
/// DomainError unless both inputs are positive.
double fspl_db(double frequency_hz, double distance_km);

/// Excess attenuation over free space, indexed by frequency and elevation.
/// Queries interpolate bilinearly in (log10 f, elevation) and reproduce the
/// nodes exactly; anything outside the axes is rejected.
class AttenuationTable {
public:
    AttenuationTable(std::vector<double> freq_axis_hz, std::vector<double> elev_axis_deg,
                     std::vector<std::vector<double>> excess_db);

    /// Table shipped with the library (2/10/28/50 GHz, 10..90 deg).
    static const AttenuationTable& builtin();

    /// CSV: header row "<label>,<elev>,...", then "<freq_hz>,<dB>,..." rows.
    /// Lines starting with '#' are comments.
    static AttenuationTable parse_csv(std::istream& is);
    static AttenuationTable load_csv(const std::filesystem::path& path);

    double excess_db(double frequency_hz, double elevation_deg) const;

    const std::vector<double>& freq_axis_hz() const { return freq_; }
    const std::vector<double>& elev_axis_deg() const { return elev_; }
    const std::vector<std::vector<double>>& values_db() const { return values_; }

private:
    std::vector<double> freq_;
    std::vector<double> log_freq_;
    std::vector<double> elev_;
    std::vector<std::vector<double>> values_;
};

inline double atmospheric_excess(double frequency_hz, double elevation_deg,
                                 const AttenuationTable& table = AttenuationTable::builtin())
{
    return table.excess_db(frequency_hz, elevation_deg);
}

struct LinkBudgetInputs {
    double frequency_hz = 2e9;
    double altitude_km = 800.0;
    double elevation_deg = 90.0;

    void validate() const;
};

struct LinkBudgetResult {
    double slant_range_km = 0.0;
    double fspl_db = 0.0;
    double atmos_excess_db = 0.0;
    double total_db = 0.0;
};

LinkBudgetResult total_path_loss(const LinkBudgetInputs& in,
                                 const AttenuationTable& table = AttenuationTable::builtin());

enum class LosEnvironment { DenseUrban, Urban, SuburbanRural };

std::string_view to_string(LosEnvironment env);
LosEnvironment parse_los_environment(std::string_view text);

/// LoS probability nodes for one environment at 10-degree elevation steps.
struct LosTable {
    LosEnvironment environment = LosEnvironment::DenseUrban;
    std::vector<double> elev_axis_deg;
    std::vector<double> p_los;
};

/// The three environments; validates monotonicity and range on construction.
class LosTables {
public:
    explicit LosTables(std::array<LosTable, 3> tables);

    static const LosTables& builtin();
    /// CSV rows (environment, elevation_deg, p_los); '#' lines are comments.
    static LosTables parse_csv(std::istream& is);
    static LosTables load_csv(const std::filesystem::path& path);

    const LosTable& get(LosEnvironment env) const { return tables_[static_cast<std::size_t>(env)]; }

private:
    std::array<LosTable, 3> tables_;
};

/// Linear interpolation between nodes; elevation must lie in [10, 90].
double los_probability(LosEnvironment env, double elevation_deg, const LosTables& tables = LosTables::builtin());

} // namespace leocov
