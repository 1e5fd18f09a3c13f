#include "leocov/link_budget.hpp"

#include "leocov/errors.hpp"
#include "leocov/geo_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace leocov {

double fspl_db(double frequency_hz, double distance_km)
{
    if (!(frequency_hz > 0.0) || !(distance_km > 0.0)) {
        throw DomainError("free-space loss needs positive frequency and distance");
    }
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_km * frequency_hz / constants::kSpeedOfLightKmPerS);
}

namespace {

void require_increasing(const std::vector<double>& axis, const char* what)
{
    if (axis.size() < 2) throw ConfigError(std::string(what) + " axis needs at least two nodes");
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1])) throw ConfigError(std::string(what) + " axis must be strictly increasing");
    }
}

// Interval index and fraction for q inside axis; exact 0/1 fractions at nodes.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double q)
{
    auto it = std::upper_bound(axis.begin(), axis.end(), q);
    std::size_t i = it == axis.begin() ? 0 : static_cast<std::size_t>(it - axis.begin()) - 1;
    if (i >= axis.size() - 1) return {axis.size() - 2, 1.0};
    return {i, (q - axis[i]) / (axis[i + 1] - axis[i])};
}

double lerp(double a, double b, double t) { return (1.0 - t) * a + t * b; }

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double to_double(const std::string& s, std::size_t line_no)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
}

// Non-comment, non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> data_lines(std::istream& is)
{
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
        ++no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        lines.emplace_back(no, t);
    }
    return lines;
}

std::ifstream open_or_throw(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path.string());
    return is;
}

} // namespace

AttenuationTable::AttenuationTable(std::vector<double> freq_axis_hz, std::vector<double> elev_axis_deg,
                                   std::vector<std::vector<double>> excess_db)
    : freq_(std::move(freq_axis_hz)), elev_(std::move(elev_axis_deg)), values_(std::move(excess_db))
{
    require_increasing(freq_, "frequency");
    require_increasing(elev_, "elevation");
    if (freq_.front() <= 0.0) throw ConfigError("frequencies must be positive");
    if (elev_.front() < 0.0 || elev_.back() > 90.0) throw ConfigError("elevations must lie in [0, 90] deg");
    if (values_.size() != freq_.size()) throw ConfigError("attenuation table needs one row per frequency");
    for (const auto& row : values_) {
        if (row.size() != elev_.size()) throw ConfigError("attenuation row length must match the elevation axis");
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!(row[j] >= 0.0)) throw ConfigError("attenuation entries must be non-negative");
            if (j > 0 && row[j] > row[j - 1]) {
                throw ConfigError("attenuation must be non-increasing with elevation");
            }
        }
    }
    for (double f : freq_) log_freq_.push_back(std::log10(f));
}

const AttenuationTable& AttenuationTable::builtin()
{
    // Same values as data/atmospheric_excess_default.csv.
    static const AttenuationTable table(
        {2e9, 10e9, 28e9, 50e9}, {10, 15, 20, 25, 30, 45, 60, 90},
        {
            {0.75, 0.44, 0.29, 0.2, 0.16, 0.1, 0.07, 0.05},
            {3, 1.88, 1.33, 1, 0.81, 0.51, 0.38, 0.3},
            {10, 7.21, 5.82, 5, 4.2, 2.91, 2.34, 2},
            {32, 21.95, 16.96, 14, 12.12, 9.12, 7.79, 7},
        });
    return table;
}

AttenuationTable AttenuationTable::parse_csv(std::istream& is)
{
    const auto lines = data_lines(is);
    if (lines.empty()) throw ConfigError("attenuation table is empty");
    const auto header = split_csv(lines.front().second);
    std::vector<double> elev;
    for (std::size_t j = 1; j < header.size(); ++j) elev.push_back(to_double(header[j], lines.front().first));
    std::vector<double> freq;
    std::vector<std::vector<double>> values;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_csv(lines[r].second);
        if (cells.size() != header.size()) {
            throw ConfigError("line " + std::to_string(lines[r].first) + ": expected " +
                              std::to_string(header.size()) + " columns");
        }
        freq.push_back(to_double(cells[0], lines[r].first));
        std::vector<double> row;
        for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(to_double(cells[j], lines[r].first));
        values.push_back(std::move(row));
    }
    return AttenuationTable(std::move(freq), std::move(elev), std::move(values));
}

AttenuationTable AttenuationTable::load_csv(const std::filesystem::path& path)
{
    auto is = open_or_throw(path);
    return parse_csv(is);
}

double AttenuationTable::excess_db(double frequency_hz, double elevation_deg) const
{
    if (!(frequency_hz >= freq_.front() && frequency_hz <= freq_.back())) {
        throw DomainError("frequency " + std::to_string(frequency_hz) + " Hz is outside the attenuation table");
    }
    if (!(elevation_deg >= elev_.front() && elevation_deg <= elev_.back())) {
        throw DomainError("elevation " + std::to_string(elevation_deg) + " deg is outside the attenuation table");
    }
    // exact node hits bypass log10 round-off
    const auto exact = std::find(freq_.begin(), freq_.end(), frequency_hz);
    std::size_t i;
    double tf;
    if (exact != freq_.end()) {
        i = static_cast<std::size_t>(exact - freq_.begin());
        tf = 0.0;
        if (i == freq_.size() - 1) {
            i -= 1;
            tf = 1.0;
        }
    } else {
        std::tie(i, tf) = locate(log_freq_, std::log10(frequency_hz));
    }
    const auto [j, te] = locate(elev_, elevation_deg);
    const double lo = lerp(values_[i][j], values_[i][j + 1], te);
    const double hi = lerp(values_[i + 1][j], values_[i + 1][j + 1], te);
    return lerp(lo, hi, tf);
}

void LinkBudgetInputs::validate() const
{
    if (!(frequency_hz > 1e8 && frequency_hz < 1e11)) throw DomainError("frequency must lie in (1e8, 1e11) Hz");
    if (!(altitude_km > 0.0)) throw DomainError("altitude must be positive");
    if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0)) throw DomainError("elevation must lie in [0, 90] deg");
}

LinkBudgetResult total_path_loss(const LinkBudgetInputs& in, const AttenuationTable& table)
{
    in.validate();
    LinkBudgetResult r;
    r.slant_range_km = slant_range(in.altitude_km, in.elevation_deg);
    r.fspl_db = fspl_db(in.frequency_hz, r.slant_range_km);
    r.atmos_excess_db = table.excess_db(in.frequency_hz, in.elevation_deg);
    r.total_db = r.fspl_db + r.atmos_excess_db;
    return r;
}

std::string_view to_string(LosEnvironment env)
{
    switch (env) {
    case LosEnvironment::DenseUrban: return "dense-urban";
    case LosEnvironment::Urban: return "urban";
    case LosEnvironment::SuburbanRural: return "suburban-rural";
    }
    return "?";
}

LosEnvironment parse_los_environment(std::string_view text)
{
    if (text == "dense-urban") return LosEnvironment::DenseUrban;
    if (text == "urban") return LosEnvironment::Urban;
    if (text == "suburban-rural" || text == "suburban" || text == "rural") return LosEnvironment::SuburbanRural;
    throw ConfigError("unknown LoS environment '" + std::string(text) +
                      "' (expected dense-urban|urban|suburban-rural)");
}

LosTables::LosTables(std::array<LosTable, 3> tables) : tables_(std::move(tables))
{
    for (std::size_t k = 0; k < tables_.size(); ++k) {
        const auto& t = tables_[k];
        if (static_cast<std::size_t>(t.environment) != k) throw ConfigError("LoS tables out of environment order");
        require_increasing(t.elev_axis_deg, "LoS elevation");
        if (t.p_los.size() != t.elev_axis_deg.size()) throw ConfigError("LoS table length mismatch");
        for (std::size_t j = 0; j < t.p_los.size(); ++j) {
            if (!(t.p_los[j] >= 0.0 && t.p_los[j] <= 1.0)) throw ConfigError("LoS probability outside [0, 1]");
            if (j > 0 && t.p_los[j] < t.p_los[j - 1]) {
                throw ConfigError("LoS probability must be non-decreasing with elevation (" +
                                  std::string(to_string(t.environment)) + ")");
            }
        }
    }
}

const LosTables& LosTables::builtin()
{
    // Same values as data/los_probability_default.csv.
    static const std::vector<double> axis{10, 20, 30, 40, 50, 60, 70, 80, 90};
    static const LosTables tables({
        LosTable{LosEnvironment::DenseUrban, axis, {0.28, 0.331, 0.398, 0.468, 0.532, 0.612, 0.738, 0.82, 0.98}},
        LosTable{LosEnvironment::Urban, axis, {0.24, 0.386, 0.5, 0.613, 0.726, 0.805, 0.9, 0.952, 0.992}},
        LosTable{LosEnvironment::SuburbanRural, axis, {0.782, 0.869, 0.919, 0.929, 0.935, 0.94, 0.949, 0.952, 0.998}},
    });
    return tables;
}

LosTables LosTables::parse_csv(std::istream& is)
{
    const auto lines = data_lines(is);
    if (lines.empty()) throw ConfigError("LoS table is empty");
    std::array<LosTable, 3> tables;
    for (std::size_t k = 0; k < tables.size(); ++k) tables[k].environment = static_cast<LosEnvironment>(k);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_csv(lines[r].second);
        if (cells.size() != 3) {
            throw ConfigError("line " + std::to_string(lines[r].first) + ": expected environment,elevation_deg,p_los");
        }
        auto& t = tables[static_cast<std::size_t>(parse_los_environment(cells[0]))];
        t.elev_axis_deg.push_back(to_double(cells[1], lines[r].first));
        t.p_los.push_back(to_double(cells[2], lines[r].first));
    }
    return LosTables(std::move(tables));
}

LosTables LosTables::load_csv(const std::filesystem::path& path)
{
    auto is = open_or_throw(path);
    return parse_csv(is);
}

double los_probability(LosEnvironment env, double elevation_deg, const LosTables& tables)
{
    const auto& t = tables.get(env);
    if (!(elevation_deg >= t.elev_axis_deg.front() && elevation_deg <= t.elev_axis_deg.back())) {
        throw DomainError("elevation " + std::to_string(elevation_deg) + " deg is outside the LoS table");
    }
    const auto [j, te] = locate(t.elev_axis_deg, elevation_deg);
    return lerp(t.p_los[j], t.p_los[j + 1], te);
}

} // namespace leocov
