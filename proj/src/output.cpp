#include "leocov/output.hpp"

#include "leocov/geo_core.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>

namespace leocov {

namespace {

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string opt_seconds(const std::optional<double>& v) { return v ? fmt("%.0f", *v) : std::string(); }

} // namespace

std::string fnv1a_hex(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

RunHeader make_header(const WalkerShell& shell, const TimeGrid& grid, const PropagationOptions& options,
                      std::string scenario_hash)
{
    RunHeader h;
    h.scenario_hash = std::move(scenario_hash);
    h.shell_notation = shell.notation();
    h.pattern = shell.pattern;
    h.phasing = shell.phasing_convention;
    h.altitude_km = shell.altitude_km;
    h.grid = grid;
    h.propagation = options;
    return h;
}

std::vector<std::pair<std::string, std::string>> RunHeader::entries() const
{
    return {
        {"tool", "leocov " + std::string(kToolVersion)},
        {"scenario_hash", scenario_hash},
        {"shell", std::string(to_string(pattern)) + " " + shell_notation},
        {"altitude_km", fmt("%g", altitude_km)},
        {"phasing_convention", std::string(to_string(phasing))},
        {"grid", format_utc(grid.start) + " duration_s=" + std::to_string(grid.duration_s) +
                     " step_s=" + std::to_string(grid.step_s)},
        {"propagation", std::string("two-body circular, j2=") + (propagation.j2_enabled ? "on" : "off") +
                            ", gmst0_deg=" + fmt("%g", propagation.gmst0_deg)},
        {"R_e_km", fmt("%.1f", constants::kEarthRadiusKm)},
        {"mu_km3_s2", fmt("%.4f", constants::kMuKm3PerS2)},
        {"omega_e_rad_s", fmt("%.7e", constants::kEarthRotationRadPerS)},
        {"c_km_s", fmt("%.3f", constants::kSpeedOfLightKmPerS)},
        {"A_e_km2", fmt("%.0f", constants::kEarthAreaKm2)},
        {"visibility_rule", "elevation >= mask (inclusive), spherical Earth, no refraction"},
        {"revisit_rule", "gaps touching the window edges excluded; median = lower median"},
    };
}

void write_csv_header(std::ostream& os, const RunHeader& header)
{
    for (const auto& [k, v] : header.entries()) os << "# " << k << ": " << v << '\n';
}

void write_sweep_csv(std::ostream& os, const RunHeader& header, const std::vector<SweepRow>& rows)
{
    write_csv_header(os, header);
    os << "param_name,param_value,lat_deg,p_cover,mean_visible,tau_median_s,tau_max_s,n_events\n";
    for (const auto& r : rows) {
        os << csv_field(to_string(r.parameter)) << ',' << fmt("%g", r.value) << ',' << fmt("%g", r.lat_deg) << ','
           << fmt("%.6f", r.stats.p_cover) << ',' << fmt("%.6f", r.stats.mean_visible) << ','
           << opt_seconds(r.stats.tau_median_s) << ',' << opt_seconds(r.stats.tau_max_s) << ','
           << r.stats.revisit.size() << '\n';
    }
}

void write_map_csv(std::ostream& os, const RunHeader& header, const CoverageGrid& grid)
{
    write_csv_header(os, header);
    os << "lat,lon,p_cover,tau_median_s,tau_max_s\n";
    for (std::size_t i = 0; i < grid.lat_axis.size(); ++i) {
        for (std::size_t j = 0; j < grid.lon_axis.size(); ++j) {
            const auto& c = grid.at(i, j);
            os << fmt("%g", grid.lat_axis[i]) << ',' << fmt("%g", grid.lon_axis[j]) << ','
               << fmt("%.6f", c.p_cover) << ',' << opt_seconds(c.tau_median_s) << ',' << opt_seconds(c.tau_max_s)
               << '\n';
        }
    }
}

void write_map_geojson(std::ostream& os, const RunHeader& header, const CoverageGrid& grid)
{
    using nlohmann::ordered_json;
    ordered_json fc;
    fc["type"] = "FeatureCollection";
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : header.entries()) meta[k] = v;
    fc["metadata"] = meta;
    ordered_json features = ordered_json::array();
    const double half = grid.resolution_deg / 2.0;
    for (std::size_t i = 0; i < grid.lat_axis.size(); ++i) {
        for (std::size_t j = 0; j < grid.lon_axis.size(); ++j) {
            const double lat = grid.lat_axis[i];
            const double lon = grid.lon_axis[j];
            const auto& c = grid.at(i, j);
            ordered_json ring = ordered_json::array({
                {lon - half, lat - half},
                {lon + half, lat - half},
                {lon + half, lat + half},
                {lon - half, lat + half},
                {lon - half, lat - half},
            });
            ordered_json f;
            f["type"] = "Feature";
            f["geometry"] = {{"type", "Polygon"}, {"coordinates", ordered_json::array({ring})}};
            ordered_json props;
            props["lat"] = lat;
            props["lon"] = lon;
            props["p_cover"] = c.p_cover;
            props["tau_median_s"] = c.tau_median_s ? ordered_json(*c.tau_median_s) : ordered_json(nullptr);
            props["tau_max_s"] = c.tau_max_s ? ordered_json(*c.tau_max_s) : ordered_json(nullptr);
            f["properties"] = props;
            features.push_back(std::move(f));
        }
    }
    fc["features"] = std::move(features);
    os << fc.dump(1) << '\n';
}

} // namespace leocov
