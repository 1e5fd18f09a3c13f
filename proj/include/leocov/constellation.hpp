// Walker shell definition, per-satellite element expansion and TLE export.
#pragma once

#include "leocov/time.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace leocov {

enum class WalkerPattern { Delta, Star };

/// How the phasing factor F offsets the argument of latitude between
/// adjacent planes.
enum class PhasingConvention {
    PaperPerPlane, ///< F * span / P per plane (span = 360 deg Delta, 180 deg Star)
    ClassicPerSat, ///< F * 360 / T per plane
};

std::string_view to_string(WalkerPattern p);
std::string_view to_string(PhasingConvention c);
WalkerPattern parse_pattern(std::string_view text);
PhasingConvention parse_phasing_convention(std::string_view text);

/// RAAN span over which the planes are spread [deg].
double raan_span_deg(WalkerPattern p);

/// Single-shell Walker constellation i:T/P/F at altitude h.
struct WalkerShell {
    WalkerPattern pattern = WalkerPattern::Delta;
    double inclination_deg = 0.0;
    int total_sats = 1;
    int planes = 1;
    int phasing = 0;
    double altitude_km = 1000.0;
    UtcTime epoch = parse_utc("2025-01-01T00:00:00Z");
    double raan0_deg = 0.0;
    PhasingConvention phasing_convention = PhasingConvention::PaperPerPlane;

    int sats_per_plane() const { return total_sats / planes; }

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;

    /// "75:64/8/3" style label.
    std::string notation() const;
};

struct SatelliteId {
    int plane = 0;
    int slot = 0;
    friend auto operator<=>(const SatelliteId&, const SatelliteId&) = default;
};

struct SatelliteElement {
    SatelliteId id;
    double raan_deg = 0.0;
    double initial_arg_latitude_deg = 0.0;
    double inclination_deg = 0.0;
    double semi_major_axis_km = 0.0;
    double mean_motion_rad_s = 0.0;
};

/// Expands the shell plane-major, slot-minor into exactly T elements.
std::vector<SatelliteElement> expand_shell(const WalkerShell& shell);

inline constexpr int kFirstCatalogNumber = 90000;

struct TleRecord {
    std::string name;
    std::string line1;
    std::string line2;
};

/// One circular-orbit TLE per satellite, catalog numbers from 90000.
/// Throws ExportError when the epoch year is outside 1957..2056 or the
/// catalog range overflows five digits.
std::vector<TleRecord> tle_export(const WalkerShell& shell);

void write_tle(std::ostream& os, const std::vector<TleRecord>& records, bool with_names = true);

/// Mod-10 TLE checksum over the first 68 columns: digits count at face
/// value, '-' counts as 1, everything else 0.
int tle_checksum(std::string_view line);

/// Fixed-column fields read back from a circular TLE produced by tle_export.
struct TleFields {
    int catalog_number = 0;
    int epoch_year = 0;
    double epoch_day = 0.0;
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double eccentricity = 0.0;
    double arg_perigee_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    double mean_motion_rev_day = 0.0;
};

/// Throws ConfigError on length or checksum mismatch.
TleFields parse_tle(std::string_view line1, std::string_view line2);

} // namespace leocov
