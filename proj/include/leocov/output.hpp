// CSV / GeoJSON writers with a provenance header.
#pragma once

#include "leocov/constellation.hpp"
#include "leocov/metrics.hpp"
#include "leocov/propagation.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace leocov {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Metadata embedded at the top of every output file.
struct RunHeader {
    std::string scenario_hash;
    std::string shell_notation;
    WalkerPattern pattern = WalkerPattern::Delta;
    PhasingConvention phasing = PhasingConvention::ClassicPerSat;
    double altitude_km = 0.0;
    TimeGrid grid;
    PropagationOptions propagation;

    /// Ordered key/value pairs, constants included.
    std::vector<std::pair<std::string, std::string>> entries() const;
};

RunHeader make_header(const WalkerShell& shell, const TimeGrid& grid, const PropagationOptions& options,
                      std::string scenario_hash);

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

/// RFC-4180 quoting: wraps the field in quotes when it holds a comma,
/// quote or line break, doubling embedded quotes.
std::string csv_field(std::string_view s);

/// "# key: value" lines.
void write_csv_header(std::ostream& os, const RunHeader& header);

void write_sweep_csv(std::ostream& os, const RunHeader& header, const std::vector<SweepRow>& rows);
void write_map_csv(std::ostream& os, const RunHeader& header, const CoverageGrid& grid);
/// FeatureCollection of cell polygons (lon/lat order) plus a "metadata" member.
void write_map_geojson(std::ostream& os, const RunHeader& header, const CoverageGrid& grid);

} // namespace leocov
