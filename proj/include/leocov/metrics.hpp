// Coverage probability, revisit-time statistics, latitude sweeps and
// coverage maps.
#pragma once

#include "leocov/constellation.hpp"
#include "leocov/propagation.hpp"
#include "leocov/visibility.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace leocov {

/// One interior outage: visibility lost at t_loss, regained at t_recover.
/// Times are offsets from the grid start [s].
struct RevisitEvent {
    double t_loss_s = 0.0;
    double t_recover_s = 0.0;
    double tau_s = 0.0;
};

struct CoverageStats {
    double p_cover = 0.0;
    double mean_visible = 0.0;
    std::vector<RevisitEvent> revisit;
    std::optional<double> tau_median_s;
    std::optional<double> tau_max_s;
};

double coverage_probability(const VisibilityTimeline& tl);
double mean_visible(const VisibilityTimeline& tl);

/// Maximal zero-visibility gaps strictly inside the window, ordered by
/// t_loss. Gaps touching the first or last sample are dropped because
/// their true length is unknown.
std::vector<RevisitEvent> revisit_times(const VisibilityTimeline& tl);

/// Lower median of the tau values: sorted[(n - 1) / 2].
std::optional<double> lower_median_tau(std::span<const RevisitEvent> events);
std::optional<double> max_tau(std::span<const RevisitEvent> events);

CoverageStats coverage_stats(const VisibilityTimeline& tl);

/// Averages p_cover and mean_visible and pools revisit events before the
/// median/max are taken.
CoverageStats aggregate_stats(std::span<const CoverageStats> parts);

enum class SweepParameter { Elevation, Inclination };

std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view text);

/// Longitudes {0, 45, ..., 315} used to aggregate per-latitude statistics.
std::vector<double> default_sweep_longitudes();

struct SweepRequest {
    WalkerShell shell;                ///< base shell; inclination replaced in an inclination sweep
    SweepParameter parameter = SweepParameter::Elevation;
    std::vector<double> values;       ///< elevation masks or inclinations [deg]
    double fixed_mask_deg = 40.0;     ///< mask used by an inclination sweep
    std::vector<double> latitudes;    ///< [deg]
    std::vector<double> longitudes = default_sweep_longitudes();
    TimeGrid grid;
    PropagationOptions propagation;
};

struct SweepRow {
    SweepParameter parameter = SweepParameter::Elevation;
    double value = 0.0;
    double lat_deg = 0.0;
    CoverageStats stats;                ///< aggregated over longitudes
    std::vector<double> p_cover_by_lon; ///< one entry per request longitude
};

/// Rows ordered parameter-major, latitude-minor.
std::vector<SweepRow> latitude_sweep(const SweepRequest& request);

struct MapRegion {
    double lat_min = 50.0;
    double lat_max = 90.0;
    double lon_min = -80.0;
    double lon_max = 40.0;
    double resolution_deg = 1.0;

    void validate() const;
    /// Cell-center axes.
    std::vector<double> lat_axis() const;
    std::vector<double> lon_axis() const;
};

struct CoverageGrid {
    std::vector<double> lat_axis;
    std::vector<double> lon_axis;
    double resolution_deg = 1.0;
    /// cells[i * lon_axis.size() + j] for (lat_axis[i], lon_axis[j])
    std::vector<CoverageStats> cells;

    const CoverageStats& at(std::size_t lat_index, std::size_t lon_index) const
    {
        return cells[lat_index * lon_axis.size() + lon_index];
    }
};

CoverageGrid coverage_map(const Ephemeris& eph, ElevationMask mask, const MapRegion& region);
CoverageGrid coverage_map(const WalkerShell& shell, ElevationMask mask, const MapRegion& region,
                          const TimeGrid& grid, const PropagationOptions& options = {});

} // namespace leocov
