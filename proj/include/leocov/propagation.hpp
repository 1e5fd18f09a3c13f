// Circular two-body propagation in a rotating-Earth frame.
#pragma once

#include "leocov/constellation.hpp"
#include "leocov/geo_core.hpp"
#include "leocov/time.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace leocov {

/// Uniform sampling of [start, start + duration] with step_s spacing.
struct TimeGrid {
    UtcTime start = parse_utc("2025-01-01T00:00:00Z");
    std::int64_t duration_s = 5 * 86400;
    std::int64_t step_s = 10;

    void validate() const;
    std::size_t sample_count() const { return static_cast<std::size_t>(duration_s / step_s) + 1; }
    double offset_s(std::size_t k) const { return static_cast<double>(static_cast<std::int64_t>(k) * step_s); }
};

struct PropagationOptions {
    bool j2_enabled = false;
    /// Greenwich sidereal angle at the grid start [deg].
    double gmst0_deg = 0.0;
};

/// Earth-fixed positions of every satellite on a shared time grid.
struct Ephemeris {
    TimeGrid grid;
    std::vector<SatelliteId> ids;
    std::vector<double> semi_major_axis_km;
    /// positions[sat][sample]
    std::vector<std::vector<EcefVector>> positions;

    std::size_t satellite_count() const { return ids.size(); }
    std::size_t sample_count() const { return grid.sample_count(); }
};

/// RAAN drift from the J2 secular term [rad/s].
double j2_raan_rate(double semi_major_axis_km, double mean_motion_rad_s, double inclination_deg);

/// Inertial position of one satellite `t_s` seconds after the grid start.
EcefVector inertial_position(const SatelliteElement& e, double t_s, bool j2_enabled);

/// Rotates an inertial vector into the Earth-fixed frame for sidereal angle theta [rad].
EcefVector inertial_to_earth_fixed(const EcefVector& r, double theta_rad);

Ephemeris propagate(std::span<const SatelliteElement> elements, const TimeGrid& grid,
                    const PropagationOptions& options = {});

/// CSV rows (sat_id, t_offset_s, x_km, y_km, z_km); sat_id is "P<plane>S<slot>".
void write_ephemeris_csv(std::ostream& os, const Ephemeris& eph);

} // namespace leocov
