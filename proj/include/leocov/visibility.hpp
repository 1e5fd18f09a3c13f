// Elevation geometry and per-site visibility timelines.
#pragma once

#include "leocov/geo_core.hpp"
#include "leocov/propagation.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace leocov {

/// Minimum elevation for a satellite to count as visible. Inclusive: a
/// satellite exactly at the mask elevation is visible.
class ElevationMask {
public:
    explicit ElevationMask(double eps_deg);
    double deg() const { return eps_deg_; }

private:
    double eps_deg_;
};

struct VisibilityTimeline {
    GeoPoint site;
    ElevationMask mask;
    TimeGrid grid;
    std::vector<std::int32_t> n_visible;
    /// indicators[sat][sample], present only when requested.
    std::optional<std::vector<std::vector<std::uint8_t>>> indicators;

    std::size_t size() const { return n_visible.size(); }
};

/// Elevation of `sat` above the local horizon of `site` (radial up-vector) [deg].
/// Throws DomainError for coincident points or a site at the Earth center.
double elevation_of(const EcefVector& sat, const EcefVector& site);

VisibilityTimeline visibility_timeline(const Ephemeris& eph, const GeoPoint& site, ElevationMask mask,
                                       bool keep_indicators = false);

/// One timeline per mask from a single pass over the ephemeris; result[m]
/// equals visibility_timeline(eph, site, masks[m]).
std::vector<VisibilityTimeline> visibility_timelines(const Ephemeris& eph, const GeoPoint& site,
                                                     std::span<const double> masks_deg);

/// CSV rows (t_offset_s, n_visible).
void write_timeline_csv(std::ostream& os, const VisibilityTimeline& tl);

} // namespace leocov
