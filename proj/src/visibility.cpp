#include "leocov/visibility.hpp"

#include "leocov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace leocov {

namespace {

// Half-width of the band around sin(mask) where the fast test defers to elevation_of.
constexpr double kBoundaryBand = 1e-12;

double sin_mask(double eps_deg) { return eps_deg == 90.0 ? 1.0 : std::sin(deg2rad(eps_deg)); }

} // namespace

ElevationMask::ElevationMask(double eps_deg) : eps_deg_(eps_deg)
{
    if (!(eps_deg >= 0.0 && eps_deg <= 90.0)) {
        throw DomainError("elevation mask must lie in [0, 90] deg, got " + std::to_string(eps_deg));
    }
}

double elevation_of(const EcefVector& sat, const EcefVector& site)
{
    const double site_norm = site.norm();
    if (!(site_norm > 0.0)) throw DomainError("site must not be at the Earth center");
    const EcefVector d = sat - site;
    const double range = d.norm();
    if (!(range > 0.0)) throw DomainError("satellite and site positions coincide");
    const double s = std::clamp(dot(d, site) / (site_norm * range), -1.0, 1.0);
    return rad2deg(std::asin(s));
}

std::vector<VisibilityTimeline> visibility_timelines(const Ephemeris& eph, const GeoPoint& site,
                                                     std::span<const double> masks_deg)
{
    const EcefVector site_ecef = geodetic_to_ecef(site);
    const double site_norm = site_ecef.norm();
    const EcefVector up{site_ecef.x / site_norm, site_ecef.y / site_norm, site_ecef.z / site_norm};
    const std::size_t n_samples = eph.sample_count();

    std::vector<VisibilityTimeline> out;
    std::vector<double> thresholds;
    out.reserve(masks_deg.size());
    for (double m : masks_deg) {
        out.push_back({site, ElevationMask(m), eph.grid, std::vector<std::int32_t>(n_samples, 0), std::nullopt});
        thresholds.push_back(sin_mask(m));
    }

    std::vector<double> sin_elev(n_samples);
    for (std::size_t s = 0; s < eph.satellite_count(); ++s) {
        const auto& track = eph.positions[s];
        for (std::size_t k = 0; k < n_samples; ++k) {
            const double dx = track[k].x - site_ecef.x;
            const double dy = track[k].y - site_ecef.y;
            const double dz = track[k].z - site_ecef.z;
            sin_elev[k] = (dx * up.x + dy * up.y + dz * up.z) / std::sqrt(dx * dx + dy * dy + dz * dz);
        }
        for (std::size_t m = 0; m < thresholds.size(); ++m) {
            const double thr = thresholds[m];
            auto& counts = out[m].n_visible;
            for (std::size_t k = 0; k < n_samples; ++k) {
                const double v = sin_elev[k];
                if (std::abs(v - thr) <= kBoundaryBand) {
                    counts[k] += elevation_of(track[k], site_ecef) >= masks_deg[m] ? 1 : 0;
                } else {
                    counts[k] += v > thr ? 1 : 0;
                }
            }
        }
    }
    return out;
}

VisibilityTimeline visibility_timeline(const Ephemeris& eph, const GeoPoint& site, ElevationMask mask,
                                       bool keep_indicators)
{
    if (!keep_indicators) {
        const double m = mask.deg();
        return std::move(visibility_timelines(eph, site, std::span<const double>(&m, 1)).front());
    }
    const EcefVector site_ecef = geodetic_to_ecef(site);
    const std::size_t n_samples = eph.sample_count();
    VisibilityTimeline tl{site, mask, eph.grid, std::vector<std::int32_t>(n_samples, 0), std::nullopt};
    std::vector<std::vector<std::uint8_t>> indicators(eph.satellite_count(), std::vector<std::uint8_t>(n_samples));
    for (std::size_t s = 0; s < eph.satellite_count(); ++s) {
        for (std::size_t k = 0; k < n_samples; ++k) {
            const bool visible = elevation_of(eph.positions[s][k], site_ecef) >= mask.deg();
            indicators[s][k] = visible ? 1 : 0;
            tl.n_visible[k] += visible ? 1 : 0;
        }
    }
    tl.indicators = std::move(indicators);
    return tl;
}

void write_timeline_csv(std::ostream& os, const VisibilityTimeline& tl)
{
    os << "t_offset_s,n_visible\n";
    for (std::size_t k = 0; k < tl.size(); ++k) {
        os << static_cast<long long>(tl.grid.offset_s(k)) << ',' << tl.n_visible[k] << '\n';
    }
}

} // namespace leocov
