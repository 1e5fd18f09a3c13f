#include "leocov/geo_core.hpp"

#include "leocov/errors.hpp"

#include <algorithm>
#include <string>

namespace leocov {

namespace {

void check_link_geometry(double altitude_km, double elevation_deg)
{
    if (!(altitude_km > 0.0) || !std::isfinite(altitude_km)) {
        throw DomainError("altitude must be positive, got " + std::to_string(altitude_km));
    }
    if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0)) {
        throw DomainError("elevation must lie in [0, 90] deg, got " + std::to_string(elevation_deg));
    }
}

// cos/sin that return exact 0 and 1 at the zenith
double cos_elevation(double elevation_deg) { return elevation_deg == 90.0 ? 0.0 : std::cos(deg2rad(elevation_deg)); }
double sin_elevation(double elevation_deg) { return elevation_deg == 90.0 ? 1.0 : std::sin(deg2rad(elevation_deg)); }

} // namespace

double wrap_360(double deg)
{
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    return r >= 360.0 ? 0.0 : r;
}

double wrap_180(double deg)
{
    double r = wrap_360(deg + 180.0) - 180.0;
    return r;
}

GeoPoint::GeoPoint(double lat_deg, double lon_deg, double alt_km)
    : lat_(lat_deg), lon_(0.0), alt_(alt_km)
{
    if (!(lat_deg >= -90.0 && lat_deg <= 90.0)) {
        throw DomainError("latitude must lie in [-90, 90] deg, got " + std::to_string(lat_deg));
    }
    if (!(alt_km >= 0.0) || !std::isfinite(alt_km)) {
        throw DomainError("altitude must be non-negative, got " + std::to_string(alt_km));
    }
    if (!std::isfinite(lon_deg)) {
        throw DomainError("longitude must be finite");
    }
    lon_ = wrap_180(lon_deg);
}

EcefVector geodetic_to_ecef(const GeoPoint& p)
{
    const double r = constants::kEarthRadiusKm + p.alt();
    const double lat = deg2rad(p.lat());
    const double lon = deg2rad(p.lon());
    // exact axis values at the poles
    const double cos_lat = std::abs(p.lat()) == 90.0 ? 0.0 : std::cos(lat);
    const double sin_lat = std::abs(p.lat()) == 90.0 ? std::copysign(1.0, p.lat()) : std::sin(lat);
    return {r * cos_lat * std::cos(lon), r * cos_lat * std::sin(lon), r * sin_lat};
}

FootprintSolution solve_footprint(double altitude_km, double elevation_deg)
{
    check_link_geometry(altitude_km, elevation_deg);
    const double re = constants::kEarthRadiusKm;
    const double eps = deg2rad(elevation_deg);
    const double ratio = re * cos_elevation(elevation_deg) / (re + altitude_km);

    FootprintSolution s;
    s.alpha = std::numbers::pi / 2.0 + eps;
    s.beta = std::asin(ratio);
    // gamma = pi - alpha - beta = acos(ratio) - eps
    s.gamma = std::max(0.0, std::acos(ratio) - eps);
    if (elevation_deg == 90.0) s.gamma = 0.0;
    s.radius = s.gamma * re;
    return s;
}

double footprint_radius(double altitude_km, double elevation_deg)
{
    return solve_footprint(altitude_km, elevation_deg).radius;
}

double slant_range(double altitude_km, double elevation_deg)
{
    check_link_geometry(altitude_km, elevation_deg);
    const double re = constants::kEarthRadiusKm;
    const double rs = re + altitude_km;
    const double c = re * cos_elevation(elevation_deg);
    return std::sqrt(rs * rs - c * c) - re * sin_elevation(elevation_deg);
}

std::int64_t min_satellites_lower_bound(double altitude_km, double elevation_deg)
{
    const double r = footprint_radius(altitude_km, elevation_deg);
    if (!(r > 0.0)) {
        throw DomainError("footprint radius is zero at elevation " + std::to_string(elevation_deg) +
                          " deg; no finite constellation covers the Earth");
    }
    return static_cast<std::int64_t>(std::ceil(constants::kEarthAreaKm2 / (std::numbers::pi * r * r)));
}

} // namespace leocov
