// Spherical-Earth geometry: constants, ground positions, footprint sizing.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace leocov {

namespace constants {
inline constexpr double kEarthRadiusKm = 6378.0;          ///< spherical Earth radius [km]
inline constexpr double kMuKm3PerS2 = 398600.4418;        ///< Earth gravitational parameter [km^3/s^2]
inline constexpr double kEarthRotationRadPerS = 7.2921159e-5;
inline constexpr double kSpeedOfLightKmPerS = 299792.458;
inline constexpr double kEarthAreaKm2 = 510072000.0;
inline constexpr double kJ2 = 1.08263e-3;
} // namespace constants

inline constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle in degrees into [0, 360).
double wrap_360(double deg);

/// Wraps an angle in degrees into [-180, 180).
double wrap_180(double deg);

/// Earth-centered Earth-fixed position [km].
struct EcefVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    friend EcefVector operator-(const EcefVector& a, const EcefVector& b)
    {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend bool operator==(const EcefVector&, const EcefVector&) = default;
};

inline double dot(const EcefVector& a, const EcefVector& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Ground position on the spherical Earth. Longitude is normalized into
/// [-180, 180) on construction; latitude outside [-90, 90] or negative
/// altitude throws DomainError.
class GeoPoint {
public:
    GeoPoint(double lat_deg, double lon_deg, double alt_km = 0.0);

    double lat() const { return lat_; }
    double lon() const { return lon_; }
    double alt() const { return alt_; }

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

private:
    double lat_;
    double lon_;
    double alt_;
};

EcefVector geodetic_to_ecef(const GeoPoint& p);

/// Angles of the Earth-center / satellite / user triangle at the edge of
/// the visibility cell. alpha sits at the user, beta at the satellite and
/// gamma at the Earth center.
struct FootprintSolution {
    double alpha = 0.0; ///< [rad]
    double beta = 0.0;  ///< [rad]
    double gamma = 0.0; ///< [rad]
    double radius = 0.0; ///< great-circle radius on the ground [km]
};

FootprintSolution solve_footprint(double altitude_km, double elevation_deg);

/// Great-circle radius of the ground region that sees a satellite at
/// `altitude_km` above `elevation_deg`.
double footprint_radius(double altitude_km, double elevation_deg);

/// Distance between a ground user and a satellite seen at `elevation_deg`.
double slant_range(double altitude_km, double elevation_deg);

/// ceil(A_e / (pi r^2)); throws DomainError when the footprint is empty.
std::int64_t min_satellites_lower_bound(double altitude_km, double elevation_deg);

} // namespace leocov
