// Test-only reference computations, independent of the library code paths.
#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

namespace oracle {

inline constexpr double kRe = 6378.0;

/// Elevation [deg] of a satellite at altitude h seen from a user at
/// central angle gamma, by plain planar geometry: user at (0, R), satellite
/// at (R+h)(sin g, cos g).
inline double elevation_at_central_angle(double h, double gamma)
{
    const double sx = (kRe + h) * std::sin(gamma);
    const double sy = (kRe + h) * std::cos(gamma);
    return std::atan2(sy - kRe, sx) * 180.0 / std::numbers::pi;
}

/// Central angle [rad] where the elevation drops to eps, by bisection.
inline double bisect_central_angle(double h, double eps_deg)
{
    double lo = 0.0, hi = std::numbers::pi / 2.0;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (elevation_at_central_angle(h, mid) > eps_deg) lo = mid;
        else hi = mid;
    }
    return lo;
}

inline double bisect_footprint_radius(double h, double eps_deg) { return bisect_central_angle(h, eps_deg) * kRe; }

inline double bisect_slant_range(double h, double eps_deg)
{
    const double g = bisect_central_angle(h, eps_deg);
    const double sx = (kRe + h) * std::sin(g);
    const double sy = (kRe + h) * std::cos(g);
    return std::hypot(sx, sy - kRe);
}

/// TLE checksum written from the format rule: digits add their value,
/// minus signs add one, the result is taken mod 10.
inline int tle_checksum(std::string_view line)
{
    int total = 0;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        const char c = line[i];
        if (std::isdigit(static_cast<unsigned char>(c))) total += c - '0';
        if (c == '-') total += 1;
    }
    return total % 10;
}

/// Column-layout check for the circular TLEs produced here. Returns an
/// empty string when the pair is valid, otherwise a description.
inline std::string validate_tle_layout(std::string_view l1, std::string_view l2)
{
    auto digits = [](std::string_view s) {
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };
    auto blank = [](std::string_view s, std::size_t col) { return s[col - 1] == ' '; };
    auto angle_field = [&](std::string_view s) {
        // "DDD.DDDD" right-aligned
        return s.size() == 8 && s[3] == '.' && digits(s.substr(4)) &&
               std::isdigit(static_cast<unsigned char>(s[2]));
    };
    if (l1.size() != 69) return "line 1 length";
    if (l2.size() != 69) return "line 2 length";
    if (l1[0] != '1' || l2[0] != '2') return "line numbers";
    if (!digits(l1.substr(2, 5)) || l1.substr(2, 5) != l2.substr(2, 5)) return "catalog number";
    for (std::size_t col : {2, 9, 18, 33, 44, 53, 62, 64}) {
        if (!blank(l1, col)) return "line 1 separator at column " + std::to_string(col);
    }
    for (std::size_t col : {2, 8, 17, 26, 34, 43, 52}) {
        if (!blank(l2, col)) return "line 2 separator at column " + std::to_string(col);
    }
    if (l1[19 - 1 + 5] != '.') return "epoch decimal point";
    if (!digits(l1.substr(18, 5)) || !digits(l1.substr(24, 8))) return "epoch digits";
    if (!angle_field(l2.substr(8, 8))) return "inclination field";
    if (!angle_field(l2.substr(17, 8))) return "RAAN field";
    if (!digits(l2.substr(26, 7))) return "eccentricity field";
    if (!angle_field(l2.substr(34, 8))) return "argument of perigee field";
    if (!angle_field(l2.substr(43, 8))) return "mean anomaly field";
    if (l2[54] != '.' || !digits(l2.substr(55, 8))) return "mean motion field";
    if (l1[68] - '0' != tle_checksum(l1)) return "line 1 checksum";
    if (l2[68] - '0' != tle_checksum(l2)) return "line 2 checksum";
    return {};
}

} // namespace oracle
