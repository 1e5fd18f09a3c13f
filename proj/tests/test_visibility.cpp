#include "leocov/constellation.hpp"
#include "leocov/errors.hpp"
#include "leocov/propagation.hpp"
#include "leocov/visibility.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace leocov;
using doctest::Approx;

namespace {

Ephemeris walker_ephemeris(double inc, int t, int p, int f, double alt, std::int64_t duration_s, std::int64_t step_s)
{
    WalkerShell s;
    s.pattern = WalkerPattern::Delta;
    s.inclination_deg = inc;
    s.total_sats = t;
    s.planes = p;
    s.phasing = f;
    s.altitude_km = alt;
    s.phasing_convention = PhasingConvention::ClassicPerSat;
    TimeGrid g;
    g.duration_s = duration_s;
    g.step_s = step_s;
    return propagate(expand_shell(s), g);
}

} // namespace

TEST_CASE("elevation of zenith, antipode and a known central angle")
{
    const auto site = geodetic_to_ecef(GeoPoint(30, 40));
    CHECK(elevation_of(geodetic_to_ecef(GeoPoint(30, 40, 1000)), site) == Approx(90.0));
    CHECK(elevation_of(geodetic_to_ecef(GeoPoint(-30, -140, 1000)), site) == Approx(-90.0));

    // place the satellite at the central angle that the oracle says yields 40 deg
    const double gamma = oracle::bisect_central_angle(1000, 40);
    const auto sat = geodetic_to_ecef(GeoPoint(30 + rad2deg(gamma), 40, 1000));
    CHECK(std::abs(elevation_of(sat, site) - 40.0) < 1e-9);
    CHECK_THROWS_AS(elevation_of(site, site), DomainError);
}

TEST_CASE("elevation mask domain")
{
    CHECK_NOTHROW(ElevationMask(0));
    CHECK_NOTHROW(ElevationMask(90));
    CHECK_THROWS_AS(ElevationMask(-1), DomainError);
    CHECK_THROWS_AS(ElevationMask(90.5), DomainError);
}

TEST_CASE("a satellite exactly on the mask counts as visible")
{
    const double a = constants::kEarthRadiusKm + 1000;
    const double gamma = oracle::bisect_central_angle(1000, 30.0);
    Ephemeris eph;
    eph.grid.duration_s = 10;
    eph.grid.step_s = 10;
    eph.ids = {SatelliteId{0, 0}};
    eph.semi_major_axis_km = {a};
    eph.positions = {{EcefVector{a * std::cos(gamma), a * std::sin(gamma), 0},
                      EcefVector{a * std::cos(gamma + 0.01), a * std::sin(gamma + 0.01), 0}}};
    const GeoPoint site(0, 0);
    const double e0 = elevation_of(eph.positions[0][0], geodetic_to_ecef(site));
    CHECK(e0 == Approx(30.0));
    const auto fast = visibility_timeline(eph, site, ElevationMask(e0));
    const auto exact = visibility_timeline(eph, site, ElevationMask(e0), true);
    CHECK(fast.n_visible == std::vector<std::int32_t>{1, 0});
    CHECK(exact.n_visible == std::vector<std::int32_t>{1, 0});
}

TEST_CASE("an equatorial satellite is never visible from the pole")
{
    const auto eph = walker_ephemeris(0, 4, 1, 0, 1000, 86400, 60);
    const auto tl = visibility_timeline(eph, GeoPoint(90, 0), ElevationMask(0));
    CHECK(std::all_of(tl.n_visible.begin(), tl.n_visible.end(), [](int n) { return n == 0; }));
}

TEST_CASE("75:64/8/3 keeps 60N covered at a 20 deg mask")
{
    const auto eph = walker_ephemeris(75, 64, 8, 3, 1000, 5 * 86400, 10);
    const auto tl = visibility_timeline(eph, GeoPoint(60, 0), ElevationMask(20));
    CHECK(*std::min_element(tl.n_visible.begin(), tl.n_visible.end()) >= 1);
}

TEST_CASE("raising the mask never adds satellites; indicators match counts")
{
    const auto eph = walker_ephemeris(64, 64, 8, 3, 1000, 86400, 30);
    const GeoPoint site(57.0138, 9.9871);
    const std::vector<double> masks{0, 20, 40, 60};
    const auto bulk = visibility_timelines(eph, site, masks);
    REQUIRE(bulk.size() == 4);
    for (std::size_t m = 0; m < masks.size(); ++m) {
        const auto exact = visibility_timeline(eph, site, ElevationMask(masks[m]), true);
        CHECK(exact.n_visible == bulk[m].n_visible);
        CHECK(visibility_timeline(eph, site, ElevationMask(masks[m])).n_visible == bulk[m].n_visible);
        for (std::size_t k = 0; k < exact.size(); ++k) {
            int sum = 0;
            for (const auto& row : *exact.indicators) sum += row[k];
            CHECK(sum == exact.n_visible[k]);
        }
        if (m > 0) {
            for (std::size_t k = 0; k < exact.size(); ++k) CHECK(bulk[m].n_visible[k] <= bulk[m - 1].n_visible[k]);
        }
    }
}

TEST_CASE("timeline matches a brute-force elevation count")
{
    const auto eph = walker_ephemeris(53, 24, 4, 1, 550, 7200, 60);
    const GeoPoint site(40, -20);
    const auto s = geodetic_to_ecef(site);
    const auto tl = visibility_timeline(eph, site, ElevationMask(25));
    for (std::size_t k = 0; k < tl.size(); ++k) {
        int n = 0;
        for (const auto& track : eph.positions) {
            const auto d = track[k] - s;
            const double sin_el = dot(d, s) / (d.norm() * s.norm());
            if (rad2deg(std::asin(sin_el)) >= 25.0) ++n;
        }
        CHECK(n == tl.n_visible[k]);
    }
}
