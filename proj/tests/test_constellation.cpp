#include "leocov/constellation.hpp"
#include "leocov/errors.hpp"
#include "leocov/geo_core.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace leocov;
using doctest::Approx;

namespace {

WalkerShell make_shell(WalkerPattern pattern, double inc, int t, int p, int f,
                       PhasingConvention conv = PhasingConvention::PaperPerPlane)
{
    WalkerShell s;
    s.pattern = pattern;
    s.inclination_deg = inc;
    s.total_sats = t;
    s.planes = p;
    s.phasing = f;
    s.altitude_km = 1000;
    s.phasing_convention = conv;
    return s;
}

} // namespace

TEST_CASE("Delta 75:64/8/3 spreads 8 planes over 360 deg")
{
    const auto els = expand_shell(make_shell(WalkerPattern::Delta, 75, 64, 8, 3));
    REQUIRE(els.size() == 64);
    std::map<int, std::vector<SatelliteElement>> planes;
    for (const auto& e : els) planes[e.id.plane].push_back(e);
    REQUIRE(planes.size() == 8);
    for (auto& [p, sats] : planes) {
        CHECK(sats.size() == 8);
        CHECK(sats.front().raan_deg == 45.0 * p);
        for (std::size_t k = 1; k < sats.size(); ++k) {
            const double gap = wrap_360(sats[k].initial_arg_latitude_deg - sats[k - 1].initial_arg_latitude_deg);
            CHECK(gap == Approx(45.0));
        }
    }
    // plane-major, slot-minor
    for (std::size_t k = 0; k < els.size(); ++k) {
        CHECK(els[k].id.plane == static_cast<int>(k / 8));
        CHECK(els[k].id.slot == static_cast<int>(k % 8));
    }
}

TEST_CASE("Star 90:64/8/0 spreads planes over 180 deg")
{
    const auto els = expand_shell(make_shell(WalkerPattern::Star, 90, 64, 8, 0));
    std::set<double> raans;
    for (const auto& e : els) raans.insert(e.raan_deg);
    CHECK(raans == std::set<double>{0, 22.5, 45, 67.5, 90, 112.5, 135, 157.5});
}

TEST_CASE("configuration errors")
{
    CHECK_THROWS_AS(expand_shell(make_shell(WalkerPattern::Delta, 60, 10, 4, 0)), ConfigError);
    CHECK_THROWS_AS(expand_shell(make_shell(WalkerPattern::Delta, 60, 64, 8, 8)), ConfigError);
    CHECK_THROWS_AS(expand_shell(make_shell(WalkerPattern::Delta, 60, 64, 8, -1)), ConfigError);
    CHECK_THROWS_AS(expand_shell(make_shell(WalkerPattern::Delta, 180, 64, 8, 1)), ConfigError);
    auto high = make_shell(WalkerPattern::Delta, 60, 64, 8, 1);
    high.altitude_km = 2500;
    CHECK_THROWS_AS(expand_shell(high), ConfigError);
    try {
        expand_shell(make_shell(WalkerPattern::Delta, 60, 10, 4, 0));
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("divide") != std::string::npos);
    }
}

TEST_CASE("phasing conventions")
{
    SUBCASE("per-plane convention shifts F*360/P per Delta plane")
    {
        const auto els = expand_shell(make_shell(WalkerPattern::Delta, 60, 24, 4, 1));
        CHECK(els[6].initial_arg_latitude_deg == Approx(90.0)); // plane 1 slot 0
        CHECK(els[12].initial_arg_latitude_deg == Approx(180.0));
    }
    SUBCASE("per-plane convention shifts F*180/P per Star plane")
    {
        const auto els = expand_shell(make_shell(WalkerPattern::Star, 86, 24, 4, 1));
        CHECK(els[6].initial_arg_latitude_deg == Approx(45.0));
    }
    SUBCASE("classic convention shifts F*360/T per plane")
    {
        const auto els = expand_shell(make_shell(WalkerPattern::Delta, 75, 64, 8, 3, PhasingConvention::ClassicPerSat));
        CHECK(els[8].initial_arg_latitude_deg == Approx(16.875));
        CHECK(els[16].initial_arg_latitude_deg == Approx(33.75));
    }
    SUBCASE("classic F=0 gives every plane the same slot set")
    {
        const auto els = expand_shell(make_shell(WalkerPattern::Delta, 53, 60, 6, 0, PhasingConvention::ClassicPerSat));
        for (std::size_t k = 0; k < els.size(); ++k) {
            CHECK(els[k].initial_arg_latitude_deg == els[k % 10].initial_arg_latitude_deg);
        }
    }
}

TEST_CASE("element invariants over random shells")
{
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const int planes = std::uniform_int_distribution<int>(1, 12)(rng);
        const int per_plane = std::uniform_int_distribution<int>(1, 12)(rng);
        WalkerShell s = make_shell(trial % 2 ? WalkerPattern::Star : WalkerPattern::Delta,
                                   std::uniform_real_distribution<double>(0, 179.9)(rng), planes * per_plane, planes,
                                   std::uniform_int_distribution<int>(0, planes - 1)(rng),
                                   trial % 3 ? PhasingConvention::ClassicPerSat : PhasingConvention::PaperPerPlane);
        s.altitude_km = std::uniform_real_distribution<double>(300, 2000)(rng);
        s.raan0_deg = std::uniform_real_distribution<double>(-400, 400)(rng);
        const auto els = expand_shell(s);
        REQUIRE(els.size() == static_cast<std::size_t>(s.total_sats));
        std::map<int, int> per;
        const double a = constants::kEarthRadiusKm + s.altitude_km;
        for (const auto& e : els) {
            ++per[e.id.plane];
            CHECK(e.semi_major_axis_km == a);
            CHECK(e.mean_motion_rad_s == Approx(std::sqrt(constants::kMuKm3PerS2 / (a * a * a))).epsilon(1e-12));
            CHECK(e.raan_deg == wrap_360(s.raan0_deg + e.id.plane * raan_span_deg(s.pattern) / planes));
            CHECK(e.initial_arg_latitude_deg >= 0.0);
            CHECK(e.initial_arg_latitude_deg < 360.0);
        }
        for (const auto& [p, n] : per) CHECK(n == per_plane);

        // relabeling planes by k rotates the RAAN set by k*span/P
        const int k = std::uniform_int_distribution<int>(0, planes - 1)(rng);
        WalkerShell rotated = s;
        rotated.raan0_deg = s.raan0_deg + k * raan_span_deg(s.pattern) / planes;
        std::multiset<long long> a_set, b_set;
        for (const auto& e : els) {
            a_set.insert(std::llround(wrap_360(e.raan_deg + k * raan_span_deg(s.pattern) / planes) * 1e6) % 360000000);
        }
        for (const auto& e : expand_shell(rotated)) b_set.insert(std::llround(e.raan_deg * 1e6) % 360000000);
        CHECK(a_set == b_set);
    }
}

TEST_CASE("TLE export layout and checksums")
{
    auto shell = make_shell(WalkerPattern::Delta, 75, 64, 8, 3, PhasingConvention::ClassicPerSat);
    shell.raan0_deg = 359.99999; // rounds up to 360.0000 and must wrap
    const auto records = tle_export(shell);
    REQUIRE(records.size() == 64);
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        CHECK(r.line1.size() == 69);
        CHECK(r.line2.size() == 69);
        CHECK(r.line2.substr(26, 7) == "0000000");
        CHECK(r.line1[68] - '0' == oracle::tle_checksum(r.line1));
        CHECK(r.line2[68] - '0' == oracle::tle_checksum(r.line2));
        CHECK(oracle::validate_tle_layout(r.line1, r.line2) == "");
        CHECK(r.line1.substr(2, 5) == std::to_string(kFirstCatalogNumber + static_cast<int>(k)));
    }
    CHECK(records.front().line2.substr(17, 8) == "  0.0000");
}

TEST_CASE("checksum counts minus signs as one")
{
    const std::string line = "1 00005U 58002B   00179.78495062  .00000023  00000-0  28098-4 0  4753";
    CHECK(tle_checksum(line) == 3);
    CHECK(oracle::tle_checksum(line) == 3);
}

TEST_CASE("TLE round trip recovers inclination, RAAN and mean motion")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = make_shell(WalkerPattern::Delta, std::uniform_real_distribution<double>(0, 179.99)(rng), 12, 4, 1);
        s.altitude_km = std::uniform_real_distribution<double>(300, 2000)(rng);
        s.raan0_deg = std::uniform_real_distribution<double>(0, 360)(rng);
        s.epoch = parse_utc("2031-07-19T13:45:30Z");
        const auto els = expand_shell(s);
        const auto tles = tle_export(s);
        for (std::size_t k = 0; k < els.size(); ++k) {
            const auto f = parse_tle(tles[k].line1, tles[k].line2);
            const double rev_day = els[k].mean_motion_rad_s * 86400.0 / (2 * std::numbers::pi);
            CHECK(std::abs(f.inclination_deg - els[k].inclination_deg) <= 0.0001);
            const double draan = std::abs(wrap_180(f.raan_deg - els[k].raan_deg));
            CHECK(draan <= 0.0001);
            CHECK(std::abs(f.mean_motion_rev_day - rev_day) <= 1e-8);
            CHECK(f.eccentricity == 0.0);
            CHECK(f.epoch_year == 2031);
            CHECK(f.epoch_day == Approx(200.0 + (13 * 3600 + 45 * 60 + 30) / 86400.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("TLE epoch range and corrupted lines")
{
    auto s = make_shell(WalkerPattern::Delta, 60, 8, 2, 1);
    s.epoch = parse_utc("2057-01-01T00:00:00Z");
    CHECK_THROWS_AS(tle_export(s), ExportError);
    s.epoch = parse_utc("1956-12-31T23:59:59Z");
    CHECK_THROWS_AS(tle_export(s), ExportError);
    s.epoch = parse_utc("2056-12-31T00:00:00Z");
    CHECK_NOTHROW(tle_export(s));

    auto recs = tle_export(s);
    std::string bad = recs[0].line2;
    bad[10] = bad[10] == '1' ? '2' : '1';
    CHECK_THROWS_AS(parse_tle(recs[0].line1, bad), ConfigError);
    CHECK_THROWS_AS(parse_tle(recs[0].line1, recs[0].line2.substr(0, 68)), ConfigError);
}

TEST_CASE("write_tle emits optional name lines")
{
    const auto recs = tle_export(make_shell(WalkerPattern::Star, 86.4, 66, 6, 1));
    std::ostringstream with, without;
    write_tle(with, recs, true);
    write_tle(without, recs, false);
    const std::string a = with.str(), b = without.str();
    CHECK(std::count(a.begin(), a.end(), '\n') == 66 * 3);
    CHECK(std::count(b.begin(), b.end(), '\n') == 66 * 2);
}
