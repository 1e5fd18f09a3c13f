#include "leocov/errors.hpp"
#include "leocov/geo_core.hpp"
#include "leocov/link_budget.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace leocov;
using doctest::Approx;

namespace {

double friis_oracle(double f_hz, double d_km)
{
    const double lambda_m = 299792458.0 / f_hz;
    const double ratio = 4.0 * std::numbers::pi * d_km * 1000.0 / lambda_m;
    return 10.0 * std::log10(ratio * ratio);
}

} // namespace

TEST_CASE("free-space loss matches the Friis formula")
{
    for (double f : {2e9, 10e9, 28e9, 50e9}) {
        for (double d : {800.0, 2366.0, 36000.0}) CHECK(fspl_db(f, d) == Approx(friis_oracle(f, d)).epsilon(1e-12));
    }
    CHECK(fspl_db(2e9, 800) == Approx(156.52).epsilon(1e-4));
    CHECK(fspl_db(4e9, 800) - fspl_db(2e9, 800) == Approx(20 * std::log10(2.0)));
    CHECK(fspl_db(2e9, 1600) - fspl_db(2e9, 800) == Approx(20 * std::log10(2.0)));
    CHECK_THROWS_AS(fspl_db(0, 800), DomainError);
    CHECK_THROWS_AS(fspl_db(2e9, -1), DomainError);
}

TEST_CASE("free-space loss is monotone in frequency and distance")
{
    double prev = 0;
    for (double f = 1e9; f <= 60e9; f *= 1.3) {
        const double v = fspl_db(f, 1000);
        CHECK(v > prev);
        prev = v;
    }
    prev = 0;
    for (double d = 100; d <= 5000; d += 100) {
        const double v = fspl_db(10e9, d);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("attenuation anchors are reproduced exactly")
{
    CHECK(atmospheric_excess(28e9, 90) == 2.0);
    CHECK(atmospheric_excess(50e9, 90) == 7.0);
    CHECK(atmospheric_excess(28e9, 25) == 5.0);
    CHECK(atmospheric_excess(50e9, 25) == 14.0);
    CHECK(atmospheric_excess(28e9, 10) == 10.0);
    CHECK(atmospheric_excess(50e9, 10) == 32.0);
}

TEST_CASE("attenuation interpolates inside the table only")
{
    const double mid = atmospheric_excess(28e9, 27.5);
    CHECK(mid == Approx((5.0 + 4.2) / 2));
    const double f_mid = std::pow(10.0, (std::log10(28e9) + std::log10(50e9)) / 2);
    CHECK(atmospheric_excess(f_mid, 90) == Approx(4.5));
    CHECK_THROWS_AS(atmospheric_excess(60e9, 30), DomainError);
    CHECK_THROWS_AS(atmospheric_excess(1e9, 30), DomainError);
    CHECK_THROWS_AS(atmospheric_excess(10e9, 5), DomainError);
    for (double f : {2e9, 5e9, 10e9, 20e9, 28e9, 40e9, 50e9}) {
        double prev = 1e9;
        for (double e = 10; e <= 90; e += 0.5) {
            const double v = atmospheric_excess(f, e);
            CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("total path loss adds free space and excess")
{
    LinkBudgetInputs in;
    in.frequency_hz = 50e9;
    in.altitude_km = 800;
    in.elevation_deg = 10;
    const auto r = total_path_loss(in);
    CHECK(r.slant_range_km == Approx(oracle::bisect_slant_range(800, 10)).epsilon(1e-9));
    CHECK(r.atmos_excess_db == 32.0);
    CHECK(r.total_db == Approx(r.fspl_db + 32.0));
    in.frequency_hz = 1e12;
    CHECK_THROWS_AS(total_path_loss(in), DomainError);
}

TEST_CASE("LoS probability nodes and interpolation")
{
    CHECK(los_probability(LosEnvironment::SuburbanRural, 10) == 0.782);
    CHECK(los_probability(LosEnvironment::DenseUrban, 10) == 0.28);
    CHECK(los_probability(LosEnvironment::Urban, 10) == 0.24);
    CHECK(los_probability(LosEnvironment::DenseUrban, 45) == Approx(0.5).epsilon(1e-12));
    CHECK(los_probability(LosEnvironment::Urban, 30) == 0.5);
    CHECK(los_probability(LosEnvironment::DenseUrban, 85) == Approx(0.9).epsilon(1e-12));
    CHECK(los_probability(LosEnvironment::Urban, 70) == 0.9);
    CHECK_THROWS_AS(los_probability(LosEnvironment::Urban, 5), DomainError);
    for (auto env : {LosEnvironment::DenseUrban, LosEnvironment::Urban, LosEnvironment::SuburbanRural}) {
        double prev = 0;
        for (double e = 10; e <= 90; e += 0.25) {
            const double v = los_probability(env, e);
            CHECK(v >= prev);
            CHECK(v <= 1.0);
            prev = v;
        }
        CHECK(parse_los_environment(to_string(env)) == env);
    }
}

TEST_CASE("shipped CSV tables equal the built-in tables")
{
    const std::string dir = LEOCOV_DATA_DIR;
    const auto atm = AttenuationTable::load_csv(dir + "/atmospheric_excess_default.csv");
    CHECK(atm.freq_axis_hz() == AttenuationTable::builtin().freq_axis_hz());
    CHECK(atm.elev_axis_deg() == AttenuationTable::builtin().elev_axis_deg());
    CHECK(atm.values_db() == AttenuationTable::builtin().values_db());
    const auto los = LosTables::load_csv(dir + "/los_probability_default.csv");
    for (auto env : {LosEnvironment::DenseUrban, LosEnvironment::Urban, LosEnvironment::SuburbanRural}) {
        CHECK(los.get(env).p_los == LosTables::builtin().get(env).p_los);
        CHECK(los.get(env).elev_axis_deg == LosTables::builtin().get(env).elev_axis_deg);
    }
    CHECK_THROWS_AS(AttenuationTable::load_csv(dir + "/missing.csv"), IoError);
}

TEST_CASE("malformed tables are rejected")
{
    std::istringstream rising("f,10,20\n1e9,1,2\n");
    CHECK_THROWS_AS(AttenuationTable::parse_csv(rising), ConfigError);
    std::istringstream falling("dense-urban,10,0.5\ndense-urban,20,0.4\n"
                               "urban,10,0.1\nurban,20,0.2\nsuburban-rural,10,0.3\nsuburban-rural,20,0.4\n");
    CHECK_THROWS_AS(LosTables::parse_csv(falling), ConfigError);
}
