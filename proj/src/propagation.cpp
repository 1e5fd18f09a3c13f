#include "leocov/propagation.hpp"

#include "leocov/errors.hpp"
#include "leocov/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace leocov {

void TimeGrid::validate() const
{
    if (duration_s <= 0) throw ConfigError("grid duration must be positive");
    if (step_s <= 0) throw ConfigError("grid step must be positive");
    if (duration_s % step_s != 0) {
        throw ConfigError("grid step (" + std::to_string(step_s) + " s) must divide duration (" +
                          std::to_string(duration_s) + " s)");
    }
}

double j2_raan_rate(double semi_major_axis_km, double mean_motion_rad_s, double inclination_deg)
{
    const double ratio = constants::kEarthRadiusKm / semi_major_axis_km;
    return -1.5 * mean_motion_rad_s * constants::kJ2 * ratio * ratio * std::cos(deg2rad(inclination_deg));
}

EcefVector inertial_position(const SatelliteElement& e, double t_s, bool j2_enabled)
{
    double raan = deg2rad(e.raan_deg);
    if (j2_enabled) {
        raan += j2_raan_rate(e.semi_major_axis_km, e.mean_motion_rad_s, e.inclination_deg) * t_s;
    }
    const double u = std::fmod(deg2rad(e.initial_arg_latitude_deg) + e.mean_motion_rad_s * t_s,
                               2.0 * std::numbers::pi);
    const double inc = deg2rad(e.inclination_deg);
    const double cu = std::cos(u), su = std::sin(u);
    const double co = std::cos(raan), so = std::sin(raan);
    const double ci = std::cos(inc), si = std::sin(inc);
    const double a = e.semi_major_axis_km;
    return {a * (co * cu - so * su * ci), a * (so * cu + co * su * ci), a * su * si};
}

EcefVector inertial_to_earth_fixed(const EcefVector& r, double theta_rad)
{
    const double c = std::cos(theta_rad), s = std::sin(theta_rad);
    return {c * r.x + s * r.y, -s * r.x + c * r.y, r.z};
}

Ephemeris propagate(std::span<const SatelliteElement> elements, const TimeGrid& grid,
                    const PropagationOptions& options)
{
    if (elements.empty()) throw ConfigError("cannot propagate an empty element list");
    grid.validate();

    const std::size_t n_samples = grid.sample_count();
    std::vector<double> cos_theta(n_samples), sin_theta(n_samples);
    const double theta0 = deg2rad(options.gmst0_deg);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double theta = std::fmod(theta0 + constants::kEarthRotationRadPerS * grid.offset_s(k),
                                       2.0 * std::numbers::pi);
        cos_theta[k] = std::cos(theta);
        sin_theta[k] = std::sin(theta);
    }

    Ephemeris eph;
    eph.grid = grid;
    eph.ids.reserve(elements.size());
    eph.semi_major_axis_km.reserve(elements.size());
    for (const auto& e : elements) {
        eph.ids.push_back(e.id);
        eph.semi_major_axis_km.push_back(e.semi_major_axis_km);
    }
    eph.positions.assign(elements.size(), std::vector<EcefVector>(n_samples));

    parallel_for(elements.size(), [&](std::size_t s) {
        auto& track = eph.positions[s];
        for (std::size_t k = 0; k < n_samples; ++k) {
            const EcefVector r = inertial_position(elements[s], grid.offset_s(k), options.j2_enabled);
            track[k] = {cos_theta[k] * r.x + sin_theta[k] * r.y, -sin_theta[k] * r.x + cos_theta[k] * r.y, r.z};
        }
    });
    return eph;
}

void write_ephemeris_csv(std::ostream& os, const Ephemeris& eph)
{
    os << "sat_id,t_offset_s,x_km,y_km,z_km\n";
    char buf[160];
    for (std::size_t s = 0; s < eph.satellite_count(); ++s) {
        for (std::size_t k = 0; k < eph.sample_count(); ++k) {
            const auto& p = eph.positions[s][k];
            std::snprintf(buf, sizeof buf, "P%dS%d,%lld,%.6f,%.6f,%.6f\n", eph.ids[s].plane, eph.ids[s].slot,
                          static_cast<long long>(eph.grid.offset_s(k)), p.x, p.y, p.z);
            os << buf;
        }
    }
}

} // namespace leocov
