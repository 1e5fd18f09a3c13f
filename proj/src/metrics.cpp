#include "leocov/metrics.hpp"

#include "leocov/errors.hpp"
#include "leocov/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace leocov {

namespace {

void require_non_empty(const VisibilityTimeline& tl)
{
    if (tl.n_visible.empty()) throw DomainError("visibility timeline is empty");
}

} // namespace

double coverage_probability(const VisibilityTimeline& tl)
{
    require_non_empty(tl);
    const auto covered = std::count_if(tl.n_visible.begin(), tl.n_visible.end(), [](auto n) { return n >= 1; });
    return static_cast<double>(covered) / static_cast<double>(tl.n_visible.size());
}

double mean_visible(const VisibilityTimeline& tl)
{
    require_non_empty(tl);
    // integer sum keeps the mean exact up to the final division
    const long long total = std::accumulate(tl.n_visible.begin(), tl.n_visible.end(), 0LL);
    return static_cast<double>(total) / static_cast<double>(tl.n_visible.size());
}

std::vector<RevisitEvent> revisit_times(const VisibilityTimeline& tl)
{
    require_non_empty(tl);
    std::vector<RevisitEvent> events;
    const auto& n = tl.n_visible;
    const std::size_t size = n.size();
    std::size_t k = 0;
    while (k < size) {
        if (n[k] >= 1) {
            ++k;
            continue;
        }
        const std::size_t gap_start = k;
        while (k < size && n[k] == 0) ++k;
        // k is now the first visible sample after the gap, or size
        if (gap_start == 0 || k == size) continue;
        RevisitEvent e;
        e.t_loss_s = tl.grid.offset_s(gap_start);
        e.t_recover_s = tl.grid.offset_s(k);
        e.tau_s = e.t_recover_s - e.t_loss_s;
        events.push_back(e);
    }
    return events;
}

std::optional<double> lower_median_tau(std::span<const RevisitEvent> events)
{
    if (events.empty()) return std::nullopt;
    std::vector<double> taus;
    taus.reserve(events.size());
    for (const auto& e : events) taus.push_back(e.tau_s);
    const auto mid = taus.begin() + static_cast<std::ptrdiff_t>((taus.size() - 1) / 2);
    std::nth_element(taus.begin(), mid, taus.end());
    return *mid;
}

std::optional<double> max_tau(std::span<const RevisitEvent> events)
{
    if (events.empty()) return std::nullopt;
    return std::max_element(events.begin(), events.end(),
                            [](const auto& a, const auto& b) { return a.tau_s < b.tau_s; })
        ->tau_s;
}

CoverageStats coverage_stats(const VisibilityTimeline& tl)
{
    CoverageStats s;
    s.p_cover = coverage_probability(tl);
    s.mean_visible = mean_visible(tl);
    s.revisit = revisit_times(tl);
    s.tau_median_s = lower_median_tau(s.revisit);
    s.tau_max_s = max_tau(s.revisit);
    return s;
}

CoverageStats aggregate_stats(std::span<const CoverageStats> parts)
{
    if (parts.empty()) throw DomainError("cannot aggregate zero coverage results");
    CoverageStats out;
    for (const auto& p : parts) {
        out.p_cover += p.p_cover;
        out.mean_visible += p.mean_visible;
        out.revisit.insert(out.revisit.end(), p.revisit.begin(), p.revisit.end());
    }
    out.p_cover /= static_cast<double>(parts.size());
    out.mean_visible /= static_cast<double>(parts.size());
    out.tau_median_s = lower_median_tau(out.revisit);
    out.tau_max_s = max_tau(out.revisit);
    return out;
}

std::string_view to_string(SweepParameter p) { return p == SweepParameter::Elevation ? "elevation" : "inclination"; }

SweepParameter parse_sweep_parameter(std::string_view text)
{
    if (text == "elevation") return SweepParameter::Elevation;
    if (text == "inclination") return SweepParameter::Inclination;
    throw ConfigError("unknown sweep parameter '" + std::string(text) + "' (expected elevation|inclination)");
}

std::vector<double> default_sweep_longitudes()
{
    std::vector<double> lons;
    for (int k = 0; k < 8; ++k) lons.push_back(45.0 * k);
    return lons;
}

namespace {

// Per-site stats for every mask, sites ordered latitude-major.
std::vector<std::vector<CoverageStats>> site_stats(const Ephemeris& eph, std::span<const double> lats,
                                                   std::span<const double> lons, std::span<const double> masks)
{
    const std::size_t n_sites = lats.size() * lons.size();
    std::vector<std::vector<CoverageStats>> out(n_sites);
    parallel_for(n_sites, [&](std::size_t idx) {
        const GeoPoint site(lats[idx / lons.size()], lons[idx % lons.size()]);
        auto timelines = visibility_timelines(eph, site, masks);
        auto& slot = out[idx];
        slot.reserve(timelines.size());
        for (const auto& tl : timelines) slot.push_back(coverage_stats(tl));
    });
    return out;
}

} // namespace

std::vector<SweepRow> latitude_sweep(const SweepRequest& request)
{
    if (request.values.empty()) throw ConfigError("sweep parameter axis is empty");
    if (request.latitudes.empty()) throw ConfigError("sweep latitude axis is empty");
    if (request.longitudes.empty()) throw ConfigError("sweep longitude set is empty");
    request.grid.validate();

    const auto& lats = request.latitudes;
    const auto& lons = request.longitudes;
    std::vector<SweepRow> rows;
    rows.reserve(request.values.size() * lats.size());

    auto emit = [&](SweepParameter param, double value, const std::vector<std::vector<CoverageStats>>& per_site,
                    std::size_t mask_index) {
        for (std::size_t i = 0; i < lats.size(); ++i) {
            std::vector<CoverageStats> parts;
            SweepRow row;
            row.parameter = param;
            row.value = value;
            row.lat_deg = lats[i];
            for (std::size_t j = 0; j < lons.size(); ++j) {
                parts.push_back(per_site[i * lons.size() + j][mask_index]);
                row.p_cover_by_lon.push_back(parts.back().p_cover);
            }
            row.stats = aggregate_stats(parts);
            rows.push_back(std::move(row));
        }
    };

    if (request.parameter == SweepParameter::Elevation) {
        for (double m : request.values) ElevationMask{m};
        const auto elements = expand_shell(request.shell);
        const auto eph = propagate(elements, request.grid, request.propagation);
        const auto per_site = site_stats(eph, lats, lons, request.values);
        for (std::size_t m = 0; m < request.values.size(); ++m) {
            emit(SweepParameter::Elevation, request.values[m], per_site, m);
        }
    } else {
        const ElevationMask mask(request.fixed_mask_deg);
        const double masks[] = {mask.deg()};
        for (double inc : request.values) {
            WalkerShell shell = request.shell;
            shell.inclination_deg = inc;
            const auto elements = expand_shell(shell);
            const auto eph = propagate(elements, request.grid, request.propagation);
            emit(SweepParameter::Inclination, inc, site_stats(eph, lats, lons, masks), 0);
        }
    }
    return rows;
}

void MapRegion::validate() const
{
    if (!(resolution_deg > 0.0)) throw ConfigError("map resolution must be positive");
    if (!(lat_min >= -90.0 && lat_max <= 90.0 && lat_min < lat_max)) {
        throw ConfigError("map latitude bounds must satisfy -90 <= lat_min < lat_max <= 90");
    }
    if (!(lon_min >= -180.0 && lon_max <= 180.0 && lon_min < lon_max)) {
        throw ConfigError("map longitude bounds must satisfy -180 <= lon_min < lon_max <= 180");
    }
}

namespace {

std::vector<double> cell_centers(double lo, double hi, double res)
{
    const auto count = static_cast<std::size_t>(std::max(1.0, std::floor((hi - lo) / res + 1e-9)));
    std::vector<double> axis(count);
    for (std::size_t i = 0; i < count; ++i) axis[i] = lo + (static_cast<double>(i) + 0.5) * res;
    return axis;
}

} // namespace

std::vector<double> MapRegion::lat_axis() const { return cell_centers(lat_min, lat_max, resolution_deg); }
std::vector<double> MapRegion::lon_axis() const { return cell_centers(lon_min, lon_max, resolution_deg); }

CoverageGrid coverage_map(const Ephemeris& eph, ElevationMask mask, const MapRegion& region)
{
    region.validate();
    CoverageGrid g;
    g.lat_axis = region.lat_axis();
    g.lon_axis = region.lon_axis();
    g.resolution_deg = region.resolution_deg;
    const double masks[] = {mask.deg()};
    auto per_site = site_stats(eph, g.lat_axis, g.lon_axis, masks);
    g.cells.reserve(per_site.size());
    for (auto& s : per_site) g.cells.push_back(std::move(s.front()));
    return g;
}

CoverageGrid coverage_map(const WalkerShell& shell, ElevationMask mask, const MapRegion& region,
                          const TimeGrid& grid, const PropagationOptions& options)
{
    const auto elements = expand_shell(shell);
    return coverage_map(propagate(elements, grid, options), mask, region);
}

} // namespace leocov
