#include "leocov/scenario.hpp"

#include <cstdio>

namespace leocov {

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Walker Delta 64/8/3 at 1000 km, the shell shared by every figure-reproduction preset.
constexpr const char* kReferenceShell = R"([shell]
pattern = delta
total = 64
planes = 8
phasing = 3
altitude_km = 1000
phasing_convention = classic-per-sat
epoch = 2025-01-01T00:00:00Z
raan0_deg = 0

[grid]
duration_s = 432000
step_s = 10
gmst0_deg = 0
j2 = false
)";

std::string figure_scenario(const std::string& name, double inclination, double mask, const std::string& body)
{
    return std::string(kReferenceShell) + "\n[shell]\ninclination_deg = " + num(inclination) +
           "\n\n[mask]\neps_deg = " + num(mask) + "\n\n" + body + "\n[output]\nname = " + name +
           "\ndir = out/" + name + "\n";
}

std::string elevation_sweep(const std::string& name)
{
    return figure_scenario(name, 75, 40, "[sweep]\nparam = elevation\nrange = 0:90:5\nlatitudes = 55:90:1\n");
}

std::string inclination_sweep(const std::string& name)
{
    return figure_scenario(name, 75, 40, "[sweep]\nparam = inclination\nrange = 55:90:1\nlatitudes = 55:90:1\n");
}

std::string north_atlantic_map(const std::string& name, double inclination, double mask)
{
    return figure_scenario(name, inclination, mask,
                          "[map]\nlat_min = 50\nlat_max = 90\nlon_min = -80\nlon_max = 40\nresolution_deg = 1\n");
}

// Single-shell approximations of operational systems. F is not published;
// F = 1 under the classic convention.
std::string table_shell(const char* pattern, const char* notation, double altitude)
{
    return std::string("[shell]\npattern = ") + pattern + "\nnotation = " + notation +
           "\naltitude_km = " + num(altitude) +
           "\nphasing_convention = classic-per-sat\n\n[grid]\nduration_s = 86400\nstep_s = 10\n\n"
           "[sites]\nsite = 57.0138, 9.9871\nsite = 72, -30\nsite = 85, 0\n";
}

std::vector<Preset> build_presets()
{
    std::vector<Preset> p;
    p.push_back({"iridium-next", "Iridium NEXT, Walker Star 86.4:66/6/1 at 778 km",
                 table_shell("star", "86.4:66/6/1", 778)});
    p.push_back({"oneweb", "OneWeb, Walker Star 87.9:648/12/1 at 1200 km", table_shell("star", "87.9:648/12/1", 1200)});
    p.push_back({"globalstar", "Globalstar, Walker Delta 52:24/8/1 at 1414 km",
                 table_shell("delta", "52:24/8/1", 1414)});
    p.push_back({"starlink-53", "Starlink 53-degree shell, Walker Delta 53:1584/72/1 at 550 km",
                 table_shell("delta", "53:1584/72/1", 550)});
    p.push_back({"paper-fig6", "P(N>=1) vs latitude and elevation mask, 75:64/8/3 at 1000 km",
                 elevation_sweep("paper-fig6")});
    p.push_back({"paper-fig7a", "North Atlantic coverage map, 75:64/8/3, mask 20 deg",
                 north_atlantic_map("paper-fig7a", 75, 20)});
    p.push_back({"paper-fig7b", "North Atlantic coverage map, 75:64/8/3, mask 40 deg",
                 north_atlantic_map("paper-fig7b", 75, 40)});
    p.push_back({"paper-fig7c", "North Atlantic coverage map, 75:64/8/3, mask 60 deg",
                 north_atlantic_map("paper-fig7c", 75, 60)});
    p.push_back({"paper-fig8", "Median/maximum revisit time vs latitude and elevation mask",
                 elevation_sweep("paper-fig8")});
    p.push_back({"paper-fig9", "P(N>=1) and mean visible count vs latitude and inclination, mask 40 deg",
                 inclination_sweep("paper-fig9")});
    p.push_back({"paper-fig10a", "North Atlantic coverage map, 55:64/8/3, mask 40 deg",
                 north_atlantic_map("paper-fig10a", 55, 40)});
    p.push_back({"paper-fig10b", "North Atlantic coverage map, 75:64/8/3, mask 40 deg",
                 north_atlantic_map("paper-fig10b", 75, 40)});
    p.push_back({"paper-fig10c", "North Atlantic coverage map, 90:64/8/3, mask 40 deg",
                 north_atlantic_map("paper-fig10c", 90, 40)});
    p.push_back({"paper-fig11", "Median/maximum revisit time vs latitude and inclination, mask 40 deg",
                 inclination_sweep("paper-fig11")});
    return p;
}

} // namespace

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> all = build_presets();
    return all;
}

const Preset* find_preset(std::string_view name)
{
    for (const auto& p : presets()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

} // namespace leocov
