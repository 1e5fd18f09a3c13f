// leocov: command-line front end for the coverage simulator.
#include "leocov/constellation.hpp"
#include "leocov/errors.hpp"
#include "leocov/link_budget.hpp"
#include "leocov/output.hpp"
#include "leocov/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

// Shell used when neither the command line nor a scenario file names one.
constexpr const char* kDefaultShellPreset = "paper-fig6";

// Flags shared by the subcommands that build a scenario; every flag maps
// onto one scenario field and overrides the file value when given.
struct CommonFlags {
    std::optional<std::string> preset;
    std::optional<std::string> shell;
    std::optional<std::string> pattern;
    std::optional<double> altitude;
    std::optional<std::string> phasing_convention;
    std::optional<std::string> epoch;
    std::optional<double> raan0;
    std::optional<long long> duration;
    std::optional<long long> step;
    std::optional<double> gmst0;
    std::optional<bool> j2;
    std::optional<double> mask;
    std::optional<std::string> out;
    std::vector<std::string> sets;

    void attach(CLI::App* app)
    {
        app->add_option("--preset", preset, "Base shell preset (see 'presets list')");
        app->add_option("--shell", shell, "Walker notation i:T/P/F, e.g. 75:64/8/3");
        app->add_option("--pattern", pattern, "delta | star");
        app->add_option("--alt,--altitude", altitude, "Shell altitude [km]");
        app->add_option("--phasing-convention", phasing_convention, "classic-per-sat | paper-per-plane");
        app->add_option("--epoch", epoch, "Shell epoch, YYYY-MM-DDTHH:MM:SSZ");
        app->add_option("--raan0", raan0, "RAAN of plane 0 [deg]");
        app->add_option("--duration-s", duration, "Simulated window [s]");
        app->add_option("--step-s", step, "Time step [s]");
        app->add_option("--gmst0", gmst0, "Sidereal angle at grid start [deg]");
        app->add_option("--j2", j2, "Enable J2 secular RAAN drift (true|false)");
        app->add_option("--mask", mask, "Elevation mask [deg]");
        app->add_option("--out", out, "Output directory");
        app->add_option("--set", sets, "Override any field: section.key=value (repeatable)");
    }

    void apply(leocov::ScenarioDocument& doc) const
    {
        auto num = [](double v) {
            std::ostringstream os;
            os.precision(17);
            os << v;
            return os.str();
        };
        if (preset) doc.set("shell", "preset", *preset);
        else if (!shell && !doc.has_section("shell")) doc.set("shell", "preset", kDefaultShellPreset);
        if (shell) {
            // explicit keys, so the notation also wins over a file's own total/planes/...
            leocov::WalkerShell w;
            leocov::apply_walker_notation(w, *shell);
            doc.set("shell", "inclination_deg", num(w.inclination_deg));
            doc.set("shell", "total", std::to_string(w.total_sats));
            doc.set("shell", "planes", std::to_string(w.planes));
            doc.set("shell", "phasing", std::to_string(w.phasing));
        }
        if (pattern) doc.set("shell", "pattern", *pattern);
        if (altitude) doc.set("shell", "altitude_km", num(*altitude));
        if (phasing_convention) doc.set("shell", "phasing_convention", *phasing_convention);
        if (epoch) doc.set("shell", "epoch", *epoch);
        if (raan0) doc.set("shell", "raan0_deg", num(*raan0));
        if (duration) doc.set("grid", "duration_s", std::to_string(*duration));
        if (step) doc.set("grid", "step_s", std::to_string(*step));
        if (gmst0) doc.set("grid", "gmst0_deg", num(*gmst0));
        if (j2) doc.set("grid", "j2", *j2 ? "true" : "false");
        if (mask) doc.set("mask", "eps_deg", num(*mask));
        if (out) doc.set("output", "dir", *out);
        for (const auto& s : sets) {
            const auto dot = s.find('.');
            const auto eq = s.find('=');
            if (dot == std::string::npos || eq == std::string::npos || dot > eq) {
                throw leocov::ConfigError("--set expects section.key=value, got '" + s + "'");
            }
            doc.add(s.substr(0, dot), s.substr(dot + 1, eq - dot - 1), s.substr(eq + 1));
        }
    }
};

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw leocov::IoError("cannot open " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void report(const leocov::RunResult& r)
{
    for (const auto& f : r.files) std::cout << "wrote " << f.string() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    using namespace leocov;

    CLI::App app{"leocov: LEO constellation coverage, revisit-time and link-budget simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    // run
    auto* run = app.add_subcommand("run", "Execute a scenario file or a built-in preset");
    std::string run_target;
    CommonFlags run_flags;
    run->add_option("scenario", run_target, "Scenario file path or preset name")->required();
    run_flags.attach(run);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Latitude sweep over elevation masks or inclinations");
    CommonFlags sweep_flags;
    std::string sweep_param = "elevation";
    std::string sweep_range;
    std::string sweep_lats = "55:90:1";
    std::optional<std::string> sweep_lons;
    sweep->add_option("--param", sweep_param, "elevation | inclination")->check(CLI::IsMember({"elevation", "inclination"}));
    sweep->add_option("--range", sweep_range, "Parameter axis a:b:step [deg]")->required();
    sweep->add_option("--lat-range", sweep_lats, "Latitude axis a:b:step [deg]");
    sweep->add_option("--lon-range", sweep_lons, "Longitudes averaged per latitude, a:b:step [deg]");
    sweep_flags.attach(sweep);

    // map
    auto* map = app.add_subcommand("map", "Coverage map over a lat/lon region");
    CommonFlags map_flags;
    std::optional<std::string> region;
    std::optional<double> resolution;
    map->add_option("--region", region, "lat_min:lat_max:lon_min:lon_max [deg] (default North Atlantic)");
    map->add_option("--resolution", resolution, "Cell size [deg]");
    map_flags.attach(map);

    // tle
    auto* tle = app.add_subcommand("tle", "Export the shell as two-line element sets");
    CommonFlags tle_flags;
    std::string tle_out;
    bool tle_no_names = false;
    tle_flags.attach(tle);
    tle->remove_option(tle->get_option("--out"));
    tle->add_option("--out", tle_out, "Output TLE file ('-' for stdout)")->required();
    tle->add_flag("--no-names", tle_no_names, "Omit the name line before each pair");

    // linkbudget
    auto* lb = app.add_subcommand("linkbudget", "Slant range, FSPL and atmospheric excess for one geometry");
    double lb_freq = 0.0, lb_alt = 0.0, lb_elev = 0.0;
    std::optional<std::string> atmos_table, los_table, los_env;
    lb->add_option("--freq", lb_freq, "Carrier frequency [Hz]")->required();
    lb->add_option("--alt", lb_alt, "Satellite altitude [km]")->required();
    lb->add_option("--elev", lb_elev, "Elevation angle [deg]")->required();
    lb->add_option("--atmos-table", atmos_table, "Attenuation table CSV (default: built-in)");
    lb->add_option("--los-env", los_env, "Also report LoS probability: dense-urban | urban | suburban-rural");
    lb->add_option("--los-table", los_table, "LoS table CSV (default: built-in)");

    // presets
    auto* pre = app.add_subcommand("presets", "List or show built-in presets");
    pre->require_subcommand(1);
    auto* pre_list = pre->add_subcommand("list", "List preset names");
    auto* pre_show = pre->add_subcommand("show", "Print a preset as a scenario file");
    std::string show_name;
    pre_show->add_option("name", show_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*run) {
            ScenarioDocument doc;
            if (std::filesystem::exists(run_target)) {
                doc = ScenarioDocument::parse(read_file(run_target), run_target);
            } else if (const Preset* p = find_preset(run_target)) {
                doc = ScenarioDocument::parse(p->text, "preset:" + p->name);
            } else {
                throw IoError("no scenario file or preset named '" + run_target + "'");
            }
            run_flags.apply(doc);
            report(run_scenario(Scenario::from_document(doc)));
        } else if (*sweep) {
            ScenarioDocument doc;
            doc.set("sweep", "param", sweep_param);
            doc.set("sweep", "range", sweep_range);
            doc.set("sweep", "latitudes", sweep_lats);
            if (sweep_lons) doc.set("sweep", "longitudes", *sweep_lons);
            sweep_flags.apply(doc);
            report(run_scenario(Scenario::from_document(doc)));
        } else if (*map) {
            ScenarioDocument doc;
            if (region) {
                std::vector<std::string> parts;
                std::stringstream ss(*region);
                std::string part;
                while (std::getline(ss, part, ':')) parts.push_back(part);
                if (parts.size() != 4) throw ConfigError("--region expects lat_min:lat_max:lon_min:lon_max");
                doc.set("map", "lat_min", parts[0]);
                doc.set("map", "lat_max", parts[1]);
                doc.set("map", "lon_min", parts[2]);
                doc.set("map", "lon_max", parts[3]);
            } else {
                doc.set("map", "lat_min", "50");
            }
            if (resolution) {
                std::ostringstream os;
                os << *resolution;
                doc.set("map", "resolution_deg", os.str());
            }
            map_flags.apply(doc);
            report(run_scenario(Scenario::from_document(doc)));
        } else if (*tle) {
            ScenarioDocument doc;
            tle_flags.apply(doc);
            const auto records = tle_export(build_shell(doc));
            if (tle_out == "-") {
                write_tle(std::cout, records, !tle_no_names);
            } else {
                std::ofstream os(tle_out, std::ios::binary);
                if (!os) throw IoError("cannot write " + tle_out);
                write_tle(os, records, !tle_no_names);
                if (!os.flush()) throw IoError("failed while writing " + tle_out);
                std::cout << "wrote " << records.size() << " TLE records to " << tle_out << '\n';
            }
        } else if (*lb) {
            const auto table = atmos_table ? AttenuationTable::load_csv(*atmos_table) : AttenuationTable::builtin();
            const auto r = total_path_loss({lb_freq, lb_alt, lb_elev}, table);
            std::printf("slant range      %10.3f km\n", r.slant_range_km);
            std::printf("free-space loss  %10.3f dB\n", r.fspl_db);
            std::printf("atmospheric      %10.3f dB\n", r.atmos_excess_db);
            std::printf("total            %10.3f dB\n", r.total_db);
            std::optional<double> p_los;
            if (los_env) {
                const auto tables = los_table ? LosTables::load_csv(*los_table) : LosTables::builtin();
                p_los = los_probability(parse_los_environment(*los_env), lb_elev, tables);
                std::printf("LoS probability  %10.4f (%s)\n", *p_los, los_env->c_str());
            }
            std::printf("frequency_hz,altitude_km,elevation_deg,slant_range_km,fspl_db,atmos_excess_db,total_db%s\n",
                        p_los ? ",p_los" : "");
            std::printf("%.6g,%.6g,%.6g,%.6f,%.6f,%.6f,%.6f", lb_freq, lb_alt, lb_elev, r.slant_range_km, r.fspl_db,
                        r.atmos_excess_db, r.total_db);
            if (p_los) std::printf(",%.6f", *p_los);
            std::printf("\n");
        } else if (*pre) {
            if (*pre_list) {
                for (const auto& p : presets()) std::printf("%-14s %s\n", p.name.c_str(), p.description.c_str());
            } else if (*pre_show) {
                const Preset* p = find_preset(show_name);
                if (!p) throw ConfigError("unknown preset '" + show_name + "'");
                std::cout << "# " << p->description << '\n' << p->text;
            }
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ExportError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
