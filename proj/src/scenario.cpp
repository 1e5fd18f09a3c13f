#include "leocov/scenario.hpp"

#include "leocov/errors.hpp"
#include "leocov/output.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace leocov {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys{
        {"shell",
         {"preset", "notation", "pattern", "inclination_deg", "total", "planes", "phasing", "altitude_km", "epoch",
          "raan0_deg", "phasing_convention"}},
        {"grid", {"start", "duration_s", "step_s", "gmst0_deg", "j2"}},
        {"mask", {"eps_deg"}},
        {"sweep", {"param", "range", "latitudes", "longitudes"}},
        {"map", {"lat_min", "lat_max", "lon_min", "lon_max", "resolution_deg"}},
        {"sites", {"site"}},
        {"output", {"dir", "products", "name"}},
    };
    return keys;
}

bool repeatable(const std::string& section, const std::string& key) { return section == "sites" && key == "site"; }

// Reads typed values out of a document, prefixing errors with the source location.
class FieldReader {
public:
    explicit FieldReader(const ScenarioDocument& doc) : doc_(doc) {}

    std::string where(const std::string& section, const std::string& key) const
    {
        const auto* e = doc_.find(section, key);
        std::string loc = doc_.origin();
        if (e && e->line > 0) loc += ":" + std::to_string(e->line);
        return loc + ": [" + section + "] " + key;
    }

    [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& msg) const
    {
        throw ConfigError(where(section, key) + ": " + msg);
    }

    std::optional<std::string> text(const std::string& section, const std::string& key) const
    {
        const auto* e = doc_.find(section, key);
        if (!e || e->values.empty()) return std::nullopt;
        return e->values.back();
    }

    std::optional<double> number(const std::string& section, const std::string& key) const
    {
        auto t = text(section, key);
        if (!t) return std::nullopt;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(t->data(), t->data() + t->size(), v);
        if (ec != std::errc() || ptr != t->data() + t->size() || !std::isfinite(v)) {
            fail(section, key, "expected a number, got '" + *t + "'");
        }
        return v;
    }

    std::optional<long long> integer(const std::string& section, const std::string& key) const
    {
        auto t = text(section, key);
        if (!t) return std::nullopt;
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(t->data(), t->data() + t->size(), v);
        if (ec != std::errc() || ptr != t->data() + t->size()) {
            fail(section, key, "expected an integer, got '" + *t + "'");
        }
        return v;
    }

    std::optional<bool> boolean(const std::string& section, const std::string& key) const
    {
        auto t = text(section, key);
        if (!t) return std::nullopt;
        if (*t == "true" || *t == "yes" || *t == "on" || *t == "1") return true;
        if (*t == "false" || *t == "no" || *t == "off" || *t == "0") return false;
        fail(section, key, "expected true|false, got '" + *t + "'");
    }

    template <typename Fn>
    auto guarded(const std::string& section, const std::string& key, Fn&& fn) const
    {
        try {
            return fn();
        } catch (const ConfigError& e) {
            fail(section, key, e.what());
        } catch (const DomainError& e) {
            fail(section, key, e.what());
        }
    }

private:
    const ScenarioDocument& doc_;
};

std::string canonical_text(const ScenarioDocument& doc)
{
    std::string out;
    for (const auto& [section, entries] : doc.sections()) {
        out += "[" + section + "]\n";
        for (const auto& [key, entry] : entries) {
            for (const auto& v : entry.values) out += key + "=" + v + "\n";
        }
    }
    return out;
}

void apply_shell_entries(WalkerShell& shell, const FieldReader& r)
{
    if (auto t = r.text("shell", "notation")) r.guarded("shell", "notation", [&] { apply_walker_notation(shell, *t); });
    if (auto t = r.text("shell", "pattern")) shell.pattern = r.guarded("shell", "pattern", [&] { return parse_pattern(*t); });
    if (auto v = r.number("shell", "inclination_deg")) shell.inclination_deg = *v;
    if (auto v = r.integer("shell", "total")) shell.total_sats = static_cast<int>(*v);
    if (auto v = r.integer("shell", "planes")) shell.planes = static_cast<int>(*v);
    if (auto v = r.integer("shell", "phasing")) shell.phasing = static_cast<int>(*v);
    if (auto v = r.number("shell", "altitude_km")) shell.altitude_km = *v;
    if (auto t = r.text("shell", "epoch")) shell.epoch = r.guarded("shell", "epoch", [&] { return parse_utc(*t); });
    if (auto v = r.number("shell", "raan0_deg")) shell.raan0_deg = *v;
    if (auto t = r.text("shell", "phasing_convention")) {
        shell.phasing_convention =
            r.guarded("shell", "phasing_convention", [&] { return parse_phasing_convention(*t); });
    }
}

} // namespace

ScenarioDocument ScenarioDocument::parse(std::string_view text, std::string origin)
{
    ScenarioDocument doc;
    doc.origin_ = std::move(origin);
    std::string section;
    std::size_t line_no = 0;
    std::istringstream is{std::string(text)};
    std::string raw;
    while (std::getline(is, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        const std::string loc = doc.origin_ + ":" + std::to_string(line_no) + ": ";
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(loc + "unterminated section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!known_keys().contains(section)) throw ConfigError(loc + "unknown section [" + section + "]");
            doc.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(loc + "expected 'key = value'");
        if (section.empty()) throw ConfigError(loc + "key outside of any [section]");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!known_keys().at(section).contains(key)) {
            throw ConfigError(loc + "unknown key '" + key + "' in [" + section + "]");
        }
        if (value.empty()) throw ConfigError(loc + "empty value for '" + key + "'");
        auto& entry = doc.sections_[section][key];
        if (!repeatable(section, key)) entry.values.clear();
        entry.values.push_back(value);
        entry.line = line_no;
    }
    return doc;
}

void ScenarioDocument::set(const std::string& section, const std::string& key, std::string value)
{
    if (!known_keys().contains(section) || !known_keys().at(section).contains(key)) {
        throw ConfigError("unknown scenario field [" + section + "] " + key);
    }
    auto& e = sections_[section][key];
    e.values = {std::move(value)};
    e.line = 0;
}

void ScenarioDocument::add(const std::string& section, const std::string& key, std::string value)
{
    if (!repeatable(section, key)) return set(section, key, std::move(value));
    auto& e = sections_[section][key];
    e.values.push_back(std::move(value));
    e.line = 0;
}

bool ScenarioDocument::has_section(const std::string& section) const { return sections_.contains(section); }

const ScenarioDocument::Entry* ScenarioDocument::find(const std::string& section, const std::string& key) const
{
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

std::vector<double> parse_range(std::string_view text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range '" + std::string(text) + "' must have the form a:b:step");
    double v[3];
    for (int k = 0; k < 3; ++k) {
        const auto& p = parts[static_cast<std::size_t>(k)];
        const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v[k]);
        if (ec != std::errc() || ptr != p.data() + p.size()) {
            throw ConfigError("range '" + std::string(text) + "': bad number '" + p + "'");
        }
    }
    const double a = v[0], b = v[1], step = v[2];
    if (!(step > 0.0)) throw ConfigError("range step must be positive");
    if (b < a) throw ConfigError("range end must not precede its start");
    const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9));
    std::vector<double> out;
    for (long long k = 0; k <= n; ++k) {
        // snap to a 1e-9 grid so 0.1-style steps produce clean values
        out.push_back(std::round((a + static_cast<double>(k) * step) * 1e9) / 1e9);
    }
    return out;
}

void apply_walker_notation(WalkerShell& shell, std::string_view text)
{
    const auto colon = text.find(':');
    const auto parts = colon == std::string_view::npos ? std::vector<std::string>{} : split(text.substr(colon + 1), '/');
    if (colon == std::string_view::npos || parts.size() != 3) {
        throw ConfigError("Walker notation '" + std::string(text) + "' must look like i:T/P/F");
    }
    const std::string inc = trim(text.substr(0, colon));
    double i = 0.0;
    int tpf[3];
    auto bad = [&] { return ConfigError("Walker notation '" + std::string(text) + "' has a malformed number"); };
    if (auto [p, ec] = std::from_chars(inc.data(), inc.data() + inc.size(), i); ec != std::errc() || p != inc.data() + inc.size()) throw bad();
    for (int k = 0; k < 3; ++k) {
        const auto& s = parts[static_cast<std::size_t>(k)];
        if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), tpf[k]); ec != std::errc() || p != s.data() + s.size()) throw bad();
    }
    shell.inclination_deg = i;
    shell.total_sats = tpf[0];
    shell.planes = tpf[1];
    shell.phasing = tpf[2];
}

WalkerShell build_shell(const ScenarioDocument& doc)
{
    const FieldReader r(doc);
    WalkerShell shell;
    shell.phasing_convention = PhasingConvention::ClassicPerSat;
    if (auto name = r.text("shell", "preset")) {
        const Preset* p = find_preset(*name);
        if (!p) r.fail("shell", "preset", "unknown preset '" + *name + "'");
        const auto base = ScenarioDocument::parse(p->text, "preset:" + p->name);
        if (base.find("shell", "preset")) r.fail("shell", "preset", "preset '" + *name + "' is not a base shell");
        apply_shell_entries(shell, FieldReader(base));
    }
    apply_shell_entries(shell, r);
    r.guarded("shell", "total", [&] { shell.validate(); });
    return shell;
}

Scenario Scenario::from_document(const ScenarioDocument& doc)
{
    const FieldReader r(doc);
    if (!doc.has_section("shell")) throw ConfigError(doc.origin() + ": a [shell] section is required");
    Scenario sc;
    sc.shell = build_shell(doc);

    if (auto t = r.text("grid", "start")) sc.grid.start = r.guarded("grid", "start", [&] { return parse_utc(*t); });
    else sc.grid.start = sc.shell.epoch;
    if (auto v = r.integer("grid", "duration_s")) sc.grid.duration_s = *v;
    if (auto v = r.integer("grid", "step_s")) sc.grid.step_s = *v;
    if (auto v = r.number("grid", "gmst0_deg")) sc.propagation.gmst0_deg = *v;
    if (auto v = r.boolean("grid", "j2")) sc.propagation.j2_enabled = *v;
    r.guarded("grid", "step_s", [&] { sc.grid.validate(); });

    if (auto v = r.number("mask", "eps_deg")) sc.mask_deg = *v;
    r.guarded("mask", "eps_deg", [&] { (void)ElevationMask(sc.mask_deg); });

    const bool has_sweep = doc.has_section("sweep");
    const bool has_map = doc.has_section("map");
    const bool has_sites = doc.has_section("sites");
    if (int(has_sweep) + int(has_map) + int(has_sites) != 1) {
        throw ConfigError(doc.origin() + ": exactly one of [sweep], [map] or [sites] must be present");
    }

    if (has_sweep) {
        sc.mode = ScenarioMode::Sweep;
        SweepSpec s;
        if (auto t = r.text("sweep", "param")) s.parameter = r.guarded("sweep", "param", [&] { return parse_sweep_parameter(*t); });
        auto t = r.text("sweep", "range");
        if (!t) throw ConfigError(doc.origin() + ": [sweep] range is required");
        s.values = r.guarded("sweep", "range", [&] { return parse_range(*t); });
        auto lat = r.text("sweep", "latitudes");
        if (!lat) throw ConfigError(doc.origin() + ": [sweep] latitudes is required");
        s.latitudes = r.guarded("sweep", "latitudes", [&] { return parse_range(*lat); });
        if (auto lon = r.text("sweep", "longitudes")) s.longitudes = r.guarded("sweep", "longitudes", [&] { return parse_range(*lon); });
        for (double lat_deg : s.latitudes) {
            if (lat_deg < -90.0 || lat_deg > 90.0) r.fail("sweep", "latitudes", "latitude outside [-90, 90]");
        }
        for (double v : s.values) {
            if (s.parameter == SweepParameter::Elevation) r.guarded("sweep", "range", [&] { (void)ElevationMask(v); });
            else if (!(v >= 0.0 && v < 180.0)) r.fail("sweep", "range", "inclination outside [0, 180)");
        }
        sc.sweep = std::move(s);
    }
    if (has_map) {
        sc.mode = ScenarioMode::Map;
        MapRegion m;
        if (auto v = r.number("map", "lat_min")) m.lat_min = *v;
        if (auto v = r.number("map", "lat_max")) m.lat_max = *v;
        if (auto v = r.number("map", "lon_min")) m.lon_min = *v;
        if (auto v = r.number("map", "lon_max")) m.lon_max = *v;
        if (auto v = r.number("map", "resolution_deg")) m.resolution_deg = *v;
        r.guarded("map", "lat_min", [&] { m.validate(); });
        sc.region = m;
    }
    if (has_sites) {
        sc.mode = ScenarioMode::SingleRun;
        const auto* e = doc.find("sites", "site");
        if (!e || e->values.empty()) throw ConfigError(doc.origin() + ": [sites] needs at least one 'site = lat, lon'");
        for (const auto& v : e->values) {
            const auto parts = split(v, ',');
            if (parts.size() < 2 || parts.size() > 3) r.fail("sites", "site", "expected 'lat, lon[, alt_km]', got '" + v + "'");
            double c[3] = {0.0, 0.0, 0.0};
            for (std::size_t k = 0; k < parts.size(); ++k) {
                const auto [ptr, ec] = std::from_chars(parts[k].data(), parts[k].data() + parts[k].size(), c[k]);
                if (ec != std::errc() || ptr != parts[k].data() + parts[k].size()) {
                    r.fail("sites", "site", "bad coordinate '" + parts[k] + "'");
                }
            }
            sc.sites.push_back(r.guarded("sites", "site", [&] { return GeoPoint(c[0], c[1], c[2]); }));
        }
    }

    if (auto t = r.text("output", "dir")) sc.output_dir = *t;
    if (auto t = r.text("output", "name")) sc.name = *t;
    if (auto t = r.text("output", "products")) {
        for (auto& p : split(*t, ',')) {
            if (!p.empty()) sc.products.push_back(p);
        }
    }
    if (sc.products.empty()) {
        switch (sc.mode) {
        case ScenarioMode::Sweep: sc.products = {"sweep_csv"}; break;
        case ScenarioMode::Map: sc.products = {"map_csv", "map_geojson"}; break;
        case ScenarioMode::SingleRun: sc.products = {"sites_csv"}; break;
        }
    }
    static const std::set<std::string> allowed{"sweep_csv", "map_csv", "map_geojson", "sites_csv",
                                               "timeline_csv", "tle", "ephemeris_csv"};
    for (const auto& p : sc.products) {
        if (!allowed.contains(p)) r.fail("output", "products", "unknown product '" + p + "'");
    }
    sc.validate();
    sc.hash = fnv1a_hex(canonical_text(doc));
    return sc;
}

void Scenario::validate() const
{
    shell.validate();
    grid.validate();
    (void)ElevationMask(mask_deg);
    auto need = [&](const char* product, bool ok, const char* mode) {
        if (std::find(products.begin(), products.end(), product) != products.end() && !ok) {
            throw ConfigError(std::string("product '") + product + "' requires " + mode + " mode");
        }
    };
    need("sweep_csv", mode == ScenarioMode::Sweep, "sweep");
    need("map_csv", mode == ScenarioMode::Map, "map");
    need("map_geojson", mode == ScenarioMode::Map, "map");
    need("sites_csv", mode == ScenarioMode::SingleRun, "sites");
    need("timeline_csv", mode == ScenarioMode::SingleRun, "sites");
    switch (mode) {
    case ScenarioMode::Sweep:
        if (!sweep || sweep->values.empty() || sweep->latitudes.empty() || sweep->longitudes.empty()) {
            throw ConfigError("sweep mode needs non-empty parameter, latitude and longitude axes");
        }
        break;
    case ScenarioMode::Map:
        if (!region) throw ConfigError("map mode needs a region");
        region->validate();
        break;
    case ScenarioMode::SingleRun:
        if (sites.empty()) throw ConfigError("single-run mode needs at least one site");
        break;
    }
}

namespace {

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path.string());
    return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path)
{
    os.flush();
    if (!os) throw IoError("failed while writing " + path.string());
}

bool wants(const Scenario& sc, std::string_view product)
{
    return std::find(sc.products.begin(), sc.products.end(), product) != sc.products.end();
}

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

RunResult run_scenario(const Scenario& sc)
{
    sc.validate();
    std::error_code ec;
    std::filesystem::create_directories(sc.output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + sc.output_dir.string() + ": " + ec.message());

    const RunHeader header = make_header(sc.shell, sc.grid, sc.propagation, sc.hash);
    RunResult result;
    auto emit = [&](const std::string& file, auto&& writer) {
        const auto path = sc.output_dir / file;
        auto os = open_output(path);
        writer(os);
        finish(os, path);
        result.files.push_back(path);
    };

    const auto elements = expand_shell(sc.shell);
    std::optional<Ephemeris> eph;
    auto ephemeris = [&]() -> const Ephemeris& {
        if (!eph) eph = propagate(elements, sc.grid, sc.propagation);
        return *eph;
    };

    switch (sc.mode) {
    case ScenarioMode::Sweep: {
        SweepRequest req;
        req.shell = sc.shell;
        req.parameter = sc.sweep->parameter;
        req.values = sc.sweep->values;
        req.fixed_mask_deg = sc.mask_deg;
        req.latitudes = sc.sweep->latitudes;
        req.longitudes = sc.sweep->longitudes;
        req.grid = sc.grid;
        req.propagation = sc.propagation;
        const auto rows = latitude_sweep(req);
        if (wants(sc, "sweep_csv")) emit("sweep.csv", [&](std::ostream& os) { write_sweep_csv(os, header, rows); });
        break;
    }
    case ScenarioMode::Map: {
        const auto grid = coverage_map(ephemeris(), ElevationMask(sc.mask_deg), *sc.region);
        if (wants(sc, "map_csv")) emit("map.csv", [&](std::ostream& os) { write_map_csv(os, header, grid); });
        if (wants(sc, "map_geojson")) {
            emit("map.geojson", [&](std::ostream& os) { write_map_geojson(os, header, grid); });
        }
        break;
    }
    case ScenarioMode::SingleRun: {
        std::vector<VisibilityTimeline> timelines;
        for (const auto& site : sc.sites) {
            timelines.push_back(visibility_timeline(ephemeris(), site, ElevationMask(sc.mask_deg)));
        }
        if (wants(sc, "sites_csv")) {
            emit("sites.csv", [&](std::ostream& os) {
                write_csv_header(os, header);
                os << "lat,lon,alt_km,mask_deg,p_cover,mean_visible,tau_median_s,tau_max_s,n_events\n";
                for (const auto& tl : timelines) {
                    const auto st = coverage_stats(tl);
                    os << fmt("%g", tl.site.lat()) << ',' << fmt("%g", tl.site.lon()) << ',' << fmt("%g", tl.site.alt())
                       << ',' << fmt("%g", tl.mask.deg()) << ',' << fmt("%.6f", st.p_cover) << ','
                       << fmt("%.6f", st.mean_visible) << ','
                       << (st.tau_median_s ? fmt("%.0f", *st.tau_median_s) : "") << ','
                       << (st.tau_max_s ? fmt("%.0f", *st.tau_max_s) : "") << ',' << st.revisit.size() << '\n';
                }
            });
        }
        if (wants(sc, "timeline_csv")) {
            for (std::size_t i = 0; i < timelines.size(); ++i) {
                emit("timeline_" + std::to_string(i) + ".csv", [&](std::ostream& os) {
                    write_csv_header(os, header);
                    write_timeline_csv(os, timelines[i]);
                });
            }
        }
        break;
    }
    }

    if (wants(sc, "tle")) {
        emit("constellation.tle", [&](std::ostream& os) { write_tle(os, tle_export(sc.shell)); });
    }
    if (wants(sc, "ephemeris_csv")) {
        emit("ephemeris.csv", [&](std::ostream& os) {
            write_csv_header(os, header);
            write_ephemeris_csv(os, ephemeris());
        });
    }

    nlohmann::ordered_json manifest;
    manifest["name"] = sc.name;
    manifest["generated_at"] = format_utc(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
    for (const auto& [k, v] : header.entries()) manifest[k] = v;
    manifest["mask_deg"] = sc.mask_deg;
    manifest["mode"] = sc.mode == ScenarioMode::Sweep ? "sweep" : sc.mode == ScenarioMode::Map ? "map" : "single-run";
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& f : result.files) files.push_back(f.filename().string());
    manifest["files"] = files;
    emit("manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
    return result;
}

RunResult run_scenario(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw IoError("cannot open scenario " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return run_scenario(Scenario::from_document(ScenarioDocument::parse(ss.str(), path.string())));
}

} // namespace leocov
