#include "leocov/constellation.hpp"

#include "leocov/errors.hpp"
#include "leocov/geo_core.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace leocov {

std::string_view to_string(WalkerPattern p) { return p == WalkerPattern::Delta ? "delta" : "star"; }

std::string_view to_string(PhasingConvention c)
{
    return c == PhasingConvention::PaperPerPlane ? "paper-per-plane" : "classic-per-sat";
}

WalkerPattern parse_pattern(std::string_view text)
{
    if (text == "delta" || text == "Delta") return WalkerPattern::Delta;
    if (text == "star" || text == "Star") return WalkerPattern::Star;
    throw ConfigError("unknown Walker pattern '" + std::string(text) + "' (expected delta|star)");
}

PhasingConvention parse_phasing_convention(std::string_view text)
{
    if (text == "paper-per-plane" || text == "paper") return PhasingConvention::PaperPerPlane;
    if (text == "classic-per-sat" || text == "classic") return PhasingConvention::ClassicPerSat;
    throw ConfigError("unknown phasing convention '" + std::string(text) +
                      "' (expected paper-per-plane|classic-per-sat)");
}

double raan_span_deg(WalkerPattern p) { return p == WalkerPattern::Delta ? 360.0 : 180.0; }

void WalkerShell::validate() const
{
    if (!(inclination_deg >= 0.0 && inclination_deg < 180.0)) {
        throw ConfigError("inclination must lie in [0, 180) deg");
    }
    if (total_sats <= 0) throw ConfigError("total satellites T must be positive");
    if (planes <= 0) throw ConfigError("plane count P must be positive");
    if (total_sats % planes != 0) {
        throw ConfigError("plane count P must divide total satellites T (T=" + std::to_string(total_sats) +
                          ", P=" + std::to_string(planes) + ")");
    }
    if (phasing < 0 || phasing >= planes) {
        throw ConfigError("phasing F must lie in [0, P-1] (F=" + std::to_string(phasing) +
                          ", P=" + std::to_string(planes) + ")");
    }
    if (!(altitude_km > 0.0 && altitude_km <= 2000.0)) {
        throw ConfigError("altitude must lie in (0, 2000] km");
    }
    if (!std::isfinite(raan0_deg)) throw ConfigError("raan0 must be finite");
}

std::string WalkerShell::notation() const
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%g:%d/%d/%d", inclination_deg, total_sats, planes, phasing);
    return buf;
}

std::vector<SatelliteElement> expand_shell(const WalkerShell& shell)
{
    shell.validate();
    const int per_plane = shell.sats_per_plane();
    const double span = raan_span_deg(shell.pattern);
    const double slot_spacing = 360.0 / per_plane;
    const double plane_shift = shell.phasing_convention == PhasingConvention::PaperPerPlane
                                   ? shell.phasing * span / shell.planes
                                   : shell.phasing * 360.0 / shell.total_sats;
    const double a = constants::kEarthRadiusKm + shell.altitude_km;
    const double n = std::sqrt(constants::kMuKm3PerS2 / (a * a * a));

    std::vector<SatelliteElement> out;
    out.reserve(static_cast<std::size_t>(shell.total_sats));
    for (int p = 0; p < shell.planes; ++p) {
        const double raan = wrap_360(shell.raan0_deg + p * (span / shell.planes));
        for (int s = 0; s < per_plane; ++s) {
            SatelliteElement e;
            e.id = {p, s};
            e.raan_deg = raan;
            e.initial_arg_latitude_deg = wrap_360(s * slot_spacing + p * plane_shift);
            e.inclination_deg = shell.inclination_deg;
            e.semi_major_axis_km = a;
            e.mean_motion_rad_s = n;
            out.push_back(e);
        }
    }
    return out;
}

int tle_checksum(std::string_view line)
{
    int sum = 0;
    for (std::size_t i = 0; i < line.size() && i < 68; ++i) {
        const char c = line[i];
        if (c >= '0' && c <= '9') sum += c - '0';
        else if (c == '-') sum += 1;
    }
    return sum % 10;
}

namespace {

// Rounds to the 4-decimal TLE angle field and keeps the result in [0, 360).
double tle_angle(double deg)
{
    double r = std::round(wrap_360(deg) * 1e4) / 1e4;
    return r >= 360.0 ? 0.0 : r;
}

std::string piece_letters(int index)
{
    std::string s;
    int k = index;
    do {
        s.insert(s.begin(), static_cast<char>('A' + k % 26));
        k = k / 26 - 1;
    } while (k >= 0);
    return s;
}

std::string with_checksum(std::string line)
{
    line.push_back(static_cast<char>('0' + tle_checksum(line)));
    return line;
}

} // namespace

std::vector<TleRecord> tle_export(const WalkerShell& shell)
{
    using namespace std::chrono;
    const auto elements = expand_shell(shell);

    const auto day_start = floor<days>(shell.epoch);
    const year_month_day ymd{day_start};
    const int year = static_cast<int>(ymd.year());
    if (year < 1957 || year > 2056) {
        throw ExportError("epoch year " + std::to_string(year) + " is outside the TLE range 1957..2056");
    }
    if (kFirstCatalogNumber + shell.total_sats - 1 > 99999) {
        throw ExportError("too many satellites for five-digit catalog numbers");
    }
    if (shell.total_sats > 18278) throw ExportError("too many satellites for launch piece letters");

    const sys_days jan1{year_month_day{ymd.year(), January, day{1}}};
    const double doy = static_cast<double>((day_start - jan1).count() + 1) +
                       duration<double>(shell.epoch - day_start).count() / 86400.0;
    const int yy = year % 100;

    std::vector<TleRecord> out;
    out.reserve(elements.size());
    for (std::size_t k = 0; k < elements.size(); ++k) {
        const auto& e = elements[k];
        const int catnum = kFirstCatalogNumber + static_cast<int>(k);
        const double rev_per_day = e.mean_motion_rad_s * 86400.0 / (2.0 * std::numbers::pi);

        char intl[16];
        std::snprintf(intl, sizeof intl, "%02d001%s", yy, piece_letters(static_cast<int>(k)).c_str());
        char epoch_field[16];
        std::snprintf(epoch_field, sizeof epoch_field, "%02d%012.8f", yy, doy);

        char l1[128];
        std::snprintf(l1, sizeof l1, "1 %05dU %-8s %14s %10s %8s %8s 0 %4d", catnum, intl, epoch_field,
                      " .00000000", " 00000-0", " 00000-0", 999);
        char l2[128];
        std::snprintf(l2, sizeof l2, "2 %05d %8.4f %8.4f %7s %8.4f %8.4f %11.8f%5d", catnum,
                      tle_angle(e.inclination_deg), tle_angle(e.raan_deg), "0000000", 0.0,
                      tle_angle(e.initial_arg_latitude_deg), rev_per_day, 0);

        TleRecord rec;
        char name[48];
        std::snprintf(name, sizeof name, "LEOCOV P%02d S%02d", e.id.plane, e.id.slot);
        rec.name = name;
        rec.line1 = with_checksum(l1);
        rec.line2 = with_checksum(l2);
        if (rec.line1.size() != 69 || rec.line2.size() != 69) {
            throw ExportError("TLE field overflow for satellite " + rec.name);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

void write_tle(std::ostream& os, const std::vector<TleRecord>& records, bool with_names)
{
    for (const auto& r : records) {
        if (with_names) os << r.name << '\n';
        os << r.line1 << '\n' << r.line2 << '\n';
    }
}

namespace {

double field_double(std::string_view line, std::size_t col, std::size_t len)
{
    std::string f(line.substr(col - 1, len));
    const auto b = f.find_first_not_of(' ');
    if (b == std::string::npos) throw ConfigError("empty TLE field at column " + std::to_string(col));
    f = f.substr(b);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw ConfigError("bad numeric TLE field '" + f + "' at column " + std::to_string(col));
    }
    return v;
}

void check_tle_line(std::string_view line, char number)
{
    if (line.size() != 69) throw ConfigError("TLE line must be 69 characters");
    if (line[0] != number) throw ConfigError(std::string("TLE line must start with '") + number + "'");
    if (line[68] - '0' != tle_checksum(line)) throw ConfigError("TLE checksum mismatch");
}

} // namespace

TleFields parse_tle(std::string_view line1, std::string_view line2)
{
    check_tle_line(line1, '1');
    check_tle_line(line2, '2');
    TleFields f;
    f.catalog_number = static_cast<int>(field_double(line1, 3, 5));
    const int yy = static_cast<int>(field_double(line1, 19, 2));
    f.epoch_year = yy < 57 ? 2000 + yy : 1900 + yy;
    f.epoch_day = field_double(line1, 21, 12);
    f.inclination_deg = field_double(line2, 9, 8);
    f.raan_deg = field_double(line2, 18, 8);
    f.eccentricity = field_double(line2, 27, 7) * 1e-7;
    f.arg_perigee_deg = field_double(line2, 35, 8);
    f.mean_anomaly_deg = field_double(line2, 44, 8);
    f.mean_motion_rev_day = field_double(line2, 53, 11);
    return f;
}

} // namespace leocov
