#include "leocov/time.hpp"

#include "leocov/errors.hpp"

#include <cstdio>

namespace leocov {

UtcTime parse_utc(std::string_view text)
{
    using namespace std::chrono;
    const std::string s(text);
    int y = 0, mo = 0, d = 0, hh = 0, mm = 0, ss = 0, used = 0;
    const int n = std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &hh, &mm, &ss, &used);
    const bool tail_ok = n == 6 && (s.size() == static_cast<std::size_t>(used) ||
                                    (s.size() == static_cast<std::size_t>(used) + 1 && s.back() == 'Z'));
    if (!tail_ok) {
        throw ConfigError("malformed UTC timestamp '" + s + "', expected YYYY-MM-DDTHH:MM:SSZ");
    }
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59 || hh < 0 || mm < 0 || ss < 0) {
        throw ConfigError("invalid calendar date/time '" + s + "'");
    }
    return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_utc(UtcTime t)
{
    using namespace std::chrono;
    const auto day_start = floor<days>(t);
    const year_month_day ymd{day_start};
    const hh_mm_ss<seconds> tod{t - day_start};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf;
}

} // namespace leocov
