#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace leocov {

using UtcTime = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DDTHH:MM:SSZ" (the trailing Z is optional).
UtcTime parse_utc(std::string_view text);

std::string format_utc(UtcTime t);

} // namespace leocov
