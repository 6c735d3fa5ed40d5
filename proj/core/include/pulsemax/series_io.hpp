#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pulsemax/event_series.hpp"

namespace pulsemax {

// CSV format: header line "time_hours,peak", then one "time,magnitude" row
// per event. Decimal points, no thousands separators.
//
// Unsorted rows are sorted with a message appended to *warnings (when
// given); duplicate timestamps and malformed rows are errors, reported with
// the 1-based file line. trigger, when given, must lie at or below every
// magnitude; otherwise the trigger is the smallest magnitude seen.
EventSeries load_events(const std::filesystem::path& path,
                        std::optional<double> trigger = std::nullopt,
                        std::vector<std::string>* warnings = nullptr);

void save_events(const EventSeries& series, const std::filesystem::path& path);

}  // namespace pulsemax
