#include "pulsemax/series_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pulsemax/errors.hpp"

namespace pulsemax {

namespace {

constexpr const char* kHeader = "time_hours,peak";

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_field(const std::string& field, std::size_t line_no, const char* what) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": cannot parse " + what +
                        " from '" + field + "'");
    }
    if (pos != field.size())
        throw DataError("line " + std::to_string(line_no) + ": trailing characters in " +
                        what + " '" + field + "'");
    return value;
}

}  // namespace

EventSeries load_events(const std::filesystem::path& path, std::optional<double> trigger,
                        std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + path.string() + "' is empty");
    if (strip(line) != kHeader)
        throw DataError("line 1: expected header '" + std::string(kHeader) + "'");

    std::vector<EventRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = strip(line);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string::npos)
            throw DataError("line " + std::to_string(line_no) + ": expected 'time,magnitude'");
        const double t = parse_field(strip(row.substr(0, comma)), line_no, "time");
        const double m = parse_field(strip(row.substr(comma + 1)), line_no, "magnitude");
        records.push_back(EventRecord{t, m});
    }
    if (records.empty()) throw DataError("'" + path.string() + "' has no event rows");

    const bool sorted = std::is_sorted(
        records.begin(), records.end(),
        [](const EventRecord& a, const EventRecord& b) { return a.time < b.time; });
    if (!sorted) {
        std::stable_sort(records.begin(), records.end(),
                         [](const EventRecord& a, const EventRecord& b) {
                             return a.time < b.time;
                         });
        if (warnings)
            warnings->push_back("'" + path.string() + "': rows were not time-ordered; sorted");
    }
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].time == records[i - 1].time)
            throw DataError("duplicate timestamp " + std::to_string(records[i].time) +
                            ": the process is ordinary, at most one event per instant");

    double min_mag = records.front().magnitude;
    for (const auto& rec : records) min_mag = std::min(min_mag, rec.magnitude);
    const double trig = trigger.value_or(min_mag);
    const double span = records.back().time;
    return make_series(std::move(records), span, trig);
}

void save_events(const EventSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << kHeader << "\n";
    char buf[64];
    for (const auto& rec : series.records) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", rec.time, rec.magnitude);
        out << buf;
    }
    if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace pulsemax
