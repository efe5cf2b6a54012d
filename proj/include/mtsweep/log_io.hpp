#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "mtsweep/event_log.hpp"
#include "mtsweep/metrics.hpp"
#include "mtsweep/sweep.hpp"

namespace mtsweep {

enum class LogFormat { kCsv, kXes };

/// Format implied by a `.csv` / `.xes` extension (case-insensitive).
std::optional<LogFormat> format_from_path(const std::filesystem::path& path);
std::optional<LogFormat> parse_format(std::string_view name);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV with header `case_id,activity,resource,start_timestamp,end_timestamp`.
/// Work-item ids are assigned 1..n in row order. Throws LogError on header,
/// timestamp or validation problems (rows are reported by line number).
EventLog read_csv(std::istream& in);
EventLog read_csv(const std::filesystem::path& path);

/// XES subset: traces named by concept:name, events carrying concept:name,
/// org:resource, time:timestamp and lifecycle:transition. Start and complete
/// events are paired first-in first-out per (trace, activity, resource) in
/// document order; other transitions are ignored. Ids are assigned 1..n in
/// order of the start events.
EventLog read_xes(std::istream& in);
EventLog read_xes(const std::filesystem::path& path);

EventLog read_log(const std::filesystem::path& path, LogFormat format);

void write_csv(const EventLog& log, std::ostream& out);
/// Each work item becomes a start event immediately followed by its complete
/// event, so reading the file back pairs them identically.
void write_xes(const EventLog& log, std::ostream& out);
void write_log(const EventLog& log, LogFormat format, const std::filesystem::path& path);

/// Flat JSON object; reals carry 6 significant digits.
void write_report(const MetricsReport& report, std::ostream& out);
void write_report(const MetricsReport& report, const std::filesystem::path& path);

/// Auxiliary log as CSV, one row per aux item in id order.
void write_aux_table(const AdjustedLog& adjusted, const EventLog& source, std::ostream& out);

}  // namespace mtsweep
