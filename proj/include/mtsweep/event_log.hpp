#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtsweep/time.hpp"

namespace mtsweep {

/// Identifier of a work item. Assigned sequentially at ingestion.
struct WorkItemId {
  std::uint64_t value = 0;

  constexpr auto operator<=>(const WorkItemId&) const = default;
};

std::string to_string(WorkItemId id);

/// One executed task instance.
struct WorkItem {
  WorkItemId id;
  std::string activity;
  std::string resource;
  std::string trace_id;
  Instant start;
  Instant end;

  DurationMs duration() const { return end - start; }

  bool operator==(const WorkItem&) const = default;
};

/// Item-level problem found while validating or reading a log.
struct Diagnostic {
  std::string location;  // item id, row, or trace
  std::string message;
};

/// Raised when input items violate the log invariants. Carries every problem
/// found, not only the first.
class LogError : public std::runtime_error {
 public:
  explicit LogError(std::vector<Diagnostic> diagnostics);
  LogError(std::string location, std::string message);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Validated, immutable event log ordered by (trace_id, start, id).
class EventLog {
 public:
  EventLog() = default;

  const std::vector<WorkItem>& items() const { return items_; }
  /// trace id -> ids of its items in start order.
  const std::map<std::string, std::vector<WorkItemId>>& trace_index() const { return trace_index_; }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  /// Linear lookup by id; nullptr when absent.
  const WorkItem* find(WorkItemId id) const;

  bool operator==(const EventLog& other) const { return items_ == other.items_; }

 private:
  friend EventLog validate_log(std::vector<WorkItem> raw_items);

  std::vector<WorkItem> items_;
  std::map<std::string, std::vector<WorkItemId>> trace_index_;
};

/// Checks every item and builds the log. Throws LogError listing each item
/// with end < start, empty resource, empty activity, or a duplicated id.
EventLog validate_log(std::vector<WorkItem> raw_items);

/// All work items of one resource, sorted by (start, end, id).
struct ResourceSegment {
  std::string resource;
  std::vector<WorkItem> items;
};

/// One segment per distinct resource, in ascending resource-name order.
std::vector<ResourceSegment> segments_per_resource(const EventLog& log);

/// Tie-broken segment order: start, then end, then id.
bool segment_order(const WorkItem& a, const WorkItem& b);

}  // namespace mtsweep
