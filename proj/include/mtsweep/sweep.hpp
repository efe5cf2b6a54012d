#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mtsweep/event_log.hpp"
#include "mtsweep/time.hpp"

namespace mtsweep {

enum class Boundary { kPlus, kMinus };

/// Start (kPlus) or end (kMinus) of one work item on the sweep line.
struct TimePoint {
  Instant tstamp;
  WorkItemId wiid;
  Boundary symbol;

  bool operator==(const TimePoint&) const = default;
};

/// Maximal stretch [start_int, end_int) during which the same items are active.
struct ActiveInterval {
  Instant start_int;
  Instant end_int;
  std::vector<WorkItemId> active_ids;  // in activation order

  bool operator==(const ActiveInterval&) const = default;
};

/// Fair share of one interval attributed to one of its active items.
struct AuxWorkItem {
  std::uint64_t id = 0;
  Instant start_int;
  Instant end_int;
  WorkItemId parent_wiid;
  ExactMs duration;  // (end_int - start_int) / |active ids|

  bool operator==(const AuxWorkItem&) const = default;
};

/// Auxiliary items produced from one resource segment.
struct ResourceAux {
  std::string resource;
  std::vector<AuxWorkItem> items;
};

/// Source item with its exact fair-share processing time.
struct CoalescedItem {
  WorkItem source;
  ExactMs duration;

  /// start + duration, rounded half-up to whole milliseconds.
  Instant rounded_end() const { return source.start + duration.round_half_up(); }
};

struct AdjustedLog {
  std::vector<ResourceAux> aux;        // one entry per resource, resource-name order
  std::vector<CoalescedItem> items;    // same order as the input log
  EventLog coalesced;                  // items with rounded fair-share ends

  std::size_t aux_count() const;
};

/// Boundary points of a segment ordered by timestamp. At equal timestamps
/// ends of positive-length items come first, then both points of zero-length
/// items (own start before own end), then starts; remaining ties by id.
std::vector<TimePoint> build_ordtimes(const ResourceSegment& segment);

/// Sweeps the points and emits every non-empty, positive-length interval
/// together with the items active throughout it.
std::vector<ActiveInterval> build_intervals(const std::vector<TimePoint>& points);

/// One auxiliary item per (interval, active id), ids counting up from first_id.
std::vector<AuxWorkItem> build_aux_items(const std::vector<ActiveInterval>& intervals,
                                         std::uint64_t first_id = 1);

/// Runs the sweep over every resource segment and coalesces the shares back
/// into one item per source. Zero-length items bypass the sweep and are
/// copied unchanged.
AdjustedLog adjust_log(const EventLog& log);

/// Rendering knobs for write_debug_table.
struct DebugTableStyle {
  /// Times are printed as (t - origin) / unit; nullopt origin means the
  /// earliest start of each segment.
  std::optional<Instant> origin;
  DurationMs unit = kMsPerMinute;
  /// Item label; defaults to the numeric id.
  std::function<std::string(WorkItemId)> label;
};

/// Text dump of ordtimes, intervals and aux items per resource, one brace
/// list per line with values rounded to 2 decimals.
void write_debug_table(std::ostream& out, const EventLog& log, const DebugTableStyle& style = {});

}  // namespace mtsweep
