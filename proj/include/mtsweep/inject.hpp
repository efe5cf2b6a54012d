#pragma once

#include <utility>
#include <vector>

#include "mtsweep/event_log.hpp"

namespace mtsweep {

/// Second item of an adjacent pair moved earlier by delta.
struct PairShift {
  WorkItemId first;
  WorkItemId second;
  DurationMs delta = 0;  // 0 <= delta <= duration(first)

  bool operator==(const PairShift&) const = default;
};

struct ShiftPlan {
  double percentage = 0.0;
  std::vector<PairShift> pairs;  // every id appears in at most one pair
};

/// Greedy adjacency search over a start-ordered segment. Each unconsumed item
/// in turn is the pivot; the first later unconsumed item starting exactly at
/// the pivot's end becomes its partner and both are consumed. Instantaneous
/// items take no part.
std::vector<std::pair<WorkItem, WorkItem>> find_adjacent_pairs(const ResourceSegment& segment);

/// Plans the shift of every adjacent pair in the log:
/// delta = round(percentage * max(dur(e1), dur(e2))), clamped to dur(e1).
/// Throws std::invalid_argument unless 0 <= percentage <= 1.
ShiftPlan plan_shift(const EventLog& log, double percentage);

/// Moves start and end of each planned second item earlier by its delta.
EventLog apply_shift(const EventLog& log, const ShiftPlan& plan);

/// plan_shift followed by apply_shift.
EventLog inject(const EventLog& log, double percentage);

}  // namespace mtsweep
