#include "mtsweep/inject.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace mtsweep {

std::vector<std::pair<WorkItem, WorkItem>> find_adjacent_pairs(const ResourceSegment& segment) {
  std::vector<WorkItem> items;
  for (const auto& item : segment.items) {
    if (item.duration() > 0) items.push_back(item);
  }
  std::sort(items.begin(), items.end(), segment_order);

  std::vector<std::pair<WorkItem, WorkItem>> pairs;
  std::vector<bool> consumed(items.size(), false);
  for (std::size_t pivot = 0; pivot < items.size(); ++pivot) {
    if (consumed[pivot]) continue;
    const Instant end = items[pivot].end;
    for (std::size_t j = pivot + 1; j < items.size() && items[j].start <= end; ++j) {
      if (consumed[j] || items[j].start != end) continue;
      consumed[pivot] = consumed[j] = true;
      pairs.emplace_back(items[pivot], items[j]);
      break;
    }
  }
  return pairs;
}

ShiftPlan plan_shift(const EventLog& log, double percentage) {
  if (!(percentage >= 0.0 && percentage <= 1.0)) {
    throw std::invalid_argument("shift percentage must be within [0, 1], got " +
                                std::to_string(percentage));
  }
  ShiftPlan plan{percentage, {}};
  for (const auto& segment : segments_per_resource(log)) {
    for (const auto& [first, second] : find_adjacent_pairs(segment)) {
      const DurationMs longest = std::max(first.duration(), second.duration());
      const auto wanted = static_cast<DurationMs>(std::llround(percentage * static_cast<double>(longest)));
      plan.pairs.push_back({first.id, second.id, std::min(wanted, first.duration())});
    }
  }
  return plan;
}

EventLog apply_shift(const EventLog& log, const ShiftPlan& plan) {
  std::map<WorkItemId, DurationMs> delta_of;
  for (const auto& p : plan.pairs) delta_of[p.second] = p.delta;

  std::vector<WorkItem> items = log.items();
  for (auto& item : items) {
    auto it = delta_of.find(item.id);
    if (it == delta_of.end()) continue;
    item.start = item.start - it->second;
    item.end = item.end - it->second;
  }
  return validate_log(std::move(items));
}

EventLog inject(const EventLog& log, double percentage) {
  return apply_shift(log, plan_shift(log, percentage));
}

}  // namespace mtsweep
