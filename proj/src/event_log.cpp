#include "mtsweep/event_log.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace mtsweep {

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string out = std::to_string(diagnostics.size()) + " invalid item(s)";
  for (const auto& d : diagnostics) out += "\n  " + d.location + ": " + d.message;
  return out;
}

}  // namespace

std::string to_string(WorkItemId id) { return std::to_string(id.value); }

LogError::LogError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

LogError::LogError(std::string location, std::string message)
    : LogError(std::vector<Diagnostic>{{std::move(location), std::move(message)}}) {}

const WorkItem* EventLog::find(WorkItemId id) const {
  auto it = std::find_if(items_.begin(), items_.end(), [id](const WorkItem& w) { return w.id == id; });
  return it == items_.end() ? nullptr : &*it;
}

EventLog validate_log(std::vector<WorkItem> raw_items) {
  std::vector<Diagnostic> problems;
  std::set<WorkItemId> seen;
  for (const auto& item : raw_items) {
    const std::string where = "item " + to_string(item.id);
    if (item.end < item.start) problems.push_back({where, "end precedes start"});
    if (item.resource.empty()) problems.push_back({where, "missing resource"});
    if (item.activity.empty()) problems.push_back({where, "missing activity"});
    if (!seen.insert(item.id).second) problems.push_back({where, "duplicate id"});
  }
  if (!problems.empty()) throw LogError(std::move(problems));

  std::sort(raw_items.begin(), raw_items.end(), [](const WorkItem& a, const WorkItem& b) {
    return std::tie(a.trace_id, a.start, a.id) < std::tie(b.trace_id, b.start, b.id);
  });

  EventLog log;
  log.items_ = std::move(raw_items);
  for (const auto& item : log.items_) log.trace_index_[item.trace_id].push_back(item.id);
  return log;
}

bool segment_order(const WorkItem& a, const WorkItem& b) {
  return std::tie(a.start, a.end, a.id) < std::tie(b.start, b.end, b.id);
}

std::vector<ResourceSegment> segments_per_resource(const EventLog& log) {
  std::map<std::string, std::vector<WorkItem>> by_resource;
  for (const auto& item : log.items()) by_resource[item.resource].push_back(item);

  std::vector<ResourceSegment> segments;
  segments.reserve(by_resource.size());
  for (auto& [resource, items] : by_resource) {
    std::sort(items.begin(), items.end(), segment_order);
    segments.push_back({resource, std::move(items)});
  }
  return segments;
}

}  // namespace mtsweep
