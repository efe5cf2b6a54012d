#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "mtsweep/event_log.hpp"

namespace mtsweep {

/// Table-style multitasking counts for a log.
struct MultitaskCounts {
  std::uint64_t tasks_multitasked = 0;       // activities with an overlapped instance
  std::uint64_t events_overlapped = 0;       // items overlapping at least one other item
  std::uint64_t resources_multitasking = 0;  // resources with an overlapped pair
  std::uint64_t pairs_overlapped = 0;        // unordered same-resource pairs

  bool operator==(const MultitaskCounts&) const = default;
};

/// Size of the log the counts are taken from.
struct LogTotals {
  std::uint64_t tasks = 0;
  std::uint64_t events = 0;
  std::uint64_t resources = 0;
  std::uint64_t pairs = 0;  // unordered same-resource pairs

  bool operator==(const LogTotals&) const = default;
};

struct MetricsReport {
  double mtli = 0.0;
  /// nullopt when no resource has an overlapped pair; serialized as 0 plus a flag.
  std::optional<double> mtwii;
  std::map<std::string, double> mtri_all;
  std::map<std::string, double> mtri_overlapped;  // only resources with an overlapped pair
  MultitaskCounts counts;
  LogTotals totals;
};

/// Intersection length of two items of the same resource over the longer of
/// their durations; 0 when both are instantaneous. Throws
/// std::invalid_argument if the resources differ.
double overlap(const WorkItem& a, const WorkItem& b);

/// Mean overlap over all unordered pairs; 0 with fewer than two items.
double mtri(const ResourceSegment& segment);

/// Mean overlap over pairs with a strictly positive intersection.
std::optional<double> mtri_overlapped(const ResourceSegment& segment);

/// Mean of mtri over all resources; 0 for an empty log.
double mtli(const EventLog& log);

/// Mean of mtri_overlapped over the resources where it is defined.
std::optional<double> mtwii(const EventLog& log);

MetricsReport summarize(const EventLog& log);

}  // namespace mtsweep
