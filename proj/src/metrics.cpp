#include "mtsweep/metrics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mtsweep {

namespace {

DurationMs intersection(const WorkItem& a, const WorkItem& b) {
  return std::min(a.end, b.end) - std::max(a.start, b.start);
}

struct SegmentScan {
  std::uint64_t pairs = 0;
  double overlap_sum = 0.0;
  std::uint64_t overlapped_pairs = 0;
  double overlapped_sum = 0.0;
  std::vector<bool> overlapped_item;  // indexed like the sorted items
};

// Pairs whose later item starts at or after the earlier item's end cannot
// intersect, so the inner loop stops there. Summation order is fixed by the
// (start, end, id) order of the items.
SegmentScan scan(const std::vector<WorkItem>& sorted) {
  SegmentScan s;
  const std::size_t n = sorted.size();
  s.pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  s.overlapped_item.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && sorted[j].start < sorted[i].end; ++j) {
      if (intersection(sorted[i], sorted[j]) <= 0) continue;
      const double ratio = overlap(sorted[i], sorted[j]);
      s.overlap_sum += ratio;
      s.overlapped_sum += ratio;
      ++s.overlapped_pairs;
      s.overlapped_item[i] = true;
      s.overlapped_item[j] = true;
    }
  }
  return s;
}

SegmentScan scan(const ResourceSegment& segment) {
  if (std::is_sorted(segment.items.begin(), segment.items.end(), segment_order)) {
    return scan(segment.items);
  }
  auto items = segment.items;
  std::sort(items.begin(), items.end(), segment_order);
  return scan(items);
}

double mean_all(const SegmentScan& s) {
  return s.pairs == 0 ? 0.0 : s.overlap_sum / static_cast<double>(s.pairs);
}

std::optional<double> mean_overlapped(const SegmentScan& s) {
  if (s.overlapped_pairs == 0) return std::nullopt;
  return s.overlapped_sum / static_cast<double>(s.overlapped_pairs);
}

}  // namespace

double overlap(const WorkItem& a, const WorkItem& b) {
  if (a.resource != b.resource) {
    throw std::invalid_argument("overlap: items " + to_string(a.id) + " and " + to_string(b.id) +
                                " belong to different resources");
  }
  const DurationMs longest = std::max(a.duration(), b.duration());
  if (longest <= 0) return 0.0;
  const DurationMs shared = std::max<DurationMs>(intersection(a, b), 0);
  return static_cast<double>(shared) / static_cast<double>(longest);
}

double mtri(const ResourceSegment& segment) { return mean_all(scan(segment)); }

std::optional<double> mtri_overlapped(const ResourceSegment& segment) {
  return mean_overlapped(scan(segment));
}

double mtli(const EventLog& log) { return summarize(log).mtli; }

std::optional<double> mtwii(const EventLog& log) { return summarize(log).mtwii; }

MetricsReport summarize(const EventLog& log) {
  MetricsReport report;
  std::set<std::string> all_tasks;
  std::set<std::string> multitasked_tasks;
  double mtri_sum = 0.0;
  double mtri_o_sum = 0.0;

  const auto segments = segments_per_resource(log);
  for (const auto& segment : segments) {
    const SegmentScan s = scan(segment.items);
    const double all = mean_all(s);
    report.mtri_all[segment.resource] = all;
    mtri_sum += all;
    if (auto o = mean_overlapped(s)) {
      report.mtri_overlapped[segment.resource] = *o;
      mtri_o_sum += *o;
      ++report.counts.resources_multitasking;
    }
    report.counts.pairs_overlapped += s.overlapped_pairs;
    report.totals.pairs += s.pairs;
    for (std::size_t i = 0; i < segment.items.size(); ++i) {
      all_tasks.insert(segment.items[i].activity);
      if (s.overlapped_item[i]) {
        ++report.counts.events_overlapped;
        multitasked_tasks.insert(segment.items[i].activity);
      }
    }
  }

  if (!segments.empty()) report.mtli = mtri_sum / static_cast<double>(segments.size());
  if (!report.mtri_overlapped.empty()) {
    report.mtwii = mtri_o_sum / static_cast<double>(report.mtri_overlapped.size());
  }
  report.counts.tasks_multitasked = multitasked_tasks.size();
  report.totals.tasks = all_tasks.size();
  report.totals.events = log.size();
  report.totals.resources = segments.size();
  return report;
}

}  // namespace mtsweep
