#include "mtsweep/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

namespace mtsweep {

namespace {

// Rank of a point among others at the same timestamp.
int tie_rank(const TimePoint& p, bool zero_length) {
  if (zero_length) return p.symbol == Boundary::kPlus ? 1 : 2;
  return p.symbol == Boundary::kMinus ? 0 : 3;
}

std::string format_2dp(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string join_labels(const std::vector<WorkItemId>& ids,
                        const std::function<std::string(WorkItemId)>& label) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += label(ids[i]);
  }
  return out;
}

}  // namespace

std::size_t AdjustedLog::aux_count() const {
  std::size_t n = 0;
  for (const auto& r : aux) n += r.items.size();
  return n;
}

std::vector<TimePoint> build_ordtimes(const ResourceSegment& segment) {
  struct Keyed {
    TimePoint point;
    int rank;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(2 * segment.items.size());
  for (const auto& item : segment.items) {
    const bool zero_length = item.start == item.end;
    TimePoint plus{item.start, item.id, Boundary::kPlus};
    TimePoint minus{item.end, item.id, Boundary::kMinus};
    keyed.push_back({plus, tie_rank(plus, zero_length)});
    keyed.push_back({minus, tie_rank(minus, zero_length)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.point.tstamp, a.rank, a.point.wiid) <
           std::tie(b.point.tstamp, b.rank, b.point.wiid);
  });

  std::vector<TimePoint> points;
  points.reserve(keyed.size());
  for (const auto& k : keyed) points.push_back(k.point);
  return points;
}

std::vector<ActiveInterval> build_intervals(const std::vector<TimePoint>& points) {
  std::vector<ActiveInterval> intervals;
  std::vector<WorkItemId> active;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const TimePoint& p = points[i];
    if (p.symbol == Boundary::kPlus) {
      active.push_back(p.wiid);
    } else {
      auto it = std::find(active.begin(), active.end(), p.wiid);
      if (it != active.end()) active.erase(it);
    }
    const Instant next = points[i + 1].tstamp;
    if (next > p.tstamp && !active.empty()) intervals.push_back({p.tstamp, next, active});
  }
  return intervals;
}

std::vector<AuxWorkItem> build_aux_items(const std::vector<ActiveInterval>& intervals,
                                         std::uint64_t first_id) {
  std::vector<AuxWorkItem> aux;
  std::uint64_t id = first_id;
  for (const auto& interval : intervals) {
    const ExactMs share =
        ExactMs::span_share(interval.end_int - interval.start_int, interval.active_ids.size());
    for (const WorkItemId wiid : interval.active_ids) {
      aux.push_back({id++, interval.start_int, interval.end_int, wiid, share});
    }
  }
  return aux;
}

AdjustedLog adjust_log(const EventLog& log) {
  AdjustedLog result;
  std::map<WorkItemId, ExactMs> share_sum;
  std::uint64_t next_id = 1;

  // Zero-length items never appear in an emitted interval, so they collect
  // no shares and keep their (zero) duration.
  for (const auto& segment : segments_per_resource(log)) {
    auto aux = build_aux_items(build_intervals(build_ordtimes(segment)), next_id);
    next_id += aux.size();
    for (const auto& a : aux) share_sum[a.parent_wiid] += a.duration;
    result.aux.push_back({segment.resource, std::move(aux)});
  }

  std::vector<WorkItem> rounded;
  result.items.reserve(log.size());
  rounded.reserve(log.size());
  for (const auto& item : log.items()) {
    auto it = share_sum.find(item.id);
    CoalescedItem c{item, it == share_sum.end() ? ExactMs{} : it->second};
    WorkItem w = item;
    w.end = c.rounded_end();
    rounded.push_back(std::move(w));
    result.items.push_back(std::move(c));
  }
  result.coalesced = validate_log(std::move(rounded));
  return result;
}

void write_debug_table(std::ostream& out, const EventLog& log, const DebugTableStyle& style) {
  std::function<std::string(WorkItemId)> label = style.label;
  if (!label) label = [](WorkItemId id) { return to_string(id); };
  const double unit = static_cast<double>(style.unit);

  std::uint64_t next_id = 1;
  for (const auto& segment : segments_per_resource(log)) {
    const Instant origin =
        style.origin.value_or(segment.items.empty() ? Instant{} : segment.items.front().start);
    auto at = [&](Instant t) { return format_2dp(static_cast<double>(t - origin) / unit); };

    const auto points = build_ordtimes(segment);
    const auto intervals = build_intervals(points);
    const auto aux = build_aux_items(intervals, next_id);
    next_id += aux.size();

    out << "resource " << segment.resource << '\n';
    out << "ordtimes = {";
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      out << (i ? ", " : "") << '(' << at(p.tstamp) << ", " << label(p.wiid) << ", '"
          << (p.symbol == Boundary::kPlus ? '+' : '-') << "')";
    }
    out << "}\n";
    out << "intervals = {";
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      const auto& iv = intervals[i];
      out << (i ? ", " : "") << '(' << at(iv.start_int) << ", " << at(iv.end_int) << ", '"
          << join_labels(iv.active_ids, label) << "')";
    }
    out << "}\n";
    out << "lwiaux = {";
    for (std::size_t i = 0; i < aux.size(); ++i) {
      const auto& a = aux[i];
      out << (i ? ", " : "") << '(' << at(a.start_int) << ", " << at(a.end_int) << ", '"
          << label(a.parent_wiid) << "', " << format_2dp(a.duration.to_double() / unit) << ')';
    }
    out << "}\n";
  }
}

}  // namespace mtsweep
