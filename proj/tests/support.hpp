// Fixtures, random corpora and brute-force oracles shared by the unit tests
// and the acceptance binary. The oracles deliberately avoid the library's
// sweep and metrics code paths.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "mtsweep/event_log.hpp"
#include "mtsweep/time.hpp"

namespace mtsweep::testing {

/// 2020-01-01T00:00:00Z
inline constexpr Instant kBase{1577836800000};

inline WorkItem make_item(std::uint64_t id, std::string activity, std::string resource,
                          std::string trace, DurationMs start_min, DurationMs end_min,
                          Instant base = kBase, DurationMs unit = kMsPerMinute) {
  return WorkItem{WorkItemId{id}, std::move(activity), std::move(resource), std::move(trace),
                  base + start_min * unit, base + end_min * unit};
}

/// Four tasks of resource R1: A 0-130, B 10-75, C 95-150, D 110-140 minutes.
inline std::vector<WorkItem> example_items() {
  return {
      make_item(1, "T1", "R1", "case1", 0, 130),
      make_item(2, "T2", "R1", "case2", 10, 75),
      make_item(3, "T3", "R1", "case1", 95, 150),
      make_item(4, "T4", "R1", "case3", 110, 140),
  };
}

inline EventLog example_log() { return validate_log(example_items()); }

inline std::string example_label(WorkItemId id) {
  static const char* kLabels[] = {"?", "A", "B", "C", "D"};
  return id.value <= 4 ? kLabels[id.value] : to_string(id);
}

struct CorpusOptions {
  std::size_t max_items = 8;
  std::int64_t max_endpoint = 200;
  bool allow_zero_length = false;
  std::size_t resources = 1;
};

/// Random log over raw millisecond instants in [0, max_endpoint].
inline EventLog random_log(std::mt19937_64& rng, const CorpusOptions& opt) {
  std::uniform_int_distribution<std::size_t> count(1, opt.max_items);
  std::uniform_int_distribution<std::int64_t> point(0, opt.max_endpoint);
  std::uniform_int_distribution<std::size_t> who(0, opt.resources - 1);
  const std::size_t n = count(rng);
  std::vector<WorkItem> items;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t a = point(rng);
    std::int64_t b = point(rng);
    if (a > b) std::swap(a, b);
    if (a == b && !opt.allow_zero_length) {
      if (b < opt.max_endpoint) ++b;
      else --a;
    }
    items.push_back(WorkItem{WorkItemId{i + 1}, "T" + std::to_string(i % 3),
                             "r" + std::to_string(who(rng)), "c" + std::to_string(i % 2),
                             Instant{a}, Instant{b}});
  }
  return validate_log(std::move(items));
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

using Fraction = boost::rational<std::int64_t>;

/// Per-item fair share by enumerating unit steps [t, t+1): each step is split
/// evenly among the items covering it.
inline std::map<WorkItemId, Fraction> unit_step_shares(const std::vector<WorkItem>& items) {
  std::map<WorkItemId, Fraction> share;
  if (items.empty()) return share;
  std::int64_t lo = items.front().start.ms;
  std::int64_t hi = items.front().end.ms;
  for (const auto& w : items) {
    share[w.id] = 0;
    lo = std::min(lo, w.start.ms);
    hi = std::max(hi, w.end.ms);
  }
  for (std::int64_t t = lo; t < hi; ++t) {
    std::int64_t covering = 0;
    for (const auto& w : items) covering += (w.start.ms <= t && t < w.end.ms) ? 1 : 0;
    if (covering == 0) continue;
    for (const auto& w : items) {
      if (w.start.ms <= t && t < w.end.ms) share[w.id] += Fraction(1, covering);
    }
  }
  return share;
}

/// Number of unit steps covered by at least one item.
inline std::int64_t unit_step_union(const std::vector<WorkItem>& items) {
  if (items.empty()) return 0;
  std::int64_t lo = items.front().start.ms;
  std::int64_t hi = items.front().end.ms;
  for (const auto& w : items) {
    lo = std::min(lo, w.start.ms);
    hi = std::max(hi, w.end.ms);
  }
  std::int64_t covered = 0;
  for (std::int64_t t = lo; t < hi; ++t) {
    covered += std::any_of(items.begin(), items.end(),
                           [t](const WorkItem& w) { return w.start.ms <= t && t < w.end.ms; });
  }
  return covered;
}

inline std::map<std::string, std::vector<WorkItem>> group_by_resource(const EventLog& log) {
  std::map<std::string, std::vector<WorkItem>> groups;
  for (const auto& w : log.items()) groups[w.resource].push_back(w);
  return groups;
}

struct BruteIndexes {
  std::map<std::string, double> mtri;
  std::map<std::string, double> mtri_o;
  double mtli = 0.0;
  std::optional<double> mtwii;
  std::uint64_t overlapped_pairs = 0;  // unordered
};

/// Direct double loop over ordered pairs (wi1 != wi2), as in the
/// set-of-pairs definition; no sorting and no early exit.
inline BruteIndexes brute_indexes(const EventLog& log) {
  BruteIndexes out;
  const auto groups = group_by_resource(log);
  double mtri_sum = 0.0;
  double mtri_o_sum = 0.0;
  for (const auto& [resource, items] : groups) {
    double sum = 0.0;
    double sum_o = 0.0;
    std::uint64_t pairs = 0;
    std::uint64_t pairs_o = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (i == j) continue;
        const auto& a = items[i];
        const auto& b = items[j];
        const double inter =
            static_cast<double>(std::min(a.end.ms, b.end.ms) - std::max(a.start.ms, b.start.ms));
        const double longest = static_cast<double>(std::max(a.end.ms - a.start.ms, b.end.ms - b.start.ms));
        const double ratio = longest > 0 ? std::max(inter, 0.0) / longest : 0.0;
        ++pairs;
        sum += ratio;
        if (inter > 0) {
          ++pairs_o;
          sum_o += ratio;
        }
      }
    }
    out.mtri[resource] = pairs ? sum / static_cast<double>(pairs) : 0.0;
    mtri_sum += out.mtri[resource];
    if (pairs_o) {
      out.mtri_o[resource] = sum_o / static_cast<double>(pairs_o);
      mtri_o_sum += out.mtri_o[resource];
    }
    out.overlapped_pairs += pairs_o / 2;
  }
  if (!groups.empty()) out.mtli = mtri_sum / static_cast<double>(groups.size());
  if (!out.mtri_o.empty()) out.mtwii = mtri_o_sum / static_cast<double>(out.mtri_o.size());
  return out;
}

/// Exact ratio Fraction -> milliseconds comparison helper.
inline bool equals(const ExactMs& value, const Fraction& expected) {
  return value == ExactMs(expected.numerator(), expected.denominator());
}

}  // namespace mtsweep::testing
