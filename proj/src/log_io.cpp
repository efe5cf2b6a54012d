#include "mtsweep/log_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include "json.hpp"

namespace mtsweep {

namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

constexpr std::array<std::string_view, 5> kCsvHeader = {
    "case_id", "activity", "resource", "start_timestamp", "end_timestamp"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string slurp(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// --- CSV -------------------------------------------------------------------

struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// RFC 4180 records. Blank lines are skipped.
std::vector<CsvRecord> parse_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<CsvRecord> records;
  CsvRecord rec{1, {}};
  std::string field;
  std::size_t line = 1;
  bool quoted = false;
  bool field_started = false;

  auto end_record = [&] {
    if (field_started || !rec.fields.empty()) {
      rec.fields.push_back(std::move(field));
      records.push_back(std::move(rec));
    }
    field.clear();
    field_started = false;
    rec = CsvRecord{line, {}};
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        field_started = true;
        break;
      case ',':
        rec.fields.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw LogError("line " + std::to_string(rec.line), "unterminated quoted field");
  end_record();
  return records;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// --- XES -------------------------------------------------------------------

struct XesAttrs {
  std::optional<std::string> name;
  std::optional<std::string> resource;
  std::optional<std::string> timestamp;
  std::optional<std::string> transition;
};

XesAttrs read_attrs(const pt::ptree& element) {
  XesAttrs attrs;
  for (const auto& [tag, child] : element) {
    if (tag == "<xmlattr>" || tag == "event" || tag == "trace") continue;
    const auto key = child.get_optional<std::string>("<xmlattr>.key");
    const auto value = child.get_optional<std::string>("<xmlattr>.value");
    if (!key || !value) continue;
    if (*key == "concept:name") attrs.name = *value;
    else if (*key == "org:resource") attrs.resource = *value;
    else if (*key == "time:timestamp") attrs.timestamp = *value;
    else if (*key == "lifecycle:transition") attrs.transition = lower(*value);
  }
  return attrs;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_xes_event(std::ostream& out, const WorkItem& item, Instant at, std::string_view transition) {
  out << "\t\t<event>\n"
      << "\t\t\t<string key=\"concept:name\" value=\"" << xml_escape(item.activity) << "\"/>\n"
      << "\t\t\t<string key=\"org:resource\" value=\"" << xml_escape(item.resource) << "\"/>\n"
      << "\t\t\t<date key=\"time:timestamp\" value=\"" << format_iso8601(at) << "\"/>\n"
      << "\t\t\t<string key=\"lifecycle:transition\" value=\"" << transition << "\"/>\n"
      << "\t\t</event>\n";
}

// --- report ----------------------------------------------------------------

double six_significant(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::optional<LogFormat> parse_format(std::string_view name) {
  const std::string n = lower(name);
  if (n == "csv") return LogFormat::kCsv;
  if (n == "xes") return LogFormat::kXes;
  return std::nullopt;
}

std::optional<LogFormat> format_from_path(const fs::path& path) {
  std::string ext = path.extension().string();
  if (ext.empty()) return std::nullopt;
  return parse_format(std::string_view(ext).substr(1));
}

EventLog read_csv(std::istream& in) {
  const std::string text = slurp(in);
  const auto records = parse_csv(text);
  if (records.empty()) throw LogError("line 1", "missing header");

  const auto& header = records.front().fields;
  bool header_ok = header.size() == kCsvHeader.size();
  for (std::size_t i = 0; header_ok && i < header.size(); ++i) {
    header_ok = lower(header[i]) == kCsvHeader[i];
  }
  if (!header_ok) {
    throw LogError("line 1",
                   "expected header case_id,activity,resource,start_timestamp,end_timestamp");
  }

  std::vector<WorkItem> items;
  std::vector<Diagnostic> problems;
  std::uint64_t next_id = 1;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where = "line " + std::to_string(rec.line);
    if (rec.fields.size() != kCsvHeader.size()) {
      problems.push_back({where, "expected 5 fields, got " + std::to_string(rec.fields.size())});
      ++next_id;
      continue;
    }
    WorkItem item{WorkItemId{next_id++}, rec.fields[1], rec.fields[2], rec.fields[0], {}, {}};
    bool times_ok = true;
    for (int col : {3, 4}) {
      try {
        (col == 3 ? item.start : item.end) = parse_iso8601(rec.fields[col]);
      } catch (const std::invalid_argument& e) {
        problems.push_back({where + ", column " + std::string(kCsvHeader[col]), e.what()});
        times_ok = false;
      }
    }
    if (times_ok && item.end < item.start) problems.push_back({where, "end precedes start"});
    if (item.activity.empty()) problems.push_back({where, "missing activity"});
    if (item.resource.empty()) problems.push_back({where, "missing resource"});
    items.push_back(std::move(item));
  }
  if (!problems.empty()) throw LogError(std::move(problems));
  return validate_log(std::move(items));
}

EventLog read_csv(const fs::path& path) {
  auto in = open_in(path);
  return read_csv(in);
}

EventLog read_xes(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw LogError("xml", e.what());
  }
  const auto log_node = tree.get_child_optional("log");
  if (!log_node) throw LogError("xml", "missing <log> root element");

  struct Pending {
    std::size_t order;
    Instant start;
  };
  struct Matched {
    std::size_t order;
    WorkItem item;
  };
  std::vector<Matched> matched;
  std::vector<Diagnostic> problems;
  std::size_t event_order = 0;
  std::size_t trace_no = 0;

  for (const auto& [tag, trace] : *log_node) {
    if (tag != "trace") continue;
    ++trace_no;
    const std::string trace_id = read_attrs(trace).name.value_or("trace_" + std::to_string(trace_no));
    const std::string where = "trace " + trace_id;
    std::map<std::pair<std::string, std::string>, std::deque<Pending>> open;

    for (const auto& [etag, event] : trace) {
      if (etag != "event") continue;
      const std::size_t order = event_order++;
      const XesAttrs a = read_attrs(event);
      const std::string activity = a.name.value_or("");
      if (!a.transition) {
        problems.push_back({where, "event '" + activity + "' has no lifecycle:transition"});
        continue;
      }
      if (*a.transition != "start" && *a.transition != "complete") continue;
      if (!a.timestamp) {
        problems.push_back({where, "event '" + activity + "' has no time:timestamp"});
        continue;
      }
      Instant at;
      try {
        at = parse_iso8601(*a.timestamp);
      } catch (const std::invalid_argument& e) {
        problems.push_back({where, e.what()});
        continue;
      }
      const std::string resource = a.resource.value_or("");
      auto& queue = open[{activity, resource}];
      if (*a.transition == "start") {
        queue.push_back({order, at});
        continue;
      }
      if (queue.empty()) {
        problems.push_back({where, "complete of activity '" + activity + "' without a prior start"});
        continue;
      }
      const Pending p = queue.front();
      queue.pop_front();
      matched.push_back({p.order, WorkItem{{}, activity, resource, trace_id, p.start, at}});
    }
    for (const auto& [key, queue] : open) {
      for (std::size_t i = 0; i < queue.size(); ++i) {
        problems.push_back({where, "start of activity '" + key.first + "' never completed"});
      }
    }
  }
  if (!problems.empty()) throw LogError(std::move(problems));

  std::sort(matched.begin(), matched.end(),
            [](const Matched& a, const Matched& b) { return a.order < b.order; });
  std::vector<WorkItem> items;
  items.reserve(matched.size());
  std::uint64_t next_id = 1;
  for (auto& m : matched) {
    m.item.id = WorkItemId{next_id++};
    items.push_back(std::move(m.item));
  }
  return validate_log(std::move(items));
}

EventLog read_xes(const fs::path& path) {
  auto in = open_in(path);
  return read_xes(in);
}

EventLog read_log(const fs::path& path, LogFormat format) {
  return format == LogFormat::kCsv ? read_csv(path) : read_xes(path);
}

void write_csv(const EventLog& log, std::ostream& out) {
  out << "case_id,activity,resource,start_timestamp,end_timestamp\n";
  for (const auto& item : log.items()) {
    out << csv_field(item.trace_id) << ',' << csv_field(item.activity) << ','
        << csv_field(item.resource) << ',' << format_iso8601(item.start) << ','
        << format_iso8601(item.end) << '\n';
  }
}

void write_xes(const EventLog& log, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<log xes.version=\"1.0\" xes.features=\"nested-attributes\">\n"
      << "\t<extension name=\"Lifecycle\" prefix=\"lifecycle\" "
         "uri=\"http://www.xes-standard.org/lifecycle.xesext\"/>\n"
      << "\t<extension name=\"Organizational\" prefix=\"org\" "
         "uri=\"http://www.xes-standard.org/org.xesext\"/>\n"
      << "\t<extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n"
      << "\t<extension name=\"Concept\" prefix=\"concept\" "
         "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
  const auto& items = log.items();
  for (std::size_t i = 0; i < items.size();) {
    const std::string& trace_id = items[i].trace_id;
    out << "\t<trace>\n"
        << "\t\t<string key=\"concept:name\" value=\"" << xml_escape(trace_id) << "\"/>\n";
    for (; i < items.size() && items[i].trace_id == trace_id; ++i) {
      write_xes_event(out, items[i], items[i].start, "start");
      write_xes_event(out, items[i], items[i].end, "complete");
    }
    out << "\t</trace>\n";
  }
  out << "</log>\n";
}

void write_log(const EventLog& log, LogFormat format, const fs::path& path) {
  write_file(path, [&](std::ostream& out) {
    if (format == LogFormat::kCsv) {
      write_csv(log, out);
    } else {
      write_xes(log, out);
    }
  });
}

void write_report(const MetricsReport& report, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["mtli"] = six_significant(report.mtli);
  doc["mtwii"] = six_significant(report.mtwii.value_or(0.0));
  doc["mtwii_undefined"] = !report.mtwii.has_value();
  for (const auto& [resource, value] : report.mtri_all) doc["mtri." + resource] = six_significant(value);
  for (const auto& [resource, value] : report.mtri_overlapped) {
    doc["mtri_overlapped." + resource] = six_significant(value);
  }
  doc["counts.tasks_multitasked"] = report.counts.tasks_multitasked;
  doc["counts.events_overlapped"] = report.counts.events_overlapped;
  doc["counts.resources_multitasking"] = report.counts.resources_multitasking;
  doc["counts.pairs_overlapped"] = report.counts.pairs_overlapped;
  doc["totals.tasks"] = report.totals.tasks;
  doc["totals.events"] = report.totals.events;
  doc["totals.resources"] = report.totals.resources;
  doc["totals.pairs"] = report.totals.pairs;
  out << doc.dump(2) << '\n';
}

void write_report(const MetricsReport& report, const fs::path& path) {
  write_file(path, [&](std::ostream& out) { write_report(report, out); });
}

void write_aux_table(const AdjustedLog& adjusted, const EventLog& source, std::ostream& out) {
  std::map<WorkItemId, const WorkItem*> by_id;
  for (const auto& item : source.items()) by_id[item.id] = &item;

  out << "aux_id,work_item_id,case_id,activity,resource,start_int,end_int,duration_ms,duration_exact_ms\n";
  for (const auto& resource : adjusted.aux) {
    for (const auto& a : resource.items) {
      const WorkItem* parent = by_id.at(a.parent_wiid);
      out << a.id << ',' << to_string(a.parent_wiid) << ',' << csv_field(parent->trace_id) << ','
          << csv_field(parent->activity) << ',' << csv_field(parent->resource) << ','
          << format_iso8601(a.start_int) << ',' << format_iso8601(a.end_int) << ','
          << a.duration.round_half_up() << ',' << a.duration.to_string() << '\n';
    }
  }
}

}  // namespace mtsweep
