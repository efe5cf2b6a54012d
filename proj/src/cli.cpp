#include "mtsweep/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "mtsweep/inject.hpp"
#include "mtsweep/log_io.hpp"
#include "mtsweep/metrics.hpp"
#include "mtsweep/sweep.hpp"

namespace mtsweep::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string in;
  std::string out;
  std::string format;
  std::string report;
  double shift = 0.0;
  bool debug_table = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LogFormat input_format(const Options& opt) {
  if (auto f = format_from_path(opt.in)) return *f;
  if (auto f = parse_format(opt.format)) return *f;
  throw UsageError("cannot infer input format of '" + opt.in + "'; pass --format csv|xes");
}

LogFormat output_format(const Options& opt, const fs::path& path) {
  if (auto f = parse_format(opt.format)) return *f;
  if (auto f = format_from_path(path)) return *f;
  return input_format(opt);
}

void emit_log(const EventLog& log, const Options& opt, std::ostream& out) {
  if (opt.out.empty() || opt.out == "-") {
    const LogFormat format = output_format(opt, {});
    if (format == LogFormat::kCsv) {
      write_csv(log, out);
    } else {
      write_xes(log, out);
    }
    return;
  }
  write_log(log, output_format(opt, opt.out), opt.out);
}

void emit_report(const MetricsReport& report, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_report(report, out);
  } else {
    write_report(report, fs::path(path));
  }
}

void add_common(CLI::App* cmd, Options& opt, bool with_format) {
  cmd->add_option("--in", opt.in, "Input event log (.csv or .xes)")->required();
  cmd->add_option("--out", opt.out, "Output path; standard output when omitted");
  if (with_format) {
    cmd->add_option("--format", opt.format, "Output format, overriding the file extension")
        ->check(CLI::IsMember({"csv", "xes"}, CLI::ignore_case));
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detects resource multitasking in event logs and redistributes overlapping processing time.",
               "mtsweep"};
  app.require_subcommand(1, 1);
  Options opt;

  auto* adjust = app.add_subcommand("adjust", "Write the coalesced log with fair-share processing times");
  add_common(adjust, opt, true);
  adjust->add_flag("--debug-table", opt.debug_table, "Print ordtimes/intervals/aux items to stdout");
  adjust->add_option("--report", opt.report, "Also write the metrics report of the input log");

  auto* aux = app.add_subcommand("aux", "Write the auxiliary (per-interval share) table as CSV");
  add_common(aux, opt, false);
  aux->add_option("--format", opt.format, "Input format when the extension is not .csv/.xes")
      ->check(CLI::IsMember({"csv", "xes"}, CLI::ignore_case));
  aux->add_flag("--debug-table", opt.debug_table, "Print ordtimes/intervals/aux items to stdout");

  auto* metrics = app.add_subcommand("metrics", "Write the multitasking metrics report");
  add_common(metrics, opt, false);
  metrics->add_option("--format", opt.format, "Input format when the extension is not .csv/.xes")
      ->check(CLI::IsMember({"csv", "xes"}, CLI::ignore_case));
  metrics->add_option("--report", opt.report, "Report path (alias of --out)");

  auto* inject_cmd = app.add_subcommand("inject", "Shift adjacent work items to create overlap");
  add_common(inject_cmd, opt, true);
  inject_cmd->add_option("--shift", opt.shift, "Shift percentage in [0, 1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  inject_cmd->add_option("--report", opt.report, "Also write the metrics report of the shifted log");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mtsweep: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const EventLog log = read_log(opt.in, input_format(opt));

    if (adjust->parsed()) {
      if (opt.debug_table) write_debug_table(out, log);
      const AdjustedLog adjusted = adjust_log(log);
      emit_log(adjusted.coalesced, opt, out);
      if (!opt.report.empty()) emit_report(summarize(log), opt.report, out);
    } else if (aux->parsed()) {
      if (opt.debug_table) write_debug_table(out, log);
      const AdjustedLog adjusted = adjust_log(log);
      if (opt.out.empty() || opt.out == "-") {
        write_aux_table(adjusted, log, out);
      } else {
        std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open '" + opt.out + "' for writing");
        write_aux_table(adjusted, log, file);
        if (!file.flush()) throw IoError("failed writing '" + opt.out + "'");
      }
    } else if (metrics->parsed()) {
      emit_report(summarize(log), opt.report.empty() ? opt.out : opt.report, out);
    } else if (inject_cmd->parsed()) {
      const EventLog shifted = inject(log, opt.shift);
      emit_log(shifted, opt, out);
      if (!opt.report.empty()) emit_report(summarize(shifted), opt.report, out);
    }
  } catch (const UsageError& e) {
    err << "mtsweep: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LogError& e) {
    err << "mtsweep: " << opt.in << ": " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "mtsweep: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace mtsweep::cli
