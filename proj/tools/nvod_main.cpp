// Command-line front end: builds broadcast schedules, runs exhaustive
// continuity sweeps, and emits comparison/report data as CSV, JSON, or
// human-readable tables. Machine formats render every number as an exact
// rational so identical invocations produce byte-identical output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nvod/client_sim.hpp"
#include "nvod/metrics.hpp"
#include "nvod/schedule_io.hpp"
#include "nvod/schemes.hpp"

namespace {

using nvod::Ratio;

struct Options {
  std::string scheme = "hb";
  std::string segments;
  std::int64_t m = 4;
  std::string length = "120";
  std::string rate = "1";
  std::string arrival = "0";
  std::string policy;  // empty = scheme default
  std::string format = "table";
  std::string out;
  bool no_parallel = false;
  std::string report_kind;
};

std::pair<std::int64_t, std::int64_t> parse_segments(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    std::int64_t n = Ratio::parse(text).num();
    if (!Ratio::parse(text).is_integer()) throw std::invalid_argument("--segments must be integral");
    return {n, n};
  }
  std::int64_t lo = Ratio::parse(text.substr(0, dots)).num();
  std::int64_t hi = Ratio::parse(text.substr(dots + 2)).num();
  if (lo > hi) throw std::invalid_argument("--segments range must be increasing");
  return {lo, hi};
}

nvod::SchemeTag parse_scheme_or_throw(const std::string& name) {
  auto tag = nvod::parse_scheme(name);
  if (!tag) throw std::invalid_argument("unknown scheme '" + name + "' (hb|chb|qhb|ahb|aqhb)");
  return *tag;
}

nvod::sim::PlaybackPolicy parse_policy(const std::string& text, nvod::SchemeTag scheme) {
  using nvod::sim::PlaybackPolicy;
  if (text.empty()) return PlaybackPolicy::default_for(scheme);
  if (text == "next-slot") return PlaybackPolicy::next_slot_boundary();
  if (text == "join-plus-slot") return PlaybackPolicy::join_plus_one_slot();
  if (text == "earliest") return PlaybackPolicy::earliest_feasible();
  if (text.rfind("fixed:", 0) == 0) return PlaybackPolicy::fixed(Ratio::parse(text.substr(6)));
  throw std::invalid_argument("unknown policy '" + text +
                              "' (next-slot|join-plus-slot|earliest|fixed:<num/den>)");
}

nvod::VideoParams params_from(const Options& opt, std::int64_t segments) {
  return nvod::VideoParams::make(Ratio::parse(opt.length), Ratio::parse(opt.rate), segments,
                                 opt.m);
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::invalid_argument("cannot open output file '" + opt.out + "'");
  file << text;
}

std::string decimal(Ratio r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.to_double());
  return buf;
}

void check_format(const std::string& format) {
  if (format != "table" && format != "csv" && format != "json")
    throw std::invalid_argument("unknown format '" + format + "' (csv|json|table)");
}

nlohmann::ordered_json ratio_json(Ratio r) {
  nlohmann::ordered_json j;
  j["num"] = r.num();
  j["den"] = r.den();
  return j;
}

// ---------------------------------------------------------------------------

int cmd_schedule(const Options& opt) {
  auto [lo, hi] = parse_segments(opt.segments);
  if (lo != hi) throw std::invalid_argument("schedule takes a single --segments value");
  nvod::SchemeTag tag = parse_scheme_or_throw(opt.scheme);
  nvod::BroadcastSchedule schedule = nvod::schemes::build_scheme(tag, params_from(opt, lo));

  if (opt.format == "json") {
    emit(opt, nvod::schedule_to_json(schedule));
  } else if (opt.format == "csv") {
    emit(opt, nvod::schedule_to_csv(schedule));
  } else {
    std::ostringstream out;
    out << "scheme: " << nvod::scheme_name(schedule.scheme) << "\n"
        << "segments: " << schedule.params.segments() << "\n"
        << "sub-slots per slot: " << schedule.params.subslots() << "\n"
        << "hyperperiod: " << schedule.hyperperiod_slots << " slots\n"
        << "channels: " << schedule.channel_count() << "\n"
        << "transmissions per hyperperiod: " << schedule.transmissions.size() << "\n";
    nvod::metrics::BandwidthProfile profile = nvod::metrics::bandwidth_profile(schedule);
    out << "aggregate rate: "
        << (profile.constant() ? profile.pieces.front().rate.str() + " (constant)"
                               : "peak " + profile.peak_rate.str() + ", average " +
                                     profile.time_average_rate.str())
        << "\n";
    emit(opt, out.str());
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  auto [lo, hi] = parse_segments(opt.segments);
  if (lo != hi) throw std::invalid_argument("verify takes a single --segments value");
  nvod::SchemeTag tag = parse_scheme_or_throw(opt.scheme);
  nvod::BroadcastSchedule schedule = nvod::schemes::build_scheme(tag, params_from(opt, lo));
  nvod::sim::PlaybackPolicy policy = parse_policy(opt.policy, tag);
  nvod::sim::SweepSummary sweep = nvod::sim::sweep_arrivals(schedule, policy, !opt.no_parallel);
  const bool clean = sweep.max_total_stall.is_zero();

  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["scheme"] = std::string(nvod::scheme_name(tag));
    j["N"] = schedule.params.segments();
    j["m"] = schedule.params.subslots();
    j["policy"] = policy.str();
    j["arrivals_checked"] = sweep.arrivals_checked;
    j["max_total_stall"] = ratio_json(sweep.max_total_stall);
    j["max_startup_wait"] = ratio_json(sweep.max_startup_wait);
    j["max_buffer"] = ratio_json(sweep.max_buffer_over_arrivals);
    j["mean_max_buffer"] = ratio_json(sweep.mean_max_buffer);
    j["worst_arrival"] = ratio_json(sweep.worst_arrival);
    auto stalls = nlohmann::ordered_json::array();
    for (const auto& ev : sweep.worst_stalls) {
      nlohmann::ordered_json s;
      s["position"] = ratio_json(ev.video_position);
      s["duration"] = ratio_json(ev.duration);
      stalls.push_back(std::move(s));
    }
    j["worst_stalls"] = std::move(stalls);
    j["verified"] = clean;
    emit(opt, j.dump(2) + "\n");
  } else if (opt.format == "csv") {
    std::ostringstream out;
    out << "field,value\n"
        << "scheme," << nvod::scheme_name(tag) << "\n"
        << "N," << schedule.params.segments() << "\n"
        << "m," << schedule.params.subslots() << "\n"
        << "policy," << policy.str() << "\n"
        << "arrivals_checked," << sweep.arrivals_checked << "\n"
        << "max_total_stall," << sweep.max_total_stall << "\n"
        << "max_startup_wait," << sweep.max_startup_wait << "\n"
        << "max_buffer," << sweep.max_buffer_over_arrivals << "\n"
        << "mean_max_buffer," << sweep.mean_max_buffer << "\n"
        << "worst_arrival," << sweep.worst_arrival << "\n";
    int index = 0;
    for (const auto& ev : sweep.worst_stalls) {
      ++index;
      out << "stall." << index << ".position," << ev.video_position << "\n"
          << "stall." << index << ".duration," << ev.duration << "\n";
    }
    out << "verified," << (clean ? "yes" : "no") << "\n";
    emit(opt, out.str());
  } else {
    std::ostringstream out;
    out << "scheme: " << nvod::scheme_name(tag) << "  N=" << schedule.params.segments()
        << "  m=" << schedule.params.subslots() << "  policy=" << policy.str() << "\n"
        << "arrivals checked: " << sweep.arrivals_checked << "\n"
        << "max startup wait: " << sweep.max_startup_wait << " slots ("
        << decimal(sweep.max_startup_wait) << ")\n"
        << "max buffer: " << sweep.max_buffer_over_arrivals << " ("
        << decimal(sweep.max_buffer_over_arrivals) << ")\n"
        << "max total stall: " << sweep.max_total_stall << " ("
        << decimal(sweep.max_total_stall) << ")\n";
    if (!clean) {
      out << "worst arrival: " << sweep.worst_arrival << "\n";
      for (const auto& ev : sweep.worst_stalls)
        out << "  stall at video position " << ev.video_position << " lasting " << ev.duration
            << "\n";
      out << "result: STALLS DETECTED\n";
    } else {
      out << "result: VERIFIED (no stalls at any arrival)\n";
    }
    emit(opt, out.str());
  }
  return clean ? 0 : 1;
}

// ---------------------------------------------------------------------------

std::string fig6_csv(const Options& opt) {
  auto [lo, hi] = parse_segments(opt.segments);
  std::ostringstream out;
  if (lo == hi) {
    out << "scheme,start,end,rate\n";
    for (nvod::SchemeTag tag : {nvod::SchemeTag::kHb, nvod::SchemeTag::kChb, nvod::SchemeTag::kQhb,
                                nvod::SchemeTag::kAhb, nvod::SchemeTag::kAqhb}) {
      if (tag == nvod::SchemeTag::kChb && lo < 3) continue;
      auto profile =
          nvod::metrics::bandwidth_profile(nvod::schemes::build_scheme(tag, params_from(opt, lo)));
      for (const auto& piece : profile.pieces)
        out << nvod::scheme_name(tag) << ',' << piece.begin << ',' << piece.end << ','
            << piece.rate << '\n';
    }
  } else {
    out << "N,scheme,avg_rate,peak_rate\n";
    for (std::int64_t n = lo; n <= hi; ++n) {
      for (nvod::SchemeTag tag :
           {nvod::SchemeTag::kHb, nvod::SchemeTag::kChb, nvod::SchemeTag::kQhb,
            nvod::SchemeTag::kAhb, nvod::SchemeTag::kAqhb}) {
        if (tag == nvod::SchemeTag::kChb && n < 3) continue;
        auto profile = nvod::metrics::bandwidth_profile(
            nvod::schemes::build_scheme(tag, params_from(opt, n)));
        out << n << ',' << nvod::scheme_name(tag) << ',' << profile.time_average_rate << ','
            << profile.peak_rate << '\n';
      }
    }
  }
  return out.str();
}

std::string fig7_csv(const Options& opt) {
  auto [lo, hi] = parse_segments(opt.segments);
  std::vector<std::int64_t> ns;
  for (std::int64_t n = lo; n <= hi; ++n) ns.push_back(n);
  auto rows = nvod::metrics::figure7_rows(Ratio::parse(opt.length), ns);
  std::ostringstream out;
  out << "N,hb,chb,qhb,ahb,aqhb,note\n";
  for (const auto& row : rows)
    out << row.segments << ',' << row.hb << ',' << row.chb << ',' << row.qhb << ',' << row.ahb
        << ',' << row.aqhb << ',' << row.note << '\n';
  return out.str();
}

std::string table1_csv(const Options& opt) {
  auto [lo, hi] = parse_segments(opt.segments);
  if (lo != hi) throw std::invalid_argument("table1 takes a single --segments value");
  auto rows = nvod::metrics::table1_relations(params_from(opt, lo));
  std::ostringstream out;
  out << "criterion,versus,measured,reference,matches,aqhb_value,other_value,aqhb_aux,other_aux\n";
  auto print = [&out](const nvod::metrics::ComparisonRow& row, bool as_discrepancy) {
    out << (as_discrepancy ? std::string("discrepancy:") +
                                 std::string(nvod::metrics::criterion_name(row.criterion))
                           : std::string(nvod::metrics::criterion_name(row.criterion)))
        << ',' << nvod::scheme_name(row.other) << ',' << nvod::metrics::relation_name(row.measured)
        << ',' << nvod::metrics::relation_name(row.reference) << ','
        << (row.matches ? "yes" : "no") << ',' << row.aqhb_value << ',' << row.other_value << ','
        << row.aqhb_aux << ',' << row.other_aux << '\n';
  };
  for (const auto& row : rows) print(row, false);
  for (const auto& row : rows)
    if (!row.matches) print(row, true);
  return out.str();
}

Ratio buffer_at(const nvod::sim::ClientTrace& trace, Ratio time) {
  const auto& curve = trace.buffer_curve;
  if (curve.empty() || time < curve.front().first) return Ratio(0);
  for (std::size_t i = curve.size(); i-- > 0;) {
    if (!(time < curve[i].first)) {
      if (i + 1 == curve.size()) return curve[i].second;
      const auto& [t0, b0] = curve[i];
      const auto& [t1, b1] = curve[i + 1];
      return b0 + (b1 - b0) * ((time - t0) / (t1 - t0));
    }
  }
  return Ratio(0);
}

std::string client_trace_csv(const Options& opt) {
  auto [lo, hi] = parse_segments(opt.segments);
  if (lo != hi) throw std::invalid_argument("client-trace takes a single --segments value");
  nvod::SchemeTag tag = parse_scheme_or_throw(opt.scheme);
  nvod::BroadcastSchedule schedule = nvod::schemes::build_scheme(tag, params_from(opt, lo));
  nvod::sim::PlaybackPolicy policy = parse_policy(opt.policy, tag);
  nvod::sim::ClientTrace trace =
      nvod::sim::simulate_client(schedule, Ratio::parse(opt.arrival), policy);

  std::ostringstream out;
  out << "time,event,video_position,buffer\n";
  out << trace.arrival << ",arrival,0," << buffer_at(trace, trace.arrival) << '\n';
  out << trace.playback_start << ",playback-start,0," << buffer_at(trace, trace.playback_start)
      << '\n';
  Ratio level = trace.playback_start;
  for (const auto& ev : trace.stall_events) {
    Ratio begin = ev.video_position + level;
    out << begin << ",stall dur=" << ev.duration << ',' << ev.video_position << ','
        << buffer_at(trace, begin) << '\n';
    level += ev.duration;
  }
  Ratio peak_time = trace.arrival;
  Ratio peak(0);
  for (const auto& [t, b] : trace.buffer_curve) {
    if (peak < b) {
      peak = b;
      peak_time = t;
    }
  }
  out << peak_time << ",buffer-peak,," << peak << '\n';
  out << trace.completion_time << ",completion," << trace.useful_bytes << ','
      << buffer_at(trace, trace.completion_time) << '\n';
  out << ",total-stall,," << trace.total_stall << '\n';
  out << ",redundant-bytes,," << trace.redundant_bytes << '\n';
  return out.str();
}

std::string csv_to_table(const std::string& csv) {
  // Human view of the same rows: pad columns to equal width.
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  std::vector<std::size_t> widths;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (widths.size() <= i) widths.push_back(0);
      widths[i] = std::max(widths[i], cells[i].size());
    }
    rows.push_back(std::move(cells));
  }
  std::ostringstream out;
  for (const auto& cells : rows) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << cells[i];
      if (i + 1 < cells.size()) out << std::string(widths[i] - cells[i].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::ordered_json csv_to_json(const std::string& csv) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (header.empty()) {
      header = cells;
      continue;
    }
    nlohmann::ordered_json row;
    for (std::size_t i = 0; i < header.size(); ++i)
      row[header[i]] = i < cells.size() ? cells[i] : "";
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_report(const Options& opt) {
  std::string csv;
  if (opt.report_kind == "fig6") csv = fig6_csv(opt);
  else if (opt.report_kind == "fig7") csv = fig7_csv(opt);
  else if (opt.report_kind == "table1") csv = table1_csv(opt);
  else if (opt.report_kind == "client-trace") csv = client_trace_csv(opt);
  else throw std::invalid_argument("unknown report '" + opt.report_kind +
                                   "' (fig6|fig7|table1|client-trace)");

  if (opt.format == "csv") emit(opt, csv);
  else if (opt.format == "json") emit(opt, csv_to_json(csv).dump(2) + "\n");
  else emit(opt, csv_to_table(csv));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic scheduler and verifier for harmonic-family periodic broadcasts"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* cmd, bool with_policy) {
    cmd->add_option("--scheme", opt.scheme, "hb|chb|qhb|ahb|aqhb");
    cmd->add_option("--segments", opt.segments, "segment count N, or range like 1..5")->required();
    cmd->add_option("--m", opt.m, "sub-slots per slot (default 4)");
    cmd->add_option("--length", opt.length, "video length in display units (default 120)");
    cmd->add_option("--rate", opt.rate, "playback rate in display units (default 1)");
    cmd->add_option("--format", opt.format, "csv|json|table (default table)");
    cmd->add_option("--out", opt.out, "write output to this path instead of stdout");
    cmd->add_flag("--no-parallel", opt.no_parallel, "run arrival sweeps on one thread");
    if (with_policy)
      cmd->add_option("--policy", opt.policy,
                      "next-slot|join-plus-slot|earliest|fixed:<num/den> (default per scheme)");
  };

  CLI::App* schedule = app.add_subcommand("schedule", "construct one hyperperiod and export it");
  add_common(schedule, false);
  CLI::App* verify =
      app.add_subcommand("verify", "sweep every arrival and check playback continuity");
  add_common(verify, true);
  CLI::App* report = app.add_subcommand("report", "emit comparison data series");
  report->add_option("kind", opt.report_kind, "fig6|fig7|table1|client-trace")->required();
  add_common(report, true);
  report->add_option("--arrival", opt.arrival, "client arrival time in slots (client-trace)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    check_format(opt.format);
    if (schedule->parsed()) return cmd_schedule(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (report->parsed()) return cmd_report(opt);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
