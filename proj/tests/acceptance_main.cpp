// Acceptance suite: exercises every verification target end to end and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.
//
// Usage: acceptance <path-to-cli-binary> [scratch-dir]

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nvod/client_sim.hpp"
#include "nvod/metrics.hpp"
#include "nvod/schedule_io.hpp"
#include "nvod/schemes.hpp"

using namespace nvod;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << " - " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

VideoParams params_for(std::int64_t n, std::int64_t m = 4) {
  return VideoParams::make(Ratio(120), Ratio(1), n, m);
}

// 1. HB aggregate rate equals harmonic(N) exactly for N = 1..8.
void criterion_1() {
  bool ok = true;
  std::string detail = "HB aggregate = H(N) for N=1..8";
  for (std::int64_t n = 1; n <= 8 && ok; ++n) {
    auto profile = metrics::bandwidth_profile(schemes::build_hb(params_for(n)));
    if (!profile.constant() || profile.pieces.front().rate != harmonic(n)) {
      ok = false;
      detail = "HB N=" + std::to_string(n) + " aggregate " +
               profile.time_average_rate.str() + " != " + harmonic(n).str();
    }
    if (n == 4 && profile.pieces.front().rate != Ratio(25, 12)) ok = false;
  }
  report(1, ok, detail);
}

// 2. CHB aggregate = 1/2 + harmonic(N-1); surplus over HB = 1/2 - 1/N.
void criterion_2() {
  bool ok = true;
  std::string detail = "CHB aggregate and surplus identities for N=3..8";
  for (std::int64_t n = 3; n <= 8 && ok; ++n) {
    auto profile = metrics::bandwidth_profile(schemes::build_chb(params_for(n)));
    Ratio surplus = metrics::chb_surplus(params_for(n));
    if (profile.time_average_rate != Ratio(1, 2) + harmonic(n - 1) ||
        surplus != Ratio(1, 2) - Ratio(1, n)) {
      ok = false;
      detail = "CHB N=" + std::to_string(n) + " aggregate " + profile.time_average_rate.str() +
               " surplus " + surplus.str();
    }
  }
  report(2, ok, detail);
}

// 3. AQHB profile constant and piecewise-identical to HB; channel rate 1/k.
void criterion_3() {
  bool ok = true;
  std::string detail = "AQHB profile == HB profile, channel rate b/k (N<=8, m in {2,4,8})";
  for (std::int64_t n = 1; n <= 8 && ok; ++n) {
    for (std::int64_t m : {2, 4, 8}) {
      BroadcastSchedule aqhb = schemes::build_aqhb(params_for(n, m));
      auto aqhb_profile = metrics::bandwidth_profile(aqhb);
      auto hb_profile = metrics::bandwidth_profile(schemes::build_hb(params_for(n, m)));
      if (!aqhb_profile.constant() || !(aqhb_profile == hb_profile)) {
        ok = false;
        detail = "profile mismatch at N=" + std::to_string(n) + " m=" + std::to_string(m);
        break;
      }
      for (const Transmission& t : aqhb.transmissions) {
        if (t.rate != Ratio(1, t.channel)) {
          ok = false;
          detail = "AQHB channel " + std::to_string(t.channel) + " rate " + t.rate.str();
          break;
        }
      }
      if (!ok) break;
    }
  }
  report(3, ok, detail);
}

// 4. QHB channel rates m/(i*m-1); per-cycle fragment counts (1 doubled).
void criterion_4() {
  bool ok = true;
  std::string detail = "QHB rates and per-cycle counts (N<=6, m in {2,4})";
  for (std::int64_t n = 2; n <= 6 && ok; ++n) {
    for (std::int64_t m : {2, 4}) {
      BroadcastSchedule qhb = schemes::build_qhb(params_for(n, m));
      for (std::int64_t i = 2; i <= n && ok; ++i) {
        const std::int64_t fragments = i * m - 1;
        std::vector<const Transmission*> channel;
        for (const Transmission& t : qhb.transmissions)
          if (t.channel == i) channel.push_back(&t);
        for (const Transmission* t : channel) {
          if (t->rate != Ratio(m, fragments)) {
            ok = false;
            detail = "QHB channel " + std::to_string(i) + " rate " + t->rate.str();
          }
        }
        for (std::int64_t cycle = 0; cycle * i < qhb.hyperperiod_slots && ok; ++cycle) {
          std::vector<int> counts(static_cast<std::size_t>(fragments) + 1, 0);
          for (const Transmission* t : channel) {
            if (Ratio(cycle * i) <= t->start && t->start < Ratio((cycle + 1) * i)) {
              Ratio offset_in_segment = t->video_offset - Ratio(i - 1);
              std::int64_t f = (offset_in_segment * Ratio(fragments)).floor() + 1;
              counts[static_cast<std::size_t>(f)]++;
            }
          }
          if (counts[1] != 2) ok = false;
          for (std::int64_t f = 2; f <= fragments; ++f)
            if (counts[static_cast<std::size_t>(f)] != 1) ok = false;
          if (!ok)
            detail = "QHB cycle counts wrong at N=" + std::to_string(n) + " m=" +
                     std::to_string(m) + " channel " + std::to_string(i);
        }
      }
    }
  }
  report(4, ok, detail);
}

// 5. aqhb_matrix(3, 4) reproduces the published grid exactly.
void criterion_5() {
  schemes::AqhbMatrix matrix = schemes::aqhb_matrix(3, 4);
  const std::int64_t expect[3][4] = {{1, 4, 7, 10}, {2, 5, 8, 11}, {3, 6, 9, 12}};
  bool ok = true;
  for (std::int64_t r = 1; r <= 3; ++r)
    for (std::int64_t c = 1; c <= 4; ++c)
      if (matrix.cell(r, c) != expect[r - 1][c - 1]) ok = false;
  report(5, ok, "aqhb_matrix(3,4) == [[1,4,7,10],[2,5,8,11],[3,6,9,12]]");
}

// 6. Exhaustive continuity sweeps under default policies. CHB/AHB/AQHB must be
// stall-free and HB must stall. QHB is handled by the index-base resolution
// procedure: if no reading is stall-free, the residual failure must be
// confined to slot-boundary arrivals and is reported as a discrepancy against
// the published claim rather than silently adjusted.
void criterion_6() {
  bool ok = true;
  std::ostringstream notes;

  for (std::int64_t n = 3; n <= 8 && ok; ++n) {
    auto hb = sim::sweep_arrivals(schemes::build_hb(params_for(n)),
                                  sim::PlaybackPolicy::default_for(SchemeTag::kHb));
    if (!hb.max_total_stall.is_positive()) {
      ok = false;
      notes << "HB N=" << n << " unexpectedly stall-free; ";
    }
    auto chb = sim::sweep_arrivals(schemes::build_chb(params_for(n)),
                                   sim::PlaybackPolicy::default_for(SchemeTag::kChb));
    if (!chb.max_total_stall.is_zero()) {
      ok = false;
      notes << "CHB N=" << n << " stalls; ";
    }
    auto ahb = sim::sweep_arrivals(schemes::build_ahb(params_for(n)),
                                   sim::PlaybackPolicy::default_for(SchemeTag::kAhb));
    if (!ahb.max_total_stall.is_zero()) {
      ok = false;
      notes << "AHB N=" << n << " stalls; ";
    }
    for (std::int64_t m : {2, 4}) {
      auto aqhb = sim::sweep_arrivals(schemes::build_aqhb(params_for(n, m)),
                                      sim::PlaybackPolicy::default_for(SchemeTag::kAqhb));
      if (!aqhb.max_total_stall.is_zero()) {
        ok = false;
        notes << "AQHB N=" << n << " m=" << m << " stalls; ";
      }
    }
  }

  // QHB resolution procedure: sweep every index-base reading over the whole
  // grid; a reading qualifies only if it is stall-free everywhere.
  bool variant_clean[2][2] = {{true, true}, {true, true}};
  bool adopted_interior_clean = true;
  Ratio adopted_worst(0);
  for (std::int64_t n = 3; n <= 8; ++n) {
    for (std::int64_t m : {2, 4}) {
      for (int slot_one = 0; slot_one < 2; ++slot_one) {
        for (int sub_one = 0; sub_one < 2; ++sub_one) {
          schemes::QhbIndexBases bases{slot_one == 1, sub_one == 1};
          BroadcastSchedule s = schemes::build_qhb_with_bases(params_for(n, m), bases);
          auto sweep = sim::sweep_arrivals(s, sim::PlaybackPolicy::default_for(SchemeTag::kQhb));
          if (!sweep.max_total_stall.is_zero()) variant_clean[slot_one][sub_one] = false;
        }
      }
      // Characterize the adopted reading: stalls only at slot boundaries.
      BroadcastSchedule adopted = schemes::build_qhb(params_for(n, m));
      sim::ClientSimulator simulator(adopted);
      for (std::int64_t u = 0; u < adopted.hyperperiod_slots * m; ++u) {
        Ratio arrival(u, m);
        auto trace = simulator.simulate(arrival, sim::PlaybackPolicy::default_for(SchemeTag::kQhb));
        adopted_worst = max(adopted_worst, trace.total_stall);
        if (trace.total_stall.is_positive() && !arrival.is_integer())
          adopted_interior_clean = false;
      }
    }
  }

  const schemes::QhbIndexBases adopted_bases{};
  const bool adopted_clean =
      variant_clean[adopted_bases.slot_one_based ? 1 : 0][adopted_bases.subslot_one_based ? 1 : 0];
  const bool any_clean = variant_clean[0][0] || variant_clean[0][1] || variant_clean[1][0] ||
                         variant_clean[1][1];
  if (any_clean) {
    // A stall-free reading exists; the builder default must be one of them.
    if (!adopted_clean) {
      ok = false;
      notes << "a stall-free QHB reading exists but is not the builder default; ";
    }
  } else if (!adopted_interior_clean) {
    ok = false;
    notes << "adopted QHB reading stalls at interior arrivals; ";
  } else {
    notes << "QHB discrepancy (documented): no index-base reading is stall-free; "
             "under the adopted reading (slot 1-based, sub-slot 0-based) stalls occur "
             "only for clients arriving exactly on slot boundaries (worst "
          << adopted_worst.str()
          << " slots), while the published claim is zero waiting; all interior "
             "sub-slot arrivals are stall-free";
  }

  report(6, ok, ok ? (notes.str().empty() ? "continuity sweeps as published" : notes.str())
                   : notes.str());
}

// 7. HB repair bound: extra delay beyond the next slot boundary is positive
// somewhere and never exceeds one slot, N = 2..8.
void criterion_7() {
  bool ok = true;
  std::string detail = "HB extra delay in (0, 1] slot for N=2..8";
  for (std::int64_t n = 2; n <= 8 && ok; ++n) {
    BroadcastSchedule s = schemes::build_hb(params_for(n));
    Ratio worst(0);
    for (std::int64_t u = 0; u < s.hyperperiod_slots * 4; ++u) {
      Ratio arrival(u, 4);
      Ratio extra = sim::earliest_feasible_start(s, arrival) - Ratio(arrival.ceil());
      worst = max(worst, extra);
      if (Ratio(1) < extra) {
        ok = false;
        detail = "HB N=" + std::to_string(n) + " needs " + extra.str() + " > 1 slot";
      }
    }
    if (!worst.is_positive()) {
      ok = false;
      detail = "HB N=" + std::to_string(n) + " never needs extra delay";
    }
  }
  report(7, ok, detail);
}

// 8. Figure-7 data: HB column 120, 60, 40, 30 and 24 for N=5, with the
// discrepancy against the published 20 flagged.
void criterion_8() {
  auto rows = metrics::figure7_rows(Ratio(120), {1, 2, 3, 4, 5});
  const Ratio expect[] = {Ratio(120), Ratio(60), Ratio(40), Ratio(30), Ratio(24)};
  bool ok = rows.size() == 5;
  for (std::size_t i = 0; ok && i < 5; ++i) {
    if (rows[i].hb != expect[i]) ok = false;
    if (!rows[i].chb.is_zero() || !rows[i].qhb.is_zero() || !rows[i].ahb.is_zero() ||
        !rows[i].aqhb.is_zero())
      ok = false;
  }
  if (ok && rows[4].note.empty()) ok = false;  // N=5 divergence must be flagged
  report(8, ok, "fig7 HB column 120,60,40,30,24 with N=5 note: \"" + rows[4].note + "\"");
}

// 9. AHB shape: peak above harmonic(N), per-channel byte parity with HB, and
// an idle interval on some channel.
void criterion_9() {
  bool ok = true;
  std::string detail = "AHB peak > H(N), per-channel byte parity, idle interval (N=2..8)";
  for (std::int64_t n = 2; n <= 8 && ok; ++n) {
    BroadcastSchedule ahb = schemes::build_ahb(params_for(n));
    BroadcastSchedule hb = schemes::build_hb(params_for(n));
    auto profile = metrics::bandwidth_profile(ahb);
    if (!(harmonic(n) < profile.peak_rate)) {
      ok = false;
      detail = "AHB N=" + std::to_string(n) + " peak not above H(N)";
    }
    bool idle = false;
    for (std::int64_t k = 1; k <= n; ++k) {
      auto ahb_channel = metrics::channel_profile(ahb, static_cast<int>(k));
      auto hb_channel = metrics::channel_profile(hb, static_cast<int>(k));
      if (ahb_channel.bytes_per_hyperperiod != hb_channel.bytes_per_hyperperiod) {
        ok = false;
        detail = "AHB N=" + std::to_string(n) + " channel " + std::to_string(k) +
                 " byte parity broken";
      }
      for (const auto& piece : ahb_channel.pieces)
        if (piece.rate.is_zero()) idle = true;
    }
    if (!idle) {
      ok = false;
      detail = "AHB N=" + std::to_string(n) + " has no idle interval";
    }
  }
  report(9, ok, detail);
}

// 10. Published comparison table for N=5, m=4. Bandwidth rows are asserted
// exactly; discontinuity rows are asserted exactly except where the QHB
// boundary-arrival discrepancy (criterion 6) applies, which must then be
// flagged by the row itself; storage and wait rows are report-and-compare.
void criterion_10() {
  auto rows = metrics::table1_relations(params_for(5, 4));
  bool ok = true;
  std::ostringstream notes;

  auto find = [&rows](metrics::Criterion c, SchemeTag other) -> const metrics::ComparisonRow* {
    for (const auto& row : rows)
      if (row.criterion == c && row.other == other) return &row;
    return nullptr;
  };

  const SchemeTag others[] = {SchemeTag::kHb, SchemeTag::kChb, SchemeTag::kQhb, SchemeTag::kAhb};
  for (SchemeTag other : others) {
    const auto* bandwidth = find(metrics::Criterion::kSlotBandwidth, other);
    if (bandwidth == nullptr || !bandwidth->matches) {
      ok = false;
      notes << "bandwidth row vs " << scheme_name(other) << " does not match; ";
    }
    const auto* stall = find(metrics::Criterion::kDiscontinuityWait, other);
    if (stall == nullptr) {
      ok = false;
      continue;
    }
    if (other == SchemeTag::kQhb && !stall->matches) {
      // Sanctioned outcome: the measured QHB stall must be flagged, nonzero,
      // and AQHB's side must still be zero.
      if (!stall->other_value.is_positive() || !stall->aqhb_value.is_zero() ||
          stall->measured != metrics::Relation::kAqhbOnly) {
        ok = false;
        notes << "QHB discontinuity mismatch has the wrong shape; ";
      } else {
        notes << "discontinuity row vs QHB reported as discrepancy (measured "
              << stall->other_value.str() << " > 0 at boundary arrivals); ";
      }
    } else if (!stall->matches) {
      ok = false;
      notes << "discontinuity row vs " << scheme_name(other) << " does not match; ";
    }
  }

  int mismatched = 0;
  for (const auto& row : rows) {
    if (row.matches != (row.measured == row.reference)) ok = false;
    if (!row.matches) ++mismatched;
  }
  notes << mismatched << " of " << rows.size()
        << " cells diverge from the published table and are emitted as discrepancy rows "
           "(storage and initial-wait rows are report-and-compare)";
  report(10, ok, notes.str());
}

// 11. Oracle property on 200 random tuples: FixedDelay(earliest_feasible -
// arrival) never stalls; one sub-slot less always stalls when the delay was
// positive.
void criterion_11() {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> scheme_pick(0, 4);
  std::uniform_int_distribution<int> n_pick(1, 8);
  const std::int64_t ms[] = {2, 4, 8};
  std::uniform_int_distribution<int> m_pick(0, 2);

  bool ok = true;
  std::string detail = "200 random (scheme, N, m, arrival) tuples";
  int checked = 0;
  while (checked < 200 && ok) {
    SchemeTag tag = static_cast<SchemeTag>(scheme_pick(rng));
    std::int64_t n = n_pick(rng);
    std::int64_t m = ms[m_pick(rng)];
    if (tag == SchemeTag::kChb && n < 3) continue;
    VideoParams params = params_for(n, m);
    BroadcastSchedule schedule = schemes::build_scheme(tag, params);
    std::uniform_int_distribution<std::int64_t> arrival_pick(0, schedule.hyperperiod_slots * m - 1);
    Ratio arrival(arrival_pick(rng), m);

    Ratio delay = sim::earliest_feasible_start(schedule, arrival) - arrival;
    auto exact = sim::simulate_client(schedule, arrival, sim::PlaybackPolicy::fixed(delay));
    if (!exact.total_stall.is_zero()) {
      ok = false;
      detail = "stall at the feasible start: " + std::string(scheme_name(tag)) +
               " N=" + std::to_string(n) + " m=" + std::to_string(m) + " arrival " +
               arrival.str();
      break;
    }
    if (delay.is_positive()) {
      Ratio reduced = max(Ratio(0), delay - Ratio(1, m));
      auto early = sim::simulate_client(schedule, arrival, sim::PlaybackPolicy::fixed(reduced));
      if (!early.total_stall.is_positive()) {
        ok = false;
        detail = "no stall below the feasible start: " + std::string(scheme_name(tag)) +
                 " N=" + std::to_string(n) + " m=" + std::to_string(m) + " arrival " +
                 arrival.str();
        break;
      }
    }
    ++checked;
  }
  report(11, ok, detail);
}

// 12. CLI determinism: byte-identical output across repeated runs and across
// parallel/serial sweeps, plus the documented exit codes.
struct CliHarness {
  std::string binary;
  fs::path dir;

  int run(const std::string& args, const fs::path& out) const {
    std::string command = binary + " " + args + " --out " + out.string() + " 2> " +
                          (dir / "stderr.log").string();
    int status = std::system(command.c_str());
    return status < 0 ? status : WEXITSTATUS(status);
  }
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void criterion_12(const std::string& cli_path, const fs::path& scratch) {
  if (cli_path.empty()) {
    report(12, false, "no CLI binary path supplied");
    return;
  }
  CliHarness cli{cli_path, scratch};
  fs::create_directories(scratch);

  struct Case {
    std::string name;
    std::string args;
    int expected_exit;
  };
  const std::vector<Case> cases = {
      {"schedule-json", "schedule --scheme aqhb --segments 3 --m 4 --format json", 0},
      {"schedule-csv", "schedule --scheme hb --segments 5 --format csv", 0},
      {"verify-aqhb", "verify --scheme aqhb --segments 5 --m 4 --format csv", 0},
      {"verify-hb", "verify --scheme hb --segments 5 --format csv", 1},
      {"fig6-single", "report fig6 --segments 5 --m 4 --format csv", 0},
      {"fig6-range", "report fig6 --segments 1..6 --m 4 --format csv", 0},
      {"fig7", "report fig7 --length 120 --segments 1..5 --format csv", 0},
      {"table1", "report table1 --segments 5 --m 4 --format csv", 0},
      {"trace", "report client-trace --scheme qhb --segments 4 --m 4 --arrival 7/4 --format csv",
       0},
  };

  bool ok = true;
  std::ostringstream notes;
  for (const Case& c : cases) {
    fs::path first = scratch / (c.name + ".a");
    fs::path second = scratch / (c.name + ".b");
    fs::path serial = scratch / (c.name + ".serial");
    int code_a = cli.run(c.args, first);
    int code_b = cli.run(c.args, second);
    int code_c = cli.run(c.args + " --no-parallel", serial);
    if (code_a != c.expected_exit || code_b != c.expected_exit || code_c != c.expected_exit) {
      ok = false;
      notes << c.name << " exit codes " << code_a << "/" << code_b << "/" << code_c
            << " (expected " << c.expected_exit << "); ";
      continue;
    }
    std::string a = slurp(first), b = slurp(second), s = slurp(serial);
    if (a.empty() || a != b || a != s) {
      ok = false;
      notes << c.name << " output not byte-identical across runs; ";
    }
  }

  // Config errors exit with 2 and a message naming the constraint.
  fs::path err_out = scratch / "config-error";
  int bad = cli.run("verify --scheme chb --segments 2 --format csv", err_out);
  if (bad != 2) {
    ok = false;
    notes << "CHB N=2 exited " << bad << " (expected 2); ";
  }

  report(12, ok, ok ? "byte-identical outputs, exit codes 0/1/2 as documented" : notes.str());
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path = argc > 1 ? argv[1] : "";
  fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::path("acceptance_scratch");

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12(cli_path, scratch);

  if (g_failures == 0) {
    std::cout << "all criteria passed" << std::endl;
    return 0;
  }
  std::cout << g_failures << " criteria failed" << std::endl;
  return 1;
}
