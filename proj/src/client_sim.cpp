#include "nvod/client_sim.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <stdexcept>
#include <thread>

namespace nvod::sim {

PlaybackPolicy PlaybackPolicy::fixed(Ratio delay) {
  if (delay.is_negative()) throw std::invalid_argument("fixed delay must be >= 0");
  return {PolicyKind::kFixedDelay, delay};
}

PlaybackPolicy PlaybackPolicy::default_for(SchemeTag scheme) {
  // AQHB clients begin one slot after the next boundary; everyone else starts
  // at the boundary itself.
  return scheme == SchemeTag::kAqhb ? join_plus_one_slot() : next_slot_boundary();
}

std::string PlaybackPolicy::str() const {
  switch (kind) {
    case PolicyKind::kNextSlotBoundary: return "next-slot";
    case PolicyKind::kJoinPlusOneSlot:  return "join-plus-slot";
    case PolicyKind::kEarliestFeasible: return "earliest";
    case PolicyKind::kFixedDelay:       return "fixed:" + fixed_delay.str();
  }
  return "?";
}

AvailabilityCurve::AvailabilityCurve(Ratio arrival, std::vector<CurvePiece> pieces)
    : arrival_(arrival), pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const CurvePiece& a, const CurvePiece& b) { return a.pos_begin < b.pos_begin; });
}

Ratio AvailabilityCurve::available_at(Ratio pos) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), pos,
                             [](Ratio p, const CurvePiece& piece) { return p < piece.pos_begin; });
  if (it == pieces_.begin()) throw std::domain_error("available_at: position before video start");
  --it;
  if (!(pos < it->pos_end)) throw std::domain_error("available_at: position beyond video end");
  return it->time_at(pos);
}

std::vector<std::pair<Ratio, Ratio>> AvailabilityCurve::breakpoints() const {
  std::vector<std::pair<Ratio, Ratio>> out;
  out.reserve(pieces_.size());
  for (const CurvePiece& piece : pieces_) out.emplace_back(piece.pos_begin, piece.time_begin);
  return out;
}

Ratio AvailabilityCurve::max_start_level() const {
  Ratio level = arrival_;  // playback can never begin before arrival
  for (const CurvePiece& piece : pieces_) {
    level = max(level, piece.time_begin - piece.pos_begin);
    level = max(level, piece.time_end() - piece.pos_end);
  }
  return level;
}

namespace {

struct ByteInterval {
  Ratio lo;
  Ratio hi;
};

// Removes [lo, hi) from the sorted disjoint list, returning the removed parts
// in position order.
std::vector<ByteInterval> extract_overlap(std::vector<ByteInterval>& intervals,
                                          Ratio lo, Ratio hi) {
  std::vector<ByteInterval> removed;
  std::vector<ByteInterval> kept;
  kept.reserve(intervals.size() + 1);
  for (const ByteInterval& iv : intervals) {
    Ratio a = max(iv.lo, lo);
    Ratio b = min(iv.hi, hi);
    if (a < b) {
      removed.push_back({a, b});
      if (iv.lo < a) kept.push_back({iv.lo, a});
      if (b < iv.hi) kept.push_back({b, iv.hi});
    } else {
      kept.push_back(iv);
    }
  }
  intervals = std::move(kept);
  return removed;
}

struct ReceptionAnalysis {
  std::vector<CurvePiece> pieces;
  Ratio redundant_bytes;
};

struct ChannelPattern {
  std::vector<const Transmission*> pattern;  // sorted by start within the hyperperiod
  std::vector<ByteInterval> needed;          // merged byte ranges this channel carries
  Ratio max_duration;
};

// Per-channel view of the schedule, computed once and reused across arrivals.
struct PreparedSchedule {
  const BroadcastSchedule* schedule;
  std::vector<ChannelPattern> channels;
};

PreparedSchedule prepare(const BroadcastSchedule& schedule) {
  PreparedSchedule prepared{&schedule, {}};
  std::map<int, ChannelPattern> by_channel;
  for (const Transmission& t : schedule.transmissions)
    by_channel[t.channel].pattern.push_back(&t);
  for (auto& [channel, entry] : by_channel) {
    std::sort(entry.pattern.begin(), entry.pattern.end(),
              [](const Transmission* a, const Transmission* b) { return a->start < b->start; });
    entry.max_duration = Ratio(0);
    for (const Transmission* t : entry.pattern)
      entry.max_duration = max(entry.max_duration, t->duration);
    std::vector<ByteInterval> ranges;
    ranges.reserve(entry.pattern.size());
    for (const Transmission* t : entry.pattern)
      ranges.push_back({t->video_offset, t->video_offset + t->length});
    std::sort(ranges.begin(), ranges.end(),
              [](const ByteInterval& a, const ByteInterval& b) { return a.lo < b.lo; });
    for (const ByteInterval& r : ranges) {
      if (!entry.needed.empty() && !(entry.needed.back().hi < r.lo))
        entry.needed.back().hi = max(entry.needed.back().hi, r.hi);
      else
        entry.needed.push_back(r);
    }
    prepared.channels.push_back(std::move(entry));
  }
  return prepared;
}

// First post-arrival reception of every byte, channel by channel. The client
// listens to a channel until its byte set is complete; duplicate bytes
// received before that instant are tallied as redundant. Transmissions
// straddling the arrival contribute only the portion after it.
ReceptionAnalysis analyze_reception(const PreparedSchedule& prepared, Ratio arrival) {
  const BroadcastSchedule& schedule = *prepared.schedule;
  if (!(arrival * Ratio(schedule.params.subslots())).is_integer())
    throw std::domain_error("arrival must lie on a sub-slot boundary");

  const Ratio period = schedule.hyperperiod();

  ReceptionAnalysis analysis;
  analysis.redundant_bytes = Ratio(0);

  for (const ChannelPattern& channel : prepared.channels) {
    std::vector<ByteInterval> uncovered = channel.needed;

    // Transmissions fit inside one hyperperiod, so starting one period back
    // catches anything straddling the arrival.
    std::int64_t q = ((arrival - period) / period).floor();
    bool done = uncovered.empty();
    const int max_periods = 4;
    for (int guard = 0; !done; ++guard) {
      if (guard > max_periods)
        throw std::logic_error("availability: schedule does not cover the video");
      Ratio base = Ratio(q) * period;
      // Skip pattern entries whose instances in this period ended by arrival.
      const Ratio threshold = arrival - base - channel.max_duration;
      auto first = std::upper_bound(
          channel.pattern.begin(), channel.pattern.end(), threshold,
          [](Ratio value, const Transmission* t) { return value < t->start; });
      for (auto it = first; it != channel.pattern.end(); ++it) {
        const Transmission* t = *it;
        Ratio t0 = t->start + base;
        if (!(arrival < t0 + t->duration)) continue;
        Ratio lo = t->video_offset;
        if (t0 < arrival) lo += (arrival - t0) * t->rate;  // tail only
        Ratio hi = t->video_offset + t->length;
        if (!(lo < hi)) continue;

        Ratio seconds_per_byte = Ratio(1) / t->rate;
        std::vector<ByteInterval> newly = extract_overlap(uncovered, lo, hi);
        Ratio newly_total(0);
        for (const ByteInterval& part : newly) {
          analysis.pieces.push_back({part.lo, part.hi,
                                     t0 + (part.lo - t->video_offset) * seconds_per_byte,
                                     seconds_per_byte});
          newly_total += part.hi - part.lo;
        }
        if (uncovered.empty()) {
          // Channel completes mid-transmission: bytes past the completion
          // position arrive after the client detaches.
          Ratio completion_pos = newly.back().hi;
          analysis.redundant_bytes += (completion_pos - lo) - newly_total;
          done = true;
          break;
        }
        analysis.redundant_bytes += (hi - lo) - newly_total;
      }
      ++q;
    }
  }

  std::sort(analysis.pieces.begin(), analysis.pieces.end(),
            [](const CurvePiece& a, const CurvePiece& b) { return a.pos_begin < b.pos_begin; });

  Ratio covered(0);
  for (const CurvePiece& piece : analysis.pieces) covered += piece.pos_end - piece.pos_begin;
  if (covered != schedule.video_size())
    throw std::logic_error("availability: curve does not cover the video exactly");
  return analysis;
}

Ratio playback_start_for(const AvailabilityCurve& curve, Ratio arrival, PlaybackPolicy policy) {
  switch (policy.kind) {
    case PolicyKind::kNextSlotBoundary: return Ratio(arrival.ceil());
    case PolicyKind::kJoinPlusOneSlot:  return Ratio(arrival.ceil()) + Ratio(1);
    case PolicyKind::kEarliestFeasible: return curve.max_start_level();
    case PolicyKind::kFixedDelay:       return arrival + policy.fixed_delay;
  }
  throw std::logic_error("unknown policy");
}

struct SlopeEvent {
  Ratio time;
  Ratio delta;  // change in d(buffer)/dt: positive for reception, negative for consumption
};

}  // namespace

namespace {

ClientTrace simulate_prepared(const PreparedSchedule& prepared, Ratio arrival,
                              PlaybackPolicy policy);

}  // namespace

AvailabilityCurve availability_curve(const BroadcastSchedule& schedule, Ratio arrival) {
  return AvailabilityCurve(arrival, analyze_reception(prepare(schedule), arrival).pieces);
}

Ratio earliest_feasible_start(const BroadcastSchedule& schedule, Ratio arrival) {
  return availability_curve(schedule, arrival).max_start_level();
}

ClientTrace simulate_client(const BroadcastSchedule& schedule, Ratio arrival,
                            PlaybackPolicy policy) {
  return simulate_prepared(prepare(schedule), arrival, policy);
}

struct ClientSimulator::Impl {
  PreparedSchedule prepared;
};

ClientSimulator::ClientSimulator(const BroadcastSchedule& schedule)
    : impl_(std::make_unique<Impl>(Impl{prepare(schedule)})) {}
ClientSimulator::~ClientSimulator() = default;
ClientSimulator::ClientSimulator(ClientSimulator&&) noexcept = default;
ClientSimulator& ClientSimulator::operator=(ClientSimulator&&) noexcept = default;

ClientTrace ClientSimulator::simulate(Ratio arrival, PlaybackPolicy policy) const {
  return simulate_prepared(impl_->prepared, arrival, policy);
}

namespace {

ClientTrace simulate_prepared(const PreparedSchedule& prepared, Ratio arrival,
                              PlaybackPolicy policy) {
  const BroadcastSchedule& schedule = *prepared.schedule;
  ReceptionAnalysis analysis = analyze_reception(prepared, arrival);
  AvailabilityCurve curve(arrival, std::move(analysis.pieces));

  ClientTrace trace;
  trace.arrival = arrival;
  trace.redundant_bytes = analysis.redundant_bytes;
  trace.useful_bytes = schedule.video_size();
  trace.playback_start = playback_start_for(curve, arrival, policy);

  // Playback scan in position order. With unit playback rate, byte x plays at
  // x + L(x) where the level L is the running max of playback_start and
  // available_at(y) - y for y <= x. Level jumps are hard stalls; level ramps
  // (reception slower than playback within a piece) are crawl stalls during
  // which consumption tracks reception.
  std::vector<SlopeEvent> events;
  events.reserve(curve.pieces().size() * 4 + 4);
  auto consume = [&events](Ratio t0, Ratio t1, Ratio rate) {
    if (t0 < t1) {
      events.push_back({t0, -rate});
      events.push_back({t1, rate});
    }
  };

  Ratio level = trace.playback_start;
  for (const CurvePiece& piece : curve.pieces()) {
    const Ratio rate = Ratio(1) / piece.seconds_per_byte;
    events.push_back({piece.time_begin, rate});
    events.push_back({piece.time_end(), -rate});

    const Ratio level_before = level;
    const Ratio h_begin = piece.time_begin - piece.pos_begin;
    const Ratio h_end = piece.time_end() - piece.pos_end;
    Ratio stall_pos;
    bool stalled = false;
    if (level < h_begin) {
      // Hard stall: playback pauses at pos_begin until the byte arrives.
      stall_pos = piece.pos_begin;
      stalled = true;
      level = h_begin;
    }
    if (level < h_end) {
      // seconds_per_byte > 1 here; playback crawls at the reception rate from
      // the crossing point to the end of the piece.
      Ratio cross = piece.pos_begin + (level - h_begin) / (piece.seconds_per_byte - Ratio(1));
      if (!stalled) {
        stall_pos = cross;
        stalled = true;
      }
      consume(piece.pos_begin + level, cross + level, Ratio(1));
      consume(cross + level, piece.pos_end + h_end, rate);
      level = h_end;
    } else {
      consume(piece.pos_begin + level, piece.pos_end + level, Ratio(1));
    }
    if (stalled) trace.stall_events.push_back({stall_pos, level - level_before});
  }

  trace.total_stall = level - trace.playback_start;
  trace.completion_time = trace.playback_start + schedule.video_size() + trace.total_stall;

  // Buffer occupancy = bytes received - bytes consumed, piecewise linear in
  // time; extrema sit on event boundaries.
  std::sort(events.begin(), events.end(),
            [](const SlopeEvent& a, const SlopeEvent& b) { return a.time < b.time; });
  Ratio buffer(0), slope(0), last_time = arrival, peak(0);
  trace.buffer_curve.emplace_back(arrival, Ratio(0));
  std::size_t i = 0;
  while (i < events.size()) {
    const Ratio t = events[i].time;
    buffer += slope * (t - last_time);
    while (i < events.size() && events[i].time == t) {
      slope += events[i].delta;
      ++i;
    }
    if (trace.buffer_curve.back().first == t)
      trace.buffer_curve.back().second = buffer;
    else
      trace.buffer_curve.emplace_back(t, buffer);
    peak = max(peak, buffer);
    last_time = t;
  }
  trace.max_buffer = peak;
  return trace;
}

struct SweepAccumulator {
  Ratio max_stall{0};
  Ratio worst_arrival{0};
  std::vector<StallEvent> worst_stalls;
  bool has_worst = false;
  Ratio max_startup{0};
  Ratio max_buffer{0};
  Ratio buffer_sum{0};
  std::int64_t count = 0;

  void add(const ClientTrace& trace) {
    if (!has_worst || max_stall < trace.total_stall) {
      max_stall = trace.total_stall;
      worst_arrival = trace.arrival;
      worst_stalls = trace.stall_events;
      has_worst = true;
    }
    max_startup = max(max_startup, trace.playback_start - trace.arrival);
    max_buffer = max(max_buffer, trace.max_buffer);
    buffer_sum += trace.max_buffer;
    ++count;
  }

  // Partial results merge in arrival order, so the lowest-arrival tie-break
  // is preserved regardless of chunking.
  void merge(const SweepAccumulator& o) {
    if (o.has_worst && (!has_worst || max_stall < o.max_stall)) {
      max_stall = o.max_stall;
      worst_arrival = o.worst_arrival;
      worst_stalls = o.worst_stalls;
      has_worst = true;
    }
    max_startup = max(max_startup, o.max_startup);
    max_buffer = max(max_buffer, o.max_buffer);
    buffer_sum += o.buffer_sum;
    count += o.count;
  }
};

}  // namespace

SweepSummary sweep_arrivals(const BroadcastSchedule& schedule, PlaybackPolicy policy,
                            bool parallel) {
  const std::int64_t m = schedule.params.subslots();
  const std::int64_t total = schedule.hyperperiod_slots * m;
  const PreparedSchedule prepared = prepare(schedule);

  auto run_chunk = [&](std::int64_t begin, std::int64_t end) {
    SweepAccumulator acc;
    for (std::int64_t u = begin; u < end; ++u)
      acc.add(simulate_prepared(prepared, Ratio(u, m), policy));
    return acc;
  };

  SweepAccumulator acc;
  const unsigned workers = std::thread::hardware_concurrency();
  if (parallel && workers > 1 && total >= 64) {
    const std::int64_t chunk = (total + workers - 1) / workers;
    std::vector<std::future<SweepAccumulator>> futures;
    for (std::int64_t begin = 0; begin < total; begin += chunk) {
      std::int64_t end = std::min(total, begin + chunk);
      futures.push_back(std::async(std::launch::async, run_chunk, begin, end));
    }
    for (auto& f : futures) acc.merge(f.get());
  } else {
    acc = run_chunk(0, total);
  }

  SweepSummary summary;
  summary.scheme = schedule.scheme;
  summary.policy = policy;
  summary.arrivals_checked = total;
  summary.max_total_stall = acc.max_stall;
  summary.max_startup_wait = acc.max_startup;
  summary.max_buffer_over_arrivals = acc.max_buffer;
  summary.mean_max_buffer = acc.buffer_sum / Ratio(total);
  summary.worst_arrival = acc.worst_arrival;
  summary.worst_stalls = std::move(acc.worst_stalls);
  return summary;
}

}  // namespace nvod::sim
