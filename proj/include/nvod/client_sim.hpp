#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nvod/schedule.hpp"

namespace nvod::sim {

enum class PolicyKind { kNextSlotBoundary, kJoinPlusOneSlot, kEarliestFeasible, kFixedDelay };

// When playback begins relative to the arrival instant. NextSlotBoundary is
// the first slot boundary at or after arrival (a client arriving exactly on a
// boundary starts immediately); JoinPlusOneSlot adds one further slot.
struct PlaybackPolicy {
  PolicyKind kind = PolicyKind::kNextSlotBoundary;
  Ratio fixed_delay{0};

  static PlaybackPolicy next_slot_boundary() { return {PolicyKind::kNextSlotBoundary, Ratio(0)}; }
  static PlaybackPolicy join_plus_one_slot() { return {PolicyKind::kJoinPlusOneSlot, Ratio(0)}; }
  static PlaybackPolicy earliest_feasible() { return {PolicyKind::kEarliestFeasible, Ratio(0)}; }
  static PlaybackPolicy fixed(Ratio delay);
  static PlaybackPolicy default_for(SchemeTag scheme);

  std::string str() const;  // "next-slot" | "join-plus-slot" | "earliest" | "fixed:<d>"
  friend bool operator==(const PlaybackPolicy&, const PlaybackPolicy&) = default;
};

// Earliest reception of a contiguous byte range: byte x in [pos_begin,
// pos_end) is fully received at time_begin + (x - pos_begin) *
// seconds_per_byte. Pieces of a curve are disjoint and cover [0, S).
struct CurvePiece {
  Ratio pos_begin;
  Ratio pos_end;
  Ratio time_begin;
  Ratio seconds_per_byte;  // reciprocal of the transmission rate

  Ratio time_at(Ratio pos) const { return time_begin + (pos - pos_begin) * seconds_per_byte; }
  Ratio time_end() const { return time_at(pos_end); }
};

// Piecewise-linear map from video position to the earliest time that byte is
// fully received by a client arriving at `arrival` and listening to every
// channel from then on. A transmission straddling the arrival contributes
// only its tail; earlier bytes wait for the next periodic retransmission.
class AvailabilityCurve {
 public:
  AvailabilityCurve(Ratio arrival, std::vector<CurvePiece> pieces);

  Ratio arrival() const { return arrival_; }
  const std::vector<CurvePiece>& pieces() const { return pieces_; }

  Ratio available_at(Ratio pos) const;
  std::vector<std::pair<Ratio, Ratio>> breakpoints() const;  // (position, available_at)

  // sup over positions of (available_at(x) - x); playback started at or after
  // this level never outruns reception.
  Ratio max_start_level() const;

 private:
  Ratio arrival_;
  std::vector<CurvePiece> pieces_;  // sorted by position, contiguous over [0, S)
};

// Arrival must lie on the sub-slot grid (multiples of 1/m); throws
// std::domain_error otherwise.
AvailabilityCurve availability_curve(const BroadcastSchedule& schedule, Ratio arrival);

// min p >= arrival such that available_at(x) <= p + x for every byte x.
Ratio earliest_feasible_start(const BroadcastSchedule& schedule, Ratio arrival);

struct StallEvent {
  Ratio video_position;
  Ratio duration;
};

struct ClientTrace {
  Ratio arrival;
  Ratio playback_start;
  std::vector<StallEvent> stall_events;
  Ratio total_stall;
  Ratio completion_time;  // playback_start + playback duration + total_stall
  Ratio max_buffer;
  Ratio redundant_bytes;
  Ratio useful_bytes;     // always S on completion
  std::vector<std::pair<Ratio, Ratio>> buffer_curve;  // (time, occupancy) breakpoints
};

// Byte-exact playback simulation. Playback pauses in place whenever the next
// byte has not arrived and resumes on arrival; duplicate receptions are
// counted in redundant_bytes and never enter the buffer. The client stops
// listening to a channel once every byte that channel carries is buffered.
ClientTrace simulate_client(const BroadcastSchedule& schedule, Ratio arrival,
                            PlaybackPolicy policy);

// Amortizes per-schedule preparation across many simulations of the same
// schedule. The schedule must outlive the simulator.
class ClientSimulator {
 public:
  explicit ClientSimulator(const BroadcastSchedule& schedule);
  ~ClientSimulator();
  ClientSimulator(ClientSimulator&&) noexcept;
  ClientSimulator& operator=(ClientSimulator&&) noexcept;

  ClientTrace simulate(Ratio arrival, PlaybackPolicy policy) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct SweepSummary {
  SchemeTag scheme = SchemeTag::kHb;
  PlaybackPolicy policy;
  std::int64_t arrivals_checked = 0;
  Ratio max_total_stall;
  Ratio max_startup_wait;
  Ratio max_buffer_over_arrivals;
  Ratio mean_max_buffer;
  Ratio worst_arrival;  // lowest arrival attaining max_total_stall
  std::vector<StallEvent> worst_stalls;
};

// Simulates every sub-slot boundary arrival in [0, hyperperiod). Aggregation
// is order-independent, so parallel and sequential runs agree exactly.
SweepSummary sweep_arrivals(const BroadcastSchedule& schedule, PlaybackPolicy policy,
                            bool parallel = true);

}  // namespace nvod::sim
