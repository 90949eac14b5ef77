#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nvod/params.hpp"
#include "nvod/ratio.hpp"

namespace nvod {

enum class SchemeTag { kHb, kChb, kQhb, kAhb, kAqhb };

std::string_view scheme_name(SchemeTag tag);                    // "HB", "CHB", ...
std::optional<SchemeTag> parse_scheme(std::string_view name);   // case-insensitive

// One periodic transmission: during [start, start+duration) the channel sends
// video bytes [video_offset, video_offset+length) linearly at `rate`.
// Invariant: rate * duration == length.
struct Transmission {
  int channel = 0;
  Ratio start;
  Ratio duration;
  Ratio video_offset;
  Ratio length;
  Ratio rate;

  Ratio end() const { return start + duration; }
};

// One hyperperiod of a periodic broadcast, in canonical units. The pattern
// repeats with period hyperperiod_slots (slot length 1); all channel cycles
// are phase-aligned so that slot 0 begins every channel's cycle.
struct BroadcastSchedule {
  VideoParams params;
  SchemeTag scheme = SchemeTag::kHb;
  std::int64_t hyperperiod_slots = 1;
  std::vector<Transmission> transmissions;  // sorted by (channel, start)

  Ratio hyperperiod() const { return Ratio(hyperperiod_slots); }
  Ratio video_size() const { return params.canonical_size(); }
  int channel_count() const;
};

struct ScheduleViolation {
  int channel = 0;  // 0 when no single channel is at fault (e.g. coverage gaps)
  Ratio at;
  std::string rule;
};

// Returns one entry per broken schedule invariant; empty means valid.
// Checked: per-transmission data conservation and bounds, per-channel
// non-overlap (including across the periodic wrap), and whole-video coverage
// within one hyperperiod.
std::vector<ScheduleViolation> schedule_validate(const BroadcastSchedule& schedule);

}  // namespace nvod
