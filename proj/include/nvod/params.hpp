#pragma once

#include <cstdint>

#include "nvod/ratio.hpp"

namespace nvod {

// Validated video/broadcast parameters.
//
// Schedules and the simulator work in canonical units: one slot of time is 1,
// the playback rate is 1, so the video occupies N data units and segment k is
// the byte interval [k-1, k). duration_T and playback_rate_b are kept only to
// convert results back to display units (e.g. minutes) at the CLI boundary.
class VideoParams {
 public:
  static VideoParams make(Ratio duration_T, Ratio playback_rate_b,
                          std::int64_t num_segments_N, std::int64_t subslots_m);

  Ratio duration_T() const { return duration_; }
  Ratio playback_rate_b() const { return rate_; }
  std::int64_t segments() const { return segments_; }
  std::int64_t subslots() const { return subslots_; }

  Ratio slot_length() const { return duration_ / Ratio(segments_); }  // display units
  Ratio video_size() const { return duration_ * rate_; }              // display units

  // Canonical video size: N data units.
  Ratio canonical_size() const { return Ratio(segments_); }

  Ratio display_time(Ratio canonical_time) const { return canonical_time * slot_length(); }
  Ratio display_rate(Ratio canonical_rate) const { return canonical_rate * rate_; }
  Ratio display_data(Ratio canonical_data) const {
    return canonical_data * slot_length() * rate_;
  }

 private:
  VideoParams(Ratio duration, Ratio rate, std::int64_t segments, std::int64_t subslots)
      : duration_(duration), rate_(rate), segments_(segments), subslots_(subslots) {}

  Ratio duration_;
  Ratio rate_;
  std::int64_t segments_;
  std::int64_t subslots_;
};

}  // namespace nvod
