#include "nvod/params.hpp"

#include <stdexcept>

namespace nvod {

VideoParams VideoParams::make(Ratio duration_T, Ratio playback_rate_b,
                              std::int64_t num_segments_N, std::int64_t subslots_m) {
  if (!duration_T.is_positive())
    throw std::invalid_argument("duration_T must be positive");
  if (!playback_rate_b.is_positive())
    throw std::invalid_argument("playback_rate_b must be positive");
  if (num_segments_N < 1)
    throw std::invalid_argument("num_segments_N must be at least 1");
  if (subslots_m < 1)
    throw std::invalid_argument("subslots_m must be at least 1");
  return VideoParams(duration_T, playback_rate_b, num_segments_N, subslots_m);
}

}  // namespace nvod
