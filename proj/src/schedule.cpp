#include "nvod/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace nvod {

std::string_view scheme_name(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::kHb:   return "HB";
    case SchemeTag::kChb:  return "CHB";
    case SchemeTag::kQhb:  return "QHB";
    case SchemeTag::kAhb:  return "AHB";
    case SchemeTag::kAqhb: return "AQHB";
  }
  return "?";
}

std::optional<SchemeTag> parse_scheme(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "HB") return SchemeTag::kHb;
  if (upper == "CHB") return SchemeTag::kChb;
  if (upper == "QHB") return SchemeTag::kQhb;
  if (upper == "AHB") return SchemeTag::kAhb;
  if (upper == "AQHB") return SchemeTag::kAqhb;
  return std::nullopt;
}

int BroadcastSchedule::channel_count() const {
  int best = 0;
  for (const Transmission& t : transmissions) best = std::max(best, t.channel);
  return best;
}

std::vector<ScheduleViolation> schedule_validate(const BroadcastSchedule& schedule) {
  std::vector<ScheduleViolation> out;
  const Ratio period = schedule.hyperperiod();
  const Ratio size = schedule.video_size();

  std::map<int, std::vector<const Transmission*>> by_channel;
  for (const Transmission& t : schedule.transmissions) {
    if (t.channel < 1)
      out.push_back({t.channel, t.start, "channel index must be positive"});
    if (!t.duration.is_positive())
      out.push_back({t.channel, t.start, "duration must be positive"});
    if (!t.length.is_positive())
      out.push_back({t.channel, t.start, "length must be positive"});
    if (!t.rate.is_positive())
      out.push_back({t.channel, t.start, "rate must be positive"});
    else if (t.rate * t.duration != t.length)
      out.push_back({t.channel, t.start, "rate * duration must equal length"});
    if (t.video_offset.is_negative() || size < t.video_offset + t.length)
      out.push_back({t.channel, t.start, "byte range must lie inside the video"});
    if (t.start.is_negative() || !(t.start < period))
      out.push_back({t.channel, t.start, "start must lie in [0, hyperperiod)"});
    by_channel[t.channel].push_back(&t);
  }

  for (auto& [channel, txs] : by_channel) {
    std::sort(txs.begin(), txs.end(),
              [](const Transmission* a, const Transmission* b) { return a->start < b->start; });
    for (std::size_t i = 0; i + 1 < txs.size(); ++i) {
      if (txs[i + 1]->start < txs[i]->end())
        out.push_back({channel, txs[i + 1]->start, "transmissions overlap on channel"});
    }
    // The pattern repeats every hyperperiod: the last transmission must also
    // clear the first one of the next period.
    if (!txs.empty() && txs.front()->start + period < txs.back()->end())
      out.push_back({channel, txs.back()->start, "transmissions overlap across the periodic wrap"});
  }

  // Every byte must be broadcast at least once per hyperperiod.
  std::vector<std::pair<Ratio, Ratio>> ranges;
  ranges.reserve(schedule.transmissions.size());
  for (const Transmission& t : schedule.transmissions)
    ranges.emplace_back(t.video_offset, t.video_offset + t.length);
  std::sort(ranges.begin(), ranges.end());
  Ratio covered_to(0);
  for (const auto& [lo, hi] : ranges) {
    if (covered_to < lo) {
      out.push_back({0, covered_to, "coverage gap: bytes [" + covered_to.str() + ", " +
                                        lo.str() + ") are never broadcast"});
    }
    covered_to = max(covered_to, hi);
  }
  if (covered_to < size) {
    out.push_back({0, covered_to, "coverage gap: bytes [" + covered_to.str() + ", " +
                                      size.str() + ") are never broadcast"});
  }

  return out;
}

}  // namespace nvod
