#include "nvod/schedule_io.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nvod {

namespace {

nlohmann::ordered_json ratio_json(Ratio r) {
  nlohmann::ordered_json j;
  j["num"] = r.num();
  j["den"] = r.den();
  return j;
}

Ratio ratio_from(const nlohmann::json& j) {
  return Ratio(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

}  // namespace

std::string schedule_to_json(const BroadcastSchedule& schedule) {
  nlohmann::ordered_json root;
  root["scheme"] = std::string(scheme_name(schedule.scheme));
  root["N"] = schedule.params.segments();
  root["m"] = schedule.params.subslots();
  root["hyperperiod_slots"] = schedule.hyperperiod_slots;
  nlohmann::ordered_json txs = nlohmann::ordered_json::array();
  for (const Transmission& t : schedule.transmissions) {
    nlohmann::ordered_json j;
    j["channel"] = t.channel;
    j["start"] = ratio_json(t.start);
    j["duration"] = ratio_json(t.duration);
    j["offset"] = ratio_json(t.video_offset);
    j["length"] = ratio_json(t.length);
    j["rate"] = ratio_json(t.rate);
    txs.push_back(std::move(j));
  }
  root["transmissions"] = std::move(txs);
  return root.dump(2) + "\n";
}

BroadcastSchedule schedule_from_json(std::string_view text) {
  nlohmann::json root = nlohmann::json::parse(text);
  auto scheme = parse_scheme(root.at("scheme").get<std::string>());
  if (!scheme) throw std::invalid_argument("schedule JSON: unknown scheme");
  const std::int64_t n = root.at("N").get<std::int64_t>();
  const std::int64_t m = root.at("m").get<std::int64_t>();
  // The wire format is canonical-units only: slot length 1, unit rate.
  BroadcastSchedule schedule{VideoParams::make(Ratio(n), Ratio(1), n, m), *scheme,
                             root.at("hyperperiod_slots").get<std::int64_t>(), {}};
  for (const auto& j : root.at("transmissions")) {
    Transmission t;
    t.channel = j.at("channel").get<int>();
    t.start = ratio_from(j.at("start"));
    t.duration = ratio_from(j.at("duration"));
    t.video_offset = ratio_from(j.at("offset"));
    t.length = ratio_from(j.at("length"));
    t.rate = ratio_from(j.at("rate"));
    schedule.transmissions.push_back(t);
  }
  return schedule;
}

std::string schedule_to_csv(const BroadcastSchedule& schedule) {
  const std::int64_t m = schedule.params.subslots();
  std::ostringstream out;
  out << "channel,slot,subslot,segment,fragment,rate_num,rate_den,start_num,start_den\n";
  for (const Transmission& t : schedule.transmissions) {
    const std::int64_t slot = t.start.floor();
    const std::int64_t subslot = ((t.start - Ratio(slot)) * Ratio(m)).floor();
    const std::int64_t segment = t.video_offset.floor() + 1;
    // Each transmission carries exactly one fragment, so the fragment length
    // recovers the index within the segment.
    const std::int64_t fragment =
        ((t.video_offset - Ratio(segment - 1)) / t.length).floor() + 1;
    out << t.channel << ',' << slot << ',' << subslot << ',' << segment << ',' << fragment
        << ',' << t.rate.num() << ',' << t.rate.den() << ',' << t.start.num() << ','
        << t.start.den() << '\n';
  }
  return out.str();
}

}  // namespace nvod
