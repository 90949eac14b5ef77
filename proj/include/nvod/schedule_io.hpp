#pragma once

#include <string>
#include <string_view>

#include "nvod/schedule.hpp"

namespace nvod {

// Canonical JSON form: {scheme, N, m, hyperperiod_slots, transmissions:[
// {channel, start:{num,den}, duration:{num,den}, offset:{num,den},
// length:{num,den}, rate:{num,den}}]}. Field order is fixed and rationals are
// in lowest terms, so output is byte-deterministic.
std::string schedule_to_json(const BroadcastSchedule& schedule);

// Inverse of schedule_to_json. Display parameters are not part of the wire
// format; the result carries canonical units (T = N, b = 1).
BroadcastSchedule schedule_from_json(std::string_view text);

// CSV rows: channel,slot,subslot,segment,fragment,rate_num,rate_den,start_num,start_den
std::string schedule_to_csv(const BroadcastSchedule& schedule);

}  // namespace nvod
