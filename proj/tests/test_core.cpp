#include <stdexcept>
#include <string>

#include "doctest.h"
#include "nvod/params.hpp"
#include "nvod/schedule.hpp"
#include "nvod/schemes.hpp"

using nvod::Ratio;
using nvod::VideoParams;

TEST_CASE("make_params derives slot length and size") {
  VideoParams p = VideoParams::make(Ratio(120), Ratio(1), 4, 4);
  CHECK(p.slot_length() == Ratio(30));
  CHECK(p.video_size() == Ratio(120));
  CHECK(p.canonical_size() == Ratio(4));

  VideoParams one = VideoParams::make(Ratio(120), Ratio(1), 1, 4);
  CHECK(one.slot_length() == Ratio(120));
}

TEST_CASE("make_params names the offending field") {
  auto message_of = [](auto fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of([] { VideoParams::make(Ratio(120), Ratio(1), 0, 4); })
	    .find("num_segments_N") != std::string::npos);
  CHECK(message_of([] { VideoParams::make(Ratio(0), Ratio(1), 4, 4); })
	    .find("duration_T") != std::string::npos);
  CHECK(message_of([] { VideoParams::make(Ratio(120), Ratio(-1), 4, 4); })
	    .find("playback_rate_b") != std::string::npos);
  CHECK(message_of([] { VideoParams::make(Ratio(120), Ratio(1), 4, 0); })
	    .find("subslots_m") != std::string::npos);
}

TEST_CASE("display conversions scale canonical units") {
  VideoParams p = VideoParams::make(Ratio(120), Ratio(2), 4, 4);
  CHECK(p.display_time(Ratio(1)) == Ratio(30));      // one slot
  CHECK(p.display_rate(Ratio(1, 2)) == Ratio(1));    // half playback rate
  CHECK(p.display_data(Ratio(4)) == Ratio(240));     // whole video
}

TEST_CASE("builders produce valid schedules across the parameter grid") {
  for (std::int64_t n = 1; n <= 8; ++n) {
    for (std::int64_t m : {2, 4, 8}) {
      VideoParams p = VideoParams::make(Ratio(120), Ratio(1), n, m);
      CHECK(nvod::schedule_validate(nvod::schemes::build_hb(p)).empty());
      CHECK(nvod::schedule_validate(nvod::schemes::build_ahb(p)).empty());
      CHECK(nvod::schedule_validate(nvod::schemes::build_aqhb(p)).empty());
      CHECK(nvod::schedule_validate(nvod::schemes::build_qhb(p)).empty());
      if (n >= 3) CHECK(nvod::schedule_validate(nvod::schemes::build_chb(p)).empty());
    }
  }
}

TEST_CASE("schedule_validate flags overlaps") {
  VideoParams p = VideoParams::make(Ratio(120), Ratio(1), 2, 4);
  nvod::BroadcastSchedule s{p, nvod::SchemeTag::kHb, 2, {}};
  s.transmissions.push_back({1, Ratio(0), Ratio(1), Ratio(0), Ratio(1), Ratio(1)});
  s.transmissions.push_back({1, Ratio(1, 2), Ratio(1), Ratio(1), Ratio(1), Ratio(1)});
  auto violations = nvod::schedule_validate(s);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].channel == 1);
  CHECK(violations[0].rule.find("overlap") != std::string::npos);
}

TEST_CASE("schedule_validate flags coverage gaps") {
  VideoParams p = VideoParams::make(Ratio(120), Ratio(1), 2, 4);
  nvod::BroadcastSchedule s{p, nvod::SchemeTag::kHb, 2, {}};
  s.transmissions.push_back({1, Ratio(0), Ratio(1), Ratio(0), Ratio(1), Ratio(1)});
  s.transmissions.push_back({2, Ratio(0), Ratio(2), Ratio(1), Ratio(1, 2), Ratio(1, 4)});
  auto violations = nvod::schedule_validate(s);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule.find("coverage gap") != std::string::npos);
  CHECK(violations[0].at == Ratio(3, 2));
}

TEST_CASE("schedule_validate flags broken data conservation and wrap overlap") {
  VideoParams p = VideoParams::make(Ratio(120), Ratio(1), 1, 4);
  nvod::BroadcastSchedule s{p, nvod::SchemeTag::kHb, 1, {}};
  s.transmissions.push_back({1, Ratio(0), Ratio(1), Ratio(0), Ratio(1), Ratio(1, 2)});
  auto violations = nvod::schedule_validate(s);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule.find("rate * duration") != std::string::npos);

  nvod::BroadcastSchedule wrap{p, nvod::SchemeTag::kHb, 1, {}};
  wrap.transmissions.push_back({1, Ratio(0), Ratio(1, 2), Ratio(0), Ratio(1, 2), Ratio(1)});
  wrap.transmissions.push_back({1, Ratio(3, 4), Ratio(1, 2), Ratio(1, 2), Ratio(1, 2), Ratio(1)});
  auto wrap_violations = nvod::schedule_validate(wrap);
  REQUIRE(wrap_violations.size() == 1);
  CHECK(wrap_violations[0].rule.find("periodic wrap") != std::string::npos);
}

TEST_CASE("scheme names round-trip") {
  using nvod::SchemeTag;
  for (SchemeTag tag : {SchemeTag::kHb, SchemeTag::kChb, SchemeTag::kQhb, SchemeTag::kAhb,
                        SchemeTag::kAqhb}) {
    auto parsed = nvod::parse_scheme(nvod::scheme_name(tag));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == tag);
  }
  CHECK(nvod::parse_scheme("aqhb") == SchemeTag::kAqhb);
  CHECK(!nvod::parse_scheme("nope").has_value());
}
