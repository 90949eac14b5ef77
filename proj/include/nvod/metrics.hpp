#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nvod/client_sim.hpp"
#include "nvod/schedule.hpp"

namespace nvod::metrics {

struct ProfilePiece {
  Ratio begin;
  Ratio end;
  Ratio rate;
};

// Piecewise-constant total transmission rate over one hyperperiod. Pieces are
// contiguous, cover [0, hyperperiod), and adjacent pieces carry distinct
// rates, so equal profiles compare equal piece-by-piece.
struct BandwidthProfile {
  std::vector<ProfilePiece> pieces;
  Ratio hyperperiod;
  Ratio peak_rate;
  Ratio bytes_per_hyperperiod;
  Ratio time_average_rate;

  bool constant() const { return pieces.size() == 1; }
  friend bool operator==(const BandwidthProfile&, const BandwidthProfile&);
};

BandwidthProfile bandwidth_profile(const BroadcastSchedule& schedule);
// Same, restricted to one channel (zero-rate pieces mark idle intervals).
BandwidthProfile channel_profile(const BroadcastSchedule& schedule, int channel);

// Measured aggregate-rate difference CHB minus HB for the same N; equals
// 1/2 - 1/N. Requires N >= 3.
Ratio chb_surplus(const VideoParams& params);

// Discontinuity-wait series for a video of display length T: the HB column is
// the display-delay repair T/N; the other schemes are zero. The note flags
// the known inconsistency in the published N=5 value for T=120.
struct Figure7Row {
  std::int64_t segments = 1;
  Ratio hb;
  Ratio chb;
  Ratio qhb;
  Ratio ahb;
  Ratio aqhb;
  std::string note;
};

std::vector<Figure7Row> figure7_rows(Ratio duration_T,
                                     const std::vector<std::int64_t>& segment_counts);

enum class Criterion { kSlotBandwidth, kInitialWait, kStorage, kDiscontinuityWait, kSyncProvided };

enum class Relation {
  kEqual,
  kLessInAqhb,
  kMoreInAqhb,
  kEqualAvgLessWorst,
  kNoWaitBoth,
  kAqhbOnly,
  kBothProvide,
  kHbLacks,
};

std::string_view criterion_name(Criterion c);
std::string_view relation_name(Relation r);

// AQHB versus one other scheme on one criterion. `measured` is always derived
// from the measured values; `reference` is the published comparison cell, and
// `matches` records whether measurement reproduces it.
struct ComparisonRow {
  Criterion criterion = Criterion::kSlotBandwidth;
  SchemeTag other = SchemeTag::kHb;
  Relation measured = Relation::kEqual;
  Relation reference = Relation::kEqual;
  bool matches = true;
  Ratio aqhb_value;
  Ratio other_value;
  Ratio aqhb_aux;   // peak rate / mean buffer where a worst-vs-average split applies
  Ratio other_aux;
};

Relation reference_relation(Criterion criterion, SchemeTag other);

// Builds all five schedules, measures bandwidth profiles and exhaustive
// arrival sweeps under each scheme's default policy, and derives every
// relation from the measurements. Requires N >= 3 so CHB is constructible.
std::vector<ComparisonRow> table1_relations(const VideoParams& params);

}  // namespace nvod::metrics
