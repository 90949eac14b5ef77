#include "nvod/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "nvod/schemes.hpp"

namespace nvod::metrics {

bool operator==(const BandwidthProfile& a, const BandwidthProfile& b) {
  if (a.hyperperiod != b.hyperperiod || a.pieces.size() != b.pieces.size()) return false;
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    if (a.pieces[i].begin != b.pieces[i].begin || a.pieces[i].end != b.pieces[i].end ||
        a.pieces[i].rate != b.pieces[i].rate)
      return false;
  }
  return true;
}

namespace {

BandwidthProfile profile_of(const BroadcastSchedule& schedule, int channel_filter) {
  const Ratio period = schedule.hyperperiod();

  // Rate deltas at transmission starts/ends, swept in time order. Gaps show
  // up as zero-rate pieces so the profile always covers [0, hyperperiod).
  std::vector<std::pair<Ratio, Ratio>> deltas;
  for (const Transmission& t : schedule.transmissions) {
    if (channel_filter != 0 && t.channel != channel_filter) continue;
    deltas.emplace_back(t.start, t.rate);
    deltas.emplace_back(t.end(), -t.rate);
  }
  std::sort(deltas.begin(), deltas.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  BandwidthProfile profile;
  profile.hyperperiod = period;
  Ratio current(0);
  Ratio piece_start(0);
  std::size_t i = 0;
  auto close_piece = [&](Ratio until) {
    if (piece_start < until) {
      if (!profile.pieces.empty() && profile.pieces.back().rate == current)
        profile.pieces.back().end = until;  // merge equal-rate neighbours
      else
        profile.pieces.push_back({piece_start, until, current});
    }
    piece_start = until;
  };
  while (i < deltas.size()) {
    const Ratio t = deltas[i].first;
    close_piece(min(t, period));
    while (i < deltas.size() && deltas[i].first == t) current += deltas[i++].second;
  }
  close_piece(period);

  profile.peak_rate = Ratio(0);
  profile.bytes_per_hyperperiod = Ratio(0);
  for (const ProfilePiece& p : profile.pieces) {
    profile.peak_rate = max(profile.peak_rate, p.rate);
    profile.bytes_per_hyperperiod += p.rate * (p.end - p.begin);
  }
  profile.time_average_rate = profile.bytes_per_hyperperiod / period;
  return profile;
}

}  // namespace

BandwidthProfile bandwidth_profile(const BroadcastSchedule& schedule) {
  return profile_of(schedule, 0);
}

BandwidthProfile channel_profile(const BroadcastSchedule& schedule, int channel) {
  return profile_of(schedule, channel);
}

Ratio chb_surplus(const VideoParams& params) {
  if (params.segments() < 3) throw std::invalid_argument("CHB needs num_segments_N >= 3");
  const Ratio chb = bandwidth_profile(schemes::build_chb(params)).time_average_rate;
  const Ratio hb = bandwidth_profile(schemes::build_hb(params)).time_average_rate;
  return chb - hb;
}

std::vector<Figure7Row> figure7_rows(Ratio duration_T,
                                     const std::vector<std::int64_t>& segment_counts) {
  if (!duration_T.is_positive()) throw std::invalid_argument("duration_T must be positive");
  std::vector<Figure7Row> rows;
  rows.reserve(segment_counts.size());
  for (std::int64_t n : segment_counts) {
    if (n < 1) throw std::invalid_argument("num_segments_N must be at least 1");
    Figure7Row row;
    row.segments = n;
    row.hb = duration_T / Ratio(n);  // display-delay repair
    row.chb = row.qhb = row.ahb = row.aqhb = Ratio(0);
    if (n == 5 && duration_T == Ratio(120))
      row.note = "published series prints 20 for N=5; T/N gives 24";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::kSlotBandwidth:     return "slot-bandwidth";
    case Criterion::kInitialWait:       return "initial-wait";
    case Criterion::kStorage:           return "storage";
    case Criterion::kDiscontinuityWait: return "discontinuity-wait";
    case Criterion::kSyncProvided:      return "sync-provided";
  }
  return "?";
}

std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::kEqual:             return "equal";
    case Relation::kLessInAqhb:        return "less-in-aqhb";
    case Relation::kMoreInAqhb:        return "more-in-aqhb";
    case Relation::kEqualAvgLessWorst: return "equal-avg-less-worst";
    case Relation::kNoWaitBoth:        return "no-wait-both";
    case Relation::kAqhbOnly:          return "no-wait-aqhb-only";
    case Relation::kBothProvide:       return "both-provide";
    case Relation::kHbLacks:           return "aqhb-provides-other-lacks";
  }
  return "?";
}

Relation reference_relation(Criterion criterion, SchemeTag other) {
  switch (criterion) {
    case Criterion::kSlotBandwidth:
    case Criterion::kStorage:
      switch (other) {
        case SchemeTag::kHb:  return Relation::kEqual;
        case SchemeTag::kAhb: return Relation::kEqualAvgLessWorst;
        default:              return Relation::kLessInAqhb;
      }
    case Criterion::kInitialWait:
      return Relation::kEqual;
    case Criterion::kDiscontinuityWait:
      return other == SchemeTag::kHb ? Relation::kAqhbOnly : Relation::kNoWaitBoth;
    case Criterion::kSyncProvided:
      return other == SchemeTag::kHb ? Relation::kHbLacks : Relation::kBothProvide;
  }
  throw std::logic_error("unknown criterion");
}

namespace {

Relation compare_scalars(Ratio aqhb, Ratio other) {
  if (aqhb == other) return Relation::kEqual;
  return aqhb < other ? Relation::kLessInAqhb : Relation::kMoreInAqhb;
}

// Worst value first, average as the tie-refiner.
Relation compare_worst_and_avg(Ratio aqhb_worst, Ratio other_worst,
                               Ratio aqhb_avg, Ratio other_avg) {
  if (aqhb_worst == other_worst)
    return aqhb_avg == other_avg ? Relation::kEqual : compare_scalars(aqhb_avg, other_avg);
  if (aqhb_worst < other_worst && aqhb_avg == other_avg) return Relation::kEqualAvgLessWorst;
  return compare_scalars(aqhb_worst, other_worst);
}

Relation compare_stalls(Ratio aqhb_stall, Ratio other_stall) {
  const bool aqhb_zero = aqhb_stall.is_zero();
  const bool other_zero = other_stall.is_zero();
  if (aqhb_zero && other_zero) return Relation::kNoWaitBoth;
  if (aqhb_zero) return Relation::kAqhbOnly;
  return compare_scalars(aqhb_stall, other_stall);
}

Relation compare_sync(Ratio aqhb_stall, Ratio other_stall) {
  const bool aqhb_provides = aqhb_stall.is_zero();
  const bool other_provides = other_stall.is_zero();
  if (aqhb_provides && other_provides) return Relation::kBothProvide;
  if (aqhb_provides) return Relation::kHbLacks;
  return other_provides ? Relation::kMoreInAqhb : Relation::kEqual;
}

}  // namespace

std::vector<ComparisonRow> table1_relations(const VideoParams& params) {
  if (params.segments() < 3)
    throw std::invalid_argument("comparison table needs num_segments_N >= 3");

  struct Measured {
    BandwidthProfile profile;
    sim::SweepSummary sweep;
  };
  auto measure = [&params](SchemeTag tag) {
    BroadcastSchedule schedule = schemes::build_scheme(tag, params);
    Measured m{bandwidth_profile(schedule), {}};
    m.sweep = sim::sweep_arrivals(schedule, sim::PlaybackPolicy::default_for(tag));
    return m;
  };

  const Measured aqhb = measure(SchemeTag::kAqhb);
  const SchemeTag others[] = {SchemeTag::kHb, SchemeTag::kChb, SchemeTag::kQhb, SchemeTag::kAhb};

  std::vector<ComparisonRow> rows;
  for (SchemeTag tag : others) {
    const Measured other = measure(tag);

    ComparisonRow bandwidth;
    bandwidth.criterion = Criterion::kSlotBandwidth;
    bandwidth.other = tag;
    bandwidth.aqhb_value = aqhb.profile.time_average_rate;
    bandwidth.other_value = other.profile.time_average_rate;
    bandwidth.aqhb_aux = aqhb.profile.peak_rate;
    bandwidth.other_aux = other.profile.peak_rate;
    bandwidth.measured =
        aqhb.profile == other.profile
            ? Relation::kEqual
            : compare_worst_and_avg(aqhb.profile.peak_rate, other.profile.peak_rate,
                                    aqhb.profile.time_average_rate,
                                    other.profile.time_average_rate);
    rows.push_back(bandwidth);

    ComparisonRow wait;
    wait.criterion = Criterion::kInitialWait;
    wait.other = tag;
    wait.aqhb_value = aqhb.sweep.max_startup_wait;
    wait.other_value = other.sweep.max_startup_wait;
    wait.measured = compare_scalars(wait.aqhb_value, wait.other_value);
    rows.push_back(wait);

    ComparisonRow storage;
    storage.criterion = Criterion::kStorage;
    storage.other = tag;
    storage.aqhb_value = aqhb.sweep.max_buffer_over_arrivals;
    storage.other_value = other.sweep.max_buffer_over_arrivals;
    storage.aqhb_aux = aqhb.sweep.mean_max_buffer;
    storage.other_aux = other.sweep.mean_max_buffer;
    storage.measured = compare_worst_and_avg(storage.aqhb_value, storage.other_value,
                                             storage.aqhb_aux, storage.other_aux);
    rows.push_back(storage);

    ComparisonRow stall;
    stall.criterion = Criterion::kDiscontinuityWait;
    stall.other = tag;
    stall.aqhb_value = aqhb.sweep.max_total_stall;
    stall.other_value = other.sweep.max_total_stall;
    stall.measured = compare_stalls(stall.aqhb_value, stall.other_value);
    rows.push_back(stall);

    ComparisonRow sync;
    sync.criterion = Criterion::kSyncProvided;
    sync.other = tag;
    sync.aqhb_value = Ratio(aqhb.sweep.max_total_stall.is_zero() ? 1 : 0);
    sync.other_value = Ratio(other.sweep.max_total_stall.is_zero() ? 1 : 0);
    sync.measured = compare_sync(aqhb.sweep.max_total_stall, other.sweep.max_total_stall);
    rows.push_back(sync);
  }

  for (ComparisonRow& row : rows) {
    row.reference = reference_relation(row.criterion, row.other);
    row.matches = row.measured == row.reference;
  }
  return rows;
}

}  // namespace nvod::metrics
