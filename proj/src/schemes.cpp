#include "nvod/schemes.hpp"

#include <algorithm>
#include <stdexcept>

namespace nvod::schemes {

namespace {

std::int64_t floor_mod(std::int64_t value, std::int64_t modulus) {
  std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

void sort_canonical(BroadcastSchedule& schedule) {
  std::sort(schedule.transmissions.begin(), schedule.transmissions.end(),
            [](const Transmission& a, const Transmission& b) {
              if (a.channel != b.channel) return a.channel < b.channel;
              return a.start < b.start;
            });
}

}  // namespace

FragmentRef segment_fragment(std::int64_t segment, std::int64_t pieces, std::int64_t index) {
  if (segment < 1) throw std::domain_error("segment_fragment: segment must be >= 1");
  if (pieces < 1) throw std::domain_error("segment_fragment: pieces must be >= 1");
  if (index < 1 || index > pieces)
    throw std::domain_error("segment_fragment: fragment index out of range");
  FragmentRef ref;
  ref.segment_index = segment;
  ref.fragment_index = index;
  ref.length = Ratio(1, pieces);
  ref.offset = Ratio(segment - 1) + Ratio(index - 1, pieces);
  return ref;
}

BroadcastSchedule build_hb(const VideoParams& params) {
  const std::int64_t n = params.segments();
  BroadcastSchedule schedule{params, SchemeTag::kHb, lcm_range(n), {}};
  schedule.transmissions.reserve(static_cast<std::size_t>(schedule.hyperperiod_slots * n));
  for (std::int64_t i = 1; i <= n; ++i) {
    for (std::int64_t s = 0; s < schedule.hyperperiod_slots; ++s) {
      FragmentRef part = segment_fragment(i, i, (s % i) + 1);
      schedule.transmissions.push_back(
          {static_cast<int>(i), Ratio(s), Ratio(1), part.offset, part.length, Ratio(1, i)});
    }
  }
  sort_canonical(schedule);
  return schedule;
}

BroadcastSchedule build_chb(const VideoParams& params) {
  const std::int64_t n = params.segments();
  if (n < 3) throw std::invalid_argument("CHB needs num_segments_N >= 3");
  BroadcastSchedule schedule{params, SchemeTag::kChb, lcm_range(n - 1), {}};
  for (std::int64_t s = 0; s < schedule.hyperperiod_slots; ++s) {
    schedule.transmissions.push_back({1, Ratio(s), Ratio(1), Ratio(0), Ratio(1), Ratio(1)});
    const std::int64_t seg2 = (s % 2 == 0) ? 2 : 3;  // segment 2 on even slots
    schedule.transmissions.push_back(
        {2, Ratio(s), Ratio(1), Ratio(seg2 - 1), Ratio(1), Ratio(1)});
    for (std::int64_t c = 3; c <= n - 1; ++c) {
      FragmentRef part = segment_fragment(c + 1, c, (s % c) + 1);
      schedule.transmissions.push_back(
          {static_cast<int>(c), Ratio(s), Ratio(1), part.offset, part.length, Ratio(1, c)});
    }
  }
  sort_canonical(schedule);
  return schedule;
}

std::int64_t qhb_fragment_index(std::int64_t i, std::int64_t m,
                                std::int64_t slot_j, std::int64_t subslot_k) {
  if (i < 2) throw std::domain_error("qhb_fragment_index: i must be >= 2");
  if (m < 2) throw std::domain_error("qhb_fragment_index: m must be >= 2");
  if (slot_j < 1) throw std::domain_error("qhb_fragment_index: slot_j must be >= 1");
  if (subslot_k < 1 || subslot_k > m)
    throw std::domain_error("qhb_fragment_index: subslot_k must lie in 1..m");
  if (subslot_k == m) return ((slot_j - 1) % (i - 1)) + 1;
  return (i * subslot_k + slot_j - 1) % (i * (m - 1)) + i;
}

namespace {

// Fragment carried by channel i in cycle slot J (0-based, J in 0..i-1) and
// physical sub-slot u (0-based, u in 0..m-1), under the given index reading.
// The last physical sub-slot always cycles the first i-1 fragments.
std::int64_t qhb_place(std::int64_t i, std::int64_t m, std::int64_t cycle_slot,
                       std::int64_t subslot, QhbIndexBases bases) {
  const std::int64_t j = cycle_slot + (bases.slot_one_based ? 1 : 0);
  if (subslot == m - 1) return floor_mod(j - 1, i - 1) + 1;
  const std::int64_t k = subslot + (bases.subslot_one_based ? 1 : 0);
  return floor_mod(i * k + j - 1, i * (m - 1)) + i;
}

}  // namespace

BroadcastSchedule build_qhb_with_bases(const VideoParams& params, QhbIndexBases bases) {
  const std::int64_t n = params.segments();
  const std::int64_t m = params.subslots();
  if (m < 2) throw std::invalid_argument("QHB needs subslots_m >= 2");
  BroadcastSchedule schedule{params, SchemeTag::kQhb, lcm_range(n), {}};
  for (std::int64_t s = 0; s < schedule.hyperperiod_slots; ++s) {
    schedule.transmissions.push_back({1, Ratio(s), Ratio(1), Ratio(0), Ratio(1), Ratio(1)});
    for (std::int64_t i = 2; i <= n; ++i) {
      const std::int64_t fragments = i * m - 1;
      for (std::int64_t u = 0; u < m; ++u) {
        FragmentRef frag = segment_fragment(i, fragments, qhb_place(i, m, s % i, u, bases));
        schedule.transmissions.push_back({static_cast<int>(i), Ratio(s) + Ratio(u, m),
                                          Ratio(1, m), frag.offset, frag.length,
                                          Ratio(m, fragments)});
      }
    }
  }
  sort_canonical(schedule);
  return schedule;
}

BroadcastSchedule build_qhb(const VideoParams& params) {
  return build_qhb_with_bases(params, QhbIndexBases{});
}

std::optional<std::int64_t> ahb_problematic(std::int64_t k, std::int64_t slot) {
  if (k <= 1 || slot < k) return std::nullopt;
  const std::int64_t r = slot % k;
  if (r == k - 1) return std::nullopt;  // the k-th fragment is never problematic
  return r + 1;
}

BroadcastSchedule build_ahb(const VideoParams& params) {
  const std::int64_t n = params.segments();
  BroadcastSchedule schedule{params, SchemeTag::kAhb, lcm_range(n), {}};
  for (std::int64_t k = 1; k <= n; ++k) {
    for (std::int64_t s = 0; s < schedule.hyperperiod_slots; ++s) {
      const std::int64_t f = (s % k) + 1;
      FragmentRef frag = segment_fragment(k, k, f);
      // Steady state: beyond the one-off warm-up, every occurrence of
      // fragments 1..k-1 lands on a problematic slot, so it is burst at full
      // rate for the first 1/k of the slot and the channel idles afterwards.
      const bool burst = k > 1 && f <= k - 1;
      if (burst) {
        schedule.transmissions.push_back(
            {static_cast<int>(k), Ratio(s), Ratio(1, k), frag.offset, frag.length, Ratio(1)});
      } else {
        schedule.transmissions.push_back(
            {static_cast<int>(k), Ratio(s), Ratio(1), frag.offset, frag.length, Ratio(1, k)});
      }
    }
  }
  sort_canonical(schedule);
  return schedule;
}

std::int64_t AqhbMatrix::cell(std::int64_t row, std::int64_t col) const {
  if (row < 1 || row > rows() || col < 1 || col > cols)
    throw std::domain_error("AqhbMatrix::cell: index out of range");
  return cells[static_cast<std::size_t>((row - 1) * cols + (col - 1))];
}

AqhbMatrix aqhb_matrix(std::int64_t i, std::int64_t m) {
  if (i < 1) throw std::domain_error("aqhb_matrix: i must be >= 1");
  if (m < 1) throw std::domain_error("aqhb_matrix: m must be >= 1");
  AqhbMatrix matrix{i, m, {}};
  matrix.cells.reserve(static_cast<std::size_t>(i * m));
  for (std::int64_t row = 1; row <= i; ++row)
    for (std::int64_t col = 1; col <= m; ++col)
      matrix.cells.push_back(i * (col - 1) + row);
  return matrix;
}

BroadcastSchedule build_aqhb(const VideoParams& params) {
  const std::int64_t n = params.segments();
  const std::int64_t m = params.subslots();
  BroadcastSchedule schedule{params, SchemeTag::kAqhb, lcm_range(n), {}};
  for (std::int64_t i = 1; i <= n; ++i) {
    const AqhbMatrix matrix = aqhb_matrix(i, m);
    for (std::int64_t s = 0; s < schedule.hyperperiod_slots; ++s) {
      const std::int64_t row = (s % i) + 1;
      for (std::int64_t col = 1; col <= m; ++col) {
        FragmentRef frag = segment_fragment(i, i * m, matrix.cell(row, col));
        schedule.transmissions.push_back({static_cast<int>(i),
                                          Ratio(s) + Ratio(col - 1, m), Ratio(1, m),
                                          frag.offset, frag.length, Ratio(1, i)});
      }
    }
  }
  sort_canonical(schedule);
  return schedule;
}

BroadcastSchedule build_scheme(SchemeTag scheme, const VideoParams& params) {
  switch (scheme) {
    case SchemeTag::kHb:   return build_hb(params);
    case SchemeTag::kChb:  return build_chb(params);
    case SchemeTag::kQhb:  return build_qhb(params);
    case SchemeTag::kAhb:  return build_ahb(params);
    case SchemeTag::kAqhb: return build_aqhb(params);
  }
  throw std::invalid_argument("unknown scheme");
}

}  // namespace nvod::schemes
