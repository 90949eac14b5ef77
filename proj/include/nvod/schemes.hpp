#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nvod/schedule.hpp"

namespace nvod::schemes {

// A fragment's place inside its segment, with its byte range in canonical
// units. Fragments of one segment partition the segment exactly.
struct FragmentRef {
  std::int64_t segment_index = 1;   // 1..N
  std::int64_t fragment_index = 1;  // 1..pieces
  Ratio offset;
  Ratio length;
};

// Byte range of fragment `index` when segment `segment` is split into
// `pieces` equal fragments.
FragmentRef segment_fragment(std::int64_t segment, std::int64_t pieces, std::int64_t index);

// --------------------------------------------------------------------------
// HB: channel i repeats segment i at rate 1/i, one i-th of the segment per
// slot, so slot s carries part (s mod i).
BroadcastSchedule build_hb(const VideoParams& params);

// CHB: channels 1 and 2 run at full rate (channel 2 alternates segments 2 and
// 3, segment 2 on even slots); channel c >= 3 carries segment c+1 at rate 1/c.
// Requires N >= 3.
BroadcastSchedule build_chb(const VideoParams& params);

// QHB fragment placement for channel i with i*m-1 fragments per segment,
// 1-based slot j and sub-slot k. The last sub-slot (k == m) cycles the first
// i-1 fragments; the rest follow ((i*k + j - 1) mod (i*(m-1))) + i.
std::int64_t qhb_fragment_index(std::int64_t i, std::int64_t m,
                                std::int64_t slot_j, std::int64_t subslot_k);

// How the builder feeds cycle-slot and sub-slot counters into the placement
// formula. Continuity sweeps across all four readings select the default:
// 1-based slots with 0-based sub-slots is the only reading that confines
// stalls to exact slot-boundary arrivals (see build_qhb_with_bases docs in
// the implementation).
struct QhbIndexBases {
  bool slot_one_based = true;
  bool subslot_one_based = false;
};

BroadcastSchedule build_qhb(const VideoParams& params);  // adopted bases
BroadcastSchedule build_qhb_with_bases(const VideoParams& params, QhbIndexBases bases);

// AHB: fragment i of segment k is "problematic" in slot k*t + (i-1) for
// t >= 1, i in 1..k-1; problematic fragments are burst at full rate for the
// first 1/k of the slot. Returns the fragment index or nothing.
std::optional<std::int64_t> ahb_problematic(std::int64_t k, std::int64_t slot);

// AHB steady state: every occurrence of fragments 1..k-1 is a burst slot,
// fragment k is sent at 1/k across the whole slot. Slot s carries fragment
// (s mod k) + 1.
BroadcastSchedule build_ahb(const VideoParams& params);

// Row-cyclic fragment matrix for AQHB channel i: cell(row, col) =
// i*(col-1) + row, rows 1..i, cols 1..m. Cells are a permutation of 1..i*m;
// column-major reading is 1, 2, ..., i*m.
struct AqhbMatrix {
  std::int64_t segment_index = 1;  // i (also the row count)
  std::int64_t cols = 1;           // m
  std::vector<std::int64_t> cells; // row-major

  std::int64_t rows() const { return segment_index; }
  std::int64_t cell(std::int64_t row, std::int64_t col) const;  // 1-based
};

AqhbMatrix aqhb_matrix(std::int64_t i, std::int64_t m);

// AQHB: segment i split into i*m fragments; channel i sends row (s mod i)+1
// of aqhb_matrix(i, m) during slot s, one fragment per sub-slot, at constant
// rate 1/i.
BroadcastSchedule build_aqhb(const VideoParams& params);

BroadcastSchedule build_scheme(SchemeTag scheme, const VideoParams& params);

}  // namespace nvod::schemes
