#pragma once

#include "degseq/degree_sequence.hpp"
#include "degseq/types.hpp"

namespace degseq {

/// Erdos-Gallai test. Entries < 0 or >= n make the sequence non-graphical
/// (returned as false, not an error).
bool erdos_gallai(const Seq& d);

/// Koren's S/T reformulation: sum even, and for all disjoint S, T with
/// S u T nonempty, sum_{S} d_i - sum_{T} d_j <= |S| (n - 1 - |T|).
/// Exhausts every (S,T) pair for n <= 10; for larger n only the extremal
/// choices (top-s as S, bottom-t as T over the sorted sequence) are checked.
/// Throws CapacityError for n > 20.
bool koren_graphical(const Seq& d);

inline bool is_graphical(const DegreeSequence& d) { return erdos_gallai(d.degrees()); }

}  // namespace degseq
