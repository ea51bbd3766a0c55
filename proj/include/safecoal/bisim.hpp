#pragma once

#include <set>
#include <utility>
#include <vector>

#include "safecoal/coalgebra.hpp"
#include "safecoal/detector.hpp"

namespace safecoal {

/// Pairs (state of the first system, state of the second system).
using StatePairRelation = std::set<std::pair<State, State>>;

/// Bisimilarity classes on the disjoint union of a and b: entry i < a.size()
/// is the class of a's state i, entry a.size() + j the class of b's state j.
/// Computed by refining the fault-profile partition until it is stable.
std::vector<State> detector_classes(const FiniteDetector& a, const FiniteDetector& b);

/// Greatest bisimulation between a and b. Throws AlphabetMismatch.
StatePairRelation largest_detector_bisimulation(const FiniteDetector& a, const FiniteDetector& b);

bool bisimilar(const FiniteDetector& a, State x, const FiniteDetector& b, State y);

/// Greatest bisimulation between two systems with output, by refinement of
/// the output partition. Throws AlphabetMismatch.
StatePairRelation largest_s_bisimulation(const SSystem& sigma, const SSystem& tau);

/// Quotient of the part of a reachable from x by bisimilarity; the start
/// state becomes s0 and the other states are numbered breadth-first.
RootedDetector minimize(const FiniteDetector& a, State x);

}  // namespace safecoal
