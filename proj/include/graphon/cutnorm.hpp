#pragma once

#include <cstdint>
#include <string>

#include "graphon/measurable_set.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

struct CutNormResult {
  double value = 0.0;
  MeasurableSet s;
  MeasurableSet t;
  std::string method;  // "exact" or "heuristic"
};

// Signed integral of u over S x T, summed in a fixed (ascending) order. Both
// cut norm routines report this value for their optimizer, so re-integration
// reproduces the result exactly.
double cut_integral(const StepGraphon& u, const MeasurableSet& s,
                    const MeasurableSet& t);

// Enumerates S over all cell subsets (<= 22 cells); for fixed S the optimal T
// takes each cell with the sign of its column sum, by vertex optimality of
// bilinear forms over products of boxes. Ties (column sum exactly 0) exclude
// the cell; value ties prefer sets containing lower-indexed cells.
CutNormResult cut_norm_exact(const StepGraphon& u);

// Alternating maximization (optimize T by column-sum signs, then S by
// row-sum signs) from seeded random starts, run on both sign orientations.
// Never exceeds the exact value.
CutNormResult cut_norm_lower(const StepGraphon& u, int restarts,
                             std::uint64_t seed);

}  // namespace graphon
