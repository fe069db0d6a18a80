#include "graphon/grid.hpp"

#include <algorithm>
#include <cmath>

#include "graphon/errors.hpp"

namespace graphon {

Grid::Grid(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2) {
    throw ValidationError("grid", "grid needs at least two breakpoints");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw ValidationError("grid", "breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw ValidationError("grid", "breakpoints must be strictly increasing");
    }
    if (!std::isfinite(breakpoints_[i + 1])) {
      throw ValidationError("grid", "breakpoints must be finite");
    }
  }
  measures_.resize(cell_count());
  for (Eigen::Index i = 0; i < cell_count(); ++i) {
    measures_[i] = breakpoints_[static_cast<std::size_t>(i) + 1] -
                   breakpoints_[static_cast<std::size_t>(i)];
  }
}

Grid Grid::uniform(Eigen::Index cells) {
  if (cells < 1) {
    throw ValidationError("grid", "uniform grid needs at least one cell");
  }
  std::vector<double> bps(static_cast<std::size_t>(cells) + 1);
  for (Eigen::Index i = 0; i <= cells; ++i) {
    bps[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(cells);
  }
  return Grid(std::move(bps));
}

Eigen::Index Grid::cell_containing(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ValidationError("grid", "evaluation point outside [0,1]");
  }
  if (x >= breakpoints_[breakpoints_.size() - 2]) {
    return cell_count() - 1;  // last cell includes 1
  }
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return static_cast<Eigen::Index>(it - breakpoints_.begin()) - 1;
}

Grid common_refinement(const Grid& a, const Grid& b) {
  std::vector<double> merged;
  merged.reserve(a.breakpoints().size() + b.breakpoints().size());
  std::merge(a.breakpoints().begin(), a.breakpoints().end(),
             b.breakpoints().begin(), b.breakpoints().end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return Grid(std::move(merged));
}

std::vector<Eigen::Index> refinement_map(const Grid& coarse, const Grid& fine) {
  std::vector<Eigen::Index> map(static_cast<std::size_t>(fine.cell_count()));
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < fine.cell_count(); ++i) {
    const double left = fine.cell_left(i);
    while (c + 1 < coarse.cell_count() && coarse.cell_right(c) <= left) ++c;
    if (left < coarse.cell_left(c) || fine.cell_right(i) > coarse.cell_right(c)) {
      throw ValidationError("grid", "grid is not a refinement");
    }
    map[static_cast<std::size_t>(i)] = c;
  }
  return map;
}

}  // namespace graphon
