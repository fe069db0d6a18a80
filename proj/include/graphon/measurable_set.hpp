#pragma once

#include <vector>

#include "graphon/grid.hpp"

namespace graphon {

// Union of grid cells.
class MeasurableSet {
 public:
  MeasurableSet(Grid grid, std::vector<bool> member);

  static MeasurableSet from_cells(const Grid& grid,
                                  const std::vector<Eigen::Index>& cells);

  const Grid& grid() const { return grid_; }
  const std::vector<bool>& member() const { return member_; }
  bool contains_cell(Eigen::Index i) const { return member_[static_cast<std::size_t>(i)]; }
  double measure() const { return measure_; }
  std::vector<Eigen::Index> cells() const;

 private:
  Grid grid_;
  std::vector<bool> member_;
  double measure_;
};

}  // namespace graphon
