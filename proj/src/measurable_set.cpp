#include "graphon/measurable_set.hpp"

#include "graphon/errors.hpp"

namespace graphon {

MeasurableSet::MeasurableSet(Grid grid, std::vector<bool> member)
    : grid_(std::move(grid)), member_(std::move(member)), measure_(0.0) {
  if (member_.size() != static_cast<std::size_t>(grid_.cell_count())) {
    throw ValidationError("measurable-set", "membership size does not match grid");
  }
  for (Eigen::Index i = 0; i < grid_.cell_count(); ++i) {
    if (member_[static_cast<std::size_t>(i)]) measure_ += grid_.cell_measure(i);
  }
}

MeasurableSet MeasurableSet::from_cells(const Grid& grid,
                                        const std::vector<Eigen::Index>& cells) {
  std::vector<bool> member(static_cast<std::size_t>(grid.cell_count()), false);
  for (const Eigen::Index c : cells) {
    if (c < 0 || c >= grid.cell_count()) {
      throw ValidationError("measurable-set", "cell index out of range");
    }
    member[static_cast<std::size_t>(c)] = true;
  }
  return MeasurableSet(grid, std::move(member));
}

std::vector<Eigen::Index> MeasurableSet::cells() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < grid_.cell_count(); ++i) {
    if (member_[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

}  // namespace graphon
