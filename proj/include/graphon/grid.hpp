#pragma once

#include <Eigen/Dense>
#include <vector>

namespace graphon {

// Interval grid on [0,1]. Cells are half-open [b_{i-1}, b_i); the final cell
// also contains 1, so point evaluation is unambiguous everywhere.
class Grid {
 public:
  explicit Grid(std::vector<double> breakpoints);

  static Grid uniform(Eigen::Index cells);

  Eigen::Index cell_count() const {
    return static_cast<Eigen::Index>(breakpoints_.size()) - 1;
  }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  double cell_left(Eigen::Index i) const { return breakpoints_[static_cast<std::size_t>(i)]; }
  double cell_right(Eigen::Index i) const { return breakpoints_[static_cast<std::size_t>(i) + 1]; }
  double cell_measure(Eigen::Index i) const { return measures_[i]; }
  const Eigen::VectorXd& measures() const { return measures_; }

  // Cell index whose half-open interval contains x; x must lie in [0,1].
  Eigen::Index cell_containing(double x) const;

  bool operator==(const Grid& other) const { return breakpoints_ == other.breakpoints_; }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  std::vector<double> breakpoints_;
  Eigen::VectorXd measures_;
};

// Sorted union of breakpoints. Both inputs are exactly representable on the
// result.
Grid common_refinement(const Grid& a, const Grid& b);

// For each cell of `fine`, the index of the `coarse` cell containing it.
// Requires fine to refine coarse (every coarse breakpoint present in fine).
std::vector<Eigen::Index> refinement_map(const Grid& coarse, const Grid& fine);

}  // namespace graphon
