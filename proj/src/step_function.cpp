#include "graphon/step_function.hpp"

#include <cmath>

#include "graphon/errors.hpp"

namespace graphon {

StepFunction::StepFunction(Grid grid, Eigen::VectorXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count()) {
    throw ValidationError("step-function", "value count does not match grid");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("step-function", "values must be finite");
    }
  }
}

StepFunction StepFunction::refined_to(const Grid& fine) const {
  if (fine == grid_) return *this;
  const auto map = refinement_map(grid_, fine);
  Eigen::VectorXd values(fine.cell_count());
  for (Eigen::Index i = 0; i < fine.cell_count(); ++i) {
    values[i] = values_[map[static_cast<std::size_t>(i)]];
  }
  return StepFunction(fine, std::move(values));
}

StepFunction StepFunction::constant(double c) {
  return StepFunction(Grid::uniform(1), Eigen::VectorXd::Constant(1, c));
}

double weighted_inner(const StepFunction& f, const StepFunction& g) {
  const Grid grid = common_refinement(f.grid(), g.grid());
  const StepFunction fr = f.refined_to(grid);
  const StepFunction gr = g.refined_to(grid);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < grid.cell_count(); ++i) {
    sum += grid.cell_measure(i) * fr.values()[i] * gr.values()[i];
  }
  return sum;
}

double weighted_norm(const StepFunction& f) {
  return std::sqrt(weighted_inner(f, f));
}

double sup_norm_diff(const StepFunction& f, const StepFunction& g) {
  const Grid grid = common_refinement(f.grid(), g.grid());
  const StepFunction fr = f.refined_to(grid);
  const StepFunction gr = g.refined_to(grid);
  return (fr.values() - gr.values()).cwiseAbs().maxCoeff();
}

double sup_norm_gap_analytic(const StepFunction& f,
                             const std::function<double(double)>& d) {
  double gap = 0.0;
  const Grid& grid = f.grid();
  for (Eigen::Index i = 0; i < grid.cell_count(); ++i) {
    const double v = f.values()[i];
    gap = std::max(gap, std::abs(v - d(grid.cell_left(i))));
    gap = std::max(gap, std::abs(v - d(grid.cell_right(i))));
  }
  return gap;
}

}  // namespace graphon
