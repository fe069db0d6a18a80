#pragma once

#include <Eigen/Dense>
#include <functional>

#include "graphon/grid.hpp"

namespace graphon {

// Real-valued step function on an interval grid.
class StepFunction {
 public:
  StepFunction(Grid grid, Eigen::VectorXd values);

  const Grid& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }
  double value_at(double x) const { return values_[grid_.cell_containing(x)]; }

  StepFunction refined_to(const Grid& fine) const;

  static StepFunction constant(double c);

 private:
  Grid grid_;
  Eigen::VectorXd values_;
};

// L2([0,1]) inner product / norm; arguments are refined to a common grid.
double weighted_inner(const StepFunction& f, const StepFunction& g);
double weighted_norm(const StepFunction& f);

// Essential sup of |f - g| after refinement to the common grid.
double sup_norm_diff(const StepFunction& f, const StepFunction& g);

// Sup of |f - d| against an analytic comparison function, evaluated at cell
// endpoints. Exact when d is monotone on every cell of f.
double sup_norm_gap_analytic(const StepFunction& f,
                             const std::function<double(double)>& d);

}  // namespace graphon
