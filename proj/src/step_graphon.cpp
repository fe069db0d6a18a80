#include "graphon/step_graphon.hpp"

#include <cmath>

#include "graphon/errors.hpp"

namespace graphon {

StepGraphon::StepGraphon(Grid grid, Eigen::MatrixXd values,
                         std::optional<GraphonMode> mode)
    : grid_(std::move(grid)), values_(std::move(values)) {
  const Eigen::Index k = grid_.cell_count();
  if (values_.rows() != k || values_.cols() != k) {
    throw ValidationError("step-graphon", "value matrix does not match grid");
  }
  symmetrization_correction_ = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double a = values_(i, j);
      const double b = values_(j, i);
      if (a != b) {
        const double s = (a + b) / 2.0;
        symmetrization_correction_ =
            std::max(symmetrization_correction_, std::abs(a - s));
        values_(i, j) = s;
        values_(j, i) = s;
      }
    }
  }
  double lo = 0.0, hi = 0.0;
  if (k > 0) {
    lo = values_.minCoeff();
    hi = values_.maxCoeff();
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < -1.0 || hi > 1.0) {
    throw ValidationError("step-graphon", "entries must lie in [-1,1]");
  }
  const bool in_unit = lo >= 0.0;
  if (mode.has_value()) {
    if (*mode == GraphonMode::graphon && !in_unit) {
      throw ValidationError("step-graphon",
                            "graphon mode requires entries in [0,1]");
    }
    mode_ = *mode;
  } else {
    mode_ = in_unit ? GraphonMode::graphon : GraphonMode::kernel;
  }
}

StepGraphon StepGraphon::refined_to(const Grid& fine) const {
  if (fine == grid_) return *this;
  const auto map = refinement_map(grid_, fine);
  const Eigen::Index k = fine.cell_count();
  Eigen::MatrixXd values(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      values(i, j) = values_(map[static_cast<std::size_t>(i)],
                             map[static_cast<std::size_t>(j)]);
    }
  }
  return StepGraphon(fine, std::move(values), mode_);
}

StepGraphon StepGraphon::constant(double p) {
  return StepGraphon(Grid::uniform(1), Eigen::MatrixXd::Constant(1, 1, p));
}

StepGraphon kernel_difference(const StepGraphon& a, const StepGraphon& b) {
  if (!a.is_graphon() || !b.is_graphon()) {
    throw ValidationError("kernel", "kernel difference expects graphon-mode inputs");
  }
  const Grid grid = common_refinement(a.grid(), b.grid());
  const StepGraphon ar = a.refined_to(grid);
  const StepGraphon br = b.refined_to(grid);
  return StepGraphon(grid, ar.values() - br.values(), GraphonMode::kernel);
}

StepGraphon kernel_scale(const StepGraphon& u, double c) {
  return StepGraphon(u.grid(), c * u.values(), GraphonMode::kernel);
}

}  // namespace graphon
