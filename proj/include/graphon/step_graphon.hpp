#pragma once

#include <Eigen/Dense>
#include <optional>

#include "graphon/grid.hpp"

namespace graphon {

// graphon: values in [0,1]. kernel: values in [-1,1], used for differences
// of graphons.
enum class GraphonMode { graphon, kernel };

// Symmetric step kernel on a grid product. Construction symmetrizes via
// (w + w^T)/2 and flags the input when the correction exceeds 1e-12.
class StepGraphon {
 public:
  StepGraphon(Grid grid, Eigen::MatrixXd values,
              std::optional<GraphonMode> mode = std::nullopt);

  const Grid& grid() const { return grid_; }
  const Eigen::MatrixXd& values() const { return values_; }
  GraphonMode mode() const { return mode_; }
  bool is_graphon() const { return mode_ == GraphonMode::graphon; }

  Eigen::Index cell_count() const { return grid_.cell_count(); }
  double value_at(double x, double y) const {
    return values_(grid_.cell_containing(x), grid_.cell_containing(y));
  }

  // Largest |w - w^T|/2 correction applied at construction.
  double symmetrization_correction() const { return symmetrization_correction_; }
  bool symmetrization_warning() const { return symmetrization_correction_ > 1e-12; }

  StepGraphon refined_to(const Grid& fine) const;

  static StepGraphon constant(double p);

 private:
  Grid grid_;
  Eigen::MatrixXd values_;
  GraphonMode mode_;
  double symmetrization_correction_ = 0.0;
};

// a - b as a kernel-mode step graphon on the common refinement. Both inputs
// must be in graphon mode so the result stays within [-1,1].
StepGraphon kernel_difference(const StepGraphon& a, const StepGraphon& b);

// Kernel scaled by c; |c| * sup|u| must stay within 1.
StepGraphon kernel_scale(const StepGraphon& u, double c);

}  // namespace graphon
