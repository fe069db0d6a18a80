#include "graphon/sampling.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "graphon/core_ops.hpp"
#include "graphon/errors.hpp"

namespace graphon {

Partition::Partition(Grid grid, std::vector<int> part_of)
    : grid_(std::move(grid)), part_of_(std::move(part_of)) {
  if (part_of_.size() != static_cast<std::size_t>(grid_.cell_count())) {
    throw ValidationError("partition", "part assignment size does not match grid");
  }
  int max_part = -1;
  for (const int p : part_of_) {
    if (p < 0) throw ValidationError("partition", "part indices must be nonnegative");
    max_part = std::max(max_part, p);
  }
  k_ = max_part + 1;
  part_measures_.assign(static_cast<std::size_t>(k_), 0.0);
  for (Eigen::Index i = 0; i < grid_.cell_count(); ++i) {
    part_measures_[static_cast<std::size_t>(part_of_[static_cast<std::size_t>(i)])] +=
        grid_.cell_measure(i);
  }
  for (int j = 0; j < k_; ++j) {
    bool nonempty = false;
    for (const int p : part_of_) {
      if (p == j) { nonempty = true; break; }
    }
    if (!nonempty) throw ValidationError("partition", "every part must be nonempty");
  }
}

Partition Partition::equipartition(int k) {
  if (k < 1) throw ValidationError("partition", "equipartition needs k >= 1");
  std::vector<int> part_of(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) part_of[static_cast<std::size_t>(j)] = j;
  return Partition(Grid::uniform(k), std::move(part_of));
}

std::vector<Eigen::Index> Partition::part_cells(int part) const {
  std::vector<Eigen::Index> cells;
  for (Eigen::Index i = 0; i < grid_.cell_count(); ++i) {
    if (part_of_[static_cast<std::size_t>(i)] == part) cells.push_back(i);
  }
  return cells;
}

Partition Partition::refined_to(const Grid& fine) const {
  if (fine == grid_) return *this;
  const auto map = refinement_map(grid_, fine);
  std::vector<int> part_of(static_cast<std::size_t>(fine.cell_count()));
  for (Eigen::Index i = 0; i < fine.cell_count(); ++i) {
    part_of[static_cast<std::size_t>(i)] = part_of_[static_cast<std::size_t>(map[static_cast<std::size_t>(i)])];
  }
  return Partition(fine, std::move(part_of));
}

GraphonBlock restrict_to_part(const StepGraphon& w, const Partition& p, int part) {
  if (p.grid() != w.grid()) {
    throw ValidationError("restrict", "partition and graphon must share a grid");
  }
  if (part < 0 || part >= p.part_count()) {
    throw ValidationError("restrict", "part index out of range");
  }
  GraphonBlock block;
  block.cells = p.part_cells(part);
  const Eigen::Index c = static_cast<Eigen::Index>(block.cells.size());
  block.measures.resize(c);
  block.values.resize(c, c);
  for (Eigen::Index a = 0; a < c; ++a) {
    block.measures[a] = w.grid().cell_measure(block.cells[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < c; ++b) {
      block.values(a, b) = w.values()(block.cells[static_cast<std::size_t>(a)],
                                      block.cells[static_cast<std::size_t>(b)]);
    }
  }
  return block;
}

DiscretizedOperator block_laplacian(const GraphonBlock& b) {
  DiscretizedOperator op;
  op.kind = OperatorKind::laplacian;
  op.measures = b.measures;
  Eigen::MatrixXd adjacency = b.values * b.measures.asDiagonal();
  Eigen::MatrixXd mult = Eigen::MatrixXd::Zero(b.measures.size(), b.measures.size());
  mult.diagonal() = b.degrees();
  op.action = mult - adjacency;
  return op;
}

Eigen::VectorXd restrict_values(const StepFunction& f, const GraphonBlock& b) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(b.cells.size()));
  for (std::size_t a = 0; a < b.cells.size(); ++a) {
    out[static_cast<Eigen::Index>(a)] = f.values()[b.cells[a]];
  }
  return out;
}

double block_dirichlet_energy(const GraphonBlock& b, const Eigen::VectorXd& f) {
  const Eigen::Index c = b.measures.size();
  double total = 0.0;
  for (Eigen::Index i = 0; i < c; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < c; ++j) {
      const double diff = f[i] - f[j];
      row += b.values(i, j) * diff * diff * b.measures[j];
    }
    total += b.measures[i] * row;
  }
  return total / 2.0;
}

double block_inner(const GraphonBlock& b, const Eigen::VectorXd& f,
                   const Eigen::VectorXd& g) {
  return (b.measures.array() * f.array() * g.array()).sum();
}

SpectralGapInfo spectral_gap(const GraphonBlock& b) {
  if (b.cells.empty()) {
    throw ValidationError("spectral-gap", "part is empty");
  }
  SpectralGapInfo info;
  const Eigen::VectorXd d = b.degrees();

  // The spectrum of L_j for a step kernel is the matrix spectrum plus the
  // in-part degrees, whose eigenfunctions oscillate inside single cells. The
  // sharp constant is the smallest of those spectral points above zero.
  double lambda2 = d[0];
  Eigen::Index argmin = 0;
  for (Eigen::Index i = 1; i < d.size(); ++i) {
    if (d[i] < lambda2) {
      lambda2 = d[i];
      argmin = i;
    }
  }
  info.from_degree = true;
  info.degree_cell = b.cells[static_cast<std::size_t>(argmin)];

  if (b.measures.size() >= 2) {
    const DiscretizedOperator op = block_laplacian(b);
    const SpectralDecomposition dec = eigendecompose(op);
    if (dec.eigenvalues[1] < lambda2) {
      lambda2 = dec.eigenvalues[1];
      info.from_degree = false;
      info.degree_cell = -1;
    }
  }

  if (lambda2 <= 1e-10) {
    const bool connected = [&] {
      // Cross-validate with the connectivity notion on the block's cell graph.
      if (b.measures.size() == 1) return b.values(0, 0) > 0.0;
      std::vector<Eigen::Index> root(b.cells.size());
      for (std::size_t i = 0; i < root.size(); ++i) root[i] = static_cast<Eigen::Index>(i);
      const auto find = [&](Eigen::Index x) {
        while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)];
        return x;
      };
      for (Eigen::Index i = 0; i < b.values.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < b.values.cols(); ++j) {
          if (b.values(i, j) > 0.0) root[static_cast<std::size_t>(find(i))] = find(j);
        }
      }
      for (Eigen::Index i = 1; i < b.values.rows(); ++i) {
        if (find(i) != find(0)) return false;
      }
      return true;
    }();
    throw ValidationError(
        "spectral-gap",
        connected
            ? "part has no positive spectral gap (degenerate kernel)"
            : "part is disconnected: 0 is not a simple eigenvalue of L_j");
  }
  info.lambda2 = lambda2;
  info.delta = std::sqrt(lambda2);
  return info;
}

StepFunction default_psi(const Partition& p, int part) {
  if (part < 0 || part >= p.part_count()) {
    throw ValidationError("psi", "part index out of range");
  }
  const double measure = p.part_measure(part);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(p.grid().cell_count());
  const double height = 1.0 / std::sqrt(measure);
  for (const Eigen::Index c : p.part_cells(part)) values[c] = height;
  return StepFunction(p.grid(), std::move(values));
}

SamplingSystem::SamplingSystem(StepGraphon w, Partition p, std::vector<StepFunction> psi,
                               std::vector<PartData> parts)
    : graphon_(std::move(w)),
      partition_(std::move(p)),
      psi_(std::move(psi)),
      parts_(std::move(parts)) {
  theta_ = 0.0;
  delta_ = parts_.empty() ? 0.0 : parts_.front().delta;
  for (const PartData& part : parts_) {
    theta_ = std::max(theta_, part.theta);
    delta_ = std::min(delta_, part.delta);
  }
}

SamplingSystem build_sampling_system(const StepGraphon& w, const Partition& p,
                                     std::optional<std::vector<StepFunction>> psi) {
  if (!w.is_graphon()) {
    throw ValidationError("sampling-system", "sampling requires graphon mode");
  }
  Grid grid = common_refinement(w.grid(), p.grid());
  if (psi.has_value()) {
    for (const StepFunction& f : *psi) grid = common_refinement(grid, f.grid());
  }
  const StepGraphon wr = w.refined_to(grid);
  const Partition pr = p.refined_to(grid);
  const int k = pr.part_count();

  std::vector<StepFunction> functionals;
  functionals.reserve(static_cast<std::size_t>(k));
  if (psi.has_value()) {
    if (static_cast<int>(psi->size()) != k) {
      throw ValidationError("sampling-system", "psi count must match part count");
    }
    for (const StepFunction& f : *psi) functionals.push_back(f.refined_to(grid));
  } else {
    for (int j = 0; j < k; ++j) functionals.push_back(default_psi(pr, j));
  }

  std::vector<PartData> parts(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const GraphonBlock block = restrict_to_part(wr, pr, j);
    const StepFunction& psi_j = functionals[static_cast<std::size_t>(j)];

    // psi_j must vanish off S_j exactly and be unit-norm with nonzero integral.
    double norm2 = 0.0;
    double integral = 0.0;
    for (Eigen::Index i = 0; i < grid.cell_count(); ++i) {
      const double v = psi_j.values()[i];
      if (pr.part_of()[static_cast<std::size_t>(i)] != j) {
        if (v != 0.0) {
          throw ValidationError("sampling-system",
                                "psi must vanish outside its part exactly");
        }
        continue;
      }
      norm2 += grid.cell_measure(i) * v * v;
      integral += grid.cell_measure(i) * v;
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) {
      throw ValidationError("sampling-system", "psi must have unit norm");
    }
    if (std::abs(integral) <= 1e-12) {
      throw ValidationError("sampling-system", "psi must have nonzero integral");
    }

    PartData data;
    data.measure = pr.part_measure(j);
    data.delta = spectral_gap(block).delta;
    data.psi_integral = integral;
    data.theta = data.measure / (integral * integral);
    parts[static_cast<std::size_t>(j)] = data;
  }
  return SamplingSystem(wr, pr, std::move(functionals), std::move(parts));
}

SampleCoefficients measure_samples(const StepFunction& f, const SamplingSystem& sys) {
  const int k = sys.part_count();
  SampleCoefficients out;
  out.coefficients.resize(k);
  for (int j = 0; j < k; ++j) {
    out.coefficients[j] = weighted_inner(f, sys.psi()[static_cast<std::size_t>(j)]);
  }
  out.energy = out.coefficients.squaredNorm();
  return out;
}

namespace {

// Refine f onto the system grid joined with its own grid, along with the
// matching partition and functionals.
struct AlignedInstance {
  Grid grid;
  StepGraphon w;
  Partition partition;
  StepFunction f;
  std::vector<StepFunction> psi;
};

AlignedInstance align(const StepFunction& f, const SamplingSystem& sys) {
  Grid grid = common_refinement(sys.graphon().grid(), f.grid());
  AlignedInstance out{grid,
                      sys.graphon().refined_to(grid),
                      sys.partition().refined_to(grid),
                      f.refined_to(grid),
                      {}};
  out.psi.reserve(sys.psi().size());
  for (const StepFunction& p : sys.psi()) out.psi.push_back(p.refined_to(grid));
  return out;
}

}  // namespace

double theorem1_bound(const StepFunction& f, const SamplingSystem& sys, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ValidationError("theorem1", "epsilon must be positive");
  }
  const AlignedInstance inst = align(f, sys);
  double sum = 0.0;
  for (int j = 0; j < sys.part_count(); ++j) {
    const PartData& part = sys.parts()[static_cast<std::size_t>(j)];
    const GraphonBlock block = restrict_to_part(inst.w, inst.partition, j);
    const Eigen::VectorXd f_j = restrict_values(inst.f, block);
    const double energy_j = block_dirichlet_energy(block, f_j);
    const double c_j = weighted_inner(inst.psi[static_cast<std::size_t>(j)], inst.f);
    const double i2 = part.psi_integral * part.psi_integral;
    sum += part.measure * energy_j / (part.delta * part.delta * i2) +
           part.measure * c_j * c_j / (epsilon * i2);
  }
  return (1.0 + epsilon) * sum;
}

double corollary2_bound(const StepFunction& f, const SamplingSystem& sys, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ValidationError("corollary2", "epsilon must be positive");
  }
  const AlignedInstance inst = align(f, sys);
  const double full_energy = dirichlet_energy(inst.w, inst.f);

  double part_energy = 0.0;
  double sample_energy = 0.0;
  for (int j = 0; j < sys.part_count(); ++j) {
    const GraphonBlock block = restrict_to_part(inst.w, inst.partition, j);
    part_energy += block_dirichlet_energy(block, restrict_values(inst.f, block));
    const double c_j = weighted_inner(inst.psi[static_cast<std::size_t>(j)], inst.f);
    sample_energy += c_j * c_j;
  }
  // Off-block energy is nonnegative, so the part energies never exceed the
  // full Dirichlet energy.
  if (part_energy > full_energy + 1e-10) {
    throw InternalError("corollary2", "part energies exceed the full Dirichlet energy");
  }
  const double theta = sys.theta();
  const double delta = sys.delta();
  return (1.0 + epsilon) * theta / (delta * delta) * full_energy +
         (1.0 + epsilon) / epsilon * theta * sample_energy;
}

bool chi_membership(const GraphonBlock& w_part, const Eigen::VectorXd& f_part, double tau) {
  if (tau < 0.0) {
    throw ValidationError("chi", "tau must be nonnegative");
  }
  const double norm = std::sqrt(block_inner(w_part, f_part, f_part));
  const double energy_root = std::sqrt(block_dirichlet_energy(w_part, f_part));
  return energy_root <= tau * norm + 1e-12;
}

Corollary3Result corollary3_bounds(const StepFunction& f, const SamplingSystem& sys,
                                   double sigma, const std::vector<double>& tau,
                                   std::optional<double> epsilon) {
  if (!(sigma >= 0.0 && sigma < 1.0)) {
    throw ValidationError("corollary3", "sigma must lie in [0,1)");
  }
  if (static_cast<int>(tau.size()) != sys.part_count()) {
    throw ValidationError("corollary3", "tau count must match part count");
  }
  const double eps = epsilon.value_or(sigma > 0.0 ? (1.0 - sigma) / (2.0 * sigma) : 1.0);
  if (!(eps > 0.0) || !((1.0 + eps) * sigma < 1.0)) {
    throw ValidationError("corollary3", "epsilon must be positive with (1+eps) sigma < 1");
  }

  const AlignedInstance inst = align(f, sys);
  for (int j = 0; j < sys.part_count(); ++j) {
    const PartData& part = sys.parts()[static_cast<std::size_t>(j)];
    const double tau_j = tau[static_cast<std::size_t>(j)];
    if (part.theta * tau_j * tau_j > sigma * part.delta * part.delta) {
      throw ValidationError("corollary3", "tau too large: theta_j tau_j^2 / delta_j^2 > sigma");
    }
    const GraphonBlock block = restrict_to_part(inst.w, inst.partition, j);
    if (!chi_membership(block, restrict_values(inst.f, block), tau_j)) {
      throw ValidationError("corollary3", "f restricted to a part is not in chi_j(tau_j)");
    }
  }

  Corollary3Result out;
  out.epsilon = eps;
  out.lower_constant = (1.0 - (1.0 + eps) * sigma) * eps / ((1.0 + eps) * sys.theta());
  const double norm2 = weighted_inner(inst.f, inst.f);
  out.lower = out.lower_constant * norm2;
  out.energy = measure_samples(f, sys).energy;
  out.upper = norm2;
  return out;
}

FrameBoundReport frame_bounds(const SamplingSystem& sys, double gamma) {
  if (gamma < 0.0) {
    throw ValidationError("frame-bounds", "gamma must be nonnegative");
  }
  FrameBoundReport report;
  report.gamma = gamma;
  report.delta = sys.delta();
  report.theta = sys.theta();
  for (const PartData& part : sys.parts()) {
    report.parts.push_back({part.measure, part.delta, part.theta});
  }
  const double delta = sys.delta();
  const double theta = sys.theta();
  report.feasible = gamma < delta * delta / theta;
  if (!report.feasible) return report;

  const double root = std::sqrt(theta * gamma);
  report.lower = (delta - root) * (delta - root) / (theta * delta * delta);
  report.upper = 1.0;
  if (gamma > 0.0) {
    report.optimal_eps = delta / root - 1.0;
  }
  return report;
}

double optimal_epsilon(double delta, double theta, double gamma) {
  if (!(gamma > 0.0) || !(gamma < delta * delta / theta)) {
    throw ValidationError("optimal-epsilon", "gamma must lie in (0, delta^2/theta)");
  }
  return delta / std::sqrt(theta * gamma) - 1.0;
}

}  // namespace graphon
