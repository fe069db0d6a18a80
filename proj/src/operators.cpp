#include "graphon/operators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "graphon/core_ops.hpp"
#include "graphon/errors.hpp"

namespace graphon {

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::adjacency: return "adjacency";
    case OperatorKind::laplacian: return "laplacian";
    case OperatorKind::degree_mult: return "degree-mult";
  }
  throw InternalError("operator", "unknown operator kind");
}

OperatorKind operator_kind_from_string(const std::string& s) {
  if (s == "adjacency") return OperatorKind::adjacency;
  if (s == "laplacian") return OperatorKind::laplacian;
  if (s == "degree-mult") return OperatorKind::degree_mult;
  throw ValidationError("operator", "unknown operator kind: " + s);
}

DiscretizedOperator discretize(const StepGraphon& w, OperatorKind kind) {
  if (!w.is_graphon()) {
    throw ValidationError("operator", "discretization requires graphon mode");
  }
  const Eigen::VectorXd& m = w.grid().measures();
  const Eigen::Index k = w.cell_count();
  Eigen::MatrixXd adjacency = w.values() * m.asDiagonal();
  Eigen::MatrixXd mult = Eigen::MatrixXd::Zero(k, k);
  mult.diagonal() = w.values() * m;  // degree values

  DiscretizedOperator op;
  op.kind = kind;
  op.measures = m;
  switch (kind) {
    case OperatorKind::adjacency: op.action = std::move(adjacency); break;
    case OperatorKind::degree_mult: op.action = std::move(mult); break;
    case OperatorKind::laplacian: op.action = mult - adjacency; break;
  }
  return op;
}

namespace {

Eigen::MatrixXd symmetrized_form(const DiscretizedOperator& op) {
  const Eigen::VectorXd sqrt_m = op.measures.cwiseSqrt();
  const Eigen::VectorXd inv_sqrt_m = sqrt_m.cwiseInverse();
  Eigen::MatrixXd b = sqrt_m.asDiagonal() * op.action * inv_sqrt_m.asDiagonal();
  const double asym = (b - b.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    throw InternalError("operator", "operator is not self-adjoint in the weighted product");
  }
  return (b + b.transpose()) / 2.0;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12 * scale) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

SpectralDecomposition eigendecompose(const DiscretizedOperator& op) {
  const Eigen::MatrixXd b = symmetrized_form(op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) {
    throw InternalError("eigensolver", "symmetric eigensolver did not converge");
  }

  SpectralDecomposition dec;
  dec.kind = op.kind;
  dec.measures = op.measures;
  dec.eigenvalues = solver.eigenvalues();  // ascending
  const Eigen::VectorXd inv_sqrt_m = op.measures.cwiseSqrt().cwiseInverse();
  dec.eigenvectors = inv_sqrt_m.asDiagonal() * solver.eigenvectors();
  for (Eigen::Index a = 0; a < dec.eigenvectors.cols(); ++a) {
    fix_sign(dec.eigenvectors.col(a));
  }

  if (op.kind == OperatorKind::laplacian) {
    if (dec.eigenvalues.size() > 0 && dec.eigenvalues[0] < -1e-10) {
      throw InternalError("eigensolver", "laplacian is not positive semidefinite");
    }
    for (Eigen::Index a = 0; a < dec.eigenvalues.size(); ++a) {
      if (std::abs(dec.eigenvalues[a]) <= 1e-10) dec.eigenvalues[a] = 0.0;
    }
  }
  return dec;
}

double dirichlet_energy(const StepGraphon& w, const StepFunction& f) {
  const Grid grid = common_refinement(w.grid(), f.grid());
  const StepGraphon wr = w.refined_to(grid);
  const StepFunction fr = f.refined_to(grid);
  const Eigen::VectorXd& m = grid.measures();
  const Eigen::VectorXd& v = fr.values();
  double total = 0.0;
  for (Eigen::Index i = 0; i < grid.cell_count(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < grid.cell_count(); ++j) {
      const double diff = v[i] - v[j];
      row += wr.values()(i, j) * diff * diff * m[j];
    }
    total += m[i] * row;
  }
  return total / 2.0;
}

std::vector<Eigen::Index> pw_members(const Eigen::VectorXd& eigenvalues, double gamma) {
  if (gamma < 0.0) {
    throw ValidationError("pw", "gamma must be nonnegative");
  }
  std::vector<Eigen::Index> members;
  for (Eigen::Index a = 0; a < eigenvalues.size(); ++a) {
    const double gap = std::abs(eigenvalues[a] - gamma);
    if (gap < 1e-8 && eigenvalues[a] != gamma) {
      throw ValidationError(
          "gamma-boundary",
          "an eigenvalue lies within 1e-8 of gamma; spectral membership would "
          "depend on rounding");
    }
    if (eigenvalues[a] <= gamma) members.push_back(a);
  }
  return members;
}

StepFunction pw_project(const StepGraphon& w, double gamma, const StepFunction& f) {
  const Grid grid = common_refinement(w.grid(), f.grid());
  const StepGraphon wr = w.refined_to(grid);
  const StepFunction fr = f.refined_to(grid);
  const SpectralDecomposition dec = eigendecompose(discretize(wr, OperatorKind::laplacian));
  const auto members = pw_members(dec.eigenvalues, gamma);

  const Eigen::VectorXd& m = grid.measures();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(grid.cell_count());
  for (const Eigen::Index a : members) {
    const Eigen::VectorXd phi = dec.eigenvectors.col(a);
    const double coeff = (m.array() * fr.values().array() * phi.array()).sum();
    out += coeff * phi;
  }
  return StepFunction(grid, std::move(out));
}

std::vector<StepFunction> pw_basis(const StepGraphon& w, double gamma) {
  const SpectralDecomposition dec = eigendecompose(discretize(w, OperatorKind::laplacian));
  const auto members = pw_members(dec.eigenvalues, gamma);
  std::vector<StepFunction> basis;
  basis.reserve(members.size());
  for (const Eigen::Index a : members) {
    basis.emplace_back(w.grid(), dec.eigenvectors.col(a));
  }
  return basis;
}

double operator_norm_diff(const StepGraphon& a, const StepGraphon& b, OperatorKind kind) {
  const Grid grid = common_refinement(a.grid(), b.grid());
  const StepGraphon ar = a.refined_to(grid);
  const StepGraphon br = b.refined_to(grid);
  if (kind == OperatorKind::degree_mult) {
    // The norm of a multiplication operator is the sup norm of the multiplier.
    return sup_norm_diff(degree_function(ar), degree_function(br));
  }
  const DiscretizedOperator oa = discretize(ar, kind);
  const DiscretizedOperator ob = discretize(br, kind);
  DiscretizedOperator diff;
  diff.kind = kind;
  diff.measures = grid.measures();
  diff.action = oa.action - ob.action;
  const Eigen::MatrixXd form = [&] {
    const Eigen::VectorXd sqrt_m = grid.measures().cwiseSqrt();
    const Eigen::VectorXd inv_sqrt_m = sqrt_m.cwiseInverse();
    Eigen::MatrixXd f = sqrt_m.asDiagonal() * diff.action * inv_sqrt_m.asDiagonal();
    return Eigen::MatrixXd((f + f.transpose()) / 2.0);
  }();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(form);
  if (solver.info() != Eigen::Success) {
    throw InternalError("eigensolver", "symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

double wot_pairing(const StepGraphon& a, const StepGraphon& b, const StepFunction& f,
                   const StepFunction& g, OperatorKind kind) {
  Grid grid = common_refinement(a.grid(), b.grid());
  grid = common_refinement(grid, f.grid());
  grid = common_refinement(grid, g.grid());
  const DiscretizedOperator oa = discretize(a.refined_to(grid), kind);
  const DiscretizedOperator ob = discretize(b.refined_to(grid), kind);
  const Eigen::VectorXd fv = f.refined_to(grid).values();
  const Eigen::VectorXd gv = g.refined_to(grid).values();
  const Eigen::VectorXd applied = (oa.action - ob.action) * fv;
  return (grid.measures().array() * applied.array() * gv.array()).sum();
}

}  // namespace graphon
