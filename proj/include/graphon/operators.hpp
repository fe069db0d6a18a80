#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "graphon/step_function.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

enum class OperatorKind { adjacency, laplacian, degree_mult };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& s);

// Cell-action matrix K of a graphon operator together with the cell measures
// defining the weighted inner product <f,g> = sum_i m_i f_i g_i. Works both
// for full-grid operators and for operators restricted to a part (where the
// measures sum to |S_j| < 1).
struct DiscretizedOperator {
  OperatorKind kind = OperatorKind::adjacency;
  Eigen::VectorXd measures;
  Eigen::MatrixXd action;
};

// Eigen data of a discretized operator. Eigenvalues ascend; eigenvector
// columns are orthonormal in the weighted inner product, signs fixed so the
// first nonzero coordinate is positive. Laplacian eigenvalues within 1e-10 of
// zero are snapped to exactly zero.
struct SpectralDecomposition {
  OperatorKind kind = OperatorKind::adjacency;
  Eigen::VectorXd measures;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// adjacency: (Tf)_i = sum_j w_ij m_j f_j; degree-mult: (Mf)_i = d_i f_i;
// laplacian: L = M - T, formed exactly at the matrix level.
DiscretizedOperator discretize(const StepGraphon& w, OperatorKind kind);

// Symmetric eigenproblem for B = D^{1/2} K D^{-1/2}, mapped back through
// D^{-1/2} so eigenvectors are weighted-orthonormal.
SpectralDecomposition eigendecompose(const DiscretizedOperator& op);

// 1/2 int int w(x,y) (f(x)-f(y))^2; equals <L f, f> in the weighted product.
double dirichlet_energy(const StepGraphon& w, const StepFunction& f);

// Indices of eigenvalues lying in [0, gamma]. Errors when some eigenvalue is
// strictly within 1e-8 of gamma: the spectral indicator is discontinuous
// there, so membership would depend on rounding. An eigenvalue exactly equal
// to gamma (notably the snapped zero at gamma = 0) is included.
std::vector<Eigen::Index> pw_members(const Eigen::VectorXd& eigenvalues, double gamma);

// Orthogonal projection onto span of Laplacian eigenfunctions with
// eigenvalue <= gamma.
StepFunction pw_project(const StepGraphon& w, double gamma, const StepFunction& f);
std::vector<StepFunction> pw_basis(const StepGraphon& w, double gamma);

// Operator norm of the difference on the common refinement. degree-mult is
// sup_i |d1_i - d2_i| exactly (multiplication operator norm); the other kinds
// solve the symmetric eigenproblem of the difference.
double operator_norm_diff(const StepGraphon& a, const StepGraphon& b, OperatorKind kind);

// <(K_a - K_b) f, g> in the weighted inner product.
double wot_pairing(const StepGraphon& a, const StepGraphon& b,
                   const StepFunction& f, const StepFunction& g, OperatorKind kind);

}  // namespace graphon
