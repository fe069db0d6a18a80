#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "graphon/operators.hpp"
#include "graphon/step_function.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

// Assignment of grid cells to parts S_1..S_k. Every part is nonempty, part
// indices are 0-based and contiguous.
class Partition {
 public:
  Partition(Grid grid, std::vector<int> part_of);

  static Partition equipartition(int k);

  const Grid& grid() const { return grid_; }
  const std::vector<int>& part_of() const { return part_of_; }
  int part_count() const { return k_; }
  double part_measure(int part) const { return part_measures_[static_cast<std::size_t>(part)]; }
  std::vector<Eigen::Index> part_cells(int part) const;

  Partition refined_to(const Grid& fine) const;

 private:
  Grid grid_;
  std::vector<int> part_of_;
  int k_;
  std::vector<double> part_measures_;
};

// Restriction of w to S_j x S_j: the part's cells with their original
// measures (not renormalized) and the corresponding value sub-matrix.
struct GraphonBlock {
  std::vector<Eigen::Index> cells;
  Eigen::VectorXd measures;
  Eigen::MatrixXd values;

  double measure() const { return measures.sum(); }
  Eigen::VectorXd degrees() const { return values * measures; }
};

GraphonBlock restrict_to_part(const StepGraphon& w, const Partition& p, int part);

// Laplacian of w_j on L2(S_j), per the same weighted discretization as the
// full-grid operator.
DiscretizedOperator block_laplacian(const GraphonBlock& b);

// Restriction of a step function (on the same grid) to the block's cells.
Eigen::VectorXd restrict_values(const StepFunction& f, const GraphonBlock& b);

double block_dirichlet_energy(const GraphonBlock& b, const Eigen::VectorXd& f);
double block_inner(const GraphonBlock& b, const Eigen::VectorXd& f, const Eigen::VectorXd& g);

struct SpectralGapInfo {
  double delta = 0.0;    // sqrt(lambda2)
  double lambda2 = 0.0;  // second-smallest spectral point of L_j
  bool from_degree = false;
  Eigen::Index degree_cell = -1;  // argmin cell when from_degree
};

// Largest delta_j with ||L_j^{1/2} f|| >= delta_j ||f|| for all mean-zero f
// in L2(S_j). For a step kernel the spectrum of L_j is the matrix spectrum
// together with the in-part degree values (eigenfunctions oscillating inside
// a single cell), so lambda2 = min(second matrix eigenvalue, min_i d_i).
// Errors when that value is <= 1e-10 (0 is not a simple eigenvalue, i.e. the
// part is disconnected or degenerate).
SpectralGapInfo spectral_gap(const GraphonBlock& b);

// Canonical sampling functional 1_{S_j} / sqrt(|S_j|) on the partition grid.
StepFunction default_psi(const Partition& p, int part);

struct PartData {
  double measure = 0.0;       // |S_j|
  double delta = 0.0;         // delta_j
  double theta = 0.0;         // theta_j = |S_j| / (int psi_j)^2
  double psi_integral = 0.0;  // int psi_j
};

// Partition, functionals and constants of the sampling estimate, everything
// refined to one common grid. Immutable after construction.
class SamplingSystem {
 public:
  SamplingSystem(StepGraphon w, Partition p, std::vector<StepFunction> psi,
                 std::vector<PartData> parts);

  const StepGraphon& graphon() const { return graphon_; }
  const Partition& partition() const { return partition_; }
  const std::vector<StepFunction>& psi() const { return psi_; }
  const std::vector<PartData>& parts() const { return parts_; }
  int part_count() const { return partition_.part_count(); }
  double theta() const { return theta_; }  // max theta_j
  double delta() const { return delta_; }  // min delta_j

 private:
  StepGraphon graphon_;
  Partition partition_;
  std::vector<StepFunction> psi_;
  std::vector<PartData> parts_;
  double theta_;
  double delta_;
};

// Builds the system on the common refinement of all input grids. psi defaults
// to default_psi per part; user functionals must vanish outside their part
// exactly, have unit norm within 1e-12 and |int psi_j| > 1e-12. Fails fast on
// any part without a positive spectral gap.
SamplingSystem build_sampling_system(
    const StepGraphon& w, const Partition& p,
    std::optional<std::vector<StepFunction>> psi = std::nullopt);

struct SampleCoefficients {
  Eigen::VectorXd coefficients;  // c_j = <f, psi_j>
  double energy = 0.0;           // sum c_j^2
};

SampleCoefficients measure_samples(const StepFunction& f, const SamplingSystem& sys);

// RHS of the sampling estimate
//   (1+eps) * sum_j ( |S_j| E_j / (delta_j^2 I_j^2) + |S_j| c_j^2 / (eps I_j^2) )
// with E_j the part Dirichlet energy, I_j = int psi_j, c_j = <psi_j, f_j>;
// always >= ||f||^2.
double theorem1_bound(const StepFunction& f, const SamplingSystem& sys, double epsilon);

// Aggregated version: (1+eps) theta / delta^2 * ||L^{1/2} f||^2
//                     + (1+eps)/eps * theta * sum_j c_j^2.
double corollary2_bound(const StepFunction& f, const SamplingSystem& sys, double epsilon);

// Membership in chi_j(tau): sqrt(E_j) <= tau ||f_j|| + 1e-12. The zero
// function is a member.
bool chi_membership(const GraphonBlock& w_part, const Eigen::VectorXd& f_part, double tau);

struct Corollary3Result {
  double lower_constant = 0.0;  // (1 - (1+eps) sigma) eps / ((1+eps) theta)
  double lower = 0.0;           // lower_constant * ||f||^2
  double energy = 0.0;          // sum c_j^2
  double upper = 0.0;           // ||f||^2
  double epsilon = 0.0;
};

// Sandwich for functions that are locally near-constant: requires
// theta_j tau_j^2 / delta_j^2 <= sigma and f_j in chi_j(tau_j) for every
// part. epsilon defaults to (1-sigma)/(2 sigma) for sigma > 0 and 1 at
// sigma = 0.
Corollary3Result corollary3_bounds(const StepFunction& f, const SamplingSystem& sys,
                                   double sigma, const std::vector<double>& tau,
                                   std::optional<double> epsilon = std::nullopt);

struct FrameBoundPartRow {
  double measure = 0.0;
  double delta_j = 0.0;
  double theta_j = 0.0;
};

struct FrameBoundReport {
  double gamma = 0.0;
  bool feasible = false;             // gamma < delta^2 / theta
  std::optional<double> lower;       // A = (delta - sqrt(theta gamma))^2 / (theta delta^2)
  double upper = 1.0;                // B
  std::optional<double> optimal_eps; // delta / sqrt(theta gamma) - 1; absent at gamma = 0
  double delta = 0.0;
  double theta = 0.0;
  std::vector<FrameBoundPartRow> parts;
};

// Frame constants for PW_gamma(w). Infeasibility is reported, not thrown.
FrameBoundReport frame_bounds(const SamplingSystem& sys, double gamma);

// Maximizer of h(eps) = (1 - (1+eps) theta gamma / delta^2) eps / ((1+eps) theta)
// over (0, delta^2/(theta gamma) - 1); requires 0 < gamma < delta^2/theta.
double optimal_epsilon(double delta, double theta, double gamma);

}  // namespace graphon
