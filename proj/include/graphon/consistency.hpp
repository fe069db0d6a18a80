#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "graphon/core_ops.hpp"
#include "graphon/sampling.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

enum class SequenceKind { averaged, w_random };

// Limit graphon, approximating sequence and sampling setup for a consistency
// run. The limit is either a step graphon (used as-is) or a named analytic
// form represented at `reference_cells`.
struct ConsistencyConfig {
  std::variant<AnalyticGraphon, StepGraphon> limit;
  SequenceKind sequence = SequenceKind::averaged;
  std::vector<int> indices;  // strictly increasing
  Partition partition = Partition::equipartition(2);
  // gamma: absolute value, or a fraction of the feasibility bound delta^2/theta.
  std::optional<double> gamma;
  std::optional<double> gamma_fraction;
  std::optional<std::vector<StepFunction>> psi;
  int trials = 50;
  std::uint64_t seed = 0;
  std::optional<double> epsilon_prime;  // must be <= the derived bound; defaults to it
  Eigen::Index reference_cells = 512;
  int cutnorm_restarts = 64;
  bool reference_bias = true;  // report the R vs 2R disagreement for analytic limits
};

struct ConsistencyRow {
  int n = 0;
  double cutnorm = 0.0;
  std::string cutnorm_method;  // "exact" or "heuristic"
  double deg_gap = 0.0;        // ||d_n - d||_inf
  double lop_gap = 0.0;        // ||L_{w_n} - L_w||_op
  bool threshold_met = false;  // lop_gap < epsilon_prime
  int trials = 0;
  double pass_rate = 0.0;
  double min_margin = 0.0;     // min over trials of (energy - target ||f||^2)
};

struct ConsistencyReport {
  std::string limit_hash;
  Eigen::Index limit_cells = 0;
  std::optional<Eigen::Index> reference_cells;   // analytic limits only
  std::optional<double> reference_bias_lop;      // ||L_{w@R} - L_{w@2R}||_op
  std::optional<double> reference_bias_degree;
  double delta = 0.0;            // from the limit system; n-independent
  double theta = 0.0;
  double gamma = 0.0;
  double epsilon = 0.0;          // delta / sqrt(theta gamma) - 1
  double epsilon_prime = 0.0;
  double target_constant = 0.0;  // (delta - sqrt(theta gamma))^2 / (2 theta delta^2)
  std::vector<ConsistencyRow> rows;
  std::optional<int> certified_n;  // first tested index from which every later row meets the threshold
};

struct DecayRow {
  int n = 0;
  double cutnorm = 0.0;
  std::string cutnorm_method;
  double deg_gap = 0.0;
  double top_gap = 0.0;  // adjacency operator gap
  double lop_gap = 0.0;
  double mop_gap = 0.0;  // equals deg_gap by definition
};

// The limit graphon as a step graphon: the input itself, or the analytic form
// averaged at reference_cells.
StepGraphon limit_representation(const ConsistencyConfig& config);

// w_n per index: averaged kind averages the limit over the uniform n-grid;
// w-random kind embeds G(n, w) via graph_to_graphon with seeds derived per n.
std::vector<StepGraphon> build_sequence(const ConsistencyConfig& config);

// Per-n hypothesis gaps: cut norm (exact when the combined grid has <= 22
// cells, labeled), sup degree gap and operator gaps for all three kinds. For
// analytic limits the degree gap is measured against the closed-form degree.
std::vector<DecayRow> hypothesis_decay(const ConsistencyConfig& config);

// Full consistency run: constants from the limit only, per-n gaps, and for
// each n random unit trial functions in PW_gamma(w_n) tested against the
// halved lower frame bound.
ConsistencyReport run_consistency(const ConsistencyConfig& config);

}  // namespace graphon
