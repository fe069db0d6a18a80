#include "graphon/consistency.hpp"

#include <cmath>
#include <limits>

#include "graphon/cutnorm.hpp"
#include "graphon/errors.hpp"
#include "graphon/graph_bridge.hpp"
#include "graphon/operators.hpp"
#include "graphon/rng.hpp"

namespace graphon {

namespace {

constexpr std::uint64_t kSequenceStream = 4;
constexpr std::uint64_t kTrialStream = 3;

void validate(const ConsistencyConfig& config) {
  if (config.indices.empty()) {
    throw ValidationError("consistency", "index list must be nonempty");
  }
  for (std::size_t i = 0; i < config.indices.size(); ++i) {
    if (config.indices[i] < 1) {
      throw ValidationError("consistency", "indices must be positive");
    }
    if (i > 0 && config.indices[i] <= config.indices[i - 1]) {
      throw ValidationError("consistency", "indices must be strictly increasing");
    }
  }
  if (config.trials < 1) {
    throw ValidationError("consistency", "trial count must be at least 1");
  }
  if (config.gamma.has_value() == config.gamma_fraction.has_value()) {
    throw ValidationError("consistency", "specify exactly one of gamma and gamma_fraction");
  }
  if (config.gamma.has_value() && !(*config.gamma > 0.0)) {
    throw ValidationError("consistency", "gamma must be positive");
  }
  if (config.gamma_fraction.has_value() &&
      !(*config.gamma_fraction > 0.0 && *config.gamma_fraction < 1.0)) {
    throw ValidationError("consistency", "gamma_fraction must lie in (0,1)");
  }
  if (config.reference_cells < 1) {
    throw ValidationError("consistency", "reference_cells must be positive");
  }
}

const AnalyticGraphon* analytic_limit(const ConsistencyConfig& config) {
  return std::get_if<AnalyticGraphon>(&config.limit);
}

}  // namespace

StepGraphon limit_representation(const ConsistencyConfig& config) {
  if (const AnalyticGraphon* analytic = analytic_limit(config)) {
    return average_graphon(*analytic, config.reference_cells);
  }
  return std::get<StepGraphon>(config.limit);
}

std::vector<StepGraphon> build_sequence(const ConsistencyConfig& config) {
  validate(config);
  const StepGraphon limit = limit_representation(config);
  std::vector<StepGraphon> sequence;
  sequence.reserve(config.indices.size());
  if (config.sequence == SequenceKind::averaged) {
    if (const AnalyticGraphon* analytic = analytic_limit(config)) {
      for (const int n : config.indices) sequence.push_back(average_graphon(*analytic, n));
    } else {
      for (const int n : config.indices) sequence.push_back(average_graphon(limit, n));
    }
  } else {
    const CounterRng rng = CounterRng(config.seed).derive(kSequenceStream);
    for (const int n : config.indices) {
      const Graph g = sample_w_random_graph(
          limit, n, rng.derive(static_cast<std::uint64_t>(n)).key());
      sequence.push_back(graph_to_graphon(g));
    }
  }
  return sequence;
}

namespace {

struct GapData {
  double cutnorm = 0.0;
  std::string method;
  double deg_gap = 0.0;
  double top_gap = 0.0;
  double lop_gap = 0.0;
};

GapData compute_gaps(const ConsistencyConfig& config, const StepGraphon& limit,
                     const StepGraphon& w_n, int n, bool all_kinds) {
  GapData gaps;
  const StepGraphon diff = kernel_difference(w_n, limit);
  if (diff.cell_count() <= 22) {
    gaps.cutnorm = cut_norm_exact(diff).value;
    gaps.method = "exact";
  } else {
    const std::uint64_t cut_seed =
        CounterRng(config.seed).derive(5).derive(static_cast<std::uint64_t>(n)).key();
    gaps.cutnorm = cut_norm_lower(diff, config.cutnorm_restarts, cut_seed).value;
    gaps.method = "heuristic";
  }

  // Against an analytic limit the degree gap is measured in closed form; its
  // named degree functions are monotone, so cell endpoints realize the sup.
  if (const AnalyticGraphon* analytic = analytic_limit(config);
      analytic != nullptr && analytic->degree && analytic->degree_monotone) {
    gaps.deg_gap = sup_norm_gap_analytic(degree_function(w_n), analytic->degree);
  } else {
    gaps.deg_gap = sup_norm_diff(degree_function(w_n), degree_function(limit));
  }
  gaps.lop_gap = operator_norm_diff(w_n, limit, OperatorKind::laplacian);
  if (all_kinds) {
    gaps.top_gap = operator_norm_diff(w_n, limit, OperatorKind::adjacency);
  }
  return gaps;
}

}  // namespace

std::vector<DecayRow> hypothesis_decay(const ConsistencyConfig& config) {
  validate(config);
  const StepGraphon limit = limit_representation(config);
  const std::vector<StepGraphon> sequence = build_sequence(config);
  std::vector<DecayRow> rows;
  rows.reserve(sequence.size());
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const int n = config.indices[i];
    const GapData gaps = compute_gaps(config, limit, sequence[i], n, true);
    DecayRow row;
    row.n = n;
    row.cutnorm = gaps.cutnorm;
    row.cutnorm_method = gaps.method;
    row.deg_gap = gaps.deg_gap;
    row.top_gap = gaps.top_gap;
    row.lop_gap = gaps.lop_gap;
    row.mop_gap = gaps.deg_gap;  // same quantity: multiplication by d_n - d
    rows.push_back(row);
  }
  return rows;
}

ConsistencyReport run_consistency(const ConsistencyConfig& config) {
  validate(config);
  const StepGraphon limit = limit_representation(config);

  // Constants come from the limit object only; every row below reuses them.
  const SamplingSystem system = build_sampling_system(limit, config.partition, config.psi);
  const double delta = system.delta();
  const double theta = system.theta();
  const double feasibility_bound = delta * delta / theta;
  const double gamma = config.gamma.has_value() ? *config.gamma
                                                : *config.gamma_fraction * feasibility_bound;
  if (!(gamma > 0.0 && gamma < feasibility_bound)) {
    throw ValidationError("consistency", "gamma must lie in (0, delta^2/theta)");
  }

  ConsistencyReport report;
  report.limit_hash = content_hash(limit);
  report.limit_cells = limit.cell_count();
  report.delta = delta;
  report.theta = theta;
  report.gamma = gamma;
  report.epsilon = optimal_epsilon(delta, theta, gamma);
  const double root = std::sqrt(theta * gamma);
  const double epsilon_prime_bound =
      (delta - root) * (delta - root) / (2.0 * report.epsilon * theta);
  if (config.epsilon_prime.has_value()) {
    if (!(*config.epsilon_prime > 0.0) || *config.epsilon_prime > epsilon_prime_bound) {
      throw ValidationError("consistency",
                            "epsilon_prime must lie in (0, (delta-sqrt(theta gamma))^2/(2 eps theta)]");
    }
    report.epsilon_prime = *config.epsilon_prime;
  } else {
    report.epsilon_prime = epsilon_prime_bound;
  }
  report.target_constant = (delta - root) * (delta - root) / (2.0 * theta * delta * delta);

  if (const AnalyticGraphon* analytic = analytic_limit(config)) {
    report.reference_cells = config.reference_cells;
    if (config.reference_bias) {
      const StepGraphon finer = average_graphon(*analytic, 2 * config.reference_cells);
      report.reference_bias_lop = operator_norm_diff(limit, finer, OperatorKind::laplacian);
      report.reference_bias_degree =
          sup_norm_diff(degree_function(limit), degree_function(finer));
    }
  }

  const std::vector<StepGraphon> sequence = build_sequence(config);
  const CounterRng trial_rng = CounterRng(config.seed).derive(kTrialStream);

  for (std::size_t idx = 0; idx < sequence.size(); ++idx) {
    const int n = config.indices[idx];
    const StepGraphon& w_n = sequence[idx];
    const GapData gaps = compute_gaps(config, limit, w_n, n, false);

    ConsistencyRow row;
    row.n = n;
    row.cutnorm = gaps.cutnorm;
    row.cutnorm_method = gaps.method;
    row.deg_gap = gaps.deg_gap;
    row.lop_gap = gaps.lop_gap;
    row.threshold_met = gaps.lop_gap < report.epsilon_prime;
    row.trials = config.trials;

    // Random unit elements of PW_gamma(w_n), tested against the halved bound.
    const std::vector<StepFunction> basis = pw_basis(w_n, gamma);
    const CounterRng row_rng = trial_rng.derive(static_cast<std::uint64_t>(n));
    int passes = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < config.trials; ++trial) {
      const CounterRng coeff_rng = row_rng.derive(static_cast<std::uint64_t>(trial));
      Eigen::VectorXd coeffs(static_cast<Eigen::Index>(basis.size()));
      for (Eigen::Index a = 0; a < coeffs.size(); ++a) {
        coeffs[a] = coeff_rng.normal(static_cast<std::uint64_t>(a));
      }
      if (coeffs.norm() == 0.0) coeffs[0] = 1.0;
      coeffs /= coeffs.norm();
      Eigen::VectorXd values = Eigen::VectorXd::Zero(w_n.grid().cell_count());
      for (Eigen::Index a = 0; a < coeffs.size(); ++a) {
        values += coeffs[a] * basis[static_cast<std::size_t>(a)].values();
      }
      const StepFunction f(w_n.grid(), std::move(values));
      const double norm2 = weighted_inner(f, f);
      const double energy = measure_samples(f, system).energy;
      const double margin = energy - report.target_constant * norm2;
      min_margin = std::min(min_margin, margin);
      if (margin >= -1e-9 && energy <= norm2 + 1e-9) ++passes;
    }
    row.pass_rate = static_cast<double>(passes) / config.trials;
    row.min_margin = min_margin;
    report.rows.push_back(row);
  }

  // Smallest tested index from which every later row meets the threshold.
  std::optional<int> certified;
  for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
    if (!it->threshold_met) break;
    certified = it->n;
  }
  report.certified_n = certified;
  return report;
}

}  // namespace graphon
