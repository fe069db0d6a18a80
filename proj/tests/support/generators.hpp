#pragma once

// Deterministic random instances for tests, all driven by CounterRng streams.

#include <Eigen/Dense>
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graphon/core_ops.hpp"
#include "graphon/cutnorm.hpp"
#include "graphon/graph_bridge.hpp"
#include "graphon/operators.hpp"
#include "graphon/rng.hpp"
#include "graphon/sampling.hpp"
#include "graphon/step_function.hpp"
#include "graphon/step_graphon.hpp"

namespace testgen {

using graphon::CounterRng;
using graphon::Grid;
using graphon::Partition;
using graphon::StepFunction;
using graphon::StepGraphon;

// Uniform or random-breakpoint grid with `cells` cells.
inline Grid random_grid(const CounterRng& rng, Eigen::Index cells) {
  if (rng.uniform01(1000) < 0.5) return Grid::uniform(cells);
  std::vector<double> bps;
  bps.push_back(0.0);
  for (Eigen::Index i = 1; i < cells; ++i) {
    bps.push_back(0.02 + 0.96 * rng.uniform01(static_cast<std::uint64_t>(i)));
  }
  bps.push_back(1.0);
  std::sort(bps.begin(), bps.end());
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    if (bps[i + 1] - bps[i] < 1e-6) bps[i + 1] = bps[i] + 1e-6;
  }
  return Grid(std::move(bps));
}

// Symmetric graphon with entries uniform in [lo, hi].
inline StepGraphon random_graphon(const CounterRng& rng, const Grid& grid, double lo,
                                  double hi) {
  const Eigen::Index k = grid.cell_count();
  Eigen::MatrixXd values(k, k);
  std::uint64_t counter = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const double v = lo + (hi - lo) * rng.uniform01(counter++);
      values(i, j) = v;
      values(j, i) = v;
    }
  }
  return StepGraphon(grid, std::move(values));
}

// Strictly positive entries, hence connected with every part connected.
inline StepGraphon random_connected_graphon(const CounterRng& rng, Eigen::Index cells) {
  const Grid grid = random_grid(rng.derive(1), cells);
  const double lo = 0.02 + 0.3 * rng.uniform01(2000);
  return random_graphon(rng.derive(2), grid, lo, 1.0);
}

// Symmetric kernel with entries uniform in [-1, 1].
inline StepGraphon random_kernel(const CounterRng& rng, const Grid& grid) {
  const Eigen::Index k = grid.cell_count();
  Eigen::MatrixXd values(k, k);
  std::uint64_t counter = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const double v = 2.0 * rng.uniform01(counter++) - 1.0;
      values(i, j) = v;
      values(j, i) = v;
    }
  }
  return StepGraphon(grid, std::move(values), graphon::GraphonMode::kernel);
}

// Kernel with entries quantized to multiples of 1/256 on a uniform grid with
// a power-of-two cell count. Every intermediate of the cut norm computation
// is then exactly representable, so algebraic identities hold bit for bit.
inline StepGraphon random_dyadic_kernel(const CounterRng& rng, int log2_cells) {
  const Eigen::Index k = Eigen::Index{1} << log2_cells;
  Eigen::MatrixXd values(k, k);
  std::uint64_t counter = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const double v =
          static_cast<double>(static_cast<int>(rng.below(counter++, 513)) - 256) / 256.0;
      values(i, j) = v;
      values(j, i) = v;
    }
  }
  return StepGraphon(Grid::uniform(k), std::move(values), graphon::GraphonMode::kernel);
}

// Grid-aligned partition with k nonempty parts.
inline Partition random_partition(const CounterRng& rng, const Grid& grid, int k) {
  const Eigen::Index cells = grid.cell_count();
  if (cells < k) throw std::invalid_argument("not enough cells for partition");
  for (std::uint64_t attempt = 0;; ++attempt) {
    const CounterRng draw = rng.derive(attempt);
    std::vector<int> part_of(static_cast<std::size_t>(cells));
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (Eigen::Index i = 0; i < cells; ++i) {
      const int p = static_cast<int>(draw.below(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k)));
      part_of[static_cast<std::size_t>(i)] = p;
      seen[static_cast<std::size_t>(p)] = true;
    }
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
      return Partition(grid, std::move(part_of));
    }
  }
}

inline StepFunction random_step_function(const CounterRng& rng, const Grid& grid,
                                         double scale = 1.0) {
  Eigen::VectorXd values(grid.cell_count());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values[i] = scale * rng.normal(static_cast<std::uint64_t>(i));
  }
  return StepFunction(grid, std::move(values));
}

// Unit-norm random psi functionals, one per part, supported on their parts.
inline std::vector<StepFunction> random_psi(const CounterRng& rng, const Partition& p) {
  std::vector<StepFunction> out;
  for (int j = 0; j < p.part_count(); ++j) {
    const CounterRng stream = rng.derive(static_cast<std::uint64_t>(j));
    Eigen::VectorXd values = Eigen::VectorXd::Zero(p.grid().cell_count());
    double norm2 = 0.0;
    for (const Eigen::Index c : p.part_cells(j)) {
      values[c] = 0.2 + 0.8 * stream.uniform01(static_cast<std::uint64_t>(c));
      norm2 += p.grid().cell_measure(c) * values[c] * values[c];
    }
    values /= std::sqrt(norm2);
    out.emplace_back(p.grid(), std::move(values));
  }
  return out;
}

// Random unit-norm element of span(pw_basis(w, gamma)).
inline StepFunction random_unit_pw_function(const CounterRng& rng, const StepGraphon& w,
                                            double gamma) {
  const std::vector<StepFunction> basis = graphon::pw_basis(w, gamma);
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index a = 0; a < coeffs.size(); ++a) {
    coeffs[a] = rng.normal(static_cast<std::uint64_t>(a));
  }
  if (coeffs.norm() == 0.0) coeffs[0] = 1.0;
  coeffs /= coeffs.norm();
  Eigen::VectorXd values = Eigen::VectorXd::Zero(w.grid().cell_count());
  for (Eigen::Index a = 0; a < coeffs.size(); ++a) {
    values += coeffs[a] * basis[static_cast<std::size_t>(a)].values();
  }
  return StepFunction(w.grid(), std::move(values));
}

// Random simple graph on n vertices with edge probability p.
inline graphon::Graph random_graph(const CounterRng& rng, int n, double p) {
  std::vector<std::pair<int, int>> edges;
  std::uint64_t counter = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01(counter++) < p) edges.emplace_back(i, j);
    }
  }
  return graphon::Graph(n, std::move(edges));
}

// Three-block step graphon with non-dyadic-free boundaries {0, 1/4, 5/8, 1}.
inline StepGraphon sbm3() {
  Eigen::MatrixXd values(3, 3);
  values << 0.8, 0.3, 0.1,
            0.3, 0.7, 0.2,
            0.1, 0.2, 0.9;
  return StepGraphon(Grid({0.0, 0.25, 0.625, 1.0}), std::move(values));
}

// Brute-force cut norm over all subset pairs; oracle for the exact routine.
inline double cutnorm_bruteforce(const StepGraphon& u) {
  const Eigen::Index k = u.cell_count();
  if (k > 14) throw std::invalid_argument("bruteforce oracle limited to 14 cells");
  const Eigen::VectorXd& m = u.grid().measures();
  double best = 0.0;
  for (std::uint32_t smask = 0; smask < (1u << k); ++smask) {
    for (std::uint32_t tmask = 0; tmask < (1u << k); ++tmask) {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < k; ++i) {
        if (!(smask & (1u << i))) continue;
        for (Eigen::Index j = 0; j < k; ++j) {
          if (!(tmask & (1u << j))) continue;
          sum += u.values()(i, j) * m[i] * m[j];
        }
      }
      best = std::max(best, std::abs(sum));
    }
  }
  return best;
}

// Connectivity per the measure-theoretic definition, brute-forced over all
// unions of cells of the (possibly refined) grid.
inline bool connected_bruteforce(const StepGraphon& u) {
  const Eigen::Index k = u.cell_count();
  if (k > 16) throw std::invalid_argument("bruteforce oracle limited to 16 cells");
  const Eigen::VectorXd& m = u.grid().measures();
  for (std::uint32_t smask = 1; smask + 1 < (1u << k); ++smask) {
    double cross = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (!(smask & (1u << i))) continue;
      for (Eigen::Index j = 0; j < k; ++j) {
        if (smask & (1u << j)) continue;
        cross += u.values()(i, j) * m[i] * m[j];
      }
    }
    if (!(cross > 0.0)) return false;
  }
  return true;
}

}  // namespace testgen
