#include "graphon/cutnorm.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"

namespace graphon {

double cut_integral(const StepGraphon& u, const MeasurableSet& s,
                    const MeasurableSet& t) {
  if (s.grid() != u.grid() || t.grid() != u.grid()) {
    throw ValidationError("cutnorm", "sets must live on the kernel's grid");
  }
  const Eigen::VectorXd& m = u.grid().measures();
  double total = 0.0;
  for (Eigen::Index i = 0; i < u.cell_count(); ++i) {
    if (!s.contains_cell(i)) continue;
    double row = 0.0;
    for (Eigen::Index j = 0; j < u.cell_count(); ++j) {
      if (!t.contains_cell(j)) continue;
      row += u.values()(i, j) * m[j];
    }
    total += m[i] * row;
  }
  return total;
}

namespace {

// Membership vectors ordered so that sets containing lower-indexed cells come
// first ("included" sorts before "excluded").
bool lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  const std::uint32_t diff = a ^ b;
  const std::uint32_t low = diff & (~diff + 1);
  return (a & low) != 0;
}

MeasurableSet mask_to_set(const Grid& grid, std::uint32_t mask) {
  std::vector<bool> member(static_cast<std::size_t>(grid.cell_count()), false);
  for (Eigen::Index i = 0; i < grid.cell_count(); ++i) {
    if (mask & (std::uint32_t{1} << i)) member[static_cast<std::size_t>(i)] = true;
  }
  return MeasurableSet(grid, std::move(member));
}

// For fixed S (column sums given), the optimal T takes every positive column;
// the optimal T for the negated form takes every negative one. Returns the
// larger side, with ties resolved toward the lexicographically smaller mask.
struct BestT {
  double value = 0.0;
  std::uint32_t mask = 0;
};

BestT best_t_for_columns(const Eigen::VectorXd& cols) {
  double pos = 0.0, neg = 0.0;
  std::uint32_t pos_mask = 0, neg_mask = 0;
  for (Eigen::Index j = 0; j < cols.size(); ++j) {
    if (cols[j] > 0.0) {
      pos += cols[j];
      pos_mask |= std::uint32_t{1} << j;
    } else if (cols[j] < 0.0) {
      neg += cols[j];
      neg_mask |= std::uint32_t{1} << j;
    }
  }
  const double neg_value = -neg;
  if (pos > neg_value) return {pos, pos_mask};
  if (neg_value > pos) return {neg_value, neg_mask};
  return {pos, lex_less(pos_mask, neg_mask) ? pos_mask : neg_mask};
}

CutNormResult finish(const StepGraphon& u, std::uint32_t s_mask, std::uint32_t t_mask,
                     std::string method) {
  MeasurableSet s = mask_to_set(u.grid(), s_mask);
  MeasurableSet t = mask_to_set(u.grid(), t_mask);
  const double value = std::abs(cut_integral(u, s, t));
  return CutNormResult{value, std::move(s), std::move(t), std::move(method)};
}

}  // namespace

CutNormResult cut_norm_exact(const StepGraphon& u) {
  const Eigen::Index k = u.cell_count();
  if (k > 22) {
    throw ValidationError("cutnorm", "exact cut norm is limited to 22 cells");
  }
  const Eigen::VectorXd& m = u.grid().measures();
  Eigen::MatrixXd scaled(k, k);  // u_ij m_i m_j
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      scaled(i, j) = u.values()(i, j) * m[i] * m[j];
    }
  }

  // Gray-code walk over subsets S; column sums are updated by one row flip
  // per step. The incremental sums drift by rounding, so the walk only ranks
  // candidates; near-best subsets are re-evaluated exactly afterwards.
  const auto walk = [&](const std::function<void(std::uint32_t, double)>& visit) {
    Eigen::VectorXd cols = Eigen::VectorXd::Zero(k);
    std::uint32_t gray = 0;
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t step = 1; step < total; ++step) {
      const int flip = std::countr_zero(step);
      const std::uint32_t bit = std::uint32_t{1} << flip;
      if (gray & bit) {
        cols -= scaled.row(flip).transpose();
        gray &= ~bit;
      } else {
        cols += scaled.row(flip).transpose();
        gray |= bit;
      }
      visit(gray, best_t_for_columns(cols).value);
    }
  };

  double best_incremental = 0.0;
  walk([&](std::uint32_t, double value) {
    best_incremental = std::max(best_incremental, value);
  });

  // Exact re-evaluation of every subset within the drift window. Random
  // kernels have one or two candidates; heavily tied kernels are capped, and
  // their candidates are equal-valued anyway.
  constexpr double kWindow = 1e-12;
  constexpr int kMaxCandidates = 1 << 16;
  double best_value = 0.0;
  std::uint32_t best_s = 0, best_t = 0;
  int evaluated = 0;
  walk([&](std::uint32_t gray, double value) {
    if (value < best_incremental - kWindow || evaluated >= kMaxCandidates) return;
    ++evaluated;
    Eigen::VectorXd cols = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (gray & (std::uint32_t{1} << i)) cols += scaled.row(i).transpose();
    }
    const BestT t = best_t_for_columns(cols);
    const MeasurableSet s_set = mask_to_set(u.grid(), gray);
    const MeasurableSet t_set = mask_to_set(u.grid(), t.mask);
    const double canonical = std::abs(cut_integral(u, s_set, t_set));
    if (canonical > best_value ||
        (canonical == best_value &&
         (lex_less(gray, best_s) || (gray == best_s && lex_less(t.mask, best_t))))) {
      best_value = canonical;
      best_s = gray;
      best_t = t.mask;
    }
  });
  return finish(u, best_s, best_t, "exact");
}

CutNormResult cut_norm_lower(const StepGraphon& u, int restarts, std::uint64_t seed) {
  if (restarts < 1) {
    throw ValidationError("cutnorm", "restarts must be positive");
  }
  const Eigen::Index k = u.cell_count();
  const Eigen::VectorXd& m = u.grid().measures();
  Eigen::MatrixXd scaled(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      scaled(i, j) = u.values()(i, j) * m[i] * m[j];
    }
  }

  const CounterRng rng = CounterRng(seed).derive(5);
  double best_value = -1.0;
  std::vector<char> best_s, best_t;

  std::vector<char> s(static_cast<std::size_t>(k)), t(static_cast<std::size_t>(k));
  std::vector<char> prev_s, prev_t;
  for (int r = 0; r < restarts; ++r) {
    const CounterRng start = rng.derive(static_cast<std::uint64_t>(r));
    for (const double sign : {1.0, -1.0}) {
      for (Eigen::Index i = 0; i < k; ++i) {
        s[static_cast<std::size_t>(i)] = start.uniform01(static_cast<std::uint64_t>(i)) < 0.5;
      }
      prev_s.clear();
      prev_t.clear();
      for (int iter = 0; iter < 100; ++iter) {
        for (Eigen::Index j = 0; j < k; ++j) {
          double col = 0.0;
          for (Eigen::Index i = 0; i < k; ++i) {
            if (s[static_cast<std::size_t>(i)]) col += sign * scaled(i, j);
          }
          t[static_cast<std::size_t>(j)] = col > 0.0;
        }
        for (Eigen::Index i = 0; i < k; ++i) {
          double row = 0.0;
          for (Eigen::Index j = 0; j < k; ++j) {
            if (t[static_cast<std::size_t>(j)]) row += sign * scaled(i, j);
          }
          s[static_cast<std::size_t>(i)] = row > 0.0;
        }
        if (s == prev_s && t == prev_t) break;
        prev_s = s;
        prev_t = t;
      }
      double value = 0.0;
      for (Eigen::Index i = 0; i < k; ++i) {
        if (!s[static_cast<std::size_t>(i)]) continue;
        for (Eigen::Index j = 0; j < k; ++j) {
          if (t[static_cast<std::size_t>(j)]) value += scaled(i, j);
        }
      }
      value = std::abs(value);
      const bool better = value > best_value;
      // Ties prefer sets containing lower-indexed cells, as in the exact
      // routine; on vector<char> that is the lexicographically larger one.
      const bool tie_smaller = value == best_value && (s > best_s || (s == best_s && t > best_t));
      if (better || tie_smaller) {
        best_value = value;
        best_s = s;
        best_t = t;
      }
    }
  }

  std::vector<bool> sb(best_s.begin(), best_s.end());
  std::vector<bool> tb(best_t.begin(), best_t.end());
  MeasurableSet sm(u.grid(), std::move(sb));
  MeasurableSet tm(u.grid(), std::move(tb));
  const double value = std::abs(cut_integral(u, sm, tm));
  return CutNormResult{value, std::move(sm), std::move(tm), "heuristic"};
}

}  // namespace graphon
