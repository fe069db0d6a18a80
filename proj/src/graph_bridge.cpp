#include "graphon/graph_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"

namespace graphon {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) {
    throw ValidationError("graph", "graph needs at least one vertex");
  }
  for (auto& [u, v] : edges_) {
    if (u == v) {
      throw ValidationError("graph", "loops are not allowed");
    }
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
      throw ValidationError("graph", "edge endpoint out of range");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  adjacency_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
  for (const auto& [u, v] : edges_) {
    adjacency_[static_cast<std::size_t>(u) * n_ + v] = 1;
    adjacency_[static_cast<std::size_t>(v) * n_ + u] = 1;
  }
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, std::move(edges));
}

Graph Graph::empty(int n) { return Graph(n, {}); }

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

StepGraphon graph_to_graphon(const Graph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    values(u, v) = 1.0;
    values(v, u) = 1.0;
  }
  return StepGraphon(Grid::uniform(n), std::move(values), GraphonMode::graphon);
}

namespace {

// Sub-stream tags for sample_w_random_graph.
constexpr std::uint64_t kPositionsStream = 1;
constexpr std::uint64_t kEdgesStream = 2;

}  // namespace

Graph sample_w_random_graph(const StepGraphon& w, int n, std::uint64_t seed) {
  if (!w.is_graphon()) {
    throw ValidationError("sample", "sampling requires graphon mode");
  }
  if (n < 1) {
    throw ValidationError("sample", "vertex count must be positive");
  }
  const CounterRng rng(seed);
  const CounterRng positions = rng.derive(kPositionsStream);
  const CounterRng edges_rng = rng.derive(kEdgesStream);

  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = positions.derive(static_cast<std::uint64_t>(i)).uniform01(0);
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    const CounterRng row = edges_rng.derive(static_cast<std::uint64_t>(i));
    for (int j = i + 1; j < n; ++j) {
      const double p = w.value_at(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
      if (row.derive(static_cast<std::uint64_t>(j)).uniform01(0) < p) {
        edges.emplace_back(i, j);
      }
    }
  }
  return Graph(n, std::move(edges));
}

namespace {

std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > (std::int64_t{1} << 62) / std::max<std::int64_t>(base, 1)) {
      throw ValidationError("hom-density", "|V(G)|^{|V(F)|} does not fit in 63 bits");
    }
    result *= base;
  }
  return result;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Order F's vertices so each one (after the first) touches an earlier vertex
// when possible; maximizes early pruning in the backtracking count.
std::vector<int> assignment_order(const Graph& f) {
  const int k = f.vertex_count();
  std::vector<int> order;
  std::vector<bool> placed(static_cast<std::size_t>(k), false);
  auto degree = [&](int v) {
    int d = 0;
    for (int u = 0; u < k; ++u) d += f.has_edge(v, u) ? 1 : 0;
    return d;
  };
  while (static_cast<int>(order.size()) < k) {
    int best = -1, best_links = -1, best_degree = -1;
    for (int v = 0; v < k; ++v) {
      if (placed[static_cast<std::size_t>(v)]) continue;
      int links = 0;
      for (int u : order) links += f.has_edge(v, u) ? 1 : 0;
      const int d = degree(v);
      if (links > best_links || (links == best_links && d > best_degree)) {
        best = v;
        best_links = links;
        best_degree = d;
      }
    }
    order.push_back(best);
    placed[static_cast<std::size_t>(best)] = true;
  }
  return order;
}

}  // namespace

Rational homomorphism_density(const Graph& f, const Graph& g) {
  const int k = f.vertex_count();
  if (k > 6) {
    throw ValidationError("hom-density", "|V(F)| must be at most 6");
  }
  const int n = g.vertex_count();
  const std::int64_t den = checked_pow(n, k);

  const std::vector<int> order = assignment_order(f);
  std::vector<int> image(static_cast<std::size_t>(k), -1);
  std::int64_t count = 0;

  auto backtrack = [&](auto&& self, int level) -> void {
    if (level == k) {
      ++count;
      return;
    }
    const int v = order[static_cast<std::size_t>(level)];
    for (int target = 0; target < n; ++target) {
      bool ok = true;
      for (int prev = 0; prev < level; ++prev) {
        const int u = order[static_cast<std::size_t>(prev)];
        if (f.has_edge(v, u) && !g.has_edge(target, image[static_cast<std::size_t>(u)])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      image[static_cast<std::size_t>(v)] = target;
      self(self, level + 1);
    }
    image[static_cast<std::size_t>(v)] = -1;
  };
  backtrack(backtrack, 0);

  const std::int64_t g_ = gcd64(count, den);  // gcd(0, den) = den
  return Rational{count / g_, den / g_};
}

namespace {

bool is_uniform_grid(const Grid& grid) {
  const Eigen::Index k = grid.cell_count();
  for (Eigen::Index i = 0; i <= k; ++i) {
    if (grid.breakpoints()[static_cast<std::size_t>(i)] !=
        static_cast<double>(i) / static_cast<double>(k)) {
      return false;
    }
  }
  return true;
}

bool is_zero_one_valued(const Eigen::MatrixXd& values) {
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (values(i, j) != 0.0 && values(i, j) != 1.0) return false;
    }
  }
  return true;
}

}  // namespace

double homomorphism_density(const Graph& f, const StepGraphon& w) {
  const int k = f.vertex_count();
  if (k > 5) {
    throw ValidationError("hom-density", "|V(F)| must be at most 5");
  }
  const Eigen::Index cells = w.cell_count();
  if (cells > 64) {
    throw ValidationError("hom-density", "graphon must have at most 64 cells");
  }

  const std::vector<int> order = assignment_order(f);

  // Exact path for embedded graphs: on a uniform grid with {0,1} values the
  // cell sum collapses to (number of edge-preserving assignments) / cells^k,
  // which reproduces the rational graph density bit for bit.
  if (is_uniform_grid(w.grid()) && is_zero_one_valued(w.values())) {
    std::vector<Eigen::Index> image(static_cast<std::size_t>(k), -1);
    std::int64_t count = 0;
    auto backtrack = [&](auto&& self, int level) -> void {
      if (level == k) {
        ++count;
        return;
      }
      const int v = order[static_cast<std::size_t>(level)];
      for (Eigen::Index target = 0; target < cells; ++target) {
        bool ok = true;
        for (int prev = 0; prev < level; ++prev) {
          const int u = order[static_cast<std::size_t>(prev)];
          if (f.has_edge(v, u) &&
              w.values()(target, image[static_cast<std::size_t>(u)]) == 0.0) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        image[static_cast<std::size_t>(v)] = target;
        self(self, level + 1);
      }
      image[static_cast<std::size_t>(v)] = -1;
    };
    backtrack(backtrack, 0);
    const std::int64_t den = checked_pow(static_cast<std::int64_t>(cells), k);
    return static_cast<double>(count) / static_cast<double>(den);
  }

  const Eigen::VectorXd& m = w.grid().measures();
  std::vector<Eigen::Index> image(static_cast<std::size_t>(k), -1);
  double total = 0.0;
  auto backtrack = [&](auto&& self, int level, double partial) -> void {
    if (partial == 0.0) return;
    if (level == k) {
      total += partial;
      return;
    }
    const int v = order[static_cast<std::size_t>(level)];
    for (Eigen::Index target = 0; target < cells; ++target) {
      double factor = m[target];
      for (int prev = 0; prev < level && factor != 0.0; ++prev) {
        const int u = order[static_cast<std::size_t>(prev)];
        if (f.has_edge(v, u)) {
          factor *= w.values()(target, image[static_cast<std::size_t>(u)]);
        }
      }
      if (factor == 0.0) continue;
      image[static_cast<std::size_t>(v)] = target;
      self(self, level + 1, partial * factor);
    }
    image[static_cast<std::size_t>(v)] = -1;
  };
  backtrack(backtrack, 0, 1.0);
  return total;
}

}  // namespace graphon
