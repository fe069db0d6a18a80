#include "graphon/core_ops.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <numeric>

#include "graphon/errors.hpp"

namespace graphon {

StepFunction degree_function(const StepGraphon& w) {
  if (!w.is_graphon()) {
    throw ValidationError("degree", "degree function requires graphon mode");
  }
  Eigen::VectorXd d = w.values() * w.grid().measures();
  return StepFunction(w.grid(), std::move(d));
}

namespace {

struct UnionFind {
  std::vector<Eigen::Index> parent;
  explicit UnionFind(Eigen::Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  Eigen::Index find(Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(Eigen::Index a, Eigen::Index b) {
    parent[static_cast<std::size_t>(find(a))] = find(b);
  }
};

}  // namespace

bool is_connected(const StepGraphon& w) {
  if (!w.is_graphon()) {
    throw ValidationError("connectivity", "connectivity requires graphon mode");
  }
  const Eigen::Index k = w.cell_count();
  if (k == 1) {
    // Splitting the single cell gives cross integral w_00 * |S| * |S^c|.
    return w.values()(0, 0) > 0.0;
  }
  UnionFind uf(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (w.values()(i, j) > 0.0) uf.unite(i, j);
    }
  }
  const Eigen::Index root = uf.find(0);
  for (Eigen::Index i = 1; i < k; ++i) {
    if (uf.find(i) != root) return false;
  }
  return true;
}

AnalyticGraphon analytic_graphon(const std::string& id) {
  AnalyticGraphon g;
  g.id = id;
  if (id == "product") {
    g.eval = [](double x, double y) { return x * y; };
    g.degree = [](double x) { return x / 2.0; };
    g.degree_monotone = true;
  } else if (id == "mean") {
    g.eval = [](double x, double y) { return (x + y) / 2.0; };
    g.degree = [](double x) { return x / 2.0 + 0.25; };
    g.degree_monotone = true;
  } else {
    throw ValidationError("analytic", "unknown analytic graphon id: " + id);
  }
  return g;
}

StepGraphon average_graphon(const StepGraphon& w, Eigen::Index n) {
  const Grid out = Grid::uniform(n);
  if (w.grid() == out) return w;  // averaging is idempotent on its own grid

  const Grid fine = common_refinement(w.grid(), out);
  const auto to_out = refinement_map(out, fine);
  const auto to_in = refinement_map(w.grid(), fine);

  // Overlap lengths between output cells and input cells.
  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(n, w.cell_count());
  for (Eigen::Index c = 0; c < fine.cell_count(); ++c) {
    overlap(to_out[static_cast<std::size_t>(c)], to_in[static_cast<std::size_t>(c)]) +=
        fine.cell_measure(c);
  }

  Eigen::MatrixXd integrals = overlap * w.values() * overlap.transpose();
  Eigen::MatrixXd values(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      values(i, j) = integrals(i, j) / (out.cell_measure(i) * out.cell_measure(j));
    }
  }
  // Averages are convex combinations; clamp rounding dust back into range.
  if (w.is_graphon()) {
    values = values.cwiseMax(0.0).cwiseMin(1.0);
  } else {
    values = values.cwiseMax(-1.0).cwiseMin(1.0);
  }
  return StepGraphon(out, std::move(values), w.mode());
}

namespace {

// Tensor 3x3 Gauss-Legendre rule, exact through degree 5 in each variable.
double gauss3_square(const std::function<double(double, double)>& f, double x0,
                     double x1, double y0, double y1) {
  static const std::array<double, 3> node = {-0.7745966692414834, 0.0,
                                             0.7745966692414834};
  static const std::array<double, 3> weight = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double cx = (x0 + x1) / 2.0, hx = (x1 - x0) / 2.0;
  const double cy = (y0 + y1) / 2.0, hy = (y1 - y0) / 2.0;
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      sum += weight[static_cast<std::size_t>(a)] * weight[static_cast<std::size_t>(b)] *
             f(cx + hx * node[static_cast<std::size_t>(a)],
               cy + hy * node[static_cast<std::size_t>(b)]);
    }
  }
  return sum * hx * hy;
}

double integrate_square(const std::function<double(double, double)>& f, double x0,
                        double x1, double y0, double y1, double tol, int depth) {
  const double whole = gauss3_square(f, x0, x1, y0, y1);
  const double xm = (x0 + x1) / 2.0, ym = (y0 + y1) / 2.0;
  const double split = gauss3_square(f, x0, xm, y0, ym) +
                       gauss3_square(f, xm, x1, y0, ym) +
                       gauss3_square(f, x0, xm, ym, y1) +
                       gauss3_square(f, xm, x1, ym, y1);
  const double err = std::abs(whole - split);
  if (err <= std::max(tol, 1e-16 * (1.0 + std::abs(split)))) {
    return split;
  }
  if (depth >= 20) {
    throw InternalError("quadrature", "cell quadrature did not converge");
  }
  return integrate_square(f, x0, xm, y0, ym, tol / 4.0, depth + 1) +
         integrate_square(f, xm, x1, y0, ym, tol / 4.0, depth + 1) +
         integrate_square(f, x0, xm, ym, y1, tol / 4.0, depth + 1) +
         integrate_square(f, xm, x1, ym, y1, tol / 4.0, depth + 1);
}

}  // namespace

StepGraphon average_graphon(const AnalyticGraphon& w, Eigen::Index n, double tol) {
  if (!w.eval) {
    throw ValidationError("analytic", "analytic graphon has no evaluator");
  }
  const Grid out = Grid::uniform(n);
  Eigen::MatrixXd values(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double area = out.cell_measure(i) * out.cell_measure(j);
      const double integral =
          integrate_square(w.eval, out.cell_left(i), out.cell_right(i),
                           out.cell_left(j), out.cell_right(j), tol * area, 0);
      const double mean = integral / area;
      values(i, j) = mean;
      values(j, i) = mean;
    }
  }
  values = values.cwiseMax(0.0).cwiseMin(1.0);
  return StepGraphon(out, std::move(values), GraphonMode::graphon);
}

namespace {

void fnv_feed(std::uint64_t& h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001B3ull;
  }
}

}  // namespace

std::string content_hash(const StepGraphon& w) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  const unsigned char mode = w.is_graphon() ? 0 : 1;
  fnv_feed(h, &mode, 1);
  fnv_feed(h, w.grid().breakpoints().data(),
           w.grid().breakpoints().size() * sizeof(double));
  fnv_feed(h, w.values().data(),
           static_cast<std::size_t>(w.values().size()) * sizeof(double));
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace graphon
