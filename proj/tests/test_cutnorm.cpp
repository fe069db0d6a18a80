#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "graphon/cutnorm.hpp"
#include "graphon/errors.hpp"
#include "graphon/graph_bridge.hpp"
#include "graphon/step_graphon.hpp"
#include "support/generators.hpp"

using namespace graphon;

namespace {

StepGraphon half_sign_kernel() {
  Eigen::MatrixXd v(2, 2);
  v << 1, -1, -1, 1;
  return StepGraphon(Grid({0.0, 0.5, 1.0}), v, GraphonMode::kernel);
}

}  // namespace

TEST_CASE("exact cut norm on closed forms") {
  SUBCASE("zero kernel") {
    const StepGraphon u = kernel_difference(StepGraphon::constant(0.5),
                                            StepGraphon::constant(0.5));
    CHECK(cut_norm_exact(u).value == 0.0);
  }
  SUBCASE("all-ones kernel") {
    const StepGraphon u = kernel_difference(StepGraphon::constant(1.0),
                                            StepGraphon::constant(0.0));
    const CutNormResult r = cut_norm_exact(u);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.s.measure() == 1.0);
    CHECK(r.t.measure() == 1.0);
  }
  SUBCASE("plus-minus half kernel") {
    const CutNormResult r = cut_norm_exact(half_sign_kernel());
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(r.s.cells() == std::vector<Eigen::Index>{0});  // S = [0, 0.5)
    CHECK(r.t.cells() == std::vector<Eigen::Index>{0});
  }
  SUBCASE("size guard") {
    const CounterRng rng(1);
    const StepGraphon u = testgen::random_kernel(rng, Grid::uniform(23));
    CHECK_THROWS_AS(cut_norm_exact(u), ValidationError);
  }
}

TEST_CASE("exact routine matches the brute-force oracle") {
  const CounterRng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
    const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 7);
    const StepGraphon u = testgen::random_kernel(stream.derive(1), grid);
    const CutNormResult r = cut_norm_exact(u);
    CHECK(r.value == doctest::Approx(testgen::cutnorm_bruteforce(u)).epsilon(1e-13));
  }
}

TEST_CASE("reported optimizer reproduces the value") {
  const CounterRng rng(2025);
  for (int trial = 0; trial < 20; ++trial) {
    const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
    const Grid grid = testgen::random_grid(stream.derive(0), 3 + trial % 8);
    const StepGraphon u = testgen::random_kernel(stream.derive(1), grid);

    const CutNormResult exact = cut_norm_exact(u);
    CHECK(std::abs(cut_integral(u, exact.s, exact.t)) == exact.value);

    const CutNormResult lower = cut_norm_lower(u, 16, 5);
    CHECK(std::abs(cut_integral(u, lower.s, lower.t)) == lower.value);
  }
}

TEST_CASE("heuristic never exceeds exact and usually matches") {
  const CounterRng rng(2026);
  int equal = 0;
  const int trials = 40;
  for (int trial = 0; trial < trials; ++trial) {
    const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
    const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 11);
    const StepGraphon u = testgen::random_kernel(stream.derive(1), grid);
    const double exact = cut_norm_exact(u).value;
    const double lower = cut_norm_lower(u, 64, 1000 + static_cast<std::uint64_t>(trial)).value;
    CHECK(lower <= exact);
    if (lower == exact) ++equal;
  }
  CHECK(equal >= trials * 95 / 100);
}

TEST_CASE("cut norm properties") {
  const CounterRng rng(2027);

  SUBCASE("bounded by sup |u| and symmetric under negation") {
    for (int trial = 0; trial < 20; ++trial) {
      const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
      const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 8);
      const StepGraphon u = testgen::random_kernel(stream.derive(1), grid);
      const double value = cut_norm_exact(u).value;
      CHECK(value >= 0.0);
      CHECK(value <= u.values().cwiseAbs().maxCoeff());
      const StepGraphon neg = kernel_scale(u, -1.0);
      CHECK(cut_norm_exact(neg).value == value);
    }
  }
  SUBCASE("triangle inequality, no tolerance, exact dyadic instances") {
    // quantized values on power-of-two grids: the whole computation is exact,
    // so the inequality must hold bit for bit even when it is tight
    for (int trial = 0; trial < 25; ++trial) {
      const CounterRng stream = rng.derive(100 + static_cast<std::uint64_t>(trial));
      const int log2_cells = 1 + trial % 3;
      const StepGraphon u = testgen::random_dyadic_kernel(stream.derive(1), log2_cells);
      const StepGraphon v = testgen::random_dyadic_kernel(stream.derive(2), log2_cells);
      const StepGraphon uh = kernel_scale(u, 0.5);
      const StepGraphon vh = kernel_scale(v, 0.5);
      const StepGraphon sum(u.grid(), uh.values() + vh.values(), GraphonMode::kernel);
      CHECK(cut_norm_exact(sum).value <=
            cut_norm_exact(uh).value + cut_norm_exact(vh).value);
    }
  }
  SUBCASE("triangle inequality on continuous instances, float slack") {
    for (int trial = 0; trial < 25; ++trial) {
      const CounterRng stream = rng.derive(150 + static_cast<std::uint64_t>(trial));
      const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 8);
      const StepGraphon u = testgen::random_kernel(stream.derive(1), grid);
      const StepGraphon v = testgen::random_kernel(stream.derive(2), grid);
      const StepGraphon uh = kernel_scale(u, 0.5);
      const StepGraphon vh = kernel_scale(v, 0.5);
      const StepGraphon sum(grid, uh.values() + vh.values(), GraphonMode::kernel);
      CHECK(cut_norm_exact(sum).value <=
            cut_norm_exact(uh).value + cut_norm_exact(vh).value + 1e-14);
    }
  }
  SUBCASE("scaling by powers of two is bit-exact") {
    for (int trial = 0; trial < 15; ++trial) {
      const CounterRng stream = rng.derive(200 + static_cast<std::uint64_t>(trial));
      const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 6);
      const StepGraphon u = testgen::random_kernel(stream.derive(1), grid);
      const double base = cut_norm_exact(u).value;
      for (const double c : {0.5, -0.5, 0.25, -0.0625, 1.0, -1.0}) {
        CHECK(cut_norm_exact(kernel_scale(u, c)).value == std::abs(c) * base);
      }
      CHECK(cut_norm_exact(kernel_scale(u, 0.0)).value == 0.0);
    }
  }
  SUBCASE("scaling by general factors within float tolerance") {
    for (int trial = 0; trial < 15; ++trial) {
      const CounterRng stream = rng.derive(300 + static_cast<std::uint64_t>(trial));
      const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 6);
      const StepGraphon u = testgen::random_kernel(stream.derive(1), grid);
      const double c = 0.1 + 0.8 * stream.uniform01(999);
      const double scaled = cut_norm_exact(kernel_scale(u, c)).value;
      CHECK(scaled == doctest::Approx(c * cut_norm_exact(u).value).epsilon(1e-13));
    }
  }
}

TEST_CASE("heuristic equals zero on the zero kernel") {
  const StepGraphon u = kernel_difference(StepGraphon::constant(0.3),
                                          StepGraphon::constant(0.3));
  CHECK(cut_norm_lower(u, 8, 1).value == 0.0);
}

TEST_CASE("sampled-graph kernels shrink in cut norm as n grows") {
  // median over seeds of ||w_{G(n,w)} - w||_box decays along n
  const StepGraphon w = StepGraphon::constant(0.5);
  const int seeds = 20;
  std::vector<double> medians;
  for (const int n : {16, 32, 64, 128}) {
    std::vector<double> values;
    for (int seed = 0; seed < seeds; ++seed) {
      const Graph g = sample_w_random_graph(w, n, 500 + static_cast<std::uint64_t>(seed));
      const StepGraphon diff = kernel_difference(graph_to_graphon(g), w);
      values.push_back(cut_norm_lower(diff, 8, static_cast<std::uint64_t>(seed)).value);
    }
    std::sort(values.begin(), values.end());
    medians.push_back(values[static_cast<std::size_t>(seeds / 2)]);
  }
  for (std::size_t i = 0; i + 1 < medians.size(); ++i) {
    CHECK(medians[i + 1] < medians[i]);
  }
}
