#include <doctest.h>

#include <cmath>

#include "graphon/core_ops.hpp"
#include "graphon/errors.hpp"
#include "graphon/operators.hpp"
#include "graphon/step_function.hpp"
#include "graphon/step_graphon.hpp"
#include "support/generators.hpp"

using namespace graphon;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid({0.0}), ValidationError);
  CHECK_THROWS_AS(Grid({0.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(Grid({0.1, 1.0}), ValidationError);
  CHECK_THROWS_AS(Grid({0.0, 0.5, 0.5, 1.0}), ValidationError);
  CHECK_THROWS_AS(Grid({0.0, 0.6, 0.5, 1.0}), ValidationError);

  const Grid g = Grid::uniform(4);
  CHECK(g.cell_count() == 4);
  CHECK(g.measures().sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.cell_containing(0.0) == 0);
  CHECK(g.cell_containing(0.25) == 1);  // half-open cells
  CHECK(g.cell_containing(1.0) == 3);   // last cell includes 1
}

TEST_CASE("common refinement") {
  const Grid a({0.0, 0.5, 1.0});
  const Grid b({0.0, 1.0 / 3.0, 1.0});
  const Grid r = common_refinement(a, b);
  CHECK(r.breakpoints() == std::vector<double>{0.0, 1.0 / 3.0, 0.5, 1.0});

  CHECK(common_refinement(a, a) == a);  // idempotent

  const Grid trivial({0.0, 1.0});
  const Grid c({0.0, 0.25, 1.0});
  CHECK(common_refinement(trivial, c) == c);
}

TEST_CASE("step function refinement preserves evaluation") {
  const Grid coarse({0.0, 0.5, 1.0});
  const StepFunction f(coarse, Eigen::Vector2d(1.0, -2.0));
  const Grid fine = common_refinement(coarse, Grid::uniform(5));
  const StepFunction fr = f.refined_to(fine);
  for (double x : {0.0, 0.1, 0.49, 0.5, 0.77, 1.0}) {
    CHECK(fr.value_at(x) == f.value_at(x));
  }
  CHECK(weighted_inner(f, f) == doctest::Approx(weighted_inner(fr, fr)).epsilon(1e-14));
}

TEST_CASE("step graphon construction") {
  const Grid g2({0.0, 0.5, 1.0});

  SUBCASE("identity blocks") {
    Eigen::MatrixXd v(2, 2);
    v << 1, 0, 0, 1;
    const StepGraphon w(g2, v);
    CHECK(w.is_graphon());
    CHECK(w.cell_count() == 2);
  }
  SUBCASE("constant") {
    const StepGraphon w = StepGraphon::constant(0.5);
    CHECK(w.is_graphon());
    CHECK(w.values()(0, 0) == 0.5);
  }
  SUBCASE("symmetric by inspection") {
    Eigen::MatrixXd v(2, 2);
    v << 0.2, 0.8, 0.8, 0.4;
    CHECK(StepGraphon(g2, v).is_graphon());
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(StepGraphon(g2, Eigen::MatrixXd::Zero(3, 3)), ValidationError);
  }
  SUBCASE("entry outside [-1,1]") {
    Eigen::MatrixXd v(2, 2);
    v << 0.2, 1.5, 1.5, 0.4;
    CHECK_THROWS_AS(StepGraphon(g2, v), ValidationError);
  }
  SUBCASE("symmetrization and warning flag") {
    Eigen::MatrixXd v(2, 2);
    v << 0.2, 0.5, 0.6, 0.4;
    const StepGraphon w(g2, v);
    CHECK(w.values()(0, 1) == doctest::Approx(0.55));
    CHECK(w.values()(0, 1) == w.values()(1, 0));
    CHECK(w.symmetrization_warning());

    Eigen::MatrixXd tiny(2, 2);
    tiny << 0.2, 0.5, 0.5 + 1e-15, 0.4;
    CHECK_FALSE(StepGraphon(g2, tiny).symmetrization_warning());
  }
  SUBCASE("kernel flag is honored") {
    Eigen::MatrixXd v(1, 1);
    v << 0.3;
    const StepGraphon w(Grid::uniform(1), v, GraphonMode::kernel);
    CHECK_FALSE(w.is_graphon());
  }
}

TEST_CASE("degree function") {
  CHECK(degree_function(StepGraphon::constant(0.5)).values()[0] == 0.5);

  const Grid g2({0.0, 0.5, 1.0});
  Eigen::MatrixXd id(2, 2);
  id << 1, 0, 0, 1;
  const Eigen::VectorXd d1 = degree_function(StepGraphon(g2, id)).values();
  CHECK(d1[0] == 0.5);
  CHECK(d1[1] == 0.5);

  Eigen::MatrixXd v(2, 2);
  v << 0.2, 0.8, 0.8, 0.4;
  const Eigen::VectorXd d2 = degree_function(StepGraphon(g2, v)).values();
  CHECK(d2[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d2[1] == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("degree invariants on random graphons") {
  const CounterRng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
    const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 9);
    const StepGraphon w = testgen::random_graphon(stream.derive(1), grid, 0.0, 1.0);
    const Eigen::VectorXd d = degree_function(w).values();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      CHECK(d[i] >= -1e-12);
      CHECK(d[i] <= 1.0 + 1e-12);
      // recompute by direct weighted sum
      double direct = 0.0;
      for (Eigen::Index j = 0; j < d.size(); ++j) {
        direct += w.values()(i, j) * grid.cell_measure(j);
      }
      CHECK(std::abs(d[i] - direct) <= 1e-14);
    }
  }
}

TEST_CASE("average graphon") {
  SUBCASE("step input on its own uniform grid is unchanged") {
    const CounterRng rng(7);
    const StepGraphon w = testgen::random_graphon(rng, Grid::uniform(6), 0.0, 1.0);
    const StepGraphon averaged = average_graphon(w, 6);
    CHECK(averaged.values() == w.values());
    CHECK(averaged.grid() == w.grid());
  }
  SUBCASE("double averaging is exactly idempotent") {
    const CounterRng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
      const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 7);
      const StepGraphon w = testgen::random_graphon(stream.derive(1), grid, 0.0, 1.0);
      const Eigen::Index n = 2 + trial % 5;
      const StepGraphon once = average_graphon(w, n);
      const StepGraphon twice = average_graphon(once, n);
      CHECK(twice.values() == once.values());
    }
  }
  SUBCASE("closed form for w(x,y) = xy at n = 2") {
    const StepGraphon w = average_graphon(analytic_graphon("product"), 2);
    CHECK(w.values()(0, 0) == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(w.values()(0, 1) == doctest::Approx(0.1875).epsilon(1e-12));
    CHECK(w.values()(1, 0) == doctest::Approx(0.1875).epsilon(1e-12));
    CHECK(w.values()(1, 1) == doctest::Approx(0.5625).epsilon(1e-12));
  }
  SUBCASE("constant graphon averages to itself") {
    const StepGraphon w = StepGraphon::constant(0.37);
    const StepGraphon averaged = average_graphon(w, 5);
    for (Eigen::Index i = 0; i < 5; ++i) {
      for (Eigen::Index j = 0; j < 5; ++j) {
        CHECK(averaged.values()(i, j) == doctest::Approx(0.37).epsilon(1e-15));
      }
    }
  }
  SUBCASE("averaged degree of xy vs analytic x/2") {
    const StepGraphon w4 = average_graphon(analytic_graphon("product"), 4);
    const double gap = sup_norm_gap_analytic(degree_function(w4),
                                             [](double x) { return x / 2.0; });
    CHECK(gap == doctest::Approx(0.0625).epsilon(1e-12));
  }
}

TEST_CASE("sup norm diff") {
  const Grid g2({0.0, 0.5, 1.0});
  const StepFunction f(g2, Eigen::Vector2d(0.5, 0.6));
  const StepFunction g = StepFunction::constant(0.5);
  CHECK(sup_norm_diff(f, f) == 0.0);
  CHECK(sup_norm_diff(f, g) == doctest::Approx(0.1).epsilon(1e-15));

  // metric properties on random triples over a fixed grid
  const CounterRng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
    const Grid grid = testgen::random_grid(stream.derive(0), 5);
    const StepFunction a = testgen::random_step_function(stream.derive(1), grid);
    const StepFunction b = testgen::random_step_function(stream.derive(2), grid);
    const StepFunction c = testgen::random_step_function(stream.derive(3), grid);
    CHECK(sup_norm_diff(a, b) == sup_norm_diff(b, a));
    CHECK(sup_norm_diff(a, c) <= sup_norm_diff(a, b) + sup_norm_diff(b, c) + 1e-15);
  }
}

TEST_CASE("connectivity") {
  CHECK(is_connected(StepGraphon::constant(1.0)));
  CHECK_FALSE(is_connected(StepGraphon::constant(0.0)));

  const Grid g2({0.0, 0.5, 1.0});
  Eigen::MatrixXd blocks(2, 2);
  blocks << 1, 0, 0, 1;
  CHECK_FALSE(is_connected(StepGraphon(g2, blocks)));

  Eigen::MatrixXd cross(2, 2);
  cross << 0, 1, 1, 0;
  const StepGraphon bipartite(g2, cross);
  CHECK(is_connected(bipartite));
  // oracle: the cross-integral condition over all 2-cell and 4-cell splits
  CHECK(testgen::connected_bruteforce(bipartite));
  CHECK(testgen::connected_bruteforce(bipartite.refined_to(Grid::uniform(4))));
  CHECK_FALSE(testgen::connected_bruteforce(StepGraphon(g2, blocks)));
}

TEST_CASE("disconnected graphon has a repeated zero Laplacian eigenvalue") {
  const CounterRng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
    // two blocks with no cross edges
    const Eigen::Index half = 2 + trial % 3;
    const Grid grid = Grid::uniform(2 * half);
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(2 * half, 2 * half);
    std::uint64_t counter = 0;
    for (Eigen::Index i = 0; i < 2 * half; ++i) {
      for (Eigen::Index j = i; j < 2 * half; ++j) {
        if ((i < half) == (j < half)) {
          const double v = 0.3 + 0.7 * stream.uniform01(counter++);
          values(i, j) = v;
          values(j, i) = v;
        }
      }
    }
    const StepGraphon w(grid, values);
    REQUIRE_FALSE(is_connected(w));
    const SpectralDecomposition dec = eigendecompose(discretize(w, OperatorKind::laplacian));
    CHECK(dec.eigenvalues[1] < 1e-10);
  }
}

TEST_CASE("content hash distinguishes graphons") {
  const StepGraphon a = StepGraphon::constant(0.5);
  const StepGraphon b = StepGraphon::constant(0.25);
  CHECK(content_hash(a) != content_hash(b));
  CHECK(content_hash(a) == content_hash(StepGraphon::constant(0.5)));
  CHECK(content_hash(a).size() == 16);
}

TEST_CASE("quadrature tolerance is honored") {
  // highly oscillatory but smooth integrand; quadrature must subdivide
  AnalyticGraphon g;
  g.id = "wavy";
  g.eval = [](double x, double y) {
    return 0.5 + 0.5 * std::sin(40.0 * x) * std::sin(40.0 * y);
  };
  const StepGraphon w = average_graphon(g, 3, 1e-10);
  // oracle: mean over [0,1/3)^2 of the integrand, antiderivative in closed form
  const auto anti = [](double a, double b) {
    return (std::cos(40.0 * a) - std::cos(40.0 * b)) / 40.0;
  };
  const double mean =
      (0.5 * (1.0 / 9.0) + 0.5 * anti(0.0, 1.0 / 3.0) * anti(0.0, 1.0 / 3.0)) * 9.0;
  CHECK(w.values()(0, 0) == doctest::Approx(mean).epsilon(1e-9));
}
