#include <doctest.h>

#include "graphon/errors.hpp"
#include "graphon/io.hpp"
#include "support/generators.hpp"

using namespace graphon;

TEST_CASE("step function json round-trip is exact") {
  const CounterRng rng(70);
  for (int trial = 0; trial < 20; ++trial) {
    const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
    const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 8);
    const StepFunction f = testgen::random_step_function(stream.derive(1), grid);
    const auto text = io::to_json(f).dump();
    const StepFunction back = io::step_function_from_json(io::json::parse(text));
    CHECK(back.grid() == f.grid());
    CHECK(back.values() == f.values());
  }
}

TEST_CASE("step graphon json round-trip is exact") {
  const CounterRng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const CounterRng stream = rng.derive(static_cast<std::uint64_t>(trial));
    const Grid grid = testgen::random_grid(stream.derive(0), 2 + trial % 6);
    const StepGraphon w = trial % 2 == 0
                              ? testgen::random_graphon(stream.derive(1), grid, 0.0, 1.0)
                              : testgen::random_kernel(stream.derive(1), grid);
    const auto text = io::to_json(w).dump();
    const StepGraphon back = io::step_graphon_from_json(io::json::parse(text));
    CHECK(back.grid() == w.grid());
    CHECK(back.values() == w.values());
    CHECK(back.mode() == w.mode());
  }
}

TEST_CASE("graph json uses sorted 1-based edges") {
  const Graph g(4, {{2, 0}, {3, 1}});
  const io::json j = io::to_json(g);
  CHECK(j.at("n") == 4);
  CHECK(j.at("edges")[0][0] == 1);
  CHECK(j.at("edges")[0][1] == 3);
  CHECK(j.at("edges")[1][0] == 2);
  CHECK(j.at("edges")[1][1] == 4);
  const Graph back = io::graph_from_json(j);
  CHECK(back.edges() == g.edges());
}

TEST_CASE("partition json round-trip") {
  const Partition p(Grid::uniform(4), {0, 1, 0, 2});
  const Partition back = io::partition_from_json(io::to_json(p));
  CHECK(back.part_of() == p.part_of());
  CHECK(back.grid() == p.grid());
}

TEST_CASE("malformed json is a validation error") {
  CHECK_THROWS_AS(io::step_graphon_from_json(io::json::parse("{}")), ValidationError);
  CHECK_THROWS_AS(io::step_function_from_json(io::json::parse("[1,2]")), ValidationError);
  CHECK_THROWS_AS(io::graph_from_json(io::json::parse("{\"n\": 2}")), ValidationError);
  CHECK_THROWS_AS(
      io::step_graphon_from_json(io::json::parse(
          R"({"breakpoints":[0,1],"values":[[0.5]],"mode":"nonsense"})")),
      ValidationError);
}

TEST_CASE("format_double round-trips") {
  for (const double x : {0.1, 1.0 / 3.0, 0.6000000000000001, 1e-300, 0.0}) {
    CHECK(std::stod(io::format_double(x)) == x);
  }
}

TEST_CASE("consistency config parsing") {
  const io::json j = io::json::parse(R"({
    "limit": {"analytic": "product"},
    "sequence": "averaged",
    "indices": [4, 8],
    "partition": {"equipartition": 4},
    "gamma": {"fraction": 0.4},
    "trials": 5,
    "seed": 3,
    "reference_cells": 32
  })");
  const ConsistencyConfig config = io::consistency_config_from_json(j, ".");
  CHECK(std::get<AnalyticGraphon>(config.limit).id == "product");
  CHECK(config.indices == std::vector<int>{4, 8});
  CHECK(config.partition.part_count() == 4);
  CHECK(config.gamma_fraction == 0.4);
  CHECK(config.reference_cells == 32);

  io::json missing_seed = j;
  missing_seed.erase("seed");
  CHECK_THROWS_AS(io::consistency_config_from_json(missing_seed, "."), ValidationError);
}
