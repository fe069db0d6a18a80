#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graphon/step_graphon.hpp"

namespace graphon {

// Simple undirected graph; vertices are 0-based internally, edges stored
// sorted with i < j.
class Graph {
 public:
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_edge(int u, int v) const {
    return u != v && adjacency_[static_cast<std::size_t>(u) * n_ + v] != 0;
  }

  static Graph complete(int n);
  static Graph empty(int n);
  static Graph path(int n);

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<unsigned char> adjacency_;
};

// {0,1}-valued step graphon w_G on the uniform |V|-grid; depends on the
// vertex labeling.
StepGraphon graph_to_graphon(const Graph& g);

// Two-stage w-random graph: latent positions x_i uniform on [0,1], then an
// independent Bernoulli(w(x_i, x_j)) coin per pair i<j. Per-pair randomness is
// derived from (seed, i, j), so the draw is order-independent and reproducible.
Graph sample_w_random_graph(const StepGraphon& w, int n, std::uint64_t seed);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// hom(F,G) / |V(G)|^{|V(F)|}, exact. Guard: |V(F)| <= 6 and the denominator
// must fit in 63 bits.
Rational homomorphism_density(const Graph& f, const Graph& g);

// Multilinear cell sum over assignments V(F) -> cells. Guard: |V(F)| <= 5 and
// at most 64 cells. {0,1}-valued graphons on uniform grids take an exact
// integer-counting path, so densities of embedded graphs match the rational
// computation bit for bit.
double homomorphism_density(const Graph& f, const StepGraphon& w);

}  // namespace graphon
