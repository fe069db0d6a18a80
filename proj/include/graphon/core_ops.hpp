#pragma once

#include <functional>
#include <string>

#include "graphon/step_function.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

// d(x) = integral of w(x,.) over [0,1]; exact for step data.
StepFunction degree_function(const StepGraphon& w);

// Connectivity of the cell graph (edge i~j, i != j, when w_ij > 0). A single
// cell counts as connected only when its diagonal value is positive, matching
// the measure-theoretic definition.
bool is_connected(const StepGraphon& w);

// Pointwise-evaluable graphon with optional closed-form degree data used for
// exact sup-norm comparisons. `degree_monotone` asserts d is monotone on every
// subinterval, so cell endpoints realize the sup.
struct AnalyticGraphon {
  std::string id;
  std::function<double(double, double)> eval;
  std::function<double(double)> degree;
  bool degree_monotone = false;
};

// Named closed forms: "product" (x*y) and "mean" ((x+y)/2).
AnalyticGraphon analytic_graphon(const std::string& id);

// Mean of w over each square of the uniform n-grid. Step inputs are averaged
// in closed form; a step input already on the uniform n-grid is returned
// unchanged, which makes averaging exactly idempotent.
StepGraphon average_graphon(const StepGraphon& w, Eigen::Index n);

// Analytic inputs go through adaptive quadrature (tensor Gauss rules with
// subdivision) with absolute tolerance `tol` on each cell mean.
StepGraphon average_graphon(const AnalyticGraphon& w, Eigen::Index n,
                            double tol = 1e-10);

// FNV-1a over the canonical byte representation (mode, breakpoints, values).
std::string content_hash(const StepGraphon& w);

}  // namespace graphon
