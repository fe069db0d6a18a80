#include "graphon/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "graphon/errors.hpp"

namespace graphon::io {

std::string format_double(double x) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json breakpoints_to_json(const Grid& grid) {
  json out = json::array();
  for (const double b : grid.breakpoints()) out.push_back(b);
  return out;
}

Eigen::VectorXd vector_from_json(const json& j, const char* what) {
  if (!j.is_array()) {
    throw ValidationError("bad-json", std::string(what) + " must be an array");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& x : j) {
    if (!x.is_number()) {
      throw ValidationError("bad-json", std::string(what) + " must hold numbers");
    }
    out[i++] = x.get<double>();
  }
  return out;
}

Grid grid_from_json(const json& j) {
  const auto it = j.find("breakpoints");
  if (it == j.end()) {
    throw ValidationError("bad-json", "missing breakpoints");
  }
  const Eigen::VectorXd bps = vector_from_json(*it, "breakpoints");
  return Grid(std::vector<double>(bps.data(), bps.data() + bps.size()));
}

}  // namespace

json to_json(const StepFunction& f) {
  return json{{"breakpoints", breakpoints_to_json(f.grid())},
              {"values", vector_to_json(f.values())}};
}

json to_json(const StepGraphon& w) {
  json values = json::array();
  for (Eigen::Index i = 0; i < w.cell_count(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < w.cell_count(); ++j) row.push_back(w.values()(i, j));
    values.push_back(std::move(row));
  }
  return json{{"breakpoints", breakpoints_to_json(w.grid())},
              {"values", std::move(values)},
              {"mode", w.is_graphon() ? "graphon" : "kernel"}};
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) {
    edges.push_back(json::array({u + 1, v + 1}));
  }
  return json{{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

json to_json(const Partition& p) {
  json part_of = json::array();
  for (const int part : p.part_of()) part_of.push_back(part + 1);
  return json{{"breakpoints", breakpoints_to_json(p.grid())},
              {"part_of", std::move(part_of)}};
}

json to_json(const CutNormResult& r) {
  json s = json::array();
  for (const Eigen::Index c : r.s.cells()) s.push_back(c);
  json t = json::array();
  for (const Eigen::Index c : r.t.cells()) t.push_back(c);
  return json{{"value", r.value},
              {"S_cells", std::move(s)},
              {"T_cells", std::move(t)},
              {"method", r.method}};
}

json to_json(const FrameBoundReport& r) {
  json parts = json::array();
  for (const auto& row : r.parts) {
    parts.push_back(json{{"measure", row.measure},
                         {"delta_j", row.delta_j},
                         {"theta_j", row.theta_j}});
  }
  json out{{"gamma", r.gamma},
           {"feasible", r.feasible},
           {"upper", r.upper},
           {"delta", r.delta},
           {"theta", r.theta},
           {"parts", std::move(parts)}};
  out["lower"] = r.lower.has_value() ? json(*r.lower) : json(nullptr);
  out["optimal_epsilon"] = r.optimal_eps.has_value() ? json(*r.optimal_eps) : json(nullptr);
  return out;
}

json to_json(const ConsistencyReport& r) {
  json limit{{"hash", r.limit_hash}, {"cells", r.limit_cells}};
  limit["reference_cells"] =
      r.reference_cells.has_value() ? json(*r.reference_cells) : json(nullptr);
  limit["reference_bias_lop"] =
      r.reference_bias_lop.has_value() ? json(*r.reference_bias_lop) : json(nullptr);
  limit["reference_bias_degree"] =
      r.reference_bias_degree.has_value() ? json(*r.reference_bias_degree) : json(nullptr);

  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"n", row.n},
                        {"cutnorm", row.cutnorm},
                        {"cutnorm_method", row.cutnorm_method},
                        {"deg_gap", row.deg_gap},
                        {"lop_gap", row.lop_gap},
                        {"threshold_met", row.threshold_met},
                        {"trials", row.trials},
                        {"pass_rate", row.pass_rate},
                        {"min_margin", row.min_margin}});
  }
  json out{{"limit", std::move(limit)},
           {"constants",
            json{{"delta", r.delta},
                 {"theta", r.theta},
                 {"gamma", r.gamma},
                 {"epsilon", r.epsilon},
                 {"epsilon_prime", r.epsilon_prime},
                 {"target_constant", r.target_constant}}},
           {"rows", std::move(rows)}};
  out["certified_n"] = r.certified_n.has_value() ? json(*r.certified_n) : json(nullptr);
  return out;
}

StepFunction step_function_from_json(const json& j) {
  if (!j.is_object() || !j.contains("values")) {
    throw ValidationError("bad-json", "step function needs breakpoints and values");
  }
  return StepFunction(grid_from_json(j), vector_from_json(j.at("values"), "values"));
}

StepGraphon step_graphon_from_json(const json& j) {
  if (!j.is_object() || !j.contains("values") || !j.contains("mode")) {
    throw ValidationError("bad-json", "step graphon needs breakpoints, values and mode");
  }
  const Grid grid = grid_from_json(j);
  const auto& values = j.at("values");
  if (!values.is_array() || values.size() != static_cast<std::size_t>(grid.cell_count())) {
    throw ValidationError("bad-json", "value matrix does not match grid");
  }
  Eigen::MatrixXd matrix(grid.cell_count(), grid.cell_count());
  Eigen::Index i = 0;
  for (const auto& row : values) {
    const Eigen::VectorXd r = vector_from_json(row, "value row");
    if (r.size() != grid.cell_count()) {
      throw ValidationError("bad-json", "value matrix must be square");
    }
    matrix.row(i++) = r.transpose();
  }
  const std::string mode = j.at("mode").get<std::string>();
  if (mode != "graphon" && mode != "kernel") {
    throw ValidationError("bad-json", "mode must be 'graphon' or 'kernel'");
  }
  return StepGraphon(grid, std::move(matrix),
                     mode == "graphon" ? GraphonMode::graphon : GraphonMode::kernel);
}

Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw ValidationError("bad-json", "graph needs n and edges");
  }
  const int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw ValidationError("bad-json", "edges must be pairs");
    }
    edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
  }
  return Graph(n, std::move(edges));
}

Partition partition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("part_of")) {
    throw ValidationError("bad-json", "partition needs breakpoints and part_of");
  }
  const Grid grid = grid_from_json(j);
  std::vector<int> part_of;
  for (const auto& p : j.at("part_of")) {
    part_of.push_back(p.get<int>() - 1);
  }
  return Partition(grid, std::move(part_of));
}

std::vector<StepFunction> psi_list_from_json(const json& j) {
  if (!j.is_array()) {
    throw ValidationError("bad-json", "psi must be an array of step functions");
  }
  std::vector<StepFunction> out;
  for (const auto& f : j) out.push_back(step_function_from_json(f));
  return out;
}

ConsistencyConfig consistency_config_from_json(const json& j,
                                               const std::filesystem::path& base_dir) {
  ConsistencyConfig config;
  if (!j.is_object() || !j.contains("limit")) {
    throw ValidationError("bad-json", "config needs a limit graphon spec");
  }
  const json& limit = j.at("limit");
  if (limit.contains("analytic")) {
    config.limit = analytic_graphon(limit.at("analytic").get<std::string>());
  } else if (limit.contains("file")) {
    const std::filesystem::path p = base_dir / limit.at("file").get<std::string>();
    config.limit = step_graphon_from_json(load_json_file(p));
  } else if (limit.contains("graphon")) {
    config.limit = step_graphon_from_json(limit.at("graphon"));
  } else {
    throw ValidationError("bad-json", "limit must name an analytic form, file or inline graphon");
  }

  const std::string kind = j.value("sequence", "averaged");
  if (kind == "averaged") {
    config.sequence = SequenceKind::averaged;
  } else if (kind == "w-random") {
    config.sequence = SequenceKind::w_random;
  } else {
    throw ValidationError("bad-json", "sequence must be 'averaged' or 'w-random'");
  }

  if (!j.contains("indices")) {
    throw ValidationError("bad-json", "config needs indices");
  }
  for (const auto& n : j.at("indices")) config.indices.push_back(n.get<int>());

  if (!j.contains("partition")) {
    throw ValidationError("bad-json", "config needs a partition");
  }
  const json& partition = j.at("partition");
  if (partition.contains("equipartition")) {
    config.partition = Partition::equipartition(partition.at("equipartition").get<int>());
  } else if (partition.contains("file")) {
    const std::filesystem::path p = base_dir / partition.at("file").get<std::string>();
    config.partition = partition_from_json(load_json_file(p));
  } else {
    config.partition = partition_from_json(partition);
  }

  if (!j.contains("gamma")) {
    throw ValidationError("bad-json", "config needs gamma");
  }
  const json& gamma = j.at("gamma");
  if (gamma.is_number()) {
    config.gamma = gamma.get<double>();
  } else if (gamma.is_object() && gamma.contains("fraction")) {
    config.gamma_fraction = gamma.at("fraction").get<double>();
  } else {
    throw ValidationError("bad-json", "gamma must be a number or {\"fraction\": f}");
  }

  if (j.contains("psi") && !j.at("psi").is_null()) {
    config.psi = psi_list_from_json(j.at("psi"));
  }
  config.trials = j.value("trials", 50);
  if (!j.contains("seed")) {
    throw ValidationError("bad-json", "config needs a seed");
  }
  config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("epsilon_prime") && !j.at("epsilon_prime").is_null()) {
    config.epsilon_prime = j.at("epsilon_prime").get<double>();
  }
  config.reference_cells = j.value("reference_cells", Eigen::Index{512});
  config.cutnorm_restarts = j.value("cutnorm_restarts", 64);
  config.reference_bias = j.value("reference_bias", true);
  return config;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("io", "cannot open file: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("bad-json", std::string("malformed JSON: ") + e.what());
  }
  return j;
}

void save_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("io", "cannot write file: " + path.string());
  }
  out << j.dump(2) << '\n';
}

void save_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("io", "cannot write file: " + path.string());
  }
  out << text;
}

std::string spectrum_csv(const Eigen::VectorXd& eigenvalues) {
  std::string out = "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(eigenvalues[i]);
    out += '\n';
  }
  return out;
}

std::string consistency_csv(const ConsistencyReport& report) {
  std::string out = "n,cutnorm,cutnorm_method,deg_gap,Lop_gap,pass_rate\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_double(row.cutnorm);
    out += ',';
    out += row.cutnorm_method;
    out += ',';
    out += format_double(row.deg_gap);
    out += ',';
    out += format_double(row.lop_gap);
    out += ',';
    out += format_double(row.pass_rate);
    out += '\n';
  }
  return out;
}

}  // namespace graphon::io
