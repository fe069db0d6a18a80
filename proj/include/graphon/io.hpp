#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "graphon/consistency.hpp"
#include "graphon/cutnorm.hpp"
#include "graphon/graph_bridge.hpp"
#include "graphon/sampling.hpp"
#include "graphon/step_function.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon::io {

using nlohmann::json;

// Shortest representation that round-trips the double exactly.
std::string format_double(double x);

json to_json(const StepFunction& f);
json to_json(const StepGraphon& w);
json to_json(const Graph& g);          // 1-based vertices, edges sorted i < j
json to_json(const Partition& p);      // 1-based part ids
json to_json(const CutNormResult& r);
json to_json(const FrameBoundReport& r);
json to_json(const ConsistencyReport& r);

StepFunction step_function_from_json(const json& j);
StepGraphon step_graphon_from_json(const json& j);
Graph graph_from_json(const json& j);
Partition partition_from_json(const json& j);
std::vector<StepFunction> psi_list_from_json(const json& j);

// Config files may reference step-graphon/partition files; relative paths
// resolve against `base_dir`.
ConsistencyConfig consistency_config_from_json(const json& j,
                                               const std::filesystem::path& base_dir);

json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const json& j);
void save_text_file(const std::filesystem::path& path, const std::string& text);

std::string spectrum_csv(const Eigen::VectorXd& eigenvalues);
std::string consistency_csv(const ConsistencyReport& report);

}  // namespace graphon::io
