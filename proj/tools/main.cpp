#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "graphon/consistency.hpp"
#include "graphon/core_ops.hpp"
#include "graphon/cutnorm.hpp"
#include "graphon/errors.hpp"
#include "graphon/graph_bridge.hpp"
#include "graphon/io.hpp"
#include "graphon/operators.hpp"
#include "graphon/rng.hpp"
#include "graphon/sampling.hpp"
#include "graphon/version.hpp"

namespace {

using graphon::io::json;

void emit_error(const std::string& code, const std::string& message) {
  std::cerr << json{{"code", code}, {"message", message}}.dump() << '\n';
}

graphon::StepGraphon load_graphon(const std::string& path) {
  return graphon::io::step_graphon_from_json(graphon::io::load_json_file(path));
}

graphon::StepFunction load_function(const std::string& path) {
  return graphon::io::step_function_from_json(graphon::io::load_json_file(path));
}

void write_or_print(const std::optional<std::string>& out, const json& j) {
  if (out.has_value()) {
    graphon::io::save_json_file(*out, j);
  } else {
    std::cout << j.dump() << '\n';
  }
}

struct Options {
  std::string graphon_path;
  std::string analytic_id;
  std::string signal_path;
  std::string partition_path;
  std::string psi_path;
  std::string a_path;
  std::string b_path;
  std::string f_path;
  std::string g_path;
  std::string config_path;
  std::string kind = "laplacian";
  std::optional<std::string> out_path;
  std::optional<std::string> csv_path;
  double gamma = 0.0;
  int n = 0;
  std::optional<std::uint64_t> seed;
  bool exact = false;
  int restarts = 64;
  int threads = 0;  // accepted for interface compatibility; execution is sequential
};

int run(int argc, char** argv) {
  CLI::App app{"graphon sampling toolkit"};
  app.require_subcommand(1);
  Options opt;

  app.add_flag_callback("--version", [] {
    std::cout << "graphon " << graphon::kVersion << " (rng " << graphon::kRngAlgorithm
              << ")\n";
    std::exit(0);
  });
  app.add_option("--threads", opt.threads, "worker cap; results are identical for any value");

  auto* info = app.add_subcommand("info", "summarize a step graphon");
  info->add_option("--graphon", opt.graphon_path)->required();

  auto* degree = app.add_subcommand("degree", "degree function of a graphon");
  degree->add_option("--graphon", opt.graphon_path)->required();
  degree->add_option("--out", [&opt](const auto& v) { opt.out_path = v[0]; return true; }, "");

  auto* average = app.add_subcommand("average", "average a graphon over the uniform n-grid");
  average->add_option("--graphon", opt.graphon_path);
  average->add_option("--analytic", opt.analytic_id);
  average->add_option("--n", opt.n)->required();
  average->add_option("--out", [&opt](const auto& v) { opt.out_path = v[0]; return true; }, "");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of a graphon operator");
  spectrum->add_option("--graphon", opt.graphon_path)->required();
  spectrum->add_option("--kind", opt.kind);
  spectrum->add_option("--out", [&opt](const auto& v) { opt.out_path = v[0]; return true; }, "");

  auto* pw = app.add_subcommand("pw-project", "spectral projection onto PW_gamma");
  pw->add_option("--graphon", opt.graphon_path)->required();
  pw->add_option("--gamma", opt.gamma)->required();
  pw->add_option("--signal", opt.signal_path)->required();
  pw->add_option("--out", [&opt](const auto& v) { opt.out_path = v[0]; return true; }, "");

  auto* sample = app.add_subcommand("sample-graph", "draw a w-random graph");
  sample->add_option("--graphon", opt.graphon_path)->required();
  sample->add_option("--n", opt.n)->required();
  sample->add_option("--seed", [&opt](const auto& v) {
    opt.seed = std::stoull(v[0]);
    return true;
  }, "");
  sample->add_option("--out", [&opt](const auto& v) { opt.out_path = v[0]; return true; }, "");

  auto* hom = app.add_subcommand("homdensity", "homomorphism density t(F, .)");
  hom->add_option("--f", opt.f_path)->required();
  hom->add_option("--g", opt.g_path);
  hom->add_option("--graphon", opt.graphon_path);

  auto* cutnorm = app.add_subcommand("cutnorm", "cut norm of a graphon difference");
  cutnorm->add_option("--a", opt.a_path)->required();
  cutnorm->add_option("--b", opt.b_path)->required();
  cutnorm->add_flag("--exact", opt.exact);
  cutnorm->add_option("--restarts", opt.restarts);
  cutnorm->add_option("--seed", [&opt](const auto& v) {
    opt.seed = std::stoull(v[0]);
    return true;
  }, "");
  cutnorm->add_option("--out", [&opt](const auto& v) { opt.out_path = v[0]; return true; }, "");

  auto* frame = app.add_subcommand("framebounds", "frame constants for PW_gamma");
  frame->add_option("--graphon", opt.graphon_path)->required();
  frame->add_option("--partition", opt.partition_path)->required();
  frame->add_option("--psi", opt.psi_path);
  frame->add_option("--gamma", opt.gamma)->required();
  frame->add_option("--out", [&opt](const auto& v) { opt.out_path = v[0]; return true; }, "");

  auto* consistency = app.add_subcommand("consistency-run", "consistency experiment");
  consistency->add_option("--config", opt.config_path)->required();
  consistency->add_option("--out", [&opt](const auto& v) { opt.out_path = v[0]; return true; }, "");
  consistency->add_option("--csv", [&opt](const auto& v) { opt.csv_path = v[0]; return true; }, "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  }

  if (opt.threads < 0) {
    emit_error("usage", "--threads must be nonnegative");
    return 2;
  }

  if (info->parsed()) {
    const graphon::StepGraphon w = load_graphon(opt.graphon_path);
    json out{{"cells", w.cell_count()},
             {"mode", w.is_graphon() ? "graphon" : "kernel"},
             {"min_value", w.values().minCoeff()},
             {"max_value", w.values().maxCoeff()}};
    if (w.is_graphon()) {
      const Eigen::VectorXd d = graphon::degree_function(w).values();
      out["degree_min"] = d.minCoeff();
      out["degree_max"] = d.maxCoeff();
    }
    std::cout << out.dump() << '\n';
    return 0;
  }

  if (degree->parsed()) {
    const graphon::StepGraphon w = load_graphon(opt.graphon_path);
    write_or_print(opt.out_path, graphon::io::to_json(graphon::degree_function(w)));
    return 0;
  }

  if (average->parsed()) {
    if (opt.graphon_path.empty() == opt.analytic_id.empty()) {
      emit_error("usage", "average needs exactly one of --graphon and --analytic");
      return 2;
    }
    if (opt.n < 1) {
      emit_error("usage", "--n must be positive");
      return 2;
    }
    const graphon::StepGraphon averaged =
        opt.graphon_path.empty()
            ? graphon::average_graphon(graphon::analytic_graphon(opt.analytic_id), opt.n)
            : graphon::average_graphon(load_graphon(opt.graphon_path), opt.n);
    write_or_print(opt.out_path, graphon::io::to_json(averaged));
    return 0;
  }

  if (spectrum->parsed()) {
    const graphon::StepGraphon w = load_graphon(opt.graphon_path);
    const graphon::OperatorKind kind = graphon::operator_kind_from_string(opt.kind);
    const graphon::SpectralDecomposition dec =
        graphon::eigendecompose(graphon::discretize(w, kind));
    const std::string csv = graphon::io::spectrum_csv(dec.eigenvalues);
    if (opt.out_path.has_value()) {
      graphon::io::save_text_file(*opt.out_path, csv);
    } else {
      std::cout << csv;
    }
    return 0;
  }

  if (pw->parsed()) {
    const graphon::StepGraphon w = load_graphon(opt.graphon_path);
    const graphon::StepFunction f = load_function(opt.signal_path);
    write_or_print(opt.out_path, graphon::io::to_json(graphon::pw_project(w, opt.gamma, f)));
    return 0;
  }

  if (sample->parsed()) {
    if (!opt.seed.has_value()) {
      emit_error("usage", "sample-graph requires --seed");
      return 2;
    }
    if (opt.n < 1) {
      emit_error("usage", "--n must be positive");
      return 2;
    }
    const graphon::StepGraphon w = load_graphon(opt.graphon_path);
    const graphon::Graph g = graphon::sample_w_random_graph(w, opt.n, *opt.seed);
    write_or_print(opt.out_path, graphon::io::to_json(g));
    return 0;
  }

  if (hom->parsed()) {
    if (opt.g_path.empty() == opt.graphon_path.empty()) {
      emit_error("usage", "homdensity needs exactly one of --g and --graphon");
      return 2;
    }
    const graphon::Graph f = graphon::io::graph_from_json(graphon::io::load_json_file(opt.f_path));
    if (!opt.g_path.empty()) {
      const graphon::Graph g = graphon::io::graph_from_json(graphon::io::load_json_file(opt.g_path));
      const graphon::Rational t = graphon::homomorphism_density(f, g);
      std::cout << json{{"value", t.to_double()}, {"numerator", t.num}, {"denominator", t.den}}
                       .dump()
                << '\n';
    } else {
      const graphon::StepGraphon w = load_graphon(opt.graphon_path);
      std::cout << json{{"value", graphon::homomorphism_density(f, w)}}.dump() << '\n';
    }
    return 0;
  }

  if (cutnorm->parsed()) {
    const graphon::StepGraphon a = load_graphon(opt.a_path);
    const graphon::StepGraphon b = load_graphon(opt.b_path);
    const graphon::StepGraphon diff = graphon::kernel_difference(a, b);
    graphon::CutNormResult result = [&] {
      if (opt.exact) return graphon::cut_norm_exact(diff);
      if (!opt.seed.has_value()) {
        throw graphon::ValidationError("usage", "cutnorm without --exact requires --seed");
      }
      return graphon::cut_norm_lower(diff, opt.restarts, *opt.seed);
    }();
    write_or_print(opt.out_path, graphon::io::to_json(result));
    return 0;
  }

  if (frame->parsed()) {
    const graphon::StepGraphon w = load_graphon(opt.graphon_path);
    const graphon::Partition p =
        graphon::io::partition_from_json(graphon::io::load_json_file(opt.partition_path));
    std::optional<std::vector<graphon::StepFunction>> psi;
    if (!opt.psi_path.empty()) {
      psi = graphon::io::psi_list_from_json(graphon::io::load_json_file(opt.psi_path));
    }
    const graphon::SamplingSystem sys = graphon::build_sampling_system(w, p, psi);
    write_or_print(opt.out_path, graphon::io::to_json(graphon::frame_bounds(sys, opt.gamma)));
    return 0;
  }

  if (consistency->parsed()) {
    const std::filesystem::path config_path(opt.config_path);
    const graphon::ConsistencyConfig config = graphon::io::consistency_config_from_json(
        graphon::io::load_json_file(config_path), config_path.parent_path());
    const graphon::ConsistencyReport report = graphon::run_consistency(config);
    write_or_print(opt.out_path, graphon::io::to_json(report));
    if (opt.csv_path.has_value()) {
      graphon::io::save_text_file(*opt.csv_path, graphon::io::consistency_csv(report));
    }
    return 0;
  }

  emit_error("usage", "unknown subcommand");
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const graphon::ValidationError& e) {
    emit_error(e.code(), e.what());
    return 2;
  } catch (const graphon::Error& e) {
    emit_error(e.code(), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
}
