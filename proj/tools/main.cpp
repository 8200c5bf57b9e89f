#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "xc/common.hpp"

namespace {

struct Flags {
  std::uint64_t seed = 0;
  std::string graph, gadget, out, matrix, tree;
  std::size_t workers = 1, trials = 0;
  double tolerance = 0.0;
  bool exhaustive = false;
  int i = 3, alphabet = 2, length = 10, inputs = 100, edge_cap = 12;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "64-bit seed for every sampler");
  sub->add_option("--graph", f.graph, "builtin graph name or graph file");
  sub->add_option("--gadget", f.gadget, "main, negative-control, or a table file");
  sub->add_option("--out", f.out, "directory for report.json and summary.txt");
  sub->add_option("--workers", f.workers, "worker threads");
  sub->add_option("--tolerance", f.tolerance, "numeric or statistical tolerance");
  sub->add_option("--trials", f.trials, "samples or walks");
  sub->add_flag("--exhaustive", f.exhaustive, "enumerate instead of sampling where possible");
  sub->add_option("--i", f.i, "odd violation count for sampling");
  sub->add_option("--alphabet", f.alphabet, "CSP alphabet size");
  sub->add_option("--matrix", f.matrix, "identity:N, lifted:GRAPH, or a JSON/CSV matrix file");
  sub->add_option("--length", f.length, "KW input length");
  sub->add_option("--inputs", f.inputs, "number of seeded KW inputs");
  sub->add_option("--tree", f.tree, "node-scan or full-height");
  sub->add_option("--edge-cap", f.edge_cap, "largest |E| accepted by the LP");
}

xc::json config_from(CLI::App* sub, const std::string& command, const Flags& f) {
  xc::json c;
  c["command"] = command;
  auto set = [&](const char* flag, const char* key, const auto& value) {
    if (sub->count(flag) > 0) c[key] = value;
  };
  set("--seed", "seed", f.seed);
  set("--graph", "graph", f.graph);
  set("--gadget", "gadget", f.gadget);
  set("--out", "out", f.out);
  set("--workers", "workers", f.workers);
  set("--tolerance", "tolerance", f.tolerance);
  set("--trials", "trials", f.trials);
  set("--exhaustive", "exhaustive", f.exhaustive);
  set("--i", "i", f.i);
  set("--alphabet", "alphabet", f.alphabet);
  set("--matrix", "matrix", f.matrix);
  set("--length", "length", f.length);
  set("--inputs", "inputs", f.inputs);
  set("--tree", "tree", f.tree);
  set("--edge-cap", "edge_cap", f.edge_cap);
  return c;
}

int emit(const xc::cli::Outcome& o) {
  const auto& out = o.report["config"]["out"];
  if (out.is_null()) {
    std::cout << xc::cli::serialize(o.report);
    std::cerr << o.summary;
    return o.exit_code;
  }
  const std::filesystem::path dir = out.get<std::string>();
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "report.json") << xc::cli::serialize(o.report);
  std::ofstream(dir / "summary.txt") << o.summary;
  std::cout << o.summary;
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construction and verification toolkit for Tseitin extension-complexity objects"};
  app.set_version_flag("--version", std::string("xc ") + xc::cli::kVersion);
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<CLI::App*, std::string>> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const auto& [group, action] : xc::cli::commands()) {
    auto& g = groups[group];
    if (g == nullptr) {
      g = app.add_subcommand(group, group + " experiments");
      g->require_subcommand(1);
    }
    auto* leaf = g->add_subcommand(action);
    add_flags(leaf, flags);
    leaves.emplace_back(leaf, group + " " + action);
  }
  std::string report_path;
  auto* replay = app.add_subcommand("replay", "rerun a report's config and compare bytes");
  replay->add_option("report", report_path, "report.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : xc::cli::kUsageError;
  }

  try {
    if (replay->parsed()) {
      std::ifstream in(report_path);
      if (!in) throw xc::Error("cannot read " + report_path);
      std::stringstream buf;
      buf << in.rdbuf();
      const auto r = xc::cli::replay(buf.str());
      if (r.identical) {
        std::cout << "replay: identical (" << buf.str().size() << " bytes)\n";
        return xc::cli::kOk;
      }
      std::cout << "replay: differs at byte " << r.first_difference << '\n';
      return xc::cli::kVerificationFailure;
    }
    for (const auto& [leaf, name] : leaves) {
      if (leaf->parsed()) return emit(xc::cli::run(config_from(leaf, name, flags)));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return xc::cli::kUsageError;
  }
  return xc::cli::kUsageError;
}
