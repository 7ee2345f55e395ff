// bloch: command-line runner for the experiments and the acceptance suite.
//
//   bloch run cfg.json
//   bloch counterexample --function '{"variant":"blaschke_geometric","K":12}' --param m_max=8
//   bloch suite lemmas --J 14
//
// Exit codes: 0 clean, 1 bad config or usage, 2 results carry DIVERGENT or
// NO_PLATEAU (the CSV is still written), 3 a suite criterion failed.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bloch/acceptance.hpp"
#include "bloch/config.hpp"
#include "bloch/experiment.hpp"
#include "bloch/report.hpp"

namespace fs = std::filesystem;
using namespace bloch;

namespace {

struct Globals {
  std::string config;
  std::string out;
  int threads = 0;
  std::optional<int> J;
  std::optional<double> alpha;
  std::optional<double> beta;
};

struct OpArgs {
  std::string id;
  std::string function;
  std::string region;
  std::string svg;
  std::vector<std::string> params;
};

std::string out_dir() {
  const char* d = std::getenv("BLOCH_OUT_DIR");
  return d ? d : "";
}

// key=value with the value read as JSON when it parses, else as a string, so
// --param eps=0.1, --param 'points=[[0.3,0.2]]' and --param flavor=radial all work.
void apply_param(Json& params, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got " + kv);
  const std::string key = kv.substr(0, eq), text = kv.substr(eq + 1);
  Json value = Json::parse(text, nullptr, false);
  params[key] = value.is_discarded() ? Json(text) : value;
}

Json parse_json_arg(const std::string& what, const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError(what + " is not valid JSON: " + text);
  return j;
}

ExperimentConfig build_config(const Globals& g, const OpArgs& a, const std::string& op) {
  ExperimentConfig cfg = g.config.empty() ? ExperimentConfig{} : load_experiment(g.config);
  if (!op.empty()) cfg.op = op;
  if (cfg.op.empty()) throw ConfigError("config has no \"op\"");
  if (!a.id.empty()) cfg.id = a.id;
  if (!a.function.empty()) {
    cfg.function_json = parse_json_arg("--function", a.function);
    cfg.function = parse_function(cfg.function_json);
  }
  if (!a.region.empty()) cfg.region_json = parse_json_arg("--region", a.region);
  for (const auto& kv : a.params) apply_param(cfg.params, kv);
  if (g.J) cfg.quad.boundary_depth = *g.J;
  if (g.alpha) cfg.params["alpha"] = *g.alpha;
  if (g.beta) cfg.params["beta"] = *g.beta;
  if (!a.svg.empty()) cfg.svg_path = a.svg;

  // CSV: --out, then the config, then $BLOCH_OUT_DIR/<id>.csv, else stdout
  if (!g.out.empty()) {
    cfg.csv_path = g.out;
  } else if (cfg.csv_path.empty() && !out_dir().empty()) {
    cfg.csv_path = (fs::path(out_dir()) / (cfg.id + ".csv")).string();
  }
  if (cfg.op == "level-set" && cfg.svg_path.empty()) {
    if (!cfg.csv_path.empty()) {
      cfg.svg_path = fs::path(cfg.csv_path).replace_extension(".svg").string();
    } else {
      const fs::path dir = out_dir().empty() ? fs::path(".") : fs::path(out_dir());
      cfg.svg_path = (dir / (cfg.id + ".svg")).string();
    }
  }
  return cfg;
}

int run_op(const Globals& g, const OpArgs& a, const std::string& op) {
  const ExperimentConfig cfg = build_config(g, a, op);
  const ExperimentOutcome res = run_experiment(cfg);
  std::ostream& info = cfg.csv_path.empty() ? std::cerr : std::cout;
  if (cfg.csv_path.empty()) {
    write_csv(std::cout, res.rows);
  } else {
    write_csv(cfg.csv_path, res.rows);
    info << "wrote " << res.rows.size() << " rows to " << cfg.csv_path << '\n';
  }
  if (!res.summary.empty()) {
    info << res.summary;
    if (res.summary.back() != '\n') info << '\n';
  }
  if (res.flags) info << "flags: " << flag_text(res.flags) << '\n';
  return exit_code_for(res.flags);
}

int run_suite(const Globals& g, const std::string& name, const std::vector<int>& only) {
  QuadratureSpec spec;
  if (g.J) spec.boundary_depth = *g.J;
  const std::vector<int> ids = only.empty() ? suite_criteria(name) : only;
  std::vector<CsvRow> rows;
  int failed = 0;
  for (int id : ids) {
    const CriterionReport r = run_criterion(id, spec);
    std::cout << format_report(r) << std::endl;
    failed += r.pass ? 0 : 1;
    rows.insert(rows.end(), r.rows.begin(), r.rows.end());
  }
  std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria passed\n";
  std::string csv = g.out;
  if (csv.empty() && !out_dir().empty()) csv = (fs::path(out_dir()) / ("suite-" + name + ".csv")).string();
  if (!csv.empty()) write_csv(csv, rows);
  return failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bloch-space closure experiments: norms, tents, kernel split, lemmas, counterexample"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--config", g.config, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "CSV output path (default: $BLOCH_OUT_DIR/<id>.csv or stdout)");
  app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--J", g.J, "boundary depth J (truncation radius 1 - 2^-J)")
      ->check(CLI::Range(1, 40));
  app.add_option("--alpha", g.alpha, "tent aperture");
  app.add_option("--beta", g.beta, "kernel weight exponent");

  OpArgs args;
  std::string op_name;
  for (const std::string& op : experiment_ops()) {
    CLI::App* sub = app.add_subcommand(op, "run op " + op);
    sub->add_option("--id", args.id, "experiment id written to every row");
    sub->add_option("--function", args.function, "function descriptor as JSON");
    sub->add_option("--region", args.region, "region descriptor as JSON");
    sub->add_option("--param,-p", args.params, "operation parameter key=value (repeatable)");
    if (op == "level-set") sub->add_option("--svg", args.svg, "SVG output path");
    sub->callback([&op_name, op] { op_name = op; });
  }

  std::string run_path;
  CLI::App* run = app.add_subcommand("run", "run the op named in a config file");
  run->add_option("config", run_path, "JSON experiment config")->check(CLI::ExistingFile);
  run->add_option("--param,-p", args.params, "override a parameter key=value (repeatable)");

  std::string suite_name = "all";
  std::vector<int> only;
  CLI::App* suite = app.add_subcommand("suite", "run an acceptance group");
  suite->add_option("name", suite_name, "lemmas, theorem, counterexample, norms or all")
      ->check(CLI::IsMember({"lemmas", "theorem", "counterexample", "norms", "all"}));
  suite->add_option("--criterion", only, "run only these criteria (1..8)")
      ->check(CLI::Range(1, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    if (*suite) return run_suite(g, suite_name, only);
    if (*run) {
      if (!run_path.empty()) g.config = run_path;
      if (g.config.empty()) throw ConfigError("run needs a config file");
      return run_op(g, args, "");
    }
    return run_op(g, args, op_name);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
