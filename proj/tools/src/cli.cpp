#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv_output.hpp"
#include "emcel/errors.hpp"
#include "experiments.hpp"
#include "run_config.hpp"

namespace emcel::cli {

using nlohmann::json;

namespace {

struct Flags {
  std::string config_path;
  std::string measure_path;
  std::map<std::string, std::string> model;     // keys inside "model"
  std::map<std::string, std::string> top;       // top-level keys
  std::string strategy;
  std::string tol;
  bool exact = false;
  bool raw = false;
  bool timestamp = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->set_help_flag("--help", "Print this help message and exit");
  sub->add_option("--config", f.config_path, "JSON config document; flags override its fields");
  sub->add_option("--measure", f.measure_path, "JSON file describing a custom speed measure");
  sub->add_option("--model", f.model["name"], "bm, gbm, sticky, reflected-sticky or cantor");
  sub->add_option("--sigma", f.model["sigma"], "volatility parameter");
  sub->add_option("--theta", f.model["theta"], "stickiness parameter");
  sub->add_option("--n", f.model["n"], "Cantor level (0 selects ceil(log2(1/h)))");
  sub->add_flag("--exact", f.exact, "use the exact Cantor distribution in the speed measure");
  sub->add_option("--strategy", f.strategy, "preferred, emcel, weak-euler, sticky, gbm, bm or cantor");
  sub->add_option("--tol", f.tol, "bisection tolerance");
  sub->add_option("--h", f.top["h"], "time step(s): 0.001, 0.1,0.01 or 2^-6..2^-10");
  sub->add_option("--t", f.top["t"], "time horizon");
  sub->add_option("--paths", f.top["n_paths"], "number of Monte Carlo paths");
  sub->add_option("--seed", f.top["seed"], "master seed");
  sub->add_option("--start", f.top["start"], "starting point");
  sub->add_option("--payoff", f.top["payoff"], "indicator, mean or raw");
  sub->add_option("--z", f.top["z"], "indicator threshold");
  sub->add_option("--grid", f.top["grid"], "evaluation grid lo:hi:count");
  sub->add_option("--K", f.top["K"], "compact interval lo:hi for the Condition A diagnostic");
  sub->add_option("--k-points", f.top["k_points"], "grid points on K");
  sub->add_option("--out", f.top["output"], "output file (default: standard output)");
  sub->add_flag("--raw", f.raw, "write unfolded values for reflecting models");
  sub->add_flag("--timestamp", f.timestamp, "record the wall-clock time in the header");
}

/// Numeric flag text becomes a JSON number so the echoed config is canonical.
json scalar(const std::string& text) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  std::uint64_t u = 0;
  if (auto [p, ec] = std::from_chars(first, last, u); ec == std::errc() && p == last) return u;
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc() && p == last && std::isfinite(d)) return d;
  return text;
}

json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError(field, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(field, std::string("invalid JSON: ") + e.what());
  }
}

json build_document(const std::string& experiment, const Flags& f) {
  json doc = f.config_path.empty() ? json::object() : read_json_file(f.config_path, "config");
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  if (doc.contains("experiment") && doc["experiment"] != experiment)
    throw ConfigError("experiment", "config names '" + doc["experiment"].dump() + "' but the subcommand is '" +
                                        experiment + "'");
  doc["experiment"] = experiment;

  if (!f.measure_path.empty()) {
    doc["measure"] = read_json_file(f.measure_path, "measure");
    doc.erase("model");
  }
  bool model_flag = f.exact;
  for (const auto& [key, value] : f.model) model_flag = model_flag || !value.empty();
  if (model_flag) {
    json model = doc.contains("model") ? doc["model"] : json::object();
    if (model.is_string()) model = json{{"name", model}};
    for (const auto& [key, value] : f.model) {
      if (!value.empty()) model[key] = key == "name" ? json(value) : scalar(value);
    }
    if (f.exact) model["exact"] = true;
    doc["model"] = model;
    doc.erase("measure");
  }
  if (!f.strategy.empty() || !f.tol.empty()) {
    json s = doc.contains("strategy") ? doc["strategy"] : json{{"name", "preferred"}};
    if (s.is_string()) s = json{{"name", s}};
    if (!f.strategy.empty()) s["name"] = f.strategy;
    if (!f.tol.empty()) s["tol"] = scalar(f.tol);
    doc["strategy"] = s;
  }
  for (const auto& [key, value] : f.top) {
    if (!value.empty()) doc[key] = scalar(value);
  }
  if (f.raw) doc["variant"] = "raw";
  if (f.timestamp) doc["timestamp"] = true;
  return doc;
}

int run_check(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: file: cannot open '" << path << "'\n";
    return 1;
  }
  const CheckResult r = check_csv(in);
  if (!r.ok) {
    err << "error: " << path << ": " << r.message << '\n';
    return 1;
  }
  out << "ok: " << r.rows << " rows\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coin-tossing Markov chain approximations of one-dimensional diffusions"};
  app.require_subcommand(1);
  Flags flags;
  std::map<std::string, CLI::App*> subs;
  for (const char* name : {"paths", "scalefactor", "cdf", "rate", "conda"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub, flags);
    subs[name] = sub;
  }
  subs["paths"]->description("simulate chain trajectories");
  subs["scalefactor"]->description("tabulate a_h(y) and a_h(y)/sqrt(h) on a grid");
  subs["cdf"]->description("empirical distribution function at time t with the reference law");
  subs["rate"]->description("Monte Carlo errors over a list of h and the fitted log-log slope");
  subs["conda"]->description("sup-ratio diagnostic of the exit-time accuracy on a compact K");
  std::string check_path;
  CLI::App* check = app.add_subcommand("check", "validate column counts and the header hash of an output file");
  check->add_option("file", check_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  if (check->parsed()) return run_check(check_path, out, err);

  std::string experiment;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) experiment = name;
  }

  try {
    const RunConfig cfg = parse_run_config(build_document(experiment, flags));
    const CsvTable table = run_experiment(cfg, err);
    if (cfg.output_path.empty()) {
      table.write(out);
    } else {
      std::ofstream file(cfg.output_path, std::ios::binary);
      if (!file) throw ConfigError("output", "cannot write '" + cfg.output_path + "'");
      table.write(file);
      if (!file) throw ConfigError("output", "write failed for '" + cfg.output_path + "'");
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const MismatchError& e) {
    err << "error: strategy: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    err << "error: numeric failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace emcel::cli
