#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <set>

#include "emcel/cantor.hpp"
#include "emcel/errors.hpp"
#include "emcel/measure_parts.hpp"

namespace emcel::cli {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

/// Plain decimal, "inf"/"-inf", or a power of two written as 2^k.
std::optional<double> parse_number_text(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s.rfind("2^", 0) == 0) {
    int k = 0;
    const char* first = s.data() + 2;
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return std::ldexp(1.0, k);
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

double number(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    if (auto v = parse_number_text(j.get<std::string>())) return *v;
  }
  throw ConfigError(field, "expected a number, got " + j.dump());
}

double positive(const json& j, const std::string& field) {
  const double v = number(j, field);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be positive and finite");
  return v;
}

std::string string_value(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string, got " + j.dump());
  return j.get<std::string>();
}

std::uint64_t unsigned_value(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = trim(j.get<std::string>());
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return v;
  }
  throw ConfigError(field, "expected a nonnegative integer, got " + j.dump());
}

void check_keys(const json& obj, const std::string& field, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(field, "expected an object");
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!names.count(key)) throw ConfigError(field.empty() ? key : field + "." + key, "unknown key");
  }
}

template <class T>
T with_field(const std::string& field, const std::function<T()>& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(field, e.what());
  } catch (const MismatchError& e) {
    throw ConfigError(field, e.what());
  }
}

ModelSpec parse_model(const json& j) {
  json obj = j.is_string() ? json{{"name", j}} : j;
  check_keys(obj, "model", {"name", "sigma", "theta", "n", "exact"});
  if (!obj.contains("name")) throw ConfigError("model.name", "missing");
  const std::string name = string_value(obj["name"], "model.name");
  auto sigma = [&] { return obj.contains("sigma") ? positive(obj["sigma"], "model.sigma") : 1.0; };
  auto theta = [&] { return obj.contains("theta") ? positive(obj["theta"], "model.theta") : 1.0; };

  ModelSpec spec;
  if (name == "bm" || name == "brownian") {
    spec = model::BrownianMotion{sigma()};
  } else if (name == "gbm") {
    spec = model::GeometricBM{sigma()};
  } else if (name == "sticky") {
    spec = model::StickyBM{sigma(), theta()};
  } else if (name == "reflected-sticky") {
    spec = model::ReflectedStickyBM{sigma(), theta()};
  } else if (name == "cantor") {
    model::CantorBM c;
    if (obj.contains("n")) {
      const auto n = unsigned_value(obj["n"], "model.n");
      if (n > static_cast<std::uint64_t>(cantor::kMaxLevel))
        throw ConfigError("model.n", "must be at most " + std::to_string(cantor::kMaxLevel));
      c.n_level = static_cast<int>(n);
    }
    if (obj.contains("exact")) {
      if (!obj["exact"].is_boolean()) throw ConfigError("model.exact", "expected true or false");
      c.exact = obj["exact"].get<bool>();
    }
    spec = c;
  } else {
    throw ConfigError("model.name", "unknown model '" + name + "' (bm, gbm, sticky, reflected-sticky, cantor)");
  }
  with_field<int>("model", [&] {
    validate(spec);
    return 0;
  });
  return spec;
}

Strategy parse_strategy(const json& j, const std::optional<ModelSpec>& model, double& tol) {
  json obj = j.is_string() ? json{{"name", j}} : j;
  check_keys(obj, "strategy", {"name", "sigma", "theta", "n", "tol"});
  if (!obj.contains("name")) throw ConfigError("strategy.name", "missing");
  const std::string name = string_value(obj["name"], "strategy.name");
  if (obj.contains("tol")) tol = positive(obj["tol"], "strategy.tol");

  double model_sigma = 1.0;
  double model_theta = 1.0;
  int model_n = 0;
  if (model) {
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, model::CantorBM>) {
            model_n = m.n_level;
          } else {
            model_sigma = m.sigma;
            if constexpr (requires { m.theta; }) model_theta = m.theta;
          }
        },
        *model);
  }
  const double sigma = obj.contains("sigma") ? positive(obj["sigma"], "strategy.sigma") : model_sigma;
  const double theta = obj.contains("theta") ? positive(obj["theta"], "strategy.theta") : model_theta;

  if (name == "emcel") return strategy::Emcel{};
  if (name == "weak-euler") return strategy::WeakEuler{};
  if (name == "sticky") return strategy::StickyClosedForm{sigma, theta};
  if (name == "gbm") return strategy::GbmClosedForm{sigma};
  if (name == "bm") return strategy::BmClosedForm{sigma};
  if (name == "cantor") {
    int n = model_n;
    if (obj.contains("n")) {
      const auto v = unsigned_value(obj["n"], "strategy.n");
      if (v < 1 || v > static_cast<std::uint64_t>(cantor::kMaxLevel))
        throw ConfigError("strategy.n", "must be between 1 and " + std::to_string(cantor::kMaxLevel));
      n = static_cast<int>(v);
    }
    return strategy::Cantor{n};
  }
  throw ConfigError("strategy.name", "unknown strategy '" + name + "' (preferred, emcel, weak-euler, sticky, gbm, bm, cantor)");
}

Payoff parse_payoff(const json& j, double z) {
  const std::string name = string_value(j, "payoff");
  if (name == "indicator") return Payoff::indicator(z);
  if (name == "mean") return Payoff::mean();
  if (name == "raw") return Payoff::raw();
  throw ConfigError("payoff", "unknown payoff '" + name + "' (indicator, mean, raw)");
}

std::pair<double, double> parse_k(const json& j) {
  double lo = 0.0;
  double hi = 0.0;
  if (j.is_array() && j.size() == 2) {
    lo = number(j[0], "K[0]");
    hi = number(j[1], "K[1]");
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("K", "expected 'lo:hi'");
    auto a = parse_number_text(s.substr(0, colon));
    auto b = parse_number_text(s.substr(colon + 1));
    if (!a || !b) throw ConfigError("K", "expected 'lo:hi' with numeric bounds");
    lo = *a;
    hi = *b;
  } else {
    throw ConfigError("K", "expected 'lo:hi' or [lo, hi]");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) throw ConfigError("K", "needs finite lo <= hi");
  return {lo, hi};
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Paths:
      return "paths";
    case Experiment::ScaleFactorTable:
      return "scalefactor";
    case Experiment::Cdf:
      return "cdf";
    case Experiment::RateStudy:
      return "rate";
    case Experiment::ConditionA:
      return "conda";
  }
  return "paths";
}

Experiment experiment_from_string(const std::string& s) {
  if (s == "paths") return Experiment::Paths;
  if (s == "scalefactor") return Experiment::ScaleFactorTable;
  if (s == "cdf") return Experiment::Cdf;
  if (s == "rate") return Experiment::RateStudy;
  if (s == "conda") return Experiment::ConditionA;
  throw ConfigError("experiment", "unknown experiment '" + s + "' (paths, scalefactor, cdf, rate, conda)");
}

std::vector<double> Grid::points() const {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  return out;
}

std::vector<double> parse_h_list(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("h", "empty");
  std::vector<double> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const std::string a = trim(s.substr(0, dots));
    const std::string b = trim(s.substr(dots + 2));
    auto exponent = [](const std::string& part) -> std::optional<int> {
      if (part.rfind("2^", 0) != 0) return std::nullopt;
      int k = 0;
      auto [ptr, ec] = std::from_chars(part.data() + 2, part.data() + part.size(), k);
      if (ec != std::errc() || ptr != part.data() + part.size()) return std::nullopt;
      return k;
    };
    const auto ka = exponent(a);
    const auto kb = exponent(b);
    if (!ka || !kb) throw ConfigError("h", "range must look like 2^-6..2^-10");
    const int step = *kb >= *ka ? 1 : -1;
    for (int k = *ka;; k += step) {
      out.push_back(std::ldexp(1.0, k));
      if (k == *kb) break;
    }
  } else {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const auto comma = s.find(',', pos);
      const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      auto v = parse_number_text(item);
      if (!v) throw ConfigError("h", "cannot parse '" + trim(item) + "' as a number");
      out.push_back(*v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  for (double h : out) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("h", "values must be positive and finite");
  }
  return out;
}

Grid parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw ConfigError("grid", "expected 'lo:hi:count'");
  auto lo = parse_number_text(text.substr(0, c1));
  auto hi = parse_number_text(text.substr(c1 + 1, c2 - c1 - 1));
  const std::string count_text = trim(text.substr(c2 + 1));
  std::size_t count = 0;
  auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (!lo || !hi || ec != std::errc() || ptr != count_text.data() + count_text.size())
    throw ConfigError("grid", "expected 'lo:hi:count' with numeric bounds and an integer count");
  if (!std::isfinite(*lo) || !std::isfinite(*hi) || !(*lo <= *hi)) throw ConfigError("grid", "needs finite lo <= hi");
  if (count == 0) throw ConfigError("grid", "count must be positive");
  if (count > 10'000'000) throw ConfigError("grid", "count is too large");
  return {*lo, *hi, count};
}

SpeedMeasure parse_measure(const json& doc, const std::string& field) {
  check_keys(doc, field, {"space", "density", "atoms", "singular"});

  double left = -kInf;
  double right = kInf;
  BoundaryBehavior lb = BoundaryBehavior::Inaccessible;
  BoundaryBehavior rb = BoundaryBehavior::Inaccessible;
  if (doc.contains("space")) {
    const json& sp = doc["space"];
    const std::string f = field + ".space";
    check_keys(sp, f, {"left", "right", "left_behavior", "right_behavior"});
    if (sp.contains("left")) left = number(sp["left"], f + ".left");
    if (sp.contains("right")) right = number(sp["right"], f + ".right");
    auto behavior = [&](const char* key) {
      const std::string name = string_value(sp[key], f + "." + key);
      return with_field<BoundaryBehavior>(f + "." + key, [&] { return boundary_behavior_from_string(name); });
    };
    if (sp.contains("left_behavior")) lb = behavior("left_behavior");
    if (sp.contains("right_behavior")) rb = behavior("right_behavior");
  }
  if (std::isinf(left) && lb != BoundaryBehavior::Inaccessible)
    throw ConfigError(field + ".space.left_behavior", "an infinite endpoint must be inaccessible");
  if (std::isinf(right) && rb != BoundaryBehavior::Inaccessible)
    throw ConfigError(field + ".space.right_behavior", "an infinite endpoint must be inaccessible");
  const StateSpace space = with_field<StateSpace>(field + ".space", [&] { return StateSpace(left, right, lb, rb); });

  std::vector<PartPtr> parts;
  if (!doc.contains("density")) throw ConfigError(field + ".density", "missing");
  {
    const json& d = doc["density"];
    const std::string f = field + ".density";
    if (!d.is_object() || !d.contains("kind")) throw ConfigError(f + ".kind", "missing");
    const std::string kind = string_value(d["kind"], f + ".kind");
    if (kind == "constant") {
      check_keys(d, f, {"kind", "value"});
      if (!d.contains("value")) throw ConfigError(f + ".value", "missing");
      const double v = number(d["value"], f + ".value");
      if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(f + ".value", "must be nonnegative and finite");
      parts.push_back(PiecewiseConstantDensity::constant(v));
    } else if (kind == "piecewise-constant") {
      check_keys(d, f, {"kind", "base", "segments"});
      const double base = d.contains("base") ? number(d["base"], f + ".base") : 0.0;
      std::vector<PiecewiseConstantDensity::Segment> segments;
      if (d.contains("segments")) {
        if (!d["segments"].is_array()) throw ConfigError(f + ".segments", "expected an array");
        for (std::size_t i = 0; i < d["segments"].size(); ++i) {
          const json& s = d["segments"][i];
          const std::string sf = f + ".segments[" + std::to_string(i) + "]";
          if (!s.is_array() || s.size() != 3) throw ConfigError(sf, "expected [left, right, value]");
          segments.push_back({number(s[0], sf), number(s[1], sf), number(s[2], sf)});
        }
      }
      parts.push_back(with_field<PartPtr>(
          f, [&] { return std::make_shared<PiecewiseConstantDensity>(base, std::move(segments)); }));
    } else if (kind == "catalog") {
      check_keys(d, f, {"kind", "model", "sigma", "theta"});
      if (!d.contains("model")) throw ConfigError(f + ".model", "missing");
      json m = {{"name", d["model"]}};
      if (d.contains("sigma")) m["sigma"] = d["sigma"];
      if (d.contains("theta")) m["theta"] = d["theta"];
      const ModelSpec spec = parse_model(m);
      if (std::holds_alternative<model::CantorBM>(spec))
        throw ConfigError(f + ".model", "the cantor model has no density expression; use singular");
      parts.push_back(speed_measure(spec).parts().front());
    } else {
      throw ConfigError(f + ".kind", "unknown density kind '" + kind + "' (constant, piecewise-constant, catalog)");
    }
  }

  if (doc.contains("atoms")) {
    const json& a = doc["atoms"];
    const std::string f = field + ".atoms";
    if (!a.is_array()) throw ConfigError(f, "expected an array of [position, mass]");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string af = f + "[" + std::to_string(i) + "]";
      if (!a[i].is_array() || a[i].size() != 2) throw ConfigError(af, "expected [position, mass]");
      atoms.push_back({number(a[i][0], af), number(a[i][1], af)});
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.position < y.position; });
    if (!atoms.empty()) parts.push_back(with_field<PartPtr>(f, [&] { return std::make_shared<AtomList>(atoms); }));
  }

  if (doc.contains("singular")) {
    const std::string f = field + ".singular";
    const std::string name = string_value(doc["singular"], f);
    if (name == "cantor_exact") {
      parts.push_back(std::make_shared<cantor::CantorSingularPart>());
    } else if (name.rfind("cantor_level_", 0) == 0) {
      const std::string digits = name.substr(13);
      int n = -1;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || n < 0 || n > cantor::kMaxLevel)
        throw ConfigError(f, "level in '" + name + "' must be an integer in [0, " +
                                 std::to_string(cantor::kMaxLevel) + "]");
      parts.push_back(cantor::level_density(n));
    } else {
      throw ConfigError(f, "unknown singular part '" + name + "' (cantor_exact, cantor_level_<n>)");
    }
  }

  return with_field<SpeedMeasure>(field, [&] { return SpeedMeasure(space, std::move(parts)); });
}

RunConfig parse_run_config(const json& doc) {
  check_keys(doc, "", {"experiment", "model", "measure", "strategy", "h", "t", "n_paths", "seed", "start", "payoff",
                       "z", "grid", "K", "k_points", "variant", "output", "timestamp"});
  RunConfig cfg;
  // where the output goes does not affect the results, so it is not echoed or hashed
  cfg.document = doc;
  cfg.document.erase("output");
  if (!doc.contains("experiment")) throw ConfigError("experiment", "missing");
  cfg.experiment = experiment_from_string(string_value(doc["experiment"], "experiment"));

  if (doc.contains("model") && doc.contains("measure"))
    throw ConfigError("model", "give either a catalog model or a custom measure, not both");
  if (doc.contains("model")) cfg.model = parse_model(doc["model"]);
  if (doc.contains("measure")) cfg.measure = parse_measure(doc["measure"]);
  if (!cfg.model && !cfg.measure) throw ConfigError("model", "missing (or give a custom measure)");

  if (doc.contains("strategy")) {
    const json& s = doc["strategy"];
    const bool preferred = (s.is_string() && s.get<std::string>() == "preferred") ||
                           (s.is_object() && s.contains("name") && s["name"] == "preferred");
    if (!preferred) cfg.strategy = parse_strategy(s, cfg.model, cfg.strategy_tol);
  }
  if (!cfg.strategy && !cfg.model) cfg.strategy = strategy::Emcel{};

  if (!doc.contains("h")) throw ConfigError("h", "missing");
  {
    const json& h = doc["h"];
    if (h.is_array()) {
      for (std::size_t i = 0; i < h.size(); ++i) cfg.h_list.push_back(positive(h[i], "h[" + std::to_string(i) + "]"));
    } else if (h.is_number()) {
      cfg.h_list.push_back(positive(h, "h"));
    } else {
      cfg.h_list = parse_h_list(string_value(h, "h"));
    }
    if (cfg.h_list.empty()) throw ConfigError("h", "empty");
  }

  if (doc.contains("t")) cfg.t = positive(doc["t"], "t");
  cfg.n_paths = cfg.experiment == Experiment::Paths ? 5 : 100000;
  if (doc.contains("n_paths")) {
    cfg.n_paths = unsigned_value(doc["n_paths"], "n_paths");
    if (cfg.n_paths == 0) throw ConfigError("n_paths", "must be positive");
  }
  if (doc.contains("seed")) cfg.seed = unsigned_value(doc["seed"], "seed");
  if (doc.contains("start")) cfg.start = number(doc["start"], "start");

  const double z = doc.contains("z") ? number(doc["z"], "z") : 0.1;
  cfg.payoff = doc.contains("payoff") ? parse_payoff(doc["payoff"], z) : Payoff::indicator(z);

  if (doc.contains("grid")) cfg.grid = parse_grid(string_value(doc["grid"], "grid"));
  if (doc.contains("K")) cfg.k_interval = parse_k(doc["K"]);
  if (doc.contains("k_points")) {
    const auto kp = unsigned_value(doc["k_points"], "k_points");
    if (kp == 0 || kp > 1'000'000) throw ConfigError("k_points", "must be between 1 and 1000000");
    cfg.k_points = static_cast<int>(kp);
  }
  if (doc.contains("variant")) {
    const std::string v = string_value(doc["variant"], "variant");
    if (v != "folded" && v != "raw") throw ConfigError("variant", "must be 'folded' or 'raw'");
    cfg.folded = v == "folded";
  }
  if (doc.contains("output")) cfg.output_path = string_value(doc["output"], "output");
  if (doc.contains("timestamp")) {
    if (!doc["timestamp"].is_boolean()) throw ConfigError("timestamp", "expected true or false");
    cfg.timestamp = doc["timestamp"].get<bool>();
  }

  switch (cfg.experiment) {
    case Experiment::Paths:
    case Experiment::Cdf:
      if (cfg.h_list.size() != 1) throw ConfigError("h", "this experiment takes a single h");
      if (cfg.experiment == Experiment::Cdf && !cfg.grid) throw ConfigError("grid", "missing (lo:hi:count)");
      break;
    case Experiment::ScaleFactorTable:
      if (!cfg.grid) throw ConfigError("grid", "missing (lo:hi:count)");
      break;
    case Experiment::RateStudy:
      if (cfg.h_list.size() < 2) throw ConfigError("h", "a rate study needs at least two h values");
      if (!cfg.model) throw ConfigError("model", "a rate study needs a catalog model with a reference value");
      if (!reference_value(*cfg.model, cfg.payoff, cfg.t))
        throw ConfigError("payoff", "no reference value is known for this model and payoff");
      break;
    case Experiment::ConditionA:
      if (!cfg.k_interval) throw ConfigError("K", "missing compact interval (lo:hi)");
      for (std::size_t i = 1; i < cfg.h_list.size(); ++i) {
        if (!(cfg.h_list[i] < cfg.h_list[i - 1])) throw ConfigError("h", "must be strictly decreasing");
      }
      break;
  }
  return cfg;
}

}  // namespace emcel::cli
