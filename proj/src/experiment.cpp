// Copyright 2026 The hardctrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hardctrl/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "hardctrl/problems.hpp"

namespace hardctrl {

using nlohmann::json;

namespace {

// Maps byte offsets and key paths back to source lines for diagnostics.
class LineLocator {
 public:
  explicit LineLocator(std::string_view text) : text_(text) {}

  std::size_t line_at(std::size_t offset) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) line += text_[i] == '\n';
    return line;
  }

  // Follows quoted tokens in order, each searched after the previous match.
  std::size_t line_of(std::initializer_list<std::string_view> tokens) const {
    std::size_t pos = 0;
    std::size_t found = std::string_view::npos;
    for (auto tok : tokens) {
      const std::string quoted = "\"" + std::string(tok) + "\"";
      const std::size_t at = text_.find(quoted, pos);
      if (at == std::string_view::npos) break;
      found = at;
      pos = at + quoted.size();
    }
    return found == std::string_view::npos ? 0 : line_at(found);
  }

 private:
  std::string_view text_;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) { throw ConfigError(line, msg); }

double number_or_fail(const json& v, std::size_t line, const std::string& what) {
  if (!v.is_number()) fail(line, what + " must be a number");
  return v.get<double>();
}

std::size_t count_or_fail(const json& v, std::size_t line, const std::string& what,
                          std::size_t min_value) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value)) {
    fail(line, what + " must be an integer >= " + std::to_string(min_value));
  }
  return v.get<std::size_t>();
}

void apply_params(OptimizerConfig& c, const json& params, const LineLocator& loc,
                  std::string_view anchor) {
  if (!params.is_object()) fail(loc.line_of({anchor, "params"}), "params must be an object");
  for (const auto& [key, v] : params.items()) {
    const std::size_t line = loc.line_of({anchor, "params", key});
    auto num = [&] { return number_or_fail(v, line, key); };
    auto count = [&](std::size_t min_value) { return count_or_fail(v, line, key, min_value); };
    if (key == "max_iterations") c.max_iterations = count(1);
    else if (key == "stall_window") c.stall_window = count(1);
    else if (key == "stall_epsilon") c.stall_epsilon = num();
    else if (key == "init_low") c.init_low = num();
    else if (key == "init_high") c.init_high = num();
    else if (key == "population") c.population = count(1);
    else if (key == "simplex_step") c.simplex_step = num();
    else if (key == "armijo_c") c.armijo_c = num();
    else if (key == "backtrack_shrink") c.backtrack_shrink = num();
    else if (key == "krotov_alpha") c.krotov_alpha = num();
    else if (key == "ga_mutation_rate") c.ga_mutation_rate = num();
    else if (key == "de_mutation") c.de_mutation = num();
    else if (key == "de_crossover") c.de_crossover = num();
    else if (key == "pso_inertia") c.pso_inertia = num();
    else if (key == "pso_cognitive") c.pso_cognitive = num();
    else if (key == "pso_social") c.pso_social = num();
    else if (key == "pso_constriction") c.pso_constriction = num();
    else if (key == "pso_canonical_random") {
      if (!v.is_boolean()) fail(line, "pso_canonical_random must be true or false");
      c.pso_canonical_random = v.get<bool>();
    } else {
      fail(line, "unknown parameter '" + key + "'");
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    fail(loc.line_of({anchor, "params"}), e.what());
  }
}

Algorithm algorithm_or_fail(const json& v, std::size_t line) {
  if (!v.is_string()) fail(line, "algorithm id must be a string");
  const auto a = parse_algorithm(v.get<std::string>());
  if (!a) fail(line, "unknown algorithm '" + v.get<std::string>() + "'");
  return *a;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ExperimentCase parse_case(const json& node, const json& defaults, std::size_t line) {
  ExperimentCase c;
  auto field = [&](const char* key) -> const json* {
    if (node.contains(key)) return &node.at(key);
    if (defaults.contains(key)) return &defaults.at(key);
    return nullptr;
  };
  const json* problem = field("problem");
  if (!problem || !problem->is_string()) fail(line, "case needs a \"problem\" string");
  c.problem = problem->get<std::string>();
  if (c.problem != "qutrit" && c.problem != "cnot") {
    fail(line, "unknown problem '" + c.problem +
         "' (expected qutrit or cnot)");
  }
  const json* t = field("T");
  if (!t) fail(line, "case needs \"T\"");
  if (t->is_string()) {
    c.horizon_text = t->get<std::string>();
    try {
      c.horizon = parse_horizon(c.horizon_text);
    } catch (const std::invalid_argument& e) {
      fail(line, e.what());
    }
  } else {
    c.horizon = number_or_fail(*t, line, "T");
    c.horizon_text = format_number(c.horizon);
  }
  if (!(c.horizon > 0.0)) fail(line, "T must be positive");
  const json* k = field("K");
  if (!k) fail(line, "case needs \"K\"");
  c.bins = count_or_fail(*k, line, "K", 1);
  if (node.contains("label")) {
    if (!node.at("label").is_string()) fail(line, "label must be a string");
    c.label = node.at("label").get<std::string>();
  } else {
    c.label = c.problem + "_T" + c.horizon_text + "_K" + std::to_string(c.bins);
  }
  return c;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

std::size_t ExperimentConfig::runs_for(const AlgorithmEntry& entry) const {
  if (entry.runs) return *entry.runs;
  return is_greedy(entry.config.algorithm) ? runs_greedy : runs_evolutionary;
}

double parse_horizon(std::string_view text) {
  std::string_view body = text;
  double scale = 1.0;
  if (body.size() >= 2 && body.substr(body.size() - 2) == "pi") {
    body.remove_suffix(2);
    scale = std::numbers::pi;
    if (body.empty()) return scale;
  }
  double v = 0.0;
  const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
  if (res.ec != std::errc{} || res.ptr != body.data() + body.size()) {
    throw std::invalid_argument("cannot parse T value '" + std::string(text) +
                                "' (expected a number or '<x>pi')");
  }
  return v * scale;
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  const LineLocator loc(text);
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(loc.line_at(e.byte == 0 ? 0 : e.byte - 1), std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail(1, "top level must be a JSON object");

  static const char* kKnown[] = {"name",   "problem",  "T",           "K",
                                 "cases",  "algorithms", "R_greedy",  "R_evolutionary",
                                 "L_t",    "base_seed", "workers",    "output",
                                 "export", "repeated_short_runs"};
  for (const auto& [key, v] : root.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) fail(loc.line_of({key}), "unknown key '" + key + "'");
  }

  ExperimentConfig cfg;
  if (root.contains("name")) {
    if (!root["name"].is_string()) fail(loc.line_of({"name"}), "name must be a string");
    cfg.name = root["name"].get<std::string>();
  }
  if (root.contains("R_greedy")) {
    cfg.runs_greedy = count_or_fail(root["R_greedy"], loc.line_of({"R_greedy"}), "R_greedy", 1);
  }
  if (root.contains("R_evolutionary")) {
    cfg.runs_evolutionary =
        count_or_fail(root["R_evolutionary"], loc.line_of({"R_evolutionary"}), "R_evolutionary", 1);
  }
  if (root.contains("L_t")) cfg.threshold = number_or_fail(root["L_t"], loc.line_of({"L_t"}), "L_t");
  if (root.contains("base_seed")) {
    cfg.base_seed = count_or_fail(root["base_seed"], loc.line_of({"base_seed"}), "base_seed", 0);
  }
  if (root.contains("workers")) {
    cfg.workers = count_or_fail(root["workers"], loc.line_of({"workers"}), "workers", 0);
  }
  if (root.contains("output")) {
    if (!root["output"].is_string()) fail(loc.line_of({"output"}), "output must be a string");
    cfg.output_dir = root["output"].get<std::string>();
  }
  if (root.contains("export")) {
    const auto& ex = root["export"];
    const std::size_t line = loc.line_of({"export"});
    if (!ex.is_array()) fail(line, "export must be an array of \"csv\"/\"json\"");
    cfg.export_csv = cfg.export_json = false;
    for (const auto& f : ex) {
      if (f == "csv") cfg.export_csv = true;
      else if (f == "json") cfg.export_json = true;
      else fail(line, "export formats are \"csv\" and \"json\"");
    }
  }

  if (root.contains("cases")) {
    const auto& cases = root["cases"];
    const std::size_t line = loc.line_of({"cases"});
    if (!cases.is_array() || cases.empty()) fail(line, "cases must be a nonempty array");
    for (std::size_t i = 0; i < cases.size(); ++i) {
      if (!cases[i].is_object()) fail(line, "each case must be an object");
      cfg.cases.push_back(parse_case(cases[i], root, line + i));
    }
  } else {
    cfg.cases.push_back(parse_case(json::object(), root, loc.line_of({"problem"})));
  }

  if (!root.contains("algorithms")) fail(0, "missing \"algorithms\" list");
  const auto& algs = root["algorithms"];
  const std::size_t algs_line = loc.line_of({"algorithms"});
  if (!algs.is_array()) fail(algs_line, "algorithms must be an array");
  if (algs.empty()) fail(algs_line, "algorithms list is empty");
  for (const auto& entry : algs) {
    AlgorithmEntry e;
    if (entry.is_string()) {
      const std::string id = entry.get<std::string>();
      e.config = default_config(algorithm_or_fail(entry, loc.line_of({"algorithms", id})));
    } else if (entry.is_object() && entry.contains("id")) {
      const std::string id = entry["id"].is_string() ? entry["id"].get<std::string>() : "";
      const std::size_t line = loc.line_of({"algorithms", id});
      e.config = default_config(algorithm_or_fail(entry["id"], line ? line : algs_line));
      for (const auto& [key, v] : entry.items()) {
        if (key == "id") continue;
        if (key == "runs") {
          e.runs = count_or_fail(v, loc.line_of({"algorithms", id, "runs"}), "runs", 1);
        } else if (key == "params") {
          apply_params(e.config, v, loc, id);
        } else {
          fail(loc.line_of({"algorithms", id, key}), "unknown algorithm key '" + key + "'");
        }
      }
    } else {
      fail(algs_line, "algorithm entries must be id strings or {\"id\": ...} objects");
    }
    cfg.algorithms.push_back(std::move(e));
  }

  if (root.contains("repeated_short_runs")) {
    const auto& s = root["repeated_short_runs"];
    const std::size_t line = loc.line_of({"repeated_short_runs"});
    if (!s.is_object() || !s.contains("algorithm")) {
      fail(line, "repeated_short_runs needs an \"algorithm\"");
    }
    ShortRunStudy study;
    study.config = default_config(algorithm_or_fail(s["algorithm"], line));
    for (const auto& [key, v] : s.items()) {
      if (key == "algorithm") continue;
      if (key == "repetitions") study.repetitions = count_or_fail(v, line, key, 1);
      else if (key == "iterations_cap") study.iterations_cap = count_or_fail(v, line, key, 1);
      else if (key == "params") apply_params(study.config, v, loc, "repeated_short_runs");
      else fail(loc.line_of({"repeated_short_runs", key}), "unknown key '" + key + "'");
    }
    cfg.short_runs = study;
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

std::string config_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<CaseResult> run_experiment(const ExperimentConfig& config,
                                       std::string_view config_text, std::ostream& log) {
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);

  auto open = [](const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
    return out;
  };

  json manifest = {{"artifact", "hardctrl"},
                   {"version", kArtifactVersion},
                   {"name", config.name},
                   {"config_hash", config_hash(config_text)},
                   {"base_seed", config.base_seed},
                   {"L_t", config.threshold},
                   {"cases", json::array()}};

  std::vector<CaseResult> results;
  for (const auto& ec : config.cases) {
    const auto problem =
        std::make_shared<const ControlProblem>(make_problem(ec.problem, ec.horizon, ec.bins));
    const Objective obj = make_control_objective(problem);
    const fs::path dir = config.output_dir / ec.label;
    fs::create_directories(dir);

    CaseResult result{ec, {}, std::nullopt};
    json case_manifest = {{"label", ec.label},
                          {"problem", ec.problem},
                          {"T", ec.horizon},
                          {"K", ec.bins},
                          {"algorithms", json::array()}};

    for (const auto& entry : config.algorithms) {
      const std::string id(algorithm_id(entry.config.algorithm));
      const std::size_t runs = config.runs_for(entry);
      log << "[" << ec.label << "] " << id << ": " << runs << " runs" << std::endl;
      const auto records =
          run_suite(obj, entry.config, {runs, config.base_seed, config.threshold, config.workers});
      result.reports.push_back(summarize(records, config.threshold, ec.problem, id));
      const auto& rep = result.reports.back();
      log << "  median " << rep.median << "  best " << rep.best << "  worst " << rep.worst
          << "  success " << rep.success_pct << "%" << std::endl;

      auto runs_out = open(dir / ("runs_" + id + ".csv"));
      write_runs_csv(runs_out, records);
      if (config.export_csv) export_convergence(records, ExportFormat::kCsv, dir / ("convergence_" + id + ".csv"));
      if (config.export_json) export_convergence(records, ExportFormat::kJson, dir / ("convergence_" + id + ".json"));
      case_manifest["algorithms"].push_back(
          {{"id", id}, {"runs", runs}, {"seeds", {config.base_seed, config.base_seed + runs - 1}}});
    }

    {
      auto out = open(dir / "report.csv");
      write_report_csv(out, result.reports);
      auto jout = open(dir / "report.json");
      write_report_json(jout, result.reports);
    }

    if (config.short_runs) {
      const auto& s = *config.short_runs;
      const std::string id(algorithm_id(s.config.algorithm));
      log << "[" << ec.label << "] " << id << ": " << s.repetitions << " x " << s.iterations_cap
          << " iterations" << std::endl;
      std::vector<RunRecord> records;
      result.short_runs = repeated_short_runs(
          obj, s.config, s.repetitions, s.iterations_cap,
          {s.repetitions, config.base_seed, config.threshold, config.workers}, ec.problem, &records);
      auto out = open(dir / "short_runs.csv");
      write_report_csv(out, {*result.short_runs});
      auto jout = open(dir / "short_runs.json");
      write_report_json(jout, {*result.short_runs});
      case_manifest["short_runs"] = {{"id", id},
                                     {"repetitions", s.repetitions},
                                     {"iterations_cap", s.iterations_cap}};
    }
    manifest["cases"].push_back(std::move(case_manifest));
    results.push_back(std::move(result));
  }

  auto out = open(config.output_dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  return results;
}

std::string list_algorithms() {
  std::ostringstream out;
  for (Algorithm a : kAllAlgorithms) {
    const OptimizerConfig c = default_config(a);
    out << algorithm_id(a) << "\t" << (is_greedy(a) ? "greedy" : "evolutionary")
        << "\tmax_iterations=" << c.max_iterations;
    switch (a) {
      case Algorithm::kNelderMead:
        out << " reflection=1 expansion=2 contraction=0.5 shrink=0.5 step=" << c.simplex_step;
        break;
      case Algorithm::kBfgs:
        out << " armijo_c=" << c.armijo_c << " shrink=" << c.backtrack_shrink;
        break;
      case Algorithm::kKrotov: out << " alpha=" << c.krotov_alpha; break;
      case Algorithm::kGenetic:
        out << " N=" << effective_population(c, 1) << " mutation=" << c.ga_mutation_rate
            << " selection=roulette crossover=two-point";
        break;
      case Algorithm::kDifferentialEvolution:
        out << " mu=" << c.de_mutation << " xi=" << c.de_crossover << " N_P=15*D";
        break;
      default: {
        const PsoVariant v = a == Algorithm::kPsoCommon ? PsoVariant::kCommon
                             : a == Algorithm::kPso1    ? PsoVariant::kClerc
                             : a == Algorithm::kPso2    ? PsoVariant::kTrelea1
                                                        : PsoVariant::kTrelea2;
        const PsoCoefficients k = pso_coefficients(v);
        out << " w=" << k.inertia;
        if (k.inertia_final != k.inertia) out << "->" << k.inertia_final;
        out << " c1=" << k.cognitive << " c2=" << k.social << " chi=" << k.constriction
            << " swarm=15*D r=[-1,1]";
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace hardctrl
