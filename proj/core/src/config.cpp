#include "projwalk/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "projwalk/version.hpp"

namespace projwalk {

using nlohmann::json;

ProjectionSystem SystemSpec::build() const {
  if (flavor == Flavor::kCyclicCoset) return ProjectionSystem::cyclic(rank, axis, constants);
  if (!graph_json.empty())
    return ProjectionSystem::stallings(rank, SubgroupGraph::from_json(graph_json), constants, tau);
  std::vector<Word> gens;
  gens.reserve(generators.size());
  for (const std::string& g : generators) gens.push_back(Word::parse(g));
  return ProjectionSystem::stallings(rank, SubgroupGraph::from_generators(rank, gens), constants,
                                     tau);
}

StepMeasure MeasureSpec::build() const {
  if (uniform_letters) return StepMeasure::uniform_letters(*uniform_letters);
  std::vector<std::pair<Word, double>> entries;
  entries.reserve(support.size());
  for (const auto& [w, p] : support) entries.emplace_back(Word::parse(w), p);
  return StepMeasure(std::move(entries));
}

namespace {

SystemSpec parse_system(const json& j) {
  SystemSpec spec;
  spec.flavor = flavor_from_name(j.at("flavor").get<std::string>());
  spec.rank = j.value("rank", 2);
  if (spec.flavor == Flavor::kCyclicCoset) {
    const std::string axis = j.value("axis", "a");
    if (axis.size() != 1) throw std::invalid_argument("config: axis must be a single letter");
    const LetterCode c = char_code(axis[0]);
    if (code_sign(c) < 0) throw std::invalid_argument("config: axis must be a positive letter");
    spec.axis = code_gen(c);
  } else if (j.contains("subgroup")) {
    const json& sub = j.at("subgroup");
    if (sub.contains("generators"))
      spec.generators = sub.at("generators").get<std::vector<std::string>>();
    else if (sub.contains("graph"))
      spec.graph_json = sub.at("graph").dump();
    else
      throw std::invalid_argument("config: subgroup needs generators or graph");
  } else {
    throw std::invalid_argument("config: stallings flavor needs a subgroup");
  }
  if (j.contains("constants")) {
    const json& c = j.at("constants");
    spec.constants.lipschitz = c.value("L", 1);
    spec.constants.behrstock = c.value("B", 1);
    spec.constants.antichain = c.value("s", 2);
  }
  spec.ball_radius = j.value("ball_radius", 6);
  spec.tau = j.value("tau", 1);
  return spec;
}

MeasureSpec parse_measure(const json& j) {
  MeasureSpec spec;
  if (j.contains("uniform_letters")) {
    spec.uniform_letters = j.at("uniform_letters").get<int>();
  } else if (j.contains("uniform")) {
    const auto words = j.at("uniform").get<std::vector<std::string>>();
    const double p = 1.0 / static_cast<double>(words.size());
    for (const std::string& w : words) spec.support.emplace_back(w, p);
  } else if (j.contains("support")) {
    for (const json& entry : j.at("support"))
      spec.support.emplace_back(entry.at(0).get<std::string>(), entry.at(1).get<double>());
  } else {
    throw std::invalid_argument("config: measure needs support, uniform, or uniform_letters");
  }
  return spec;
}

ExperimentParams parse_params(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "tail") {
    TailParams p;
    p.coset = j.value("coset", std::string{});
    p.n = j.value("n", p.n);
    p.trials = j.value("trials", p.trials);
    if (j.contains("r_grid")) p.r_grid = j.at("r_grid").get<std::vector<int>>();
    p.t_max = j.value("t_max", p.t_max);
    return p;
  }
  if (kind == "scaling") {
    ScalingParams p;
    p.n_list = j.at("n_list").get<std::vector<std::uint64_t>>();
    p.trials = j.value("trials", p.trials);
    p.window_c = j.value("window_c", p.window_c);
    p.include_arg_coset = j.value("include_arg_coset", p.include_arg_coset);
    return p;
  }
  if (kind == "second-moment") {
    SecondMomentParams p;
    p.n = j.value("n", p.n);
    p.trials = j.value("trials", p.trials);
    if (j.contains("eps1")) p.eps1 = j.at("eps1").get<double>();
    if (j.contains("k")) p.k = j.at("k").get<int>();
    if (j.contains("eps2")) p.eps2 = j.at("eps2").get<double>();
    if (!p.eps1 && !p.k)
      throw std::invalid_argument("config: second-moment needs eps1 or k");
    return p;
  }
  if (kind == "distance-formula") {
    DistanceFormulaParams p;
    p.words = j.value("words", p.words);
    p.max_len = j.value("max_len", p.max_len);
    if (j.contains("K")) p.k_threshold = j.at("K").get<int>();
    return p;
  }
  if (kind == "systole") {
    SystoleParams p;
    p.n_list = j.at("n_list").get<std::vector<std::uint64_t>>();
    p.trials = j.value("trials", p.trials);
    p.rivin.c = j.value("c", p.rivin.c);
    p.rivin.noise = j.value("noise", p.rivin.noise);
    p.rivin.complement_count = j.value("complement_count", p.rivin.complement_count);
    p.rivin.k2 = j.value("K2", p.rivin.k2);
    p.rivin.k3 = j.value("K3", p.rivin.k3);
    p.rivin.d1 = j.value("D1", p.rivin.d1);
    p.rivin.m_threshold = j.value("m_threshold", p.rivin.m_threshold);
    p.rivin.delta = j.value("delta", p.rivin.delta);
    return p;
  }
  throw std::invalid_argument("config: unknown experiment kind " + kind);
}

json system_json(const SystemSpec& s) {
  json j = {{"flavor", flavor_name(s.flavor)},
            {"rank", s.rank},
            {"constants",
             {{"L", s.constants.lipschitz},
              {"B", s.constants.behrstock},
              {"s", s.constants.antichain}}},
            {"ball_radius", s.ball_radius}};
  if (s.flavor == Flavor::kCyclicCoset) {
    j["axis"] = std::string(1, code_char(letter_code(s.axis, +1)));
  } else {
    j["tau"] = s.tau;
    if (!s.graph_json.empty())
      j["subgroup"] = {{"graph", json::parse(s.graph_json)}};
    else
      j["subgroup"] = {{"generators", s.generators}};
  }
  return j;
}

json measure_json(const MeasureSpec& m) {
  if (m.uniform_letters) return json{{"uniform_letters", *m.uniform_letters}};
  json support = json::array();
  for (const auto& [w, p] : m.support) support.push_back({w, p});
  return json{{"support", support}};
}

json params_json(const ExperimentParams& params) {
  json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TailParams>) {
          j = {{"kind", "tail"}, {"coset", p.coset},       {"n", p.n},
               {"trials", p.trials}, {"r_grid", p.r_grid}, {"t_max", p.t_max}};
        } else if constexpr (std::is_same_v<T, ScalingParams>) {
          j = {{"kind", "scaling"},
               {"n_list", p.n_list},
               {"trials", p.trials},
               {"window_c", p.window_c},
               {"include_arg_coset", p.include_arg_coset}};
        } else if constexpr (std::is_same_v<T, SecondMomentParams>) {
          j = {{"kind", "second-moment"}, {"n", p.n}, {"trials", p.trials}};
          if (p.eps1) j["eps1"] = *p.eps1;
          if (p.k) j["k"] = *p.k;
          if (p.eps2) j["eps2"] = *p.eps2;
        } else if constexpr (std::is_same_v<T, DistanceFormulaParams>) {
          j = {{"kind", "distance-formula"}, {"words", p.words}, {"max_len", p.max_len}};
          if (p.k_threshold) j["K"] = *p.k_threshold;
        } else if constexpr (std::is_same_v<T, SystoleParams>) {
          j = {{"kind", "systole"},
               {"n_list", p.n_list},
               {"trials", p.trials},
               {"c", p.rivin.c},
               {"noise", p.rivin.noise},
               {"complement_count", p.rivin.complement_count},
               {"K2", p.rivin.k2},
               {"K3", p.rivin.k3},
               {"D1", p.rivin.d1},
               {"m_threshold", p.rivin.m_threshold},
               {"delta", p.rivin.delta}};
        }
      },
      params);
  return j;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig config;
  config.system = parse_system(j.at("system"));
  if (j.contains("measure")) config.measure = parse_measure(j.at("measure"));
  config.params = parse_params(j.at("experiment"));
  config.seed = j.value("seed", 0ull);
  config.out_dir = j.value("out_dir", std::string{"."});
  if (!std::holds_alternative<SystoleParams>(config.params) && !j.contains("measure") &&
      !std::holds_alternative<DistanceFormulaParams>(config.params))
    throw std::invalid_argument("config: experiment needs a measure");
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string ExperimentConfig::kind() const {
  return params_json(params).at("kind").get<std::string>();
}

std::string ExperimentConfig::canonical_json() const {
  const json j = {{"system", system_json(system)},
                  {"measure", measure_json(measure)},
                  {"experiment", params_json(params)},
                  {"seed", seed}};
  return j.dump(2);
}

std::string ExperimentConfig::hash() const {
  const std::string text = canonical_json();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return hex;
}

RunOutputs execute(const ExperimentConfig& config, int workers) {
  RunOutputs out;
  const std::string h = config.hash();
  const std::string tag8 = h.substr(0, 8);

  if (const auto* p = std::get_if<SystoleParams>(&config.params)) {
    RivinReport report = rivin_scaling(p->n_list, p->rivin, p->trials, config.seed);
    report.config_hash = h;
    out.files.emplace_back("systole_" + tag8 + ".json", report.to_json());
    out.files.emplace_back("systole_" + tag8 + ".csv", report.to_csv());
    return out;
  }

  const ProjectionSystem system = config.system.build();

  if (const auto* p = std::get_if<DistanceFormulaParams>(&config.params)) {
    DistanceFormulaSweep sweep =
        distance_formula_sweep(system, p->words, p->max_len, p->k_threshold, config.seed, workers);
    sweep.config_hash = h;
    out.files.emplace_back("distance_" + tag8 + ".json", sweep.to_json());
    out.files.emplace_back("distance_" + tag8 + ".csv", sweep.to_csv());
    return out;
  }

  const StepMeasure measure = config.measure.build();

  if (const auto* p = std::get_if<TailParams>(&config.params)) {
    const Coset z = system.canonicalize(Word::parse(p->coset));
    TailReport report =
        tail_experiment(system, measure, z, p->n, p->trials, p->r_grid, p->t_max, config.seed,
                        workers);
    report.config_hash = h;
    out.flagged = report.degenerate;
    out.files.emplace_back("tail_" + tag8 + ".json", report.to_json());
    out.files.emplace_back("tail_" + tag8 + ".csv", report.to_csv());
    return out;
  }

  if (const auto* p = std::get_if<ScalingParams>(&config.params)) {
    ScalingReport report = scaling_experiment(system, measure, p->n_list, p->trials, p->window_c,
                                              config.seed, workers, p->include_arg_coset);
    report.config_hash = h;
    out.files.emplace_back("scaling_" + tag8 + ".json", report.to_json());
    out.files.emplace_back("sups_" + tag8 + ".csv", report.to_csv());
    return out;
  }

  const auto& p = std::get<SecondMomentParams>(config.params);
  double eps1 = 0.0;
  if (p.eps1) {
    eps1 = *p.eps1;
  } else {
    // Choose eps1 so that floor(eps1 log n) lands on the requested k.
    eps1 = (static_cast<double>(*p.k) + 0.5) / std::log(static_cast<double>(p.n));
  }
  SecondMomentReport report =
      second_moment_experiment(system, measure, p.n, p.trials, eps1, p.eps2, config.seed, workers);
  report.config_hash = h;
  out.flagged = report.undersampled;
  out.files.emplace_back("secondmoment_" + tag8 + ".json", report.to_json());
  out.files.emplace_back("secondmoment_" + tag8 + ".csv", report.to_csv());
  return out;
}

std::string RunManifest::to_json() const {
  const json j = {{"config_hash", config_hash},
                  {"config", json::parse(config_json)},
                  {"timestamp", timestamp},
                  {"tool_version", tool_version},
                  {"reports", report_files},
                  {"wall_clock_seconds", wall_clock_seconds},
                  {"workers", workers}};
  return j.dump(2);
}

RunManifest RunManifest::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  RunManifest m;
  m.config_hash = j.at("config_hash").get<std::string>();
  m.config_json = j.at("config").dump();
  m.timestamp = j.value("timestamp", std::string{});
  m.tool_version = j.value("tool_version", std::string{});
  m.report_files = j.at("reports").get<std::vector<std::string>>();
  m.wall_clock_seconds = j.value("wall_clock_seconds", 0.0);
  m.workers = j.value("workers", 1);
  return m;
}

}  // namespace projwalk
