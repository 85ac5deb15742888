#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "prism/core/params.hpp"
#include "prism/core/types.hpp"
#include "prism/core/vocabulary.hpp"
#include "prism/decision/decision.hpp"
#include "prism/errors.hpp"
#include "prism/io/atomic_file.hpp"
#include "prism/policy/policy.hpp"
#include "prism/policy/remote.hpp"
#include "prism/priors/default_table.hpp"
#include "prism/priors/priors.hpp"

namespace prism {

struct AgentSpec {
  std::string id;
  MbtiProfile profile;
};

struct GraphSpec {
  enum class Kind { Complete, Ring, Random, Explicit } kind = Kind::Complete;
  double weight = 1.0;     // generator edge weight
  int ring_k = 1;          // ring: neighbors on each side
  double edge_prob = 0.5;  // random
  bool symmetric = true;   // explicit: add both directions
  struct Edge {
    std::string from, to;
    double weight = 1.0;
  };
  std::vector<Edge> edges;  // explicit
};

struct InjectionSpec {
  double t = 0.0;
  std::string text;
  ValenceArousal va;
  double y = 0.0;
  bool audience_all = true;
  std::vector<std::string> audience;  // when not all
};

struct PolicyConfig {
  enum class Kind { Stochastic, Scripted, Remote } kind = Kind::Stochastic;
  double y_perturb = 0.1;                                    // stochastic
  std::map<std::string, std::vector<ScriptEntry>> scripts;   // scripted
  std::optional<RemoteEndpointConfig> remote;                // remote

  const char* name() const {
    switch (kind) {
      case Kind::Stochastic: return "stochastic";
      case Kind::Scripted: return "scripted";
      case Kind::Remote: return "remote";
    }
    return "?";
  }
};

enum class PriorsMode { Default, Uniform, File };

// The resolved simulation configuration. Parsed strictly: unknown keys are
// rejected anywhere in the document.
struct SimConfig {
  std::uint64_t seed = 0;
  double dt = 0.1;
  double horizon = 10.0;
  std::string description;
  std::string topic = "the topic";
  Vocabulary vocabulary = default_vocabulary();
  bool custom_vocabulary = false;
  std::vector<AgentSpec> agents;
  GraphSpec graph;
  DynamicsDefaults dynamics;
  ActivationWeights activation;
  double obs_noise_var = 1.0;
  double init_alpha = 1.0;
  Belief belief_init{0.0, 1.0};
  int history_window = 20;
  PriorsMode priors_mode = PriorsMode::Default;
  std::optional<PriorTable> priors;  // resolved table when mode != Uniform
  PolicyConfig policy;
  std::vector<DichotomyAxis> neutralized_axes;
  bool projection = true;
  bool jumps = true;
  std::vector<InjectionSpec> injections;

  std::size_t step_count() const {
    return static_cast<std::size_t>(horizon / dt + 1e-9);
  }

  int agent_index(const std::string& id) const {
    for (std::size_t i = 0; i < agents.size(); ++i) {
      if (agents[i].id == id) return static_cast<int>(i);
    }
    return -1;
  }
};

namespace cfg_detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                                const std::string& where) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

inline double get_number(const nlohmann::json& j, const std::string& key, double fallback,
                         const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError("\"" + key + "\" in " + where + " must be a number");
  return j[key].get<double>();
}

inline bool get_bool(const nlohmann::json& j, const std::string& key, bool fallback,
                     const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) throw ConfigError("\"" + key + "\" in " + where + " must be a boolean");
  return j[key].get<bool>();
}

inline std::string get_string(const nlohmann::json& j, const std::string& key,
                              const std::string& fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) throw ConfigError("\"" + key + "\" in " + where + " must be a string");
  return j[key].get<std::string>();
}

inline ValenceArousal parse_va(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("\"va\" in " + where + " must be [valence, arousal]");
  }
  ValenceArousal va{j[0].get<double>(), j[1].get<double>()};
  if (va.valence < -1.0 || va.valence > 1.0) throw ConfigError("valence in " + where + " outside [-1,1]");
  if (va.arousal < 0.0 || va.arousal > 1.0) throw ConfigError("arousal in " + where + " outside [0,1]");
  return va;
}

inline GraphSpec parse_graph(const nlohmann::json& j) {
  GraphSpec spec;
  if (!j.is_object()) throw ConfigError("\"graph\" must be an object");
  reject_unknown_keys(j, {"type", "weight", "k", "edge_prob", "symmetric", "edges"}, "graph");
  const std::string type = get_string(j, "type", "complete", "graph");
  spec.weight = get_number(j, "weight", 1.0, "graph");
  if (spec.weight < 0.0 || spec.weight > 1.0) throw ConfigError("graph weight outside [0,1]");
  if (type == "complete") {
    spec.kind = GraphSpec::Kind::Complete;
  } else if (type == "ring") {
    spec.kind = GraphSpec::Kind::Ring;
    spec.ring_k = static_cast<int>(get_number(j, "k", 1.0, "graph"));
    if (spec.ring_k < 1) throw ConfigError("ring k must be >= 1");
  } else if (type == "random") {
    spec.kind = GraphSpec::Kind::Random;
    spec.edge_prob = get_number(j, "edge_prob", 0.5, "graph");
    if (spec.edge_prob < 0.0 || spec.edge_prob > 1.0) throw ConfigError("edge_prob outside [0,1]");
  } else if (type == "explicit") {
    spec.kind = GraphSpec::Kind::Explicit;
    spec.symmetric = get_bool(j, "symmetric", true, "graph");
    if (!j.contains("edges") || !j["edges"].is_array()) {
      throw ConfigError("explicit graph needs an \"edges\" array");
    }
    for (const auto& e : j["edges"]) {
      reject_unknown_keys(e, {"from", "to", "weight"}, "graph.edges[]");
      GraphSpec::Edge edge;
      edge.from = get_string(e, "from", "", "graph edge");
      edge.to = get_string(e, "to", "", "graph edge");
      edge.weight = get_number(e, "weight", 1.0, "graph edge");
      if (edge.from.empty() || edge.to.empty()) throw ConfigError("graph edge needs from/to");
      spec.edges.push_back(edge);
    }
  } else {
    throw ConfigError("unknown graph type \"" + type + "\"");
  }
  return spec;
}

inline PolicyConfig parse_policy(const nlohmann::json& j) {
  PolicyConfig policy;
  if (!j.is_object()) throw ConfigError("\"policy\" must be an object");
  reject_unknown_keys(j,
                      {"type", "y_perturb", "scripts", "endpoint", "model", "api_key_env",
                       "timeout_ms", "retries", "temperature"},
                      "policy");
  const std::string type = get_string(j, "type", "stochastic", "policy");
  if (type == "stochastic") {
    policy.kind = PolicyConfig::Kind::Stochastic;
  } else if (type == "scripted") {
    policy.kind = PolicyConfig::Kind::Scripted;
  } else if (type == "remote") {
    policy.kind = PolicyConfig::Kind::Remote;
  } else {
    throw ConfigError("unknown policy type \"" + type + "\"");
  }
  policy.y_perturb = get_number(j, "y_perturb", 0.1, "policy");
  if (policy.y_perturb < 0.0) throw ConfigError("policy y_perturb must be >= 0");
  if (j.contains("scripts")) {
    if (!j["scripts"].is_object()) throw ConfigError("policy scripts must be an object");
    for (const auto& item : j["scripts"].items()) {
      std::vector<ScriptEntry> entries;
      if (!item.value().is_array()) throw ConfigError("script for agent must be an array");
      for (const auto& e : item.value()) {
        reject_unknown_keys(e, {"text", "va", "y"}, "policy.scripts[]");
        ScriptEntry entry;
        entry.text = get_string(e, "text", "", "script entry");
        if (!e.contains("va")) throw ConfigError("script entry needs \"va\"");
        entry.va = parse_va(e["va"], "script entry");
        entry.y = get_number(e, "y", 0.0, "script entry");
        if (entry.y < -1.0 || entry.y > 1.0) throw ConfigError("script y outside [-1,1]");
        entries.push_back(entry);
      }
      policy.scripts[item.key()] = std::move(entries);
    }
  }
  if (j.contains("endpoint")) {
    RemoteEndpointConfig remote;
    remote.url = get_string(j, "endpoint", "", "policy");
    remote.model = get_string(j, "model", "default", "policy");
    remote.api_key_env = get_string(j, "api_key_env", "", "policy");
    remote.timeout_ms = static_cast<int>(get_number(j, "timeout_ms", 10000.0, "policy"));
    remote.retries = static_cast<int>(get_number(j, "retries", 2.0, "policy"));
    remote.temperature = get_number(j, "temperature", 0.7, "policy");
    remote.validate();
    policy.remote = remote;
  }
  return policy;
}

}  // namespace cfg_detail

// Parses and validates a config document. base_dir anchors relative paths
// (the priors file).
inline SimConfig parse_sim_config(const nlohmann::json& j,
                                  const std::filesystem::path& base_dir = ".") {
  using namespace cfg_detail;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(j,
                      {"seed", "dt", "horizon", "description", "topic", "emotions", "agents",
                       "graph", "dynamics", "activation", "obs_noise_var", "init_alpha",
                       "belief_init", "history_window", "priors", "policy", "ablation",
                       "projection", "jumps", "injections"},
                      "config");

  SimConfig cfg;
  if (!j.contains("seed") || !j["seed"].is_number_integer()) {
    throw ConfigError("config needs an integer \"seed\"");
  }
  cfg.seed = j["seed"].get<std::uint64_t>();
  cfg.dt = get_number(j, "dt", 0.1, "config");
  cfg.horizon = get_number(j, "horizon", 10.0, "config");
  if (!(cfg.dt > 0.0)) throw ConfigError("dt must be > 0");
  if (!(cfg.horizon >= cfg.dt)) throw ConfigError("horizon must be >= dt");
  cfg.description = get_string(j, "description", "", "config");
  cfg.topic = get_string(j, "topic", "the topic", "config");

  if (j.contains("emotions")) {
    if (!j["emotions"].is_array() || j["emotions"].empty()) {
      throw ConfigError("\"emotions\" must be a non-empty array");
    }
    std::vector<EmotionAnchor> anchors;
    for (const auto& e : j["emotions"]) {
      reject_unknown_keys(e, {"label", "valence", "arousal"}, "emotions[]");
      EmotionAnchor a;
      a.label = get_string(e, "label", "", "emotion");
      a.valence = get_number(e, "valence", 0.0, "emotion");
      a.arousal = get_number(e, "arousal", 0.0, "emotion");
      anchors.push_back(a);
    }
    cfg.vocabulary = Vocabulary(std::move(anchors));
    cfg.custom_vocabulary = true;
  }

  if (!j.contains("agents") || !j["agents"].is_array() || j["agents"].empty()) {
    throw ConfigError("config needs a non-empty \"agents\" array");
  }
  std::set<std::string> seen_ids;
  for (const auto& a : j["agents"]) {
    reject_unknown_keys(a, {"id", "mbti"}, "agents[]");
    AgentSpec spec;
    spec.id = get_string(a, "id", "", "agent");
    if (spec.id.empty()) throw ConfigError("agent id must not be empty");
    if (spec.id == "external") throw ConfigError("agent id \"external\" is reserved");
    if (!seen_ids.insert(spec.id).second) throw ConfigError("duplicate agent id \"" + spec.id + "\"");
    try {
      spec.profile = parse_mbti(get_string(a, "mbti", "", "agent"));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("agent \"") + spec.id + "\": " + e.what());
    }
    cfg.agents.push_back(spec);
  }

  cfg.graph = j.contains("graph") ? parse_graph(j["graph"]) : GraphSpec{};
  if (cfg.graph.kind == GraphSpec::Kind::Explicit) {
    for (const auto& e : cfg.graph.edges) {
      if (cfg.agent_index(e.from) < 0) throw ConfigError("graph edge references unknown agent \"" + e.from + "\"");
      if (cfg.agent_index(e.to) < 0) throw ConfigError("graph edge references unknown agent \"" + e.to + "\"");
    }
  }

  if (j.contains("dynamics")) {
    const auto& d = j["dynamics"];
    reject_unknown_keys(d, {"theta0", "sigma0", "psi0", "gamma0", "multipliers"}, "dynamics");
    cfg.dynamics.theta0 = get_number(d, "theta0", cfg.dynamics.theta0, "dynamics");
    cfg.dynamics.sigma0 = get_number(d, "sigma0", cfg.dynamics.sigma0, "dynamics");
    cfg.dynamics.psi0 = get_number(d, "psi0", cfg.dynamics.psi0, "dynamics");
    cfg.dynamics.gamma0 = get_number(d, "gamma0", cfg.dynamics.gamma0, "dynamics");
    if (d.contains("multipliers")) {
      const auto& m = d["multipliers"];
      reject_unknown_keys(m, {"E", "I", "S", "N", "T", "F", "J", "P"}, "dynamics.multipliers");
      cfg.dynamics.ei.first = get_number(m, "E", cfg.dynamics.ei.first, "multipliers");
      cfg.dynamics.ei.second = get_number(m, "I", cfg.dynamics.ei.second, "multipliers");
      cfg.dynamics.sn.first = get_number(m, "S", cfg.dynamics.sn.first, "multipliers");
      cfg.dynamics.sn.second = get_number(m, "N", cfg.dynamics.sn.second, "multipliers");
      cfg.dynamics.tf.first = get_number(m, "T", cfg.dynamics.tf.first, "multipliers");
      cfg.dynamics.tf.second = get_number(m, "F", cfg.dynamics.tf.second, "multipliers");
      cfg.dynamics.jp.first = get_number(m, "J", cfg.dynamics.jp.first, "multipliers");
      cfg.dynamics.jp.second = get_number(m, "P", cfg.dynamics.jp.second, "multipliers");
    }
  }
  cfg.dynamics.validate();

  if (j.contains("activation")) {
    const auto& w = j["activation"];
    reject_unknown_keys(w, {"w1", "w2", "w3"}, "activation");
    cfg.activation.w1 = get_number(w, "w1", cfg.activation.w1, "activation");
    cfg.activation.w2 = get_number(w, "w2", cfg.activation.w2, "activation");
    cfg.activation.w3 = get_number(w, "w3", cfg.activation.w3, "activation");
  }
  cfg.activation.validate();

  cfg.obs_noise_var = get_number(j, "obs_noise_var", 1.0, "config");
  if (!(cfg.obs_noise_var > 0.0)) throw ConfigError("obs_noise_var must be > 0");
  cfg.init_alpha = get_number(j, "init_alpha", 1.0, "config");
  if (!(cfg.init_alpha > 0.0)) throw ConfigError("init_alpha must be > 0");

  if (j.contains("belief_init")) {
    const auto& b = j["belief_init"];
    reject_unknown_keys(b, {"mean", "precision"}, "belief_init");
    cfg.belief_init.mean = get_number(b, "mean", 0.0, "belief_init");
    cfg.belief_init.precision = get_number(b, "precision", 1.0, "belief_init");
    if (!(cfg.belief_init.precision > 0.0)) throw ConfigError("belief precision must be > 0");
  }

  cfg.history_window = static_cast<int>(get_number(j, "history_window", 20.0, "config"));
  if (cfg.history_window < 0) throw ConfigError("history_window must be >= 0");

  if (j.contains("priors")) {
    const auto& p = j["priors"];
    if (p.is_string()) {
      const std::string mode = p.get<std::string>();
      if (mode == "default") {
        cfg.priors_mode = PriorsMode::Default;
      } else if (mode == "uniform") {
        cfg.priors_mode = PriorsMode::Uniform;
      } else {
        throw ConfigError("priors must be \"default\", \"uniform\" or {\"path\": ...}");
      }
    } else if (p.is_object()) {
      reject_unknown_keys(p, {"path"}, "priors");
      cfg.priors_mode = PriorsMode::File;
      const std::string rel = get_string(p, "path", "", "priors");
      if (rel.empty()) throw ConfigError("priors path must not be empty");
      const std::filesystem::path path = std::filesystem::path(rel).is_absolute()
                                             ? std::filesystem::path(rel)
                                             : base_dir / rel;
      nlohmann::json table_json = nlohmann::json::parse(read_file(path), nullptr, false);
      if (table_json.is_discarded()) throw ConfigError("priors file " + path.string() + " is not valid JSON");
      cfg.priors = prior_table_from_json(table_json, cfg.vocabulary);
    } else {
      throw ConfigError("priors must be \"default\", \"uniform\" or {\"path\": ...}");
    }
  }
  if (cfg.priors_mode == PriorsMode::Default && !cfg.priors) {
    if (cfg.custom_vocabulary) {
      // The shipped table is defined over the default vocabulary only.
      cfg.priors_mode = PriorsMode::Uniform;
    } else {
      cfg.priors = default_prior_table();
    }
  }

  cfg.policy = j.contains("policy") ? cfg_detail::parse_policy(j["policy"]) : PolicyConfig{};
  for (const auto& [agent_id, script] : cfg.policy.scripts) {
    if (cfg.agent_index(agent_id) < 0) {
      throw ConfigError("script references unknown agent \"" + agent_id + "\"");
    }
  }

  if (j.contains("ablation")) {
    const auto& a = j["ablation"];
    reject_unknown_keys(a, {"neutralize"}, "ablation");
    if (a.contains("neutralize")) {
      if (!a["neutralize"].is_array()) throw ConfigError("ablation.neutralize must be an array");
      for (const auto& axis : a["neutralize"]) {
        if (!axis.is_string()) throw ConfigError("ablation axis must be a string");
        cfg.neutralized_axes.push_back(parse_axis(axis.get<std::string>()));
      }
    }
  }

  cfg.projection = get_bool(j, "projection", true, "config");
  cfg.jumps = get_bool(j, "jumps", true, "config");

  if (j.contains("injections")) {
    if (!j["injections"].is_array()) throw ConfigError("\"injections\" must be an array");
    for (const auto& inj : j["injections"]) {
      reject_unknown_keys(inj, {"t", "text", "va", "y", "audience"}, "injections[]");
      InjectionSpec spec;
      spec.t = get_number(inj, "t", 0.0, "injection");
      if (spec.t < 0.0 || spec.t > cfg.horizon) {
        throw ConfigError("injection time " + std::to_string(spec.t) + " outside [0, horizon]");
      }
      spec.text = get_string(inj, "text", "", "injection");
      if (!inj.contains("va")) throw ConfigError("injection needs \"va\"");
      spec.va = parse_va(inj["va"], "injection");
      spec.y = get_number(inj, "y", 0.0, "injection");
      if (spec.y < -1.0 || spec.y > 1.0) throw ConfigError("injection y outside [-1,1]");
      if (inj.contains("audience")) {
        if (inj["audience"].is_string() && inj["audience"].get<std::string>() == "all") {
          spec.audience_all = true;
        } else if (inj["audience"].is_array()) {
          spec.audience_all = false;
          for (const auto& id : inj["audience"]) {
            if (!id.is_string()) throw ConfigError("injection audience entries must be agent ids");
            const std::string s = id.get<std::string>();
            if (cfg.agent_index(s) < 0) throw ConfigError("injection audience references unknown agent \"" + s + "\"");
            spec.audience.push_back(s);
          }
        } else {
          throw ConfigError("injection audience must be \"all\" or an array of agent ids");
        }
      }
      cfg.injections.push_back(spec);
    }
  }

  return cfg;
}

inline SimConfig load_sim_config(const std::filesystem::path& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file " + path.string() + " is not valid JSON");
  return parse_sim_config(j, path.has_parent_path() ? path.parent_path() : ".");
}

// Canonical re-serialization of the resolved config; the digest printed by
// every run is the FNV-1a 64 hash of this string.
inline nlohmann::json sim_config_to_json(const SimConfig& cfg) {
  nlohmann::json j;
  j["seed"] = cfg.seed;
  j["dt"] = cfg.dt;
  j["horizon"] = cfg.horizon;
  j["description"] = cfg.description;
  j["topic"] = cfg.topic;
  {
    nlohmann::json emotions = nlohmann::json::array();
    for (const auto& a : cfg.vocabulary.anchors()) {
      emotions.push_back({{"label", a.label}, {"valence", a.valence}, {"arousal", a.arousal}});
    }
    j["emotions"] = emotions;
  }
  {
    nlohmann::json agents = nlohmann::json::array();
    for (const auto& a : cfg.agents) agents.push_back({{"id", a.id}, {"mbti", a.profile.code()}});
    j["agents"] = agents;
  }
  {
    nlohmann::json g;
    switch (cfg.graph.kind) {
      case GraphSpec::Kind::Complete: g["type"] = "complete"; break;
      case GraphSpec::Kind::Ring: g["type"] = "ring"; g["k"] = cfg.graph.ring_k; break;
      case GraphSpec::Kind::Random: g["type"] = "random"; g["edge_prob"] = cfg.graph.edge_prob; break;
      case GraphSpec::Kind::Explicit: {
        g["type"] = "explicit";
        g["symmetric"] = cfg.graph.symmetric;
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : cfg.graph.edges) {
          edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
        }
        g["edges"] = edges;
        break;
      }
    }
    g["weight"] = cfg.graph.weight;
    j["graph"] = g;
  }
  j["dynamics"] = {{"theta0", cfg.dynamics.theta0},
                   {"sigma0", cfg.dynamics.sigma0},
                   {"psi0", cfg.dynamics.psi0},
                   {"gamma0", cfg.dynamics.gamma0},
                   {"multipliers",
                    {{"E", cfg.dynamics.ei.first},
                     {"I", cfg.dynamics.ei.second},
                     {"S", cfg.dynamics.sn.first},
                     {"N", cfg.dynamics.sn.second},
                     {"T", cfg.dynamics.tf.first},
                     {"F", cfg.dynamics.tf.second},
                     {"J", cfg.dynamics.jp.first},
                     {"P", cfg.dynamics.jp.second}}}};
  j["activation"] = {{"w1", cfg.activation.w1}, {"w2", cfg.activation.w2}, {"w3", cfg.activation.w3}};
  j["obs_noise_var"] = cfg.obs_noise_var;
  j["init_alpha"] = cfg.init_alpha;
  j["belief_init"] = {{"mean", cfg.belief_init.mean}, {"precision", cfg.belief_init.precision}};
  j["history_window"] = cfg.history_window;
  switch (cfg.priors_mode) {
    case PriorsMode::Default: j["priors"] = "default"; break;
    case PriorsMode::Uniform: j["priors"] = "uniform"; break;
    case PriorsMode::File: j["priors"] = cfg.priors ? prior_table_to_json(*cfg.priors) : nlohmann::json("file"); break;
  }
  j["policy"] = {{"type", cfg.policy.name()}, {"y_perturb", cfg.policy.y_perturb}};
  if (cfg.policy.remote) {
    j["policy"]["endpoint"] = cfg.policy.remote->url;
    j["policy"]["model"] = cfg.policy.remote->model;
    j["policy"]["timeout_ms"] = cfg.policy.remote->timeout_ms;
    j["policy"]["retries"] = cfg.policy.remote->retries;
    j["policy"]["temperature"] = cfg.policy.remote->temperature;
  }
  if (!cfg.policy.scripts.empty()) {
    nlohmann::json scripts;
    for (const auto& [agent_id, script] : cfg.policy.scripts) {
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& e : script) {
        entries.push_back({{"text", e.text}, {"va", {e.va.valence, e.va.arousal}}, {"y", e.y}});
      }
      scripts[agent_id] = entries;
    }
    j["policy"]["scripts"] = scripts;
  }
  {
    nlohmann::json axes = nlohmann::json::array();
    for (DichotomyAxis a : cfg.neutralized_axes) {
      switch (a) {
        case DichotomyAxis::EI: axes.push_back("EI"); break;
        case DichotomyAxis::SN: axes.push_back("SN"); break;
        case DichotomyAxis::TF: axes.push_back("TF"); break;
        case DichotomyAxis::JP: axes.push_back("JP"); break;
      }
    }
    j["ablation"] = {{"neutralize", axes}};
  }
  j["projection"] = cfg.projection;
  j["jumps"] = cfg.jumps;
  {
    nlohmann::json injections = nlohmann::json::array();
    for (const auto& inj : cfg.injections) {
      nlohmann::json e = {{"t", inj.t},
                          {"text", inj.text},
                          {"va", {inj.va.valence, inj.va.arousal}},
                          {"y", inj.y}};
      if (inj.audience_all) {
        e["audience"] = "all";
      } else {
        e["audience"] = inj.audience;
      }
      injections.push_back(e);
    }
    j["injections"] = injections;
  }
  return j;
}

inline std::string config_digest(const SimConfig& cfg) {
  const std::string canonical = sim_config_to_json(cfg).dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace prism
