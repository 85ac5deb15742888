#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prism/core/params.hpp"
#include "prism/core/types.hpp"
#include "prism/decision/decision.hpp"
#include "prism/dynamics/sde.hpp"
#include "prism/dynamics/simplex.hpp"
#include "prism/engine/config.hpp"
#include "prism/engine/rng.hpp"
#include "prism/errors.hpp"
#include "prism/io/atomic_file.hpp"
#include "prism/policy/context.hpp"
#include "prism/policy/lexicon.hpp"
#include "prism/policy/policy.hpp"
#include "prism/policy/remote.hpp"

namespace prism {

inline constexpr const char* kExternalSpeakerId = "external";

struct TrajectoryRecord {
  double t = 0.0;
  std::string agent_id;
  std::string mbti;
  RawAffect emotion;  // post-projection when projection is on
  double belief_mean = 0.0;
  double belief_precision = 0.0;
  bool activated = false;
  std::optional<Message> message;  // set when this agent spoke this step
};

struct EventRecord {
  Message message;
  std::vector<std::string> audience;
};

struct IncidentRecord {
  std::size_t step = 0;
  std::string agent_id;
  std::string reason;
};

// Case-insensitive whole-word search of an agent id inside message text;
// boundaries are any non [A-Za-z0-9_] character, so "@a01" mentions "a01".
inline bool text_mentions(const std::string& text, const std::string& id) {
  if (id.empty() || text.size() < id.size()) return false;
  auto low = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
  auto word_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  for (std::size_t pos = 0; pos + id.size() <= text.size(); ++pos) {
    bool match = true;
    for (std::size_t k = 0; k < id.size(); ++k) {
      if (low(text[pos + k]) != low(id[k])) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    const bool left_ok = pos == 0 || !word_char(text[pos - 1]);
    const std::size_t end = pos + id.size();
    const bool right_ok = end == text.size() || !word_char(text[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

class World {
 public:
  struct AgentRuntime {
    std::string id;
    MbtiProfile profile;
    AgentParams params;
    AgentState state;
    std::size_t activation_count = 0;
    std::size_t messages_sent = 0;
    std::size_t messages_received = 0;
  };

  explicit World(SimConfig config) : cfg_(std::move(config)) {
    lexicon_ = cfg_.custom_vocabulary ? generic_lexicon(cfg_.vocabulary) : default_lexicon();
    build_graph();
    build_policy();
    const DynamicsDefaults defaults = neutralize_axes(cfg_.dynamics, cfg_.neutralized_axes);
    const std::size_t k = cfg_.vocabulary.size();

    agents_.reserve(cfg_.agents.size());
    for (std::size_t i = 0; i < cfg_.agents.size(); ++i) {
      const auto& spec = cfg_.agents[i];
      AgentRuntime agent;
      agent.id = spec.id;
      agent.profile = spec.profile;
      if (cfg_.priors_mode == PriorsMode::Uniform || !cfg_.priors) {
        agent.params = synthesize_params(spec.profile, defaults, cfg_.vocabulary);
      } else {
        const EmotionVector mu = cfg_.priors->mu(spec.profile);
        agent.params = synthesize_params(spec.profile, defaults, cfg_.vocabulary, &mu);
      }
      SubstreamRng rng(cfg_.seed, i, 0, RngPurpose::InitEmotion);
      agent.state.emotion = rng.dirichlet(cfg_.init_alpha, k);
      agent.state.belief = cfg_.belief_init;
      agents_.push_back(std::move(agent));
    }
    mentioned_.assign(agents_.size(), false);
    for (const auto& inj : cfg_.injections) schedule_injection(inj);
  }

  const SimConfig& config() const { return cfg_; }
  const std::vector<AgentRuntime>& agents() const { return agents_; }
  const SocialGraph& graph() const { return graph_; }
  const EmotionLexicon& lexicon() const { return lexicon_; }
  double time() const { return time_; }
  std::size_t step_index() const { return step_index_; }
  std::size_t total_steps() const { return cfg_.step_count(); }
  const std::vector<TrajectoryRecord>& trajectory() const { return trajectory_; }
  const std::vector<EventRecord>& events() const { return events_; }
  const std::vector<IncidentRecord>& incidents() const { return incidents_; }

  // Schedules an exogenous message; it is delivered within the first step
  // whose end time reaches at_t, before that step's agent messages.
  void scenario_inject(double at_t, const InjectionSpec& spec) {
    InjectionSpec copy = spec;
    copy.t = at_t;
    schedule_injection(copy);
  }

  void step() {
    if (step_index_ >= total_steps()) throw DomainError("step past the configured horizon");
    const double t_end = static_cast<double>(step_index_ + 1) * cfg_.dt;

    // Phase 1: drift + diffusion on raw affect. Each agent draws from its
    // own (seed, agent, step) substream, so evaluation order is free.
    std::vector<RawAffect> raw(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      SubstreamRng rng(cfg_.seed, i, step_index_ + 1, RngPurpose::Diffusion);
      NoiseIncrement noise;
      noise.dw.resize(cfg_.vocabulary.size());
      const double sqrt_dt = std::sqrt(cfg_.dt);
      for (double& w : noise.dw) w = rng.normal() * sqrt_dt;
      raw[i] = drift_diffusion_step(agents_[i].state.emotion, agents_[i].params, cfg_.dt, noise);
    }

    // Phase 2: threshold gating against the previous step's active set,
    // using the start-of-step state.
    std::set<std::size_t> active_now;
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      const double u =
          interaction_impulse(agents_[i].state.emotion, agents_[i].params, i, active_prev_,
                              graph_, mentioned_[i], cfg_.activation);
      if (should_activate(u, agents_[i].params.gamma) == Action::Reply) active_now.insert(i);
    }

    // Phase 3a: speakers generate from start-of-step snapshots, in
    // ascending agent order. Failures degrade to Silence.
    std::vector<std::pair<std::size_t, Message>> generated;
    for (std::size_t s : active_now) {
      agents_[s].activation_count += 1;
      PolicyContext ctx = make_context(s);
      try {
        SubstreamRng rng(cfg_.seed, s, step_index_ + 1, RngPurpose::Policy);
        Message msg = policy_->generate(agents_[s].id, ctx, rng);
        msg.t = t_end;
        generated.emplace_back(s, std::move(msg));
      } catch (const PolicyError& e) {
        incidents_.push_back({step_index_, agents_[s].id, e.what()});
      }
    }

    // Phase 3b: deliver scheduled injections first, then agent messages.
    std::vector<bool> mentioned_next(agents_.size(), false);
    for (const auto& inj : injections_) {
      if (inj.first != step_index_) continue;
      Message msg;
      msg.speaker_id = kExternalSpeakerId;
      msg.text = inj.second.text;
      msg.va = inj.second.va;
      msg.y = inj.second.y;
      msg.t = t_end;
      std::vector<std::size_t> audience;
      if (inj.second.audience_all) {
        for (std::size_t i = 0; i < agents_.size(); ++i) audience.push_back(i);
      } else {
        for (const auto& id : inj.second.audience) {
          audience.push_back(static_cast<std::size_t>(cfg_.agent_index(id)));
        }
        std::sort(audience.begin(), audience.end());
      }
      deliver(msg, audience, raw, mentioned_next);
    }
    std::vector<std::optional<Message>> spoken(agents_.size());
    for (auto& [s, msg] : generated) {
      agents_[s].state.history.push_back(msg);
      agents_[s].messages_sent += 1;
      spoken[s] = msg;
      std::vector<std::size_t> audience;
      for (const auto& [j, weight] : graph_.out_neighbors(s)) {
        (void)weight;
        audience.push_back(j);
      }
      deliver(msg, audience, raw, mentioned_next);
    }

    // Phase 4: projection (or finiteness check in validation mode).
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      if (cfg_.projection) {
        try {
          agents_[i].state.emotion = project_simplex(raw[i]).raw();
        } catch (const NumericError& e) {
          throw NumericError("agent \"" + agents_[i].id + "\" at step " +
                             std::to_string(step_index_) + ": " + e.what());
        }
      } else {
        for (double x : raw[i]) {
          if (!std::isfinite(x)) {
            throw NumericError("agent \"" + agents_[i].id + "\" at step " +
                               std::to_string(step_index_) + ": non-finite raw affect");
          }
        }
        agents_[i].state.emotion = raw[i];
      }
    }

    // Phase 5: one record per agent.
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      TrajectoryRecord rec;
      rec.t = t_end;
      rec.agent_id = agents_[i].id;
      rec.mbti = agents_[i].profile.code();
      rec.emotion = agents_[i].state.emotion;
      rec.belief_mean = agents_[i].state.belief.mean;
      rec.belief_precision = agents_[i].state.belief.precision;
      rec.activated = active_now.count(i) > 0;
      rec.message = spoken[i];
      trajectory_.push_back(std::move(rec));
    }

    // Phase 6: advance.
    active_prev_ = std::move(active_now);
    mentioned_ = std::move(mentioned_next);
    time_ = t_end;
    step_index_ += 1;
  }

  void run_all() {
    while (step_index_ < total_steps()) step();
  }

  nlohmann::ordered_json summary_json() const {
    nlohmann::ordered_json agents = nlohmann::ordered_json::array();
    std::size_t total_messages = 0;
    for (const auto& a : agents_) {
      total_messages += a.messages_sent;
      agents.push_back({{"id", a.id},
                        {"mbti", a.profile.code()},
                        {"gamma", a.params.gamma},
                        {"mu", a.params.mu.components()},
                        {"final_emotion", a.state.emotion},
                        {"final_belief_mean", a.state.belief.mean},
                        {"final_belief_precision", a.state.belief.precision},
                        {"activation_count", a.activation_count},
                        {"messages_sent", a.messages_sent},
                        {"messages_received", a.messages_received}});
    }
    nlohmann::ordered_json incidents = nlohmann::ordered_json::array();
    for (const auto& inc : incidents_) {
      incidents.push_back({{"step", inc.step}, {"agent_id", inc.agent_id}, {"reason", inc.reason}});
    }
    return nlohmann::ordered_json{{"config_digest", config_digest(cfg_)},
                                  {"seed", cfg_.seed},
                                  {"dt", cfg_.dt},
                                  {"horizon", cfg_.horizon},
                                  {"steps", total_steps()},
                                  {"topic", cfg_.topic},
                                  {"policy", cfg_.policy.name()},
                                  {"emotion_labels", cfg_.vocabulary.labels()},
                                  {"total_messages", total_messages},
                                  {"incident_count", incidents_.size()},
                                  {"incidents", incidents},
                                  {"agents", agents}};
  }

  std::string trajectory_jsonl() const {
    std::string out;
    for (const auto& rec : trajectory_) {
      nlohmann::ordered_json j{{"t", rec.t},
                               {"agent_id", rec.agent_id},
                               {"mbti", rec.mbti},
                               {"emotion", rec.emotion},
                               {"belief_mean", rec.belief_mean},
                               {"belief_precision", rec.belief_precision},
                               {"activated", rec.activated}};
      if (rec.message) {
        j["message"] = {{"text", rec.message->text},
                        {"va", {rec.message->va.valence, rec.message->va.arousal}},
                        {"y", rec.message->y}};
      }
      out += j.dump();
      out += '\n';
    }
    return out;
  }

  std::string events_jsonl() const {
    std::string out;
    for (const auto& ev : events_) {
      nlohmann::ordered_json j{{"t", ev.message.t},
                               {"speaker_id", ev.message.speaker_id},
                               {"text", ev.message.text},
                               {"va", {ev.message.va.valence, ev.message.va.arousal}},
                               {"y", ev.message.y},
                               {"audience", ev.audience}};
      out += j.dump();
      out += '\n';
    }
    return out;
  }

 private:
  void build_graph() {
    const std::size_t n = cfg_.agents.size();
    graph_ = SocialGraph(n);
    switch (cfg_.graph.kind) {
      case GraphSpec::Kind::Complete:
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (i != j) graph_.add_edge(i, j, cfg_.graph.weight);
          }
        }
        break;
      case GraphSpec::Kind::Ring:
        for (std::size_t i = 0; i < n; ++i) {
          for (int d = 1; d <= cfg_.graph.ring_k; ++d) {
            const std::size_t fwd = (i + static_cast<std::size_t>(d)) % n;
            const std::size_t back = (i + n - static_cast<std::size_t>(d) % n) % n;
            if (fwd != i) graph_.add_edge(i, fwd, cfg_.graph.weight);
            if (back != i) graph_.add_edge(i, back, cfg_.graph.weight);
          }
        }
        break;
      case GraphSpec::Kind::Random: {
        SubstreamRng rng(cfg_.seed, 0, 0, RngPurpose::GraphGen);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.uniform() < cfg_.graph.edge_prob) {
              graph_.add_edge(i, j, cfg_.graph.weight);
              graph_.add_edge(j, i, cfg_.graph.weight);
            }
          }
        }
        break;
      }
      case GraphSpec::Kind::Explicit:
        for (const auto& e : cfg_.graph.edges) {
          const auto from = static_cast<std::size_t>(cfg_.agent_index(e.from));
          const auto to = static_cast<std::size_t>(cfg_.agent_index(e.to));
          graph_.add_edge(from, to, e.weight);
          if (cfg_.graph.symmetric) graph_.add_edge(to, from, e.weight);
        }
        break;
    }
  }

  void build_policy() {
    switch (cfg_.policy.kind) {
      case PolicyConfig::Kind::Stochastic:
        policy_ = std::make_unique<StochasticPolicy>(lexicon_, cfg_.policy.y_perturb);
        break;
      case PolicyConfig::Kind::Scripted:
        policy_ = std::make_unique<ScriptedPolicy>(cfg_.policy.scripts);
        break;
      case PolicyConfig::Kind::Remote:
        if (!cfg_.policy.remote) {
          throw ConfigError("remote policy selected but no endpoint configured");
        }
        policy_ = std::make_unique<RemotePolicy>(*cfg_.policy.remote, lexicon_);
        break;
    }
  }

  void schedule_injection(const InjectionSpec& spec) {
    if (spec.t < 0.0 || spec.t > cfg_.horizon) {
      throw ConfigError("injection time " + std::to_string(spec.t) + " outside [0, horizon]");
    }
    std::size_t step = 0;
    if (spec.t > 0.0) {
      const double steps_up = std::ceil(spec.t / cfg_.dt - 1e-9);
      step = static_cast<std::size_t>(std::max(steps_up - 1.0, 0.0));
    }
    step = std::min(step, total_steps() - 1);
    injections_.emplace_back(step, spec);
  }

  PolicyContext make_context(std::size_t agent) const {
    const auto& a = agents_[agent];
    PolicyContext ctx;
    const auto& history = a.state.history;
    const std::size_t window = static_cast<std::size_t>(cfg_.history_window);
    const std::size_t start = history.size() > window ? history.size() - window : 0;
    ctx.history.assign(history.begin() + static_cast<std::ptrdiff_t>(start), history.end());
    ctx.emotion = cfg_.projection ? EmotionVector(a.state.emotion) : project_simplex(a.state.emotion);
    ctx.profile = a.profile;
    ctx.belief_mean = a.state.belief.mean;
    ctx.topic = cfg_.topic;
    return ctx;
  }

  void deliver(const Message& msg, const std::vector<std::size_t>& audience,
               std::vector<RawAffect>& raw, std::vector<bool>& mentioned_next) {
    for (std::size_t j : audience) {
      if (cfg_.jumps) raw[j] = apply_impulse(raw[j], agents_[j].params.psi, msg.va);
      agents_[j].state.belief = update_belief(agents_[j].state.belief, msg.y, cfg_.obs_noise_var);
      agents_[j].state.history.push_back(msg);
      agents_[j].messages_received += 1;
      if (text_mentions(msg.text, agents_[j].id)) mentioned_next[j] = true;
    }
    EventRecord ev;
    ev.message = msg;
    ev.audience.reserve(audience.size());
    for (std::size_t j : audience) ev.audience.push_back(agents_[j].id);
    events_.push_back(std::move(ev));
  }

  SimConfig cfg_;
  EmotionLexicon lexicon_;
  SocialGraph graph_;
  std::unique_ptr<MessagePolicy> policy_;
  std::vector<AgentRuntime> agents_;
  std::set<std::size_t> active_prev_;
  std::vector<bool> mentioned_;
  std::vector<std::pair<std::size_t, InjectionSpec>> injections_;  // (step, spec)
  std::size_t step_index_ = 0;
  double time_ = 0.0;
  std::vector<TrajectoryRecord> trajectory_;
  std::vector<EventRecord> events_;
  std::vector<IncidentRecord> incidents_;
};

inline World initialize(SimConfig config) { return World(std::move(config)); }

struct RunPaths {
  std::filesystem::path trajectory;
  std::filesystem::path events;
  std::filesystem::path summary;
};

// Runs the full horizon and writes the three outputs atomically.
inline RunPaths run(const SimConfig& config, const std::filesystem::path& out_dir) {
  World world(config);
  world.run_all();
  RunPaths paths{out_dir / "trajectory.jsonl", out_dir / "events.jsonl", out_dir / "summary.json"};
  atomic_write_file(paths.trajectory, world.trajectory_jsonl());
  atomic_write_file(paths.events, world.events_jsonl());
  atomic_write_file(paths.summary, world.summary_json().dump(2) + "\n");
  return paths;
}

}  // namespace prism
