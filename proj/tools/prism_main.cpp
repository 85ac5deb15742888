// prism: estimate-priors -> simulate -> analyze pipeline plus the oracle
// self-checks, as one binary with stable exit codes (0 ok, 2 config,
// 3 numeric, 4 I/O).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prism/analysis/metrics.hpp"
#include "prism/engine/config.hpp"
#include "prism/engine/engine.hpp"
#include "prism/errors.hpp"
#include "prism/io/atomic_file.hpp"
#include "prism/priors/corpus.hpp"
#include "prism/priors/default_table.hpp"
#include "prism/priors/priors.hpp"
#include "prism/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::string fnv_digest(const std::string& canonical) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void print_invocation_digest(const nlohmann::json& resolved) {
  std::cout << "config digest: " << fnv_digest(resolved.dump()) << "\n";
}

prism::Vocabulary load_vocabulary(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(prism::read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_array() || j.empty()) {
    throw prism::ConfigError("vocabulary file must be a non-empty JSON array");
  }
  std::vector<prism::EmotionAnchor> anchors;
  for (const auto& e : j) {
    prism::EmotionAnchor a;
    if (e.is_string()) {
      a.label = e.get<std::string>();
    } else if (e.is_object()) {
      a.label = e.value("label", "");
      a.valence = e.value("valence", 0.0);
      a.arousal = e.value("arousal", 0.0);
    } else {
      throw prism::ConfigError("vocabulary entries must be strings or {label, valence, arousal}");
    }
    anchors.push_back(a);
  }
  return prism::Vocabulary(std::move(anchors));
}

int run_estimate_priors(const std::string& corpus_path, const std::string& out_path, double alpha,
                        double quant, const std::string& vocab_path) {
  const prism::Vocabulary vocab =
      vocab_path.empty() ? prism::default_vocabulary() : load_vocabulary(vocab_path);

  print_invocation_digest({{"cmd", "estimate-priors"},
                           {"corpus", corpus_path},
                           {"out", out_path},
                           {"alpha", alpha},
                           {"quant", quant},
                           {"vocab", vocab.labels()}});

  std::ifstream in(corpus_path);
  if (!in) throw prism::IoError("cannot open corpus " + corpus_path);
  const prism::AnnotatedCorpus corpus = prism::ingest_corpus(in, vocab);

  if (corpus.record_count == 0) {
    std::cerr << "warning: corpus is empty; priors fall back to the uniform distribution\n";
  }
  for (const auto& reject : corpus.rejects) {
    std::cerr << "reject line " << reject.line_number << ": " << reject.reason << "\n";
  }
  std::cout << "ingested " << corpus.record_count << " records, " << corpus.rejects.size()
            << " rejected\n";

  prism::PriorTable table = prism::estimate_priors(corpus, vocab, alpha);
  table = prism::quantize_table(table, quant);

  const prism::PriorReport report = prism::prior_report(table);
  const std::filesystem::path out(out_path);
  prism::atomic_write_file(out, prism::prior_table_to_json(table).dump(2) + "\n");
  std::filesystem::path report_json = out;
  report_json.replace_extension(".report.json");
  std::filesystem::path report_txt = out;
  report_txt.replace_extension(".report.txt");
  prism::atomic_write_file(report_json, report.json.dump(2) + "\n");
  prism::atomic_write_file(report_txt, report.text);

  std::cout << report.text;
  std::cout << "wrote " << out.string() << ", " << report_json.string() << ", "
            << report_txt.string() << "\n";
  return kExitOk;
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::int64_t> seed_override,
                 const std::string& policy_override) {
  prism::SimConfig cfg = prism::load_sim_config(config_path);
  if (seed_override) cfg.seed = static_cast<std::uint64_t>(*seed_override);
  if (!policy_override.empty()) {
    if (policy_override == "stochastic") {
      cfg.policy.kind = prism::PolicyConfig::Kind::Stochastic;
    } else if (policy_override == "scripted") {
      cfg.policy.kind = prism::PolicyConfig::Kind::Scripted;
    } else if (policy_override == "remote") {
      cfg.policy.kind = prism::PolicyConfig::Kind::Remote;
    } else {
      throw prism::ConfigError("unknown policy \"" + policy_override + "\"");
    }
  }
  if (cfg.policy.kind == prism::PolicyConfig::Kind::Remote && !cfg.policy.remote) {
    throw prism::ConfigError("remote policy selected but no endpoint configured");
  }
  if (cfg.policy.kind == prism::PolicyConfig::Kind::Scripted && cfg.policy.scripts.empty()) {
    throw prism::ConfigError("scripted policy selected but no scripts configured");
  }

  std::cout << "config digest: " << prism::config_digest(cfg) << "\n";
  const prism::RunPaths paths = prism::run(cfg, out_dir);
  std::cout << "wrote " << paths.trajectory.string() << "\n";
  std::cout << "wrote " << paths.events.string() << "\n";
  std::cout << "wrote " << paths.summary.string() << "\n";
  return kExitOk;
}

prism::SentimentSeries overall_series(const std::string& path, const prism::EmotionLexicon& lexicon) {
  const std::filesystem::path p(path);
  if (p.extension() == ".csv") {
    std::ifstream in(p);
    if (!in) throw prism::IoError("cannot open " + path);
    auto groups = prism::parse_plot_data_csv(in);
    auto it = groups.find("all");
    if (it != groups.end()) return it->second;
    if (groups.size() == 1) return groups.begin()->second;
    throw prism::ConfigError("reference csv has no \"all\" group and is not single-group");
  }
  std::ifstream in(p);
  if (!in) throw prism::IoError("cannot open " + path);
  const auto records = prism::parse_trajectory_jsonl(in);
  auto groups = prism::group_trajectories(records, prism::Grouping::parse("all"), lexicon);
  return groups.at("all");
}

int run_analyze(const std::string& traj_path, const std::string& ref_path,
                const std::vector<std::string>& metrics, const std::string& group_by,
                const std::string& out_path, std::string summary_path) {
  print_invocation_digest({{"cmd", "analyze"},
                           {"traj", traj_path},
                           {"ref", ref_path},
                           {"metrics", metrics},
                           {"group_by", group_by},
                           {"out", out_path}});

  bool want_mae = false, want_consistency = false;
  for (const auto& m : metrics) {
    if (m == "mae") {
      want_mae = true;
    } else if (m == "consistency") {
      want_consistency = true;
    } else {
      throw prism::ConfigError("unknown metric \"" + m + "\" (expected mae, consistency)");
    }
  }
  if (want_mae && ref_path.empty()) {
    throw prism::ConfigError("--ref is required for the mae metric");
  }

  const prism::EmotionLexicon lexicon = prism::default_lexicon();

  std::ifstream in(traj_path);
  if (!in) throw prism::IoError("cannot open trajectory " + traj_path);
  const auto records = prism::parse_trajectory_jsonl(in);

  const prism::Grouping grouping = prism::Grouping::parse(group_by);
  const auto series = prism::group_trajectories(records, grouping, lexicon);

  nlohmann::ordered_json metrics_json;
  metrics_json["trajectory"] = traj_path;
  metrics_json["group_by"] = group_by;
  metrics_json["groups"] = nlohmann::json::array();
  for (const auto& [group, s] : series) {
    metrics_json["groups"].push_back({{"group", group}, {"points", s.times.size()}});
  }

  if (want_mae) {
    const auto sim_all = prism::group_trajectories(records, prism::Grouping::parse("all"), lexicon);
    const prism::SentimentSeries ref = overall_series(ref_path, lexicon);
    metrics_json["polarity_mae"] = prism::polarity_mae(sim_all.at("all"), ref);
  }

  if (want_consistency) {
    if (summary_path.empty()) {
      summary_path = (std::filesystem::path(traj_path).parent_path() / "summary.json").string();
    }
    nlohmann::json summary = nlohmann::json::parse(prism::read_file(summary_path), nullptr, false);
    if (summary.is_discarded()) throw prism::IoError("summary " + summary_path + " is not valid JSON");
    std::map<std::string, std::vector<double>> mu_by_agent;
    for (const auto& a : summary.at("agents")) {
      mu_by_agent[a.at("id").get<std::string>()] = a.at("mu").get<std::vector<double>>();
    }
    const prism::ConsistencyResult consistency = prism::consistency_rho(records, mu_by_agent);
    nlohmann::ordered_json per_agent;
    for (const auto& [agent_id, rho] : consistency.per_agent) {
      if (rho) {
        per_agent[agent_id] = *rho;
      } else {
        per_agent[agent_id] = nullptr;
      }
    }
    metrics_json["consistency"] = {{"per_agent", per_agent},
                                   {"mean", consistency.mean},
                                   {"defined_agents", consistency.defined_count}};
  }

  const std::filesystem::path out(out_path);
  prism::atomic_write_file(out, metrics_json.dump(2) + "\n");
  std::filesystem::path csv = out;
  csv.replace_extension(".csv");
  prism::atomic_write_file(csv, prism::plot_data_csv(series));
  std::cout << "wrote " << out.string() << " and " << csv.string() << "\n";
  return kExitOk;
}

int run_validate(const std::string& sabotage_name) {
  print_invocation_digest({{"cmd", "validate"}, {"sabotage", sabotage_name}});
  prism::SabotageTarget target = prism::SabotageTarget::None;
  if (sabotage_name == "projection") {
    target = prism::SabotageTarget::Projection;
  } else if (sabotage_name == "belief") {
    target = prism::SabotageTarget::Belief;
  } else if (sabotage_name == "wilcoxon") {
    target = prism::SabotageTarget::Wilcoxon;
  } else if (sabotage_name == "integrator") {
    target = prism::SabotageTarget::Integrator;
  } else if (!sabotage_name.empty() && sabotage_name != "none") {
    throw prism::ConfigError("unknown sabotage target \"" + sabotage_name + "\"");
  }
  const prism::ValidationReport report = prism::run_validation(target);
  std::cout << prism::validation_table(report);
  return report.all_pass() ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prism: personality-heterogeneous social-media discourse simulator"};
  app.require_subcommand(1);

  // estimate-priors
  std::string corpus_path, priors_out, vocab_path;
  double alpha = 1.0, quant = 0.05;
  auto* est = app.add_subcommand("estimate-priors", "estimate per-type emotion priors from a JSONL corpus");
  est->add_option("--corpus", corpus_path, "annotated corpus (JSONL)")->required();
  est->add_option("--out", priors_out, "output prior table (JSON)")->required();
  est->add_option("--alpha", alpha, "Dirichlet smoothing parameter (default 1.0)");
  est->add_option("--quant", quant, "coarse-graining step (default 0.05)");
  est->add_option("--vocab", vocab_path, "vocabulary JSON (defaults to the shipped vocabulary)");

  // simulate
  std::string config_path, sim_out_dir, policy_override;
  std::int64_t seed_flag = 0;
  bool seed_set = false;
  auto* sim = app.add_subcommand("simulate", "run the simulation loop from a config file");
  sim->add_option("--config", config_path, "simulation config (JSON)")->required();
  sim->add_option("--out", sim_out_dir, "output directory")->required();
  auto* seed_opt = sim->add_option("--seed", seed_flag, "override the config seed");
  sim->add_option("--policy", policy_override, "override the policy (stochastic|scripted|remote)");

  // analyze
  std::string traj_path, ref_path, group_by = "all", metrics_out, summary_path;
  std::vector<std::string> metric_names;
  auto* ana = app.add_subcommand("analyze", "compute metrics and plot data from a trajectory log");
  ana->add_option("--traj", traj_path, "trajectory JSONL")->required();
  ana->add_option("--ref", ref_path, "reference series (trajectory JSONL or plot-data CSV)");
  ana->add_option("--metrics", metric_names, "metrics to compute (mae, consistency)")->delimiter(',');
  ana->add_option("--group-by", group_by, "grouping: all, type, axis:EI|SN|TF|JP");
  ana->add_option("--out", metrics_out, "metrics JSON output path")->required();
  ana->add_option("--summary", summary_path, "run summary JSON (default: sibling of --traj)");

  // validate
  std::string sabotage;
  auto* val = app.add_subcommand("validate", "run the numeric oracle suite");
  val->add_option("--sabotage", sabotage, "deliberately break one subject (negative control)")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (est->parsed()) return run_estimate_priors(corpus_path, priors_out, alpha, quant, vocab_path);
    if (sim->parsed()) {
      seed_set = seed_opt->count() > 0;
      return run_simulate(config_path, sim_out_dir,
                          seed_set ? std::optional<std::int64_t>(seed_flag) : std::nullopt,
                          policy_override);
    }
    if (ana->parsed()) {
      return run_analyze(traj_path, ref_path, metric_names, group_by, metrics_out, summary_path);
    }
    if (val->parsed()) return run_validate(sabotage);
  } catch (const prism::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const prism::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const prism::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const prism::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
