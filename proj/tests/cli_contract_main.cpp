// Exercises the built CLI end to end: exit codes, file outputs, overrides.
// argv[1] = path to the prism binary, argv[2] = shipped configs directory.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

int run_cmd(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_contract_tests <prism-binary> <configs-dir>\n";
    return 2;
  }
  const std::string prism = argv[1];
  const fs::path configs = argv[2];
  const fs::path work = fs::temp_directory_path() / "prism_cli_contract";
  fs::remove_all(work);
  fs::create_directories(work);

  // --- estimate-priors ------------------------------------------------------
  const fs::path vocab3 = work / "vocab3.json";
  write(vocab3, R"(["a", "b", "c"])");
  const fs::path corpus = work / "corpus.jsonl";
  write(corpus,
        R"({"author_type": "ENTJ", "emotion": "a"})" "\n"
        R"({"author_type": "ENTJ", "emotion": "a"})" "\n"
        R"({"author_type": "ENTJ", "emotion": "a"})" "\n"
        R"({"author_type": "ENTJ", "emotion": "b"})" "\n");

  // On-grid quantization step 1/7 keeps the smoothed fixture values exact.
  const fs::path priors_out = work / "priors.json";
  int rc = run_cmd(prism + " estimate-priors --corpus " + corpus.string() + " --out " +
                   priors_out.string() + " --vocab " + vocab3.string() +
                   " --alpha 1.0 --quant 0.14285714285714285");
  check(rc == 0, "estimate-priors exits 0 on the fixture corpus");
  {
    const auto table = nlohmann::json::parse(slurp(priors_out));
    const auto dist = table.at("ENTJ").at("distribution").get<std::vector<double>>();
    const bool match = std::abs(dist[0] - 4.0 / 7.0) < 1e-9 &&
                       std::abs(dist[1] - 2.0 / 7.0) < 1e-9 &&
                       std::abs(dist[2] - 1.0 / 7.0) < 1e-9;
    check(match, "fixture counts [3,1,0] with alpha=1 give [4/7, 2/7, 1/7]");
    check(fs::exists(work / "priors.report.json") && fs::exists(work / "priors.report.txt"),
          "estimate-priors writes the report pair");
  }

  {
    // vocabulary entries as anchor objects
    write(work / "vocab_obj.json",
          R"([{"label": "calm", "valence": 0.1, "arousal": 0.1},)"
          R"( {"label": "tense", "valence": -0.5, "arousal": 0.8}])");
    write(work / "corpus_obj.jsonl", R"({"author_type": "ISTP", "emotion": "tense"})" "\n");
    rc = run_cmd(prism + " estimate-priors --corpus " + (work / "corpus_obj.jsonl").string() +
                 " --out " + (work / "obj.json").string() + " --vocab " +
                 (work / "vocab_obj.json").string() + " --quant 0.05");
    check(rc == 0, "object-form vocabulary entries are accepted");
  }

  const fs::path empty_corpus = work / "empty.jsonl";
  write(empty_corpus, "");
  rc = run_cmd(prism + " estimate-priors --corpus " + empty_corpus.string() + " --out " +
               (work / "uniform.json").string());
  check(rc == 0, "empty corpus exits 0 with uniform priors");
  {
    const auto table = nlohmann::json::parse(slurp(work / "uniform.json"));
    const auto dist = table.at("INTP").at("distribution").get<std::vector<double>>();
    bool uniform = dist.size() == 6;
    for (double p : dist) uniform = uniform && std::abs(p - 1.0 / 6.0) < 1e-9;
    check(uniform, "empty corpus yields the uniform table");
  }

  rc = run_cmd(prism + " estimate-priors --corpus " + corpus.string() + " --out " +
               (work / "x.json").string() + " --vocab " + vocab3.string() + " --alpha 0");
  check(rc == 2, "estimate-priors --alpha 0 exits 2");

  // Z = 0: a 50-label vocabulary quantized at 0.05 snaps uniform rows to zero.
  {
    nlohmann::json big = nlohmann::json::array();
    for (int i = 0; i < 50; ++i) big.push_back("label" + std::to_string(i));
    write(work / "vocab50.json", big.dump());
    rc = run_cmd(prism + " estimate-priors --corpus " + empty_corpus.string() + " --out " +
                 (work / "z0.json").string() + " --vocab " + (work / "vocab50.json").string() +
                 " --quant 0.05");
    check(rc == 3, "Z=0 quantization failure exits 3");
    check(!fs::exists(work / "z0.json"), "no partial output is left behind on failure");
  }

  rc = run_cmd(prism + " estimate-priors --corpus " + (work / "missing.jsonl").string() +
               " --out " + (work / "y.json").string());
  check(rc == 4, "missing corpus file exits 4");

  rc = run_cmd(prism + " estimate-priors --corpus " + corpus.string() + " --out " +
               (work / "y.json").string() + " --bogus-flag 1");
  check(rc == 2, "unknown flags are rejected with exit 2");

  // --- simulate ---------------------------------------------------------------
  const fs::path basic = configs / "basic_16.json";
  rc = run_cmd(prism + " simulate --config " + basic.string() + " --out " + (work / "runA").string());
  check(rc == 0, "simulate exits 0 on the shipped 16-agent config");
  rc = run_cmd(prism + " simulate --config " + basic.string() + " --out " + (work / "runB").string());
  check(rc == 0, "second simulate run exits 0");
  check(slurp(work / "runA" / "trajectory.jsonl") == slurp(work / "runB" / "trajectory.jsonl") &&
            !slurp(work / "runA" / "trajectory.jsonl").empty(),
        "same config+seed produce byte-identical trajectory files");

  rc = run_cmd(prism + " simulate --config " + basic.string() + " --out " + (work / "runC").string() +
               " --seed 12345");
  check(rc == 0, "seed override exits 0");
  check(slurp(work / "runA" / "trajectory.jsonl") != slurp(work / "runC" / "trajectory.jsonl"),
        "a different seed changes the trajectory");

  rc = run_cmd(prism + " simulate --config " + basic.string() + " --out " + (work / "runD").string() +
               " --policy remote");
  check(rc == 2, "--policy remote without an endpoint exits 2");

  rc = run_cmd(prism + " simulate --config " + (configs / "no_such.json").string() + " --out " +
               (work / "runE").string());
  check(rc == 4, "missing config file exits 4");

  {
    write(work / "bad.json", "{\"seed\": 1, \"unknown_key\": true}");
    rc = run_cmd(prism + " simulate --config " + (work / "bad.json").string() + " --out " +
                 (work / "runF").string());
    check(rc == 2, "config with unknown keys exits 2");
  }

  {
    // sigma0 large enough to overflow the diffusion term within a few steps
    nlohmann::json overflow = {
        {"seed", 1},
        {"dt", 0.1},
        {"horizon", 5.0},
        {"agents", {{{"id", "a0"}, {"mbti", "ENTJ"}}}},
        {"dynamics", {{"sigma0", 1e308}}},
    };
    write(work / "overflow.json", overflow.dump());
    rc = run_cmd(prism + " simulate --config " + (work / "overflow.json").string() + " --out " +
                 (work / "runG").string());
    check(rc == 3, "numeric blow-up during a run exits 3");
  }

  rc = run_cmd(prism + " simulate --config " + basic.string() + " --out /dev/null/nope");
  check(rc == 4, "unwritable output directory exits 4");

  // --- analyze ----------------------------------------------------------------
  const std::string traj = (work / "runA" / "trajectory.jsonl").string();
  rc = run_cmd(prism + " analyze --traj " + traj + " --metrics mae --out " + (work / "m.json").string());
  check(rc == 2, "analyze --metrics mae without --ref exits 2");

  rc = run_cmd(prism + " analyze --traj " + traj + " --ref " + traj + " --metrics mae --out " +
               (work / "mae.json").string());
  check(rc == 0, "analyze mae with ref = traj exits 0");
  {
    const auto m = nlohmann::json::parse(slurp(work / "mae.json"));
    check(std::abs(m.at("polarity_mae").get<double>()) < 1e-12, "mae against itself is 0.0");
  }

  rc = run_cmd(prism + " analyze --traj " + traj + " --metrics consistency --out " +
               (work / "cons.json").string());
  check(rc == 0, "analyze consistency exits 0 using the sibling summary");
  {
    const auto m = nlohmann::json::parse(slurp(work / "cons.json"));
    check(m.at("consistency").at("per_agent").size() == 16 && m.at("consistency").contains("mean"),
          "consistency reports rho per agent plus the mean");
  }

  rc = run_cmd(prism + " analyze --traj " + traj + " --ref " + (work / "mae.csv").string() +
               " --metrics mae --out " + (work / "mae2.json").string());
  check(rc == 0, "analyze accepts a previously exported plot csv as --ref");
  {
    const auto m = nlohmann::json::parse(slurp(work / "mae2.json"));
    check(std::abs(m.at("polarity_mae").get<double>()) < 1e-9, "csv-ref mae against itself is 0");
  }

  rc = run_cmd(prism + " analyze --traj " + traj + " --group-by axis:TF --out " +
               (work / "tf.json").string());
  check(rc == 0, "analyze --group-by axis:TF exits 0");
  {
    const std::string csv = slurp(work / "tf.csv");
    const bool has_t = csv.find(",T,") != std::string::npos;
    const bool has_f = csv.find(",F,") != std::string::npos;
    check(has_t && has_f, "axis:TF grouping emits exactly the two series");
  }

  // --- the shipped trigger scenario through the CLI ----------------------------
  rc = run_cmd(prism + " simulate --config " + (configs / "fig3_scenario.json").string() +
               " --out " + (work / "fig3").string());
  check(rc == 0, "fig3 scenario simulate exits 0");
  rc = run_cmd(prism + " analyze --traj " + (work / "fig3" / "trajectory.jsonl").string() +
               " --group-by axis:TF --out " + (work / "fig3_metrics.json").string());
  check(rc == 0, "fig3 scenario analyze exits 0");
  {
    // Reproduce the documented bifurcation direction from the plot data: at
    // the injection step the F group mean drops further than the T group.
    std::istringstream csv(slurp(work / "fig3_metrics.csv"));
    std::string line;
    std::getline(csv, line);  // header
    double pre_f = 0, pre_t = 0, at_f = 0, at_t = 0;
    while (std::getline(csv, line)) {
      std::istringstream ls(line);
      std::string t_str, group, v_str;
      std::getline(ls, t_str, ',');
      std::getline(ls, group, ',');
      std::getline(ls, v_str);
      const double t = std::stod(t_str);
      const double v = std::stod(v_str);
      if (std::abs(t - 20.9) < 1e-9) (group == "F" ? pre_f : pre_t) = v;
      if (std::abs(t - 21.0) < 1e-9) (group == "F" ? at_f : at_t) = v;
    }
    const double drop_f = at_f - pre_f;
    const double drop_t = at_t - pre_t;
    check(drop_f < drop_t && drop_f < 0.0,
          "fig3 plot data shows the F group dropping further than T at the trigger");
  }

  // --- validate ------------------------------------------------------------------
  rc = run_cmd(prism + " validate");
  check(rc == 0, "validate exits 0 with all oracles passing");
  rc = run_cmd(prism + " validate --sabotage projection");
  check(rc != 0, "validate --sabotage projection reports the oracle failure");

  if (g_failures == 0) {
    std::printf("cli contract: all checks passed\n");
    fs::remove_all(work);
    return 0;
  }
  std::printf("cli contract: %d checks FAILED (work dir kept at %s)\n", g_failures, work.c_str());
  return 1;
}
