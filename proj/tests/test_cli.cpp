#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code;
  std::string out;

  // the JSON report is the output from the first '{' on
  nlohmann::json json() const {
    auto pos = out.find('{');
    REQUIRE(pos != std::string::npos);
    return nlohmann::json::parse(out.substr(pos));
  }
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string out_file = "/tmp/tcclab_test_out_" + std::to_string(counter++);
  std::string cmd = std::string(TCCLAB_CLI_PATH) + " " + args + " > " + out_file +
                    " 2>/dev/null";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream buf;
  buf << in.rdbuf();
  std::remove(out_file.c_str());
  return {code, buf.str()};
}

std::string fixture(const std::string& name) {
  return std::string(TCCLAB_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse: canonical form on success, exit 2 on errors") {
  auto ok = run_cli("parse " + fixture("2b.sbt"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("[_D old [_D the [_N red boat]]]") != std::string::npos);

  CHECK(run_cli("parse /nonexistent/missing.sbt").exit_code == 2);

  auto ternary = run_cli("parse " + fixture("ternary.sbt"));
  CHECK(ternary.exit_code == 2);
}

TEST_CASE("complexity: sequence literal and structure file") {
  auto seq = run_cli("complexity --seq 0001101001000101");
  CHECK(seq.exit_code == 0);
  CHECK(seq.json()["result"]["phrase_count"] == 6);
  CHECK(seq.json()["result"]["display"] == "1.50");

  auto file = run_cli("complexity " + fixture("2b.sbt") +
                      " --scheme labels+terminals");
  CHECK(file.exit_code == 0);
  CHECK(file.json()["result"]["length"] == 7);

  CHECK(run_cli("complexity --seq 0").exit_code == 3);
  CHECK(run_cli("complexity --seq 01 --scheme nonsense").exit_code == 0);
}

TEST_CASE("compare: preferred candidate and tie handling") {
  auto v = run_cli("compare " + fixture("14a.sbt") + " " + fixture("14b.sbt") +
                   " --scheme path-steps");
  CHECK(v.exit_code == 0);
  auto vr = v.json()["result"];
  CHECK(vr["preferred"] == nlohmann::json::array({fixture("14b.sbt")}));
  CHECK(vr["tie"] == false);

  auto tie = run_cli("compare " + fixture("2b.sbt") + " " + fixture("2b.sbt") +
                     " --scheme labels+terminals");
  CHECK(tie.exit_code == 0);
  CHECK(tie.json()["result"]["tie"] == true);

  auto fifteen = run_cli("compare " + fixture("15a.sbt") + " " +
                         fixture("15b.sbt") + " --scheme phrase-labels");
  CHECK(fifteen.exit_code == 0);
  CHECK(fifteen.json()["result"]["preferred"] ==
        nlohmann::json::array({fixture("15b.sbt")}));

  CHECK(run_cli("compare " + fixture("2b.sbt") + " " + fixture("2c.sbt") +
                " --scheme nonsense").exit_code == 3);
}

TEST_CASE("corpus: all orderings correct, exit 0") {
  auto res = run_cli("corpus " + std::string(TCCLAB_FIXTURE_DIR));
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("correct: 4/4") != std::string::npos);
  CHECK(res.json()["result"]["all_correct"] == true);

  CHECK(run_cli("corpus /nonexistent-dir").exit_code == 2);
}

TEST_CASE("corpus: an inverted gold label exits 1 and names the row") {
  std::string dir = "/tmp/tcclab_bad_corpus";
  std::system(("mkdir -p " + dir).c_str());
  std::system(("cp " + fixture("2b.sbt") + " " + fixture("2c.sbt") + " " + dir)
                  .c_str());
  std::ofstream manifest(dir + "/corpus.json");
  manifest << R"({"pairs":[{"id":"bad2","scheme":"labels+terminals",)"
           << R"("grammatical":"2c.sbt","ungrammatical":"2b.sbt"}]})";
  manifest.close();
  auto res = run_cli("corpus " + dir);
  CHECK(res.exit_code == 1);
  CHECK(res.out.find("WRONG") != std::string::npos);
  CHECK(res.out.find("bad2") != std::string::npos);
  std::system(("rm -rf " + dir).c_str());
}

TEST_CASE("derive: counts and config validation") {
  auto res = run_cli("derive --lexicon " + fixture("lexicon_ab.json") +
                     " --steps 2 --constraints NoTampering,Extension");
  CHECK(res.exit_code == 0);
  CHECK(res.json()["result"]["total_sets"] == 3);

  CHECK(run_cli("derive --lexicon " + fixture("lexicon_ab.json") + " --steps 0")
            .exit_code == 2);

  auto budget = run_cli("derive --lexicon " + fixture("lexicon_ab.json") +
                        " --steps 8 --constraints NoTampering,Extension "
                        "--dedupe none --mem-budget 0.0001");
  CHECK(budget.exit_code == 4);
  CHECK(budget.json()["result"]["partial"] == true);
}

TEST_CASE("fep subcommands") {
  auto kl = run_cli("fep kl --model " + fixture("fep/kl_equal.json"));
  CHECK(kl.exit_code == 0);
  CHECK(kl.json()["result"]["kl_divergence"] == 0.0);

  auto vfe = run_cli("fep vfe --model " + fixture("fep/vfe_basic.json"));
  CHECK(vfe.exit_code == 0);
  CHECK(vfe.json()["result"]["max_residual"].get<double>() <= 1e-9);

  auto efe = run_cli("fep efe --model " + fixture("fep/efe_basic.json"));
  CHECK(efe.exit_code == 0);
  CHECK(efe.json()["result"]["eq6_residual"].get<double>() <= 1e-9);

  CHECK(run_cli("fep kl --model /nonexistent.json").exit_code == 2);
}

TEST_CASE("TCCLAB_SCHEME_MANIFEST overrides the registry") {
  // the shipped manifest reproduces the default behavior
  std::string with_env = "TCCLAB_SCHEME_MANIFEST=" + fixture("schemes.json") +
                         " " + std::string(TCCLAB_CLI_PATH);
  std::string out_file = "/tmp/tcclab_env_out";
  std::string cmd = with_env + " complexity " + fixture("2b.sbt") +
                    " --scheme labels+terminals > " + out_file + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);

  // a restricted manifest makes other schemes unknown
  std::ofstream mini("/tmp/tcclab_mini_manifest.json");
  mini << R"({"schemes":[{"id":"only","node_classes":["labels"],)"
       << R"("symbol_map":"category-identity"}]})";
  mini.close();
  cmd = "TCCLAB_SCHEME_MANIFEST=/tmp/tcclab_mini_manifest.json " +
        std::string(TCCLAB_CLI_PATH) + " complexity " + fixture("2b.sbt") +
        " --scheme labels+terminals > /dev/null 2>&1";
  status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 3);
  std::remove(out_file.c_str());
  std::remove("/tmp/tcclab_mini_manifest.json");
}

TEST_CASE("byte-reproducibility of reports") {
  std::string cmd = "corpus " + std::string(TCCLAB_FIXTURE_DIR);
  auto a = run_cli(cmd);
  auto b = run_cli(cmd);
  CHECK(a.out == b.out);

  auto c1 = run_cli("complexity --seq 0011010");
  auto c2 = run_cli("complexity --seq 0011010");
  CHECK(c1.out == c2.out);
}

}  // TEST_SUITE
