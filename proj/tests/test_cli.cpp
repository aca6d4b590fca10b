#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the command-line binary against the shipped sample
// documents: exit codes, determinism, and re-validation of emitted files.

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(ESG_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    out.append(buffer.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fixture(const std::string& name) {
  return std::string(ESG_FIXTURES_DIR) + "/" + name;
}

std::string temp_file(const std::string& name) {
  return std::string("/tmp/esg_cli_test_") + name;
}

}  // namespace

TEST_CASE("validate returns 0 on clean documents", "[cli]") {
  CHECK(run_cli("validate es " + fixture("es_chain.json")).code == 0);
  CHECK(run_cli("validate algebra " + fixture("algebra_edge.json")).code == 0);
  CHECK(run_cli("validate game " + fixture("game_single_neg.json")).code == 0);
  CHECK(run_cli("validate strategy " + fixture("strategy_two_values.json"))
            .code == 0);
  CHECK(run_cli("validate neutral " + fixture("neutral_game.json")).code == 0);
  CHECK(run_cli("validate lambda " + fixture("pes_chain.json") + " " +
                fixture("levels_chain.json"))
            .code == 0);
}

TEST_CASE("validate returns 1 on violations and prints them", "[cli]") {
  std::string bad = temp_file("bad_es.json");
  {
    std::ofstream out(bad);
    out << R"({"events":["a","b"],"covering":[["a","b"],["b","a"]],)"
        << R"("min_inconsistent":[]})";
  }
  RunResult r = run_cli("validate es " + bad);
  CHECK(r.code == 1);
  CHECK(r.out.find("cycle") != std::string::npos);
}

TEST_CASE("malformed input returns 2", "[cli]") {
  std::string bad = temp_file("malformed.json");
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  CHECK(run_cli("validate es " + bad).code == 2);
  CHECK(run_cli("validate es /nonexistent.json").code == 2);
  std::string dup = temp_file("dup_es.json");
  {
    std::ofstream out(dup);
    out << R"({"events":["a","a"],"covering":[],"min_inconsistent":[]})";
  }
  CHECK(run_cli("validate es " + dup).code == 2);
}

TEST_CASE("configs lists exactly the configurations", "[cli]") {
  RunResult r = run_cli("configs " + fixture("es_chain.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("e1") != std::string::npos);
  // chain has three configurations
  CHECK(r.out ==
        "{\n  \"configurations\": [\n    [],\n    [\n      \"e1\"\n    ],\n"
        "    [\n      \"e1\",\n      \"e2\"\n    ]\n  ]\n}\n");
}

TEST_CASE("outputs are byte-identical across runs", "[cli]") {
  for (const std::string& args :
       {std::string("expand ") + fixture("game_single_neg.json"),
        std::string("a-copycat ") + fixture("game_single_neg.json"),
        std::string("gen hom ") + fixture("algebra_set1.json") + " " +
            fixture("algebra_set2.json") + " --k 2 --n 1"}) {
    RunResult first = run_cli(args);
    RunResult second = run_cli(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
  }
}

TEST_CASE("emitted documents re-validate cleanly", "[cli]") {
  std::string game = temp_file("gen_game.json");
  REQUIRE(run_cli("gen ef " + fixture("algebra_set1.json") + " " +
                  fixture("algebra_set2.json") + " --k 2 --n 1 --out " + game)
              .code == 0);
  CHECK(run_cli("validate game " + game).code == 0);

  std::string cc = temp_file("a_copycat.json");
  REQUIRE(run_cli("a-copycat " + fixture("game_single_neg.json") + " --out " +
                  cc)
              .code == 0);
  CHECK(run_cli("validate strategy " + cc).code == 0);
}

TEST_CASE("theta and reduc are inverse through the files", "[cli]") {
  std::string up = temp_file("theta.json");
  std::string down = temp_file("reduc.json");
  REQUIRE(run_cli("theta " + fixture("strategy_two_values.json") + " --out " +
                  up)
              .code == 0);
  REQUIRE(run_cli("reduc " + up + " --out " + down).code == 0);
  CHECK(run_cli("validate strategy " + down).code == 0);

  std::ifstream original_in(fixture("strategy_two_values.json"));
  std::ifstream back_in(down);
  std::stringstream original, back;
  original << original_in.rdbuf();
  back << back_in.rdbuf();
  // compare the semantic content: sigma and inst survive the round trip
  CHECK(back.str().find("\"sa\": \"e\"") != std::string::npos);
  CHECK(back.str().find("\"sa\": \"a\"") != std::string::npos);
  CHECK(back.str().find("\"sb\": \"b\"") != std::string::npos);
}

TEST_CASE("oracle matches the anchors through the CLI", "[cli]") {
  RunResult win = run_cli("oracle ef " + fixture("algebra_set1.json") + " " +
                          fixture("algebra_set2.json") + " --k 2 --n 1");
  CHECK(win.code == 0);
  CHECK(win.out.find("true") != std::string::npos);
  RunResult lose = run_cli("oracle ef " + fixture("algebra_set1.json") + " " +
                           fixture("algebra_set2.json") + " --k 2 --n 2");
  CHECK(lose.code == 0);
  CHECK(lose.out.find("false") != std::string::npos);
}

TEST_CASE("compose chains two relays through the files", "[cli]") {
  // hand-written single-relay strategies; the composite has two events
  auto write_relay = [](const std::string& path, const std::string& from,
                        const std::string& to) {
    std::ofstream out(path);
    out << R"({
  "s_es": {"events": ["r", "s"], "covering": [["r", "s"]], "min_inconsistent": []},
  "pol": {"r": "-", "s": "+"},
  "sigma": {"r": "1:)" << from << R"(", "s": "2:)" << to << R"("},
  "game": {
    "es": {"events": ["1:)" << from << R"(", "2:)" << to << R"("], "covering": [], "min_inconsistent": []},
    "pol": {"1:)" << from << R"(": "-", "2:)" << to << R"(": "+"}
  }
})";
  };
  std::string ab = temp_file("relay_ab.json");
  std::string bc = temp_file("relay_bc.json");
  write_relay(ab, "a", "b");
  write_relay(bc, "b", "c");
  std::string composed = temp_file("relay_ac.json");
  REQUIRE(run_cli("compose " + ab + " " + bc + " --out " + composed).code ==
          0);
  CHECK(run_cli("validate strategy " + composed).code == 0);
  std::ifstream in(composed);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str().find("1:a") != std::string::npos);
  CHECK(text.str().find("2:c") != std::string::npos);
}

TEST_CASE("conjecture harnesses emit one verdict per instance", "[cli]") {
  RunResult induced = run_cli("conjectures induced --seed 7");
  CHECK(induced.code == 0);
  int lines = 0;
  std::stringstream stream(induced.out);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    ++lines;
    CHECK(line.find("\"verdict\"") != std::string::npos);
  }
  CHECK(lines >= 5);
}

TEST_CASE("lift subcommands drive the two transports", "[cli]") {
  // plain strategy: chain of two negatives, identity map
  std::string st = temp_file("lift_strategy.json");
  {
    std::ofstream out(st);
    out << R"({
  "s_es": {"events": ["m1", "m2"], "covering": [["m1", "m2"]], "min_inconsistent": []},
  "pol": {"m1": "-", "m2": "-"},
  "sigma": {"m1": "m1", "m2": "m2"},
  "game": {
    "es": {"events": ["m1", "m2"], "covering": [["m1", "m2"]], "min_inconsistent": []},
    "pol": {"m1": "-", "m2": "-"}
  }
})";
  }
  RunResult grow =
      run_cli("lift extend " + st + " --x [] --y '[\"m1\",\"m2\"]'");
  CHECK(grow.code == 0);
  CHECK(grow.out.find("m2") != std::string::npos);
  RunResult bad = run_cli("lift extend " + st + " --x '[\"m2\"]' --y []");
  CHECK(bad.code == 2);
}
