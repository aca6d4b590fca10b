// Command-line front end over the JSON document formats: validation,
// construction, evaluation, generation, oracles and conjecture suites.
//
// Exit codes: 0 success (empty report), 1 validation violations found,
// 2 malformed input or precondition failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esg/esg.hpp"

namespace {

using namespace esg;

constexpr uint64_t kDefaultSeed = 20240601;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text;
  }
}

void emit_lines(const std::vector<Json>& lines, const std::string& out_path) {
  std::ostringstream text;
  for (const auto& j : lines) text << j.dump() << "\n";
  if (out_path.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text.str();
  }
}

int report_result(const ValidationReport& report,
                  const std::string& out_path) {
  Json j;
  j["violations"] = report.violations;
  emit(j, out_path);
  return report.ok() ? 0 : 1;
}

Json config_to_json(const Configuration& x) { return Json(x); }

Configuration config_from_arg(const std::string& text) {
  Json j = Json::parse(text);
  auto listed = j.get<std::vector<EventId>>();
  return Configuration(listed.begin(), listed.end());
}

int run_validate(const std::string& what, const std::string& path,
                 const std::string& aux, const std::string& out_path) {
  Json j = load_json(path);
  if (what == "es")
    return report_result(validate_event_structure(event_structure_from_json(j)),
                         out_path);
  if (what == "algebra")
    return report_result(validate_algebra(algebra_from_json(j)), out_path);
  if (what == "game")
    return report_result(validate_agame(agame_from_json(j)), out_path);
  if (what == "neutral")
    return report_result(validate_neutral_game(neutral_game_from_json(j)),
                         out_path);
  if (what == "strategy") {
    if (j.contains("inst"))
      return report_result(check_astrategy(astrategy_from_json(j)), out_path);
    return report_result(check_strategy(plain_strategy_from_json(j)),
                         out_path);
  }
  if (what == "lambda") {
    if (aux.empty())
      throw std::invalid_argument("validate lambda needs BASE and LEVELS files");
    LevelMap lm = level_map_from_json(load_json(aux));
    if (j.contains("s_es")) {
      Strategy st = plain_strategy_from_json(j);
      ValidationReport report = check_strategy(st);
      report.merge(check_lambda_strategy(st, lm));
      return report_result(report, out_path);
    }
    PolarizedES base = polarized_es_from_json(j);
    return report_result(validate_lambda_game(base, lm), out_path);
  }
  throw std::invalid_argument("unknown validation target '" + what + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concurrent games on event structures with algebras"};
  app.require_subcommand(1);

  std::string in1, in2, aux, out_path, suite = "default", formula_path;
  std::string x_arg, y_arg;
  uint64_t seed = kDefaultSeed;
  int k = 1, n = 1, max_events = 4;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write the result to a file");
  };

  auto* validate = app.add_subcommand("validate", "validate a document");
  std::string target;
  validate->add_option("target", target, "es|algebra|game|strategy|neutral|lambda")
      ->required();
  validate->add_option("file", in1, "document to validate")->required();
  validate->add_option("levels", aux, "levels document (lambda only)");
  add_out(validate);

  auto* configs = app.add_subcommand("configs", "enumerate configurations");
  configs->add_option("file", in1, "event structure document")->required();
  add_out(configs);

  auto* expand = app.add_subcommand("expand", "expand a game with algebra");
  expand->add_option("file", in1, "game document")->required();
  add_out(expand);

  auto* theta_cmd = app.add_subcommand(
      "theta", "transport a strategy with algebra onto the expansion");
  theta_cmd->add_option("file", in1, "strategy document")->required();
  add_out(theta_cmd);

  auto* reduc_cmd = app.add_subcommand(
      "reduc", "translate a strategy on an expansion back");
  reduc_cmd->add_option("file", in1, "strategy-on-expansion document")
      ->required();
  add_out(reduc_cmd);

  auto* copycat_cmd = app.add_subcommand("copycat", "copycat strategy");
  copycat_cmd->add_option("file", in1, "polarized event structure document")
      ->required();
  add_out(copycat_cmd);

  auto* a_copycat_cmd =
      app.add_subcommand("a-copycat", "copycat for a game with algebra");
  a_copycat_cmd->add_option("file", in1, "game document")->required();
  add_out(a_copycat_cmd);

  auto* compose_cmd =
      app.add_subcommand("compose", "compose two plain strategies");
  compose_cmd->add_option("first", in1, "strategy on A⊥||B")->required();
  compose_cmd->add_option("second", in2, "strategy on B⊥||C")->required();
  add_out(compose_cmd);

  auto* a_compose_cmd = app.add_subcommand(
      "a-compose", "compose two strategies with algebras");
  a_compose_cmd->add_option("first", in1, "strategy document")->required();
  a_compose_cmd->add_option("second", in2, "strategy document")->required();
  add_out(a_compose_cmd);

  auto* winning_cmd =
      app.add_subcommand("winning", "evaluate a winning condition");
  winning_cmd->add_option("file", in1, "strategy document")->required();
  winning_cmd->add_option("--formula", formula_path,
                          "formula document (defaults to the game's)");
  add_out(winning_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "generate a model-comparison game");
  std::string kind;
  gen_cmd->add_option("kind", kind, "hom|ef")->required();
  gen_cmd->add_option("a", in1, "first structure document")->required();
  gen_cmd->add_option("b", in2, "second structure document")->required();
  gen_cmd->add_option("--k", k, "pebbles")->required();
  gen_cmd->add_option("--n", n, "rounds")->required();
  add_out(gen_cmd);

  auto* oracle_cmd =
      app.add_subcommand("oracle", "positional back-and-forth oracle");
  oracle_cmd->add_option("kind", kind, "hom|ef")->required();
  oracle_cmd->add_option("a", in1, "first structure document")->required();
  oracle_cmd->add_option("b", in2, "second structure document")->required();
  oracle_cmd->add_option("--k", k, "pebbles")->required();
  oracle_cmd->add_option("--n", n, "rounds")->required();
  add_out(oracle_cmd);

  auto* conj_cmd = app.add_subcommand("conjectures", "run a conjecture harness");
  std::string harness;
  conj_cmd->add_option("harness", harness, "stability|induced|games")
      ->required();
  conj_cmd->add_option("--suite", suite, "suite name or JSON file");
  conj_cmd->add_option("--seed", seed, "seed for randomized suites");
  conj_cmd->add_option("--max-events", max_events,
                       "size bound for randomized suites");
  add_out(conj_cmd);

  auto* lift_cmd = app.add_subcommand(
      "lift", "extend or restrict a configuration through a strategy");
  std::string lift_dir;
  lift_cmd->add_option("direction", lift_dir, "extend|restrict")->required();
  lift_cmd->add_option("file", in1, "strategy document")->required();
  lift_cmd->add_option("--x", x_arg, "strategy configuration (JSON list)")
      ->required();
  lift_cmd->add_option("--y", y_arg, "game configuration (JSON list)")
      ->required();
  add_out(lift_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed())
      return run_validate(target, in1, aux, out_path);

    if (configs->parsed()) {
      EventStructure es = event_structure_from_json(load_json(in1));
      ValidationReport report = validate_event_structure(es);
      if (!report.ok()) return report_result(report, out_path);
      Json j = Json::array();
      for (const auto& x : enumerate_configurations(es))
        j.push_back(config_to_json(x));
      emit(Json{{"configurations", j}}, out_path);
      return 0;
    }

    if (expand->parsed()) {
      AGame g = agame_from_json(load_json(in1));
      emit(to_json(expand_game(g)), out_path);
      return 0;
    }

    if (theta_cmd->parsed()) {
      AStrategy ast = astrategy_from_json(load_json(in1));
      ExpandedGame x = expand_game(ast.game);
      Strategy st = theta(ast, x);
      emit(strategy_to_json(st.s, st.sigma, nullptr, to_json(x)), out_path);
      return 0;
    }

    if (reduc_cmd->parsed()) {
      Json j = load_json(in1);
      ExpandedGame x = expanded_game_from_json(j.at("game"));
      Strategy st;
      st.s = strategy_pes_from_json(j);
      st.game = x.pes;
      for (const auto& [a, b] : j.at("sigma").items())
        st.sigma[a] = b.get<EventId>();
      emit(to_json(reduc(st, x)), out_path);
      return 0;
    }

    if (copycat_cmd->parsed()) {
      PolarizedES a = polarized_es_from_json(load_json(in1));
      emit(to_json(copycat(a)), out_path);
      return 0;
    }

    if (a_copycat_cmd->parsed()) {
      AGame g = agame_from_json(load_json(in1));
      emit(to_json(a_copycat(g)), out_path);
      return 0;
    }

    if (compose_cmd->parsed()) {
      Strategy st1 = plain_strategy_from_json(load_json(in1));
      Strategy st2 = plain_strategy_from_json(load_json(in2));
      emit(to_json(compose_classic(st1, st2)), out_path);
      return 0;
    }

    if (a_compose_cmd->parsed()) {
      AStrategy ast1 = astrategy_from_json(load_json(in1));
      AStrategy ast2 = astrategy_from_json(load_json(in2));
      emit(to_json(a_compose(ast1, ast2)), out_path);
      return 0;
    }

    if (winning_cmd->parsed()) {
      AStrategy ast = astrategy_from_json(load_json(in1));
      FormulaPtr w = formula_path.empty()
                         ? ast.game.winning_or_true()
                         : formula_from_json(load_json(formula_path));
      auto verdict = is_winning(ast, w);
      Json j;
      j["winning"] = verdict.winning;
      if (verdict.witness) j["witness"] = config_to_json(*verdict.witness);
      emit(j, out_path);
      return 0;
    }

    if (gen_cmd->parsed() || oracle_cmd->parsed()) {
      ModelGameKind mk;
      if (kind == "hom")
        mk = ModelGameKind::hom;
      else if (kind == "ef")
        mk = ModelGameKind::ef;
      else
        throw std::invalid_argument("kind must be hom or ef");
      Algebra a = algebra_from_json(load_json(in1));
      Algebra b = algebra_from_json(load_json(in2));
      if (gen_cmd->parsed()) {
        emit(to_json(gen_model_game(mk, a, b, k, n)), out_path);
      } else {
        emit(Json{{"duplicator_wins", oracle_decide(mk, a, b, k, n)}},
             out_path);
      }
      return 0;
    }

    if (conj_cmd->parsed()) {
      std::vector<Json> lines;
      if (harness == "games") {
        std::vector<GameConjectureInstance> instances;
        if (suite == "default" || suite == "small") {
          instances = small_games_suite();
        } else {
          for (const auto& item : load_json(suite)) {
            GameConjectureInstance inst;
            inst.id = item.at("id").get<std::string>();
            inst.kind = item.at("kind").get<std::string>() == "hom"
                            ? ModelGameKind::hom
                            : ModelGameKind::ef;
            inst.a = algebra_from_json(item.at("a"));
            inst.b = algebra_from_json(item.at("b"));
            inst.k = item.at("k").get<int>();
            inst.n = item.at("n").get<int>();
            instances.push_back(std::move(inst));
          }
        }
        lines.push_back(Json{
            {"note",
             "verdicts compare the bounded strategy search against the "
             "positional oracle at the stated (k,n) truncation; the "
             "untruncated games are out of scope"}});
        for (const auto& v : check_game_conjectures(instances)) {
          lines.push_back(Json{{"instance", v.id},
                               {"kind", v.kind},
                               {"k", v.k},
                               {"n", v.n},
                               {"search", v.search_status},
                               {"oracle", v.oracle},
                               {"verdict", v.agree ? "agree" : "disagree"}});
        }
      } else if (harness == "stability") {
        std::vector<StabilityInstance> instances;
        if (suite == "default") {
          instances = default_stability_suite(seed, max_events);
        } else {
          for (const auto& item : load_json(suite)) {
            StabilityInstance inst;
            inst.id = item.at("id").get<std::string>();
            inst.e = agame_from_json(item.at("e"));
            inst.f = agame_from_json(item.at("f"));
            inst.g = agame_from_json(item.at("g"));
            inst.ast1 = astrategy_from_json(item.at("ast1"));
            inst.ast2 = astrategy_from_json(item.at("ast2"));
            instances.push_back(std::move(inst));
          }
        }
        for (const auto& v : check_winning_stability(instances)) {
          Json j{{"instance", v.id}, {"verdict", v.verdict}};
          if (v.witness) j["witness"] = config_to_json(*v.witness);
          if (!v.trace.empty()) j["trace"] = v.trace;
          if (v.composed) j["composed"] = to_json(*v.composed);
          lines.push_back(j);
        }
      } else if (harness == "induced") {
        std::vector<AStrategy> instances;
        if (suite == "default") {
          instances = default_induced_suite(seed, std::min(max_events, 3));
        } else {
          for (const auto& item : load_json(suite))
            instances.push_back(astrategy_from_json(item));
        }
        int id = 0;
        for (const auto& ast : instances) {
          auto report = check_induced_conjecture(ast);
          Json disagreements = Json::array();
          for (const auto& entry : report.entries) {
            if (entry.agree()) continue;
            disagreements.push_back(Json{{"relation", entry.relation},
                                         {"tuple", entry.tuple},
                                         {"direct", entry.direct},
                                         {"via_formula", entry.via_formula}});
          }
          lines.push_back(
              Json{{"instance", "s" + std::to_string(id++)},
                   {"checked", report.entries.size()},
                   {"verdict", report.all_agree() ? "agree" : "disagree"},
                   {"disagreements", disagreements}});
        }
      } else {
        throw std::invalid_argument("harness must be stability|induced|games");
      }
      emit_lines(lines, out_path);
      return 0;
    }

    if (lift_cmd->parsed()) {
      Json j = load_json(in1);
      Strategy st;
      if (j.contains("inst")) {
        st = strategy_of(astrategy_from_json(j));
      } else {
        st = plain_strategy_from_json(j);
      }
      Configuration x = config_from_arg(x_arg);
      Configuration y = config_from_arg(y_arg);
      Configuration result = lift_dir == "extend"
                                 ? extend_along_negative(st, x, y)
                                 : restrict_along_positive(st, x, y);
      emit(Json{{"configuration", config_to_json(result)}}, out_path);
      return 0;
    }
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
