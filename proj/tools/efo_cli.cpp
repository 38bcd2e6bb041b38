// Command-line front end: solve, verify, oracle, and gen subcommands over
// JSON instances on files or stdin/stdout.
//
// Exit codes: 0 success; 1 failed verification or internal defect; 2 input or
// parse error; 3 unmet algorithm precondition. Errors are reported on stderr
// as {"error": {"kind", "reason", "detail"}} with a stable reason slug.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "efo/additive.hpp"
#include "efo/binary.hpp"
#include "efo/envy.hpp"
#include "efo/errors.hpp"
#include "efo/instances.hpp"
#include "efo/json_io.hpp"
#include "efo/model.hpp"
#include "efo/monotone.hpp"
#include "efo/oracle.hpp"
#include "efo/rational.hpp"
#include "efo/simple.hpp"

namespace {

using efo::Instance;
using efo::Json;
using efo::Rational;
using efo::Solution;

std::string read_text(const std::string& path) {
  if (path.empty()) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) efo::throw_input("bad-file", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) efo::throw_input("bad-file", "cannot write " + path);
  out << content;
}

efo::Formula parse_formula(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    efo::throw_input("bad-json", e.what());
  }
  efo::Formula f;
  f.variables = static_cast<int>(efo::json_detail::int_field(j, "variables"));
  if (!j.contains("clauses") || !j["clauses"].is_array())
    efo::throw_input("bad-formula", "missing clauses array");
  for (const Json& clause : j["clauses"]) {
    if (!clause.is_array() || clause.size() != 3)
      efo::throw_input("bad-formula", "each clause needs exactly 3 literals");
    f.clauses.push_back({clause[0].get<int>(), clause[1].get<int>(),
                         clause[2].get<int>()});
  }
  efo::validate_formula(f);
  return f;
}

// Routing for --algo auto: the specialised solvers in order of the strength
// of their guarantee, then the general monotone bound.
std::string pick_algo(const Instance& ins) {
  if (ins.is_binary_additive()) return "binary";
  if (ins.valuation.additive && efo::all_unit_normalized(ins))
    return "additive-multi";
  if (!ins.graph.has_parallel_edges() && efo::all_unit_normalized(ins) &&
      ins.n() >= 3)
    return "simple-monotone";
  return "monotone-multi";
}

int do_solve(const std::string& instance_path, const std::string& algo_flag,
             const std::string& output_path) {
  Instance ins = efo::parse_instance(read_text(instance_path));
  const std::string algo = algo_flag == "auto" ? pick_algo(ins) : algo_flag;
  Solution sol;
  std::string bound;
  if (algo == "binary") {
    sol = efo::solve_binary(ins);
    bound = "optimal";
  } else if (algo == "additive-multi") {
    sol = efo::solve_additive_multigraph(ins);
    bound = "n/2";
  } else if (algo == "simple-monotone") {
    sol = efo::solve_simple_monotone(ins);
    bound = ins.n() >= 3 ? "n-2" : "n-1";
  } else {
    sol = efo::solve_monotone_multigraph(ins);
    bound = "n-1";
  }
  write_text(output_path, efo::serialize_solution(sol, bound));
  return 0;
}

int do_verify(const std::string& instance_path,
              const std::string& solution_path,
              const std::string& output_path) {
  Instance ins = efo::parse_instance(read_text(instance_path));
  Solution sol = efo::parse_solution(read_text(solution_path));
  efo::VerifyReport report = efo::verify_solution(ins, sol);
  Json j;
  j["checks"] = Json::array();
  for (const efo::VerifyCheck& c : report.checks)
    j["checks"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["all_pass"] = report.all_pass;
  j["total_subsidy"] = efo::to_string(report.total_subsidy);
  j["total_subsidy_approx"] = efo::to_double(report.total_subsidy);
  write_text(output_path, j.dump(2) + "\n");
  return report.all_pass ? 0 : 1;
}

int do_oracle(const std::string& instance_path, const std::string& output_path,
              int max_edges, int jobs) {
  Instance ins = efo::parse_instance(read_text(instance_path));
  efo::OracleResult res =
      efo::brute_force_min_subsidy(ins, {max_edges, jobs});
  Json j;
  j["feasible"] = res.feasible;
  j["ef_zero_exists"] = res.ef_zero_exists;
  j["visited"] = res.visited;
  if (res.feasible) {
    j["min_total"] = efo::to_string(res.min_total);
    j["min_total_approx"] = efo::to_double(res.min_total);
    j["orientation"] = res.best.owner;
    j["payments"] = Json::array();
    for (const Rational& p : res.best_payments)
      j["payments"].push_back(efo::to_string(p));
  }
  write_text(output_path, j.dump(2) + "\n");
  return 0;
}

int do_gen(const std::string& family, const std::string& formula_path,
           unsigned long long seed, int variables, int pairs, int n, int m,
           const std::string& kind, bool simple, const std::string& epsilon,
           const std::string& output_path) {
  Instance ins;
  if (family == "sat") {
    efo::Formula f = formula_path.empty()
                         ? efo::gen_random_2p2n3(seed, variables)
                         : parse_formula(read_text(formula_path));
    ins = efo::gen_from_2p2n3sat(f);
  } else if (family == "parallel-pairs") {
    ins = efo::gen_parallel_pairs(pairs);
  } else if (family == "threshold-clique") {
    ins = efo::gen_threshold_clique(n);
  } else if (family == "epsilon-path") {
    std::optional<Rational> eps = efo::parse_rational(epsilon);
    if (!eps) efo::throw_input("bad-epsilon", "not a rational: " + epsilon);
    ins = efo::gen_epsilon_path(*eps);
  } else if (family == "local-cycle") {
    ins = efo::gen_locally_efable_cycle();
  } else {
    ins = efo::gen_random(seed, n, m, kind, simple);
  }
  write_text(output_path, efo::serialize_instance(ins));
  return 0;
}

const char* kind_name(efo::ErrorKind kind) {
  switch (kind) {
    case efo::ErrorKind::input:
      return "input";
    case efo::ErrorKind::precondition:
      return "precondition";
    default:
      return "internal";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Envy-free orientations of multigraphs with bounded subsidy"};
  app.require_subcommand(1);

  std::string instance_path, solution_path, output_path;
  std::string algo = "auto";
  int max_edges = 20, jobs = 1;

  const std::vector<std::string> algos = {"auto", "binary", "monotone-multi",
                                          "additive-multi", "simple-monotone"};

  CLI::App* solve =
      app.add_subcommand("solve", "Orient an instance and price the envy away");
  solve->add_option("--instance", instance_path,
                    "Instance JSON file (default: stdin)");
  solve->add_option("--algo", algo, "Solver to use")
      ->check(CLI::IsMember(algos));
  solve->add_option("--output", output_path,
                    "Solution JSON file (default: stdout)");

  CLI::App* verify =
      app.add_subcommand("verify", "Check a solution against its instance");
  verify->add_option("--instance", instance_path,
                     "Instance JSON file (default: stdin)");
  verify->add_option("--solution", solution_path, "Solution JSON file")
      ->required();
  verify->add_option("--output", output_path,
                     "Report JSON file (default: stdout)");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exhaustively find the minimum total subsidy");
  oracle->add_option("--instance", instance_path,
                     "Instance JSON file (default: stdin)");
  oracle->add_option("--max-edges", max_edges,
                     "Refuse instances with more edges than this");
  oracle->add_option("--jobs", jobs, "Worker threads for the scan");
  oracle->add_option("--output", output_path,
                     "Result JSON file (default: stdout)");

  std::string family, formula_path, kind = "additive-unit", epsilon = "1/100";
  unsigned long long seed = 1;
  int variables = 3, pairs = 2, gen_n = 5, gen_m = 8;
  bool simple = false;

  CLI::App* gen = app.add_subcommand("gen", "Generate a benchmark instance");
  gen->add_option("--family", family, "Instance family")
      ->required()
      ->check(CLI::IsMember({"sat", "parallel-pairs", "threshold-clique",
                             "epsilon-path", "local-cycle", "random"}));
  gen->add_option("--formula", formula_path,
                  "sat: formula JSON {variables, clauses} (default: random)");
  gen->add_option("--seed", seed, "RNG seed for random choices");
  gen->add_option("--variables", variables,
                  "sat: size of the random formula (multiple of 3)");
  gen->add_option("--pairs", pairs, "parallel-pairs: number of pairs");
  gen->add_option("--n", gen_n, "threshold-clique/random: agent count");
  gen->add_option("--m", gen_m, "random: edge count");
  gen->add_option("--kind", kind,
                  "random: binary|bivalued12|additive-unit|monotone-family")
      ->check(CLI::IsMember(
          {"binary", "bivalued12", "additive-unit", "monotone-family"}));
  gen->add_flag("--simple", simple, "random: forbid parallel edges");
  gen->add_option("--epsilon", epsilon, "epsilon-path: rational in (0, 1/2)");
  gen->add_option("--output", output_path,
                  "Instance JSON file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(solve))
      return do_solve(instance_path, algo, output_path);
    if (app.got_subcommand(verify))
      return do_verify(instance_path, solution_path, output_path);
    if (app.got_subcommand(oracle))
      return do_oracle(instance_path, output_path, max_edges, jobs);
    return do_gen(family, formula_path, seed, variables, pairs, gen_n, gen_m,
                  kind, simple, epsilon, output_path);
  } catch (const efo::Error& err) {
    Json j;
    j["error"] = {{"kind", kind_name(err.kind())},
                  {"reason", err.reason()},
                  {"detail", err.what()}};
    std::cerr << j.dump(2) << "\n";
    switch (err.kind()) {
      case efo::ErrorKind::input:
        return 2;
      case efo::ErrorKind::precondition:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
