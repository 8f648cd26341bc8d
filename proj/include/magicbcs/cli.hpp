#pragma once

// Command-line front end. run_cli is the whole program; main() only forwards
// argv and the standard streams.
//
// Exit codes: 0 ok, 1 internal error or violated invariant, 2 usage or
// parse error, 3 proven no solution, 4 file I/O.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magicbcs/bcs.hpp"
#include "magicbcs/game.hpp"
#include "magicbcs/io.hpp"
#include "magicbcs/lightcone.hpp"
#include "magicbcs/quantum.hpp"
#include "magicbcs/rng.hpp"
#include "magicbcs/shallow.hpp"

namespace magicbcs::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kNoSolution = 3, kIo = 4 };

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string format = "text";
  std::string path;
  std::string out;
  std::string mode;
  std::string strategy = "auto";
  std::size_t n = 8;
  std::size_t sites = 0;
  std::size_t trials = 1;
  std::size_t jobs = 1;
  std::size_t fanin = 2;
  std::size_t depth = 3;
  std::optional<std::uint64_t> seed;
  double tol = quantum::kDefaultTol;
  bool modified = false;
  bool verify = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + path);
}

inline std::uint64_t need_seed(const CliConfig& c) {
  if (!c.seed) throw UsageError("--seed is required for stochastic commands");
  return *c.seed;
}

inline std::string fixed(double v, int prec = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << v;
  return s.str();
}

// Trial t always uses Rng(seed, t), so results do not depend on --jobs.
template <typename Result, typename Fn>
std::vector<Result> run_trials(std::size_t trials, std::size_t jobs, Fn fn) {
  std::vector<Result> out(trials);
  jobs = std::max<std::size_t>(1, std::min(jobs, trials));
  if (jobs == 1) {
    for (std::size_t t = 0; t < trials; ++t) out[t] = fn(t);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < trials; t += jobs) out[t] = fn(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

inline void emit(std::ostream& out, const CliConfig& c, const json& j, const std::vector<std::string>& lines) {
  if (c.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
  }
}

}  // namespace detail

// solve

inline int cmd_solve(const CliConfig& c, std::ostream& out) {
  const auto b = bcs::parse_bcs(detail::read_file(c.path));
  json j{{"mode", c.mode}, {"variables", b.num_vars()}, {"constraints", b.num_constraints()}};
  std::vector<std::string> lines{"variables: " + std::to_string(b.num_vars()),
                                 "constraints: " + std::to_string(b.num_constraints())};
  std::string payload;
  int code = kOk;

  if (c.mode == "classical") {
    auto r = bcs::classical_solve_detailed(b);
    if (auto* signs = std::get_if<std::vector<int>>(&r)) {
      bcs::PauliSolution sol;
      for (int s : *signs) sol.assignment.push_back(pauli::PauliString::signed_identity(0, s));
      payload = bcs::format_solution(b, sol);
      j["result"] = "solution";
      lines.push_back("result: classical solution");
    } else {
      const auto& inc = std::get<gf2::Gf2Inconsistency>(r);
      payload = json{{"kind", "classical"}, {"constraint_rows", inc.rows}}.dump(2) + "\n";
      j["result"] = "no_solution";
      j["certificate_rows"] = inc.rows.size();
      lines.push_back("result: no classical solution (" + std::to_string(inc.rows.size()) + " rows sum to 0 = 1)");
      code = kNoSolution;
    }
  } else {
    auto r = bcs::pauli_solve(b);
    if (auto* sol = std::get_if<bcs::PauliSolution>(&r)) {
      payload = bcs::format_solution(b, *sol);
      j["result"] = "solution";
      j["qubits"] = sol->qubits;
      lines.push_back("result: Pauli solution on " + std::to_string(sol->qubits) + " qubit(s)");
    } else {
      const auto& cert = std::get<bcs::Certificate>(r);
      if (!bcs::verify_certificate(b, cert)) throw std::logic_error("solver produced a certificate that fails verification");
      auto cj = io::certificate_json(b, cert);
      cj["kind"] = "pauli";
      payload = cj.dump(2) + "\n";
      j["result"] = "no_solution";
      j["certificate_rows"] = cert.constraint_rows.size();
      lines.push_back("result: no Pauli solution (certificate cites " + std::to_string(cert.constraint_rows.size()) +
                      " constraints, verified)");
      code = kNoSolution;
    }
  }
  if (!c.out.empty()) {
    detail::write_file(c.out, payload);
    j["out"] = c.out;
    lines.push_back("written: " + c.out);
  }
  detail::emit(out, c, j, lines);
  if (c.format == "text" && c.out.empty()) out << payload;
  return code;
}

// verify: check a solution file against a BCS file

inline int cmd_verify(const CliConfig& c, std::ostream& out, const std::string& sol_path) {
  const auto b = bcs::parse_bcs(detail::read_file(c.path));
  const auto sol = bcs::parse_solution(b, detail::read_file(sol_path));
  const auto rep = bcs::verify_pauli_solution(b, sol);
  json j{{"ok", rep.ok()}, {"qubits", sol.qubits}, {"message", rep.message}};
  std::vector<std::string> lines{std::string("verified: ") + (rep.ok() ? "yes" : "no") + " (" +
                                 std::to_string(sol.qubits) + " qubit(s))"};
  if (!rep.ok()) lines.push_back("reason: " + rep.message);
  detail::emit(out, c, j, lines);
  return rep.ok() ? kOk : kInternal;
}

// gen

inline int cmd_gen(const CliConfig& c, std::ostream& out) {
  if (c.n < 4) throw UsageError("--n must be at least 4");
  const auto g = game::build_game_bcs(c.n, c.modified);
  const auto q = game::count_questions(c.n);
  const std::size_t want_c = c.modified ? q.modified_alice : q.alice;
  const std::size_t want_v = c.modified ? q.modified_bob : q.bob;
  detail::write_file(c.out, bcs::serialize_bcs(g.bcs));
  const std::string names = c.out + ".names.json";
  detail::write_file(names, io::name_map_json(g).dump(2) + "\n");
  json j{{"n", c.n},
         {"modified", c.modified},
         {"variables", g.bcs.num_vars()},
         {"constraints", g.bcs.num_constraints()},
         {"expected_variables", want_v},
         {"expected_constraints", want_c},
         {"out", c.out},
         {"names", names}};
  detail::emit(out, c, j,
               {"game n=" + std::to_string(c.n) + (c.modified ? " (modified)" : ""),
                "variables: " + std::to_string(g.bcs.num_vars()) + " (expected " + std::to_string(want_v) + ")",
                "constraints: " + std::to_string(g.bcs.num_constraints()) + " (expected " + std::to_string(want_c) + ")",
                "written: " + c.out + ", " + names});
  return g.bcs.num_vars() == want_v && g.bcs.num_constraints() == want_c ? kOk : kInternal;
}

// bound

inline int cmd_bound(const CliConfig& c, std::ostream& out) {
  const auto b = game::clifford_bound(c.n);
  const auto threshold = lightcone::depth_bound_threshold(b);
  json j{{"n", c.n}, {"bound", b.text()}, {"value", b.value}, {"threshold", threshold}};
  std::vector<std::string> lines{"clifford bound: " + b.text() + " = " + detail::fixed(b.value, 9),
                                 "depth bound positive for N > " + std::to_string(threshold)};
  if (c.sites > 0) {
    const double d = lightcone::depth_lower_bound(double(c.sites), double(c.fanin), b.value);
    j["sites"] = c.sites;
    j["fanin"] = c.fanin;
    j["depth_lower_bound"] = d;
    lines.push_back("depth bound (N=" + std::to_string(c.sites) + ", K=" + std::to_string(c.fanin) +
                    "): D >= " + detail::fixed(d, 4));
  }
  detail::emit(out, c, j, lines);
  return kOk;
}

// classify

inline int cmd_classify(const CliConfig& c, std::ostream& out) {
  const auto cls = game::classify(c.n);
  json j{{"n", c.n}, {"class", game::to_string(cls)}};
  std::vector<std::string> lines{"class: " + std::string(game::to_string(cls))};
  int code = kOk;
  if (c.verify) {
    const auto s = game::classify_by_solver(c.n);
    const bool agree = s.implied() == cls && (s.pauli || s.classical || s.certificate_verified);
    j["solver"] = {{"classical", s.classical},
                   {"pauli", s.pauli},
                   {"pauli_qubits", s.pauli_qubits},
                   {"certificate_verified", s.certificate_verified},
                   {"agrees", agree}};
    lines.push_back(std::string("solver: classical=") + (s.classical ? "yes" : "no") +
                    " pauli=" + (s.pauli ? "yes" : "no") +
                    (s.pauli ? " (" + std::to_string(s.pauli_qubits) + " qubits)" : "") +
                    (s.certificate_verified ? " certificate=verified" : ""));
    lines.push_back(std::string("agrees: ") + (agree ? "yes" : "no"));
    if (!agree) code = kInternal;
  }
  detail::emit(out, c, j, lines);
  return code;
}

// play

inline quantum::OperatorSolution pick_strategy(const game::GameBcs& g, std::string strategy, std::string& used) {
  if (strategy == "auto") {
    const auto cls = game::classify(g.n);
    strategy = cls == game::GameClass::Classical ? "classical"
               : cls == game::GameClass::CliffordOnly ? "pauli"
                                                      : "permutation";
  }
  used = strategy;
  if (strategy == "permutation") {
    if (g.n % 2 != 0 || g.n < 6) throw UsageError("permutation strategy needs even n >= 6");
    return quantum::permutation_solution(g);
  }
  if (strategy == "classical") {
    auto s = bcs::classical_solve(g.bcs);
    if (!s) throw UsageError("game has no classical solution for n = " + std::to_string(g.n));
    return quantum::from_classical(*s);
  }
  if (strategy == "pauli") {
    auto r = bcs::pauli_solve(g.bcs);
    auto* p = std::get_if<bcs::PauliSolution>(&r);
    if (!p) throw UsageError("game has no Pauli solution for n = " + std::to_string(g.n));
    return quantum::from_pauli(*p);
  }
  throw UsageError("unknown strategy '" + strategy + "'");
}

inline int cmd_play(const CliConfig& c, std::ostream& out) {
  const auto seed = detail::need_seed(c);
  const auto g = game::build_game_bcs(c.n, c.modified);
  std::string used;
  const auto sol = pick_strategy(g, c.strategy, used);
  const auto rep = quantum::verify_operator_solution(g.bcs, sol, c.tol);
  const auto qs = game::enumerate_questions(g);
  const auto wins = detail::run_trials<char>(c.trials, c.jobs, [&](std::size_t t) -> char {
    Rng rng(seed, t);
    const auto q = game::sample_question(qs, rng);
    return quantum::play_round(g.bcs, sol, q, rng).won ? 1 : 0;
  });
  const auto won = static_cast<std::size_t>(std::count(wins.begin(), wins.end(), char(1)));
  const bool ok = rep.ok() && won == c.trials;
  json j{{"n", c.n},         {"modified", c.modified}, {"strategy", used},     {"dim", sol.dim},
         {"verified", rep.ok()}, {"trials", c.trials},   {"wins", won},          {"target_wins", c.trials},
         {"seed", seed}};
  detail::emit(out, c, j,
               {"strategy: " + used + " (dimension " + std::to_string(sol.dim) + ")",
                std::string("operator solution verified: ") + (rep.ok() ? "yes" : "no"),
                "wins: " + std::to_string(won) + "/" + std::to_string(c.trials) + " (target " +
                    std::to_string(c.trials) + "/" + std::to_string(c.trials) + ")"});
  return ok ? kOk : kInternal;
}

// simulate

struct TrialRecord {
  shallow::RelationInstance inst;
  shallow::RelationOutputs outputs;
  std::array<shallow::Frame, shallow::kLayers> frame;
  bool ok = false;
  shallow::SamplingCase which = shallow::SamplingCase::Case2;
};

inline json trial_json(const bcs::Bcs& b, std::uint64_t seed, std::size_t t, const TrialRecord& r, bool sampling) {
  json frames = json::array();
  for (const auto& f : r.frame) frames.push_back({{"x", int(f.x)}, {"z", int(f.z)}});
  json j{{"trial", t},
         {"seed", seed},
         {"N", r.inst.N},
         {"n", r.inst.n},
         {"j", r.inst.j},
         {"k", r.inst.k},
         {"alpha", r.inst.alpha},
         {"beta", b.variables[r.inst.beta]},
         {"alice", r.outputs.alice},
         {"bob", r.outputs.bob},
         {"frame", frames},
         {"relation_holds", r.ok}};
  if (sampling) j["case"] = shallow::to_string(r.which);
  return j;
}

inline int cmd_simulate(const CliConfig& c, std::ostream& out) {
  const auto seed = detail::need_seed(c);
  if (c.sites < 2) throw UsageError("--sites must be at least 2");
  if (c.n != 8) throw UsageError("simulate supports --n 8 only");
  // Questions come from the modified game, whose constraints all fit three layers.
  const auto g = game::build_game_bcs(c.n, true);
  const auto sol = quantum::permutation_solution(g);
  const bool sampling = c.mode == "sampling";
  const auto recs = detail::run_trials<TrialRecord>(c.trials, c.jobs, [&](std::size_t t) {
    Rng rng(seed, t);
    TrialRecord r;
    r.inst = shallow::random_instance(g.bcs, c.sites, c.n, rng);
    if (sampling) {
      auto s = shallow::run_sampling_trial(g.bcs, r.inst, sol, rng);
      r.outputs = s.outputs;
      r.frame = s.transcript.frame;
      r.which = s.which;
      r.ok = shallow::check_relation(g.bcs, r.inst, s.outputs);
    } else {
      auto t1 = shallow::run_round1(r.inst, rng);
      auto t2 = shallow::run_round2(g.bcs, r.inst, t1, sol, rng);
      r.outputs = t2.outputs;
      r.frame = t1.frame;
      r.ok = shallow::check_relation(g.bcs, r.inst, t2.outputs);
    }
    return r;
  });
  if (!c.out.empty()) {
    std::string log;
    for (std::size_t t = 0; t < recs.size(); ++t) log += trial_json(g.bcs, seed, t, recs[t], sampling).dump() + "\n";
    detail::write_file(c.out, log);
  }

  json j{{"mode", sampling ? "sampling" : "relation"}, {"sites", c.sites}, {"n", c.n}, {"trials", c.trials}, {"seed", seed}};
  std::vector<std::string> lines{"mode: " + std::string(sampling ? "sampling" : "relation") +
                                 " (N=" + std::to_string(c.sites) + ", n=" + std::to_string(c.n) + ")"};
  int code = kOk;
  if (sampling) {
    std::size_t case1 = 0, case2 = 0, invalid = 0;
    for (const auto& r : recs) {
      switch (r.which) {
        case shallow::SamplingCase::Case1: ++case1; break;
        case shallow::SamplingCase::Case2: ++case2; break;
        case shallow::SamplingCase::Invalid: ++invalid; break;
      }
    }
    const double p = 1.0 / 64.0;
    const double T = static_cast<double>(c.trials);
    const double sigma = std::sqrt(T * p * (1 - p));
    const double z = sigma > 0 ? (static_cast<double>(case1) - T * p) / sigma : 0.0;
    j["case1"] = case1;
    j["case2"] = case2;
    j["invalid"] = invalid;
    j["case1_expected"] = T * p;
    j["case1_z"] = z;
    lines.push_back("case1: " + std::to_string(case1) + " (expected " + detail::fixed(T * p, 1) + ", z = " +
                    detail::fixed(z, 2) + ")");
    lines.push_back("case2: " + std::to_string(case2));
    lines.push_back("invalid: " + std::to_string(invalid) + " (target 0)");
    if (invalid != 0) code = kInternal;
  } else {
    const auto held = static_cast<std::size_t>(std::count_if(recs.begin(), recs.end(), [](const auto& r) { return r.ok; }));
    j["holds"] = held;
    j["target"] = c.trials;
    lines.push_back("relation holds: " + std::to_string(held) + "/" + std::to_string(c.trials) + " (target " +
                    std::to_string(c.trials) + "/" + std::to_string(c.trials) + ")");
    if (held != c.trials) code = kInternal;
  }
  if (!c.out.empty()) {
    j["out"] = c.out;
    lines.push_back("written: " + c.out);
  }
  detail::emit(out, c, j, lines);
  return code;
}

// lightcone

inline int cmd_lightcone(const CliConfig& c, std::ostream& out) {
  lightcone::CircuitDag dag;
  if (c.path == "strategy") {
    if (c.sites < 2) throw UsageError("--sites must be at least 2");
    dag = lightcone::build_strategy_dag(c.sites, c.n);
  } else if (c.path == "random") {
    if (c.sites < 2) throw UsageError("--sites must be at least 2");
    Rng rng(detail::need_seed(c), 0);
    dag = lightcone::random_local_dag(c.sites, c.fanin, c.depth, rng);
  } else {
    try {
      dag = io::dag_from_json(json::parse(detail::read_file(c.path)));
    } catch (const json::exception& e) {
      throw bcs::ParseError(0, std::string("bad DAG file: ") + e.what());
    }
  }
  if (!c.out.empty()) detail::write_file(c.out, io::dag_json(dag).dump() + "\n");

  const double K = static_cast<double>(dag.max_fanin());
  const double KD = std::pow(K, static_cast<double>(dag.depth()));
  std::size_t worst_cone = 0;
  bool cone_ok = true;
  const auto prod = dag.producers();
  for (const auto& s : dag.sites) {
    for (const auto* outs : {&s.alpha_out, &s.beta_out}) {
      const auto back = lightcone::backward_lightcone(dag, *outs, prod);
      worst_cone = std::max(worst_cone, back.size());
      if (static_cast<double>(back.size()) > static_cast<double>(outs->size()) * KD) cone_ok = false;
    }
  }
  const auto d = lightcone::lightcone_disjoint_probability(dag);
  const bool prob_ok = d.probability >= d.bound;
  json j{{"sites", d.sites},
         {"gates", dag.gates.size()},
         {"wires", dag.wires.size()},
         {"depth", dag.depth()},
         {"max_fanin", dag.max_fanin()},
         {"max_backward_cone", worst_cone},
         {"backward_cone_bound_holds", cone_ok},
         {"pairs", d.pairs},
         {"good_pairs", d.good_pairs},
         {"probability", d.probability},
         {"bound", d.bound}};
  std::vector<std::string> lines{
      "sites: " + std::to_string(d.sites) + ", gates: " + std::to_string(dag.gates.size()),
      "depth: " + std::to_string(dag.depth()) + ", max fan-in: " + std::to_string(dag.max_fanin()),
      "largest backward cone: " + std::to_string(worst_cone) + (cone_ok ? " (within |O| K^D)" : " (exceeds |O| K^D)"),
      "disjoint cones: " + std::to_string(d.good_pairs) + "/" + std::to_string(d.pairs) + " = " +
          detail::fixed(d.probability) + " (bound " + detail::fixed(d.bound) + ")"};
  if (c.path == "strategy") lines.push_back("target max fan-in: 14");
  if (!c.out.empty()) {
    j["out"] = c.out;
    lines.push_back("written: " + c.out);
  }
  detail::emit(out, c, j, lines);
  return cone_ok && prob_ok ? kOk : kInternal;
}

// recipes

inline const std::vector<std::pair<std::string, std::string>>& recipe_list() {
  static const std::vector<std::pair<std::string, std::string>> r{
      {"gen --n 8 --out g8.bcs", "722 variables, 1037 constraints"},
      {"gen --n 8 --modified --out g8m.bcs", "1042 constraints"},
      {"bound --n 8", "1 - 1/6252, depth bound positive for N > 600192"},
      {"classify --n 4 --verify", "CliffordOnly"},
      {"classify --n 5 --verify", "Classical"},
      {"classify --n 8 --verify", "MagicRequired"},
      {"solve data/mermin.bcs --mode pauli", "exit 0, 2-qubit solution"},
      {"solve data/mermin.bcs --mode classical", "exit 3"},
      {"solve data/chsh.bcs --mode pauli", "exit 3, certificate"},
      {"play --n 8 --trials 10000 --seed 1", "wins 10000/10000"},
      {"simulate --sites 100 --trials 10000 --seed 1 --mode relation", "relation holds 10000/10000"},
      {"simulate --sites 100 --trials 100000 --seed 1 --mode sampling", "case1 about 1562, invalid 0"},
      {"lightcone strategy --sites 64", "max fan-in 14, depth independent of N"},
  };
  return r;
}

inline int cmd_recipes(const CliConfig& c, std::ostream& out) {
  json j = json::array();
  std::vector<std::string> lines;
  for (const auto& [cmd, target] : recipe_list()) {
    j.push_back({{"command", "magicbcs " + cmd}, {"target", target}});
    lines.push_back("magicbcs " + cmd);
    lines.push_back("    target: " + target);
  }
  detail::emit(out, c, j, lines);
  return kOk;
}

// Entry point

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary constraint system games: solvers, the complete-graph game family and shallow-circuit simulations",
               "magicbcs"};
  app.require_subcommand(1);
  CliConfig c;
  std::string sol_path;

  auto fmt = [&](CLI::App* s) {
    s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* solve = app.add_subcommand("solve", "Solve a BCS file classically or with Pauli strings");
  solve->add_option("path", c.path, "BCS file")->required();
  c.mode = "pauli";
  solve->add_option("--mode", c.mode, "classical or pauli")->check(CLI::IsMember({"classical", "pauli"}));
  solve->add_option("--out", c.out, "Write the solution or certificate here");
  fmt(solve);

  auto* verify = app.add_subcommand("verify", "Check a solution file against a BCS file");
  verify->add_option("path", c.path, "BCS file")->required();
  verify->add_option("solution", sol_path, "Solution file")->required();
  fmt(verify);

  auto* gen = app.add_subcommand("gen", "Write the game instance for n vertices");
  gen->add_option("--n", c.n, "Vertices")->required();
  gen->add_flag("--modified", c.modified, "Split the product constraint into a chain");
  gen->add_option("--out", c.out, "Output BCS file")->required();
  fmt(gen);

  auto* bound = app.add_subcommand("bound", "Clifford win-probability bound and depth bound");
  bound->add_option("--n", c.n, "Vertices (even, >= 6)")->required();
  bound->add_option("--sites", c.sites, "Evaluate the depth bound at this N");
  bound->add_option("--fanin", c.fanin, "Fan-in K for the depth bound")->check(CLI::Range(2, 1 << 20));
  fmt(bound);

  auto* classify = app.add_subcommand("classify", "Classical / Clifford / magic classification");
  classify->add_option("--n", c.n, "Vertices")->required();
  classify->add_flag("--verify", c.verify, "Cross-check with both solvers");
  fmt(classify);

  auto* play = app.add_subcommand("play", "Play the game with an operator strategy");
  play->add_option("--n", c.n, "Vertices")->required();
  play->add_option("--trials", c.trials, "Rounds")->check(CLI::PositiveNumber);
  play->add_option("--seed", c.seed, "RNG seed");
  play->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  play->add_option("--tol", c.tol, "Verification tolerance")->check(CLI::PositiveNumber);
  play->add_flag("--modified", c.modified, "Use the modified game");
  play->add_option("--strategy", c.strategy, "auto, permutation, classical or pauli")
      ->check(CLI::IsMember({"auto", "permutation", "classical", "pauli"}));
  fmt(play);

  auto* sim = app.add_subcommand("simulate", "Two-round relation or one-round sampling on a line of sites");
  sim->add_option("--sites", c.sites, "Sites N")->required();
  sim->add_option("--n", c.n, "Game size (8)");
  sim->add_option("--trials", c.trials, "Trials")->check(CLI::PositiveNumber);
  sim->add_option("--seed", c.seed, "RNG seed");
  sim->add_option("--mode", c.mode, "relation or sampling")->required()->check(CLI::IsMember({"relation", "sampling"}));
  sim->add_option("--out", c.out, "Per-trial JSON lines log");
  sim->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  fmt(sim);

  auto* lc = app.add_subcommand("lightcone", "Lightcone statistics of a circuit DAG");
  lc->add_option("source", c.path, "strategy, random, or a DAG JSON file")->required();
  lc->add_option("--sites", c.sites, "Sites N");
  lc->add_option("--n", c.n, "Game size for the strategy DAG");
  lc->add_option("--fanin", c.fanin, "Fan-in K for random DAGs")->check(CLI::PositiveNumber);
  lc->add_option("--depth", c.depth, "Depth D for random DAGs");
  lc->add_option("--seed", c.seed, "RNG seed for random DAGs");
  lc->add_option("--out", c.out, "Write the DAG as JSON");
  fmt(lc);

  auto* recipes = app.add_subcommand("recipes", "Commands that reproduce the reference numbers");
  fmt(recipes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(c, out);
    if (verify->parsed()) return cmd_verify(c, out, sol_path);
    if (gen->parsed()) return cmd_gen(c, out);
    if (bound->parsed()) return cmd_bound(c, out);
    if (classify->parsed()) return cmd_classify(c, out);
    if (play->parsed()) return cmd_play(c, out);
    if (sim->parsed()) return cmd_simulate(c, out);
    if (lc->parsed()) return cmd_lightcone(c, out);
    if (recipes->parsed()) return cmd_recipes(c, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const bcs::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace magicbcs::cli
