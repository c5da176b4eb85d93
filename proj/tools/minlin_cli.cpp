// Copyright 2026 The minlin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minlin.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw minlin::Error(minlin::ErrorKind::kSyntaxError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

minlin::Mode parse_mode(const std::string& s) {
  if (s == "rand") return minlin::Mode::kRandomized;
  if (s == "derand") return minlin::Mode::kDerandomized;
  if (s == "fallback") return minlin::Mode::kFallback;
  if (s == "approx") return minlin::Mode::kApprox;
  throw minlin::Error(minlin::ErrorKind::kUnknownName, "unknown mode " + s);
}

void print_solution(const minlin::Instance& inst, const minlin::Solution& sol, bool json) {
  if (json) {
    std::cout << minlin::solution_to_json(inst, sol).dump(2) << "\n";
    return;
  }
  std::cout << (sol.yes() ? "Yes" : "No") << " (mode " << sol.mode << ", bound " << sol.bound
            << ", trials " << sol.trials_used << ")\n";
  if (!sol.yes()) return;
  std::cout << "deleted:";
  for (int id : sol.deleted) std::cout << " " << id;
  std::cout << "\n";
  for (int v = 0; v < inst.num_vars(); ++v) {
    std::cout << inst.vars[v] << " = " << sol.witness[v] << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-2-Lin(Z_m) solver"};
  app.require_subcommand(1);

  std::string file;
  int k = -1;
  std::string mode = "rand";
  int trials = 256;
  std::uint64_t seed = 1;
  bool json = false;
  auto* solve = app.add_subcommand("solve", "decide whether at most k soft equations need deleting");
  solve->add_option("file", file, "instance file")->required();
  solve->add_option("-k", k, "parameter (default: the file's param line)");
  solve->add_option("--mode", mode, "rand, derand, fallback or approx");
  solve->add_option("--trials", trials, "randomized trials");
  solve->add_option("--seed", seed, "base seed");
  solve->add_flag("--json", json, "print the solution as JSON");

  double budget = 1e7;
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum");
  oracle->add_option("file", file, "instance file")->required();
  oracle->add_option("--budget", budget, "assignment budget");

  std::string solution_file;
  auto* verify = app.add_subcommand("verify", "check a solution against an instance");
  verify->add_option("file", file, "instance file")->required();
  verify->add_option("solution", solution_file, "solution JSON")->required();

  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  std::string fixture;
  auto* gen_fix = gen->add_subcommand("fixture", "one of the worked fixtures");
  gen_fix->add_option("name", fixture, "eq1-z4, fig1-z4, fig2-left-z8 or fig2-right-z8")->required();
  std::string profile = "special";
  std::int64_t modulus = 4;
  int n_vars = 5, n_eqs = 8, planted = 1;
  auto* gen_rand = gen->add_subcommand("random", "random planted instance");
  gen_rand->add_option("--profile", profile, "special, simple or general");
  gen_rand->add_option("--mod", modulus, "modulus");
  gen_rand->add_option("--vars", n_vars, "number of variables");
  gen_rand->add_option("--eqs", n_eqs, "number of equations");
  gen_rand->add_option("--planted", planted, "planted violations");
  gen_rand->add_option("--seed", seed, "seed");
  int parts = 2, max_edges = 8;
  auto* gen_split = gen->add_subcommand("split", "equation encoding of a random p-split min cut instance");
  gen_split->add_option("-p", parts, "number of parts (2 or 3)");
  gen_split->add_option("--edges", max_edges, "edge limit");
  gen_split->add_option("--mod", modulus, "modulus with p prime factors (default 6 or 30)");
  gen_split->add_option("--seed", seed, "seed");

  std::vector<std::string> suite;
  auto* bench = app.add_subcommand("bench", "solve every instance of a suite, CSV on stdout");
  bench->add_option("suite", suite, "instance files or directories")->required();
  bench->add_option("-k", k, "parameter (default: each file's param line)");
  bench->add_option("--mode", mode, "rand, derand, fallback or approx");
  bench->add_option("--trials", trials, "randomized trials");
  bench->add_option("--seed", seed, "base seed");

  int level = 0;
  auto* cover = app.add_subcommand("cover", "sample one balanced subgraph cover of an auxiliary graph");
  cover->add_option("file", file, "instance file")->required();
  cover->add_option("-k", k, "parameter passed to the cover (default: twice the param line)");
  cover->add_option("--level", level, "auxiliary graph level");
  cover->add_option("--seed", seed, "seed");
  bool derand = false;
  cover->add_flag("--derand", derand, "list the derandomized covers instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve) {
      const auto inst = minlin::parse_instance(read_file(file));
      minlin::SolveOptions opt;
      opt.mode = parse_mode(mode);
      opt.trials = trials;
      opt.seed = seed;
      const int kk = k >= 0 ? k : inst.k;
      const auto sol = minlin::solve(inst, kk, opt);
      print_solution(inst, sol, json);
      return sol.yes() ? kExitYes : kExitNo;
    }
    if (*oracle) {
      const auto inst = minlin::parse_instance(read_file(file));
      const auto r = minlin::brute_force_opt(inst, budget);
      if (r.opt == minlin::kInfiniteCost) {
        std::cout << "inf\n";
      } else {
        std::cout << r.opt << "\n";
      }
      return kExitYes;
    }
    if (*verify) {
      const auto inst = minlin::parse_instance(read_file(file));
      const auto sol = minlin::solution_from_json(inst, nlohmann::json::parse(read_file(solution_file)));
      const bool ok = minlin::verify_solution(inst, sol);
      std::cout << (ok ? "valid" : "invalid") << "\n";
      return ok ? kExitYes : kExitNo;
    }
    if (*gen) {
      minlin::Instance inst;
      if (*gen_fix) {
        inst = minlin::gen_fixture(fixture);
      } else if (*gen_rand) {
        inst = minlin::gen_random(minlin::profile_from_name(profile), modulus, n_vars, n_eqs, planted, seed);
      } else {
        if (!gen_split->count("--mod")) modulus = parts == 3 ? 30 : 6;
        const auto smc = minlin::gen_split_instance(parts, max_edges, seed);
        inst = minlin::gen_split_gadget(smc, minlin::factorize(modulus));
      }
      std::cout << minlin::serialize_instance(inst);
      return kExitYes;
    }
    if (*bench) {
      std::vector<std::string> files;
      for (const auto& s : suite) {
        if (std::filesystem::is_directory(s)) {
          for (const auto& ent : std::filesystem::directory_iterator(s)) {
            if (ent.is_regular_file()) files.push_back(ent.path().string());
          }
        } else {
          files.push_back(s);
        }
      }
      std::sort(files.begin(), files.end());
      minlin::SolveOptions opt;
      opt.mode = parse_mode(mode);
      opt.trials = trials;
      opt.seed = seed;
      std::cout << "instance,mode,verdict,cost,trials-used,wall-time-ms\n";
      for (const auto& f : files) {
        const auto inst = minlin::parse_instance(read_file(f));
        const auto start = std::chrono::steady_clock::now();
        const auto sol = minlin::solve(inst, k >= 0 ? k : inst.k, opt);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::cout << f << "," << mode << "," << (sol.yes() ? "Yes" : "No") << ","
                  << (sol.yes() ? std::to_string(sol.deleted.size()) : std::string()) << ","
                  << sol.trials_used << "," << ms << "\n";
      }
      return kExitYes;
    }
    if (*cover) {
      const auto inst = minlin::parse_instance(read_file(file));
      const auto sp = minlin::special_form(inst);
      if (level < 0 || level > sp.pp.d - 2) {
        throw minlin::Error(minlin::ErrorKind::kSyntaxError, "level must lie in [0, d-2]");
      }
      const auto aux = minlin::build_aux_graph(sp, level);
      const int kk = k >= 0 ? k : 2 * inst.k;
      const auto fam = minlin::prepare_cover(aux.g, kk);
      std::vector<minlin::CoverOutput> outs;
      if (derand) {
        outs = minlin::derandomized_covers(fam);
      } else {
        minlin::Rng rng(seed);
        outs.push_back(minlin::random_cover(fam, rng));
      }
      auto name = [&](int x) {
        return sp.inst.vars[aux.source_of(x)] + "^" + std::to_string(aux.copy_of(x));
      };
      for (const auto& c : outs) {
        std::cout << "S:";
        for (int x : c.s.members()) std::cout << " " << name(x);
        std::cout << "\nF:";
        for (int e : c.f) std::cout << " " << name(aux.g.edge(e).u) << "-" << name(aux.g.edge(e).v);
        std::cout << "\n";
      }
      return kExitYes;
    }
  } catch (const minlin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == minlin::ErrorKind::kInternal ? kExitInternal : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
