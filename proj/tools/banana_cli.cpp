/*
 * Copyright 2026 The banana-gamma Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// banana: command-line front end.
//
//   banana amplitude --loops L --q a,b,... --t RE[,IM] [--branch upper|lower] [--trunc D] [--tol X]
//   banana verify --suite gamma|laplace|przyjalkowsky|ring|bound --loops L --q ... [--tol X]
//   banana scan --config FILE.json --out DIR
//
// Exit codes: 0 pass, 1 check failure, 2 usage or domain error.
// BANANA_THREADS sets the worker count.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banana/banana.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

banana::Complex parse_t(const std::string& s) {
  std::stringstream ss(s);
  std::string re, im;
  std::getline(ss, re, ',');
  std::getline(ss, im, ',');
  if (re.empty()) throw std::invalid_argument("--t expects RE[,IM]");
  return {std::stod(re), im.empty() ? 0.0 : std::stod(im)};
}

banana::LoopConfig make_config(int loops, std::vector<double> q) {
  if (q.empty()) q.assign(loops + 1, 1.0);
  return banana::LoopConfig(loops, std::move(q));
}

void emit(const banana::Report& rep, const std::string& out_path) {
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  const std::string text = banana::to_json(rep).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open " + out_path);
    f << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Banana Feynman amplitudes: direct integrals, I-function series and Gamma-class asymptotics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  bool deterministic = false;
  app.add_option("--seed", seed, "QMC seed")->capture_default_str();
  app.add_flag("--deterministic", deterministic, "reproducible output (runtimes recorded as 0)");

  int loops = 1;
  std::vector<double> q;
  std::string t_text;
  std::string branch_text = "none";
  int trunc_degree = banana::Truncation{}.max_degree;
  std::optional<double> tol;
  std::string out_path;

  auto* amp = app.add_subcommand("amplitude", "evaluate F(q,t) at one point");
  amp->add_option("--loops", loops, "loop order l")->required()->check(CLI::Range(1, 15));
  amp->add_option("--q", q, "l+1 squared masses, comma separated")->delimiter(',');
  amp->add_option("--t", t_text, "t as RE or RE,IM")->required();
  amp->add_option("--branch", branch_text, "upper (t+i0) or lower (t-i0) for t on the cut")
      ->check(CLI::IsMember({"none", "upper", "lower"}));
  amp->add_option("--trunc", trunc_degree, "maximum total degree of the series")->check(CLI::PositiveNumber);
  amp->add_option("--tol", tol, "fail (exit 1) when direct and series differ by more");
  amp->add_option("--out", out_path, "write the JSON report here instead of stdout");

  std::string suite;
  double verify_t = -12.0;
  int samples = 10000;
  int bound_degree = 12;
  auto* ver = app.add_subcommand("verify", "run an identity-check suite");
  ver->add_option("--suite", suite, "gamma | laplace | przyjalkowsky | ring | bound")
      ->required()
      ->check(CLI::IsMember({"gamma", "laplace", "przyjalkowsky", "ring", "bound"}));
  ver->add_option("--loops", loops, "loop order l")->required()->check(CLI::Range(1, 15));
  ver->add_option("--q", q, "l+1 squared masses, comma separated")->delimiter(',');
  ver->add_option("--tol", tol, "override the suite tolerance");
  ver->add_option("--t", verify_t, "t < 0 for the laplace suite")->capture_default_str();
  ver->add_option("--samples", samples, "sample points for the przyjalkowsky suite")->capture_default_str();
  ver->add_option("--max-degree", bound_degree, "largest |d| for the bound suite")
      ->capture_default_str()
      ->check(CLI::Range(0, 40));
  ver->add_option("--out", out_path, "write the JSON report here instead of stdout");

  std::string config_path, out_dir;
  auto* scan = app.add_subcommand("scan", "evaluate methods over a t grid; writes scan.csv and scan.json");
  scan->add_option("--config", config_path, "scan specification (JSON)")->required()->check(CLI::ExistingFile);
  scan->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    banana::EvalOptions eval;
    eval.deterministic = deterministic;
    eval.budget.qmc.seed = seed;
    eval.trunc.max_degree = trunc_degree;

    if (*amp) {
      const auto cfg = make_config(loops, q);
      const banana::Complex t = parse_t(t_text);
      banana::Branch branch = banana::parse_branch(branch_text);
      if (branch != banana::Branch::none && !(t.imag() == 0.0 && t.real() > 0.0)) {
        std::cerr << "warning: --branch ignored for t that is not real positive\n";
        branch = banana::Branch::none;
      }
      const auto rep = banana::cmd_amplitude(cfg, banana::EvalPoint(t, branch), eval, tol);
      emit(rep, out_path);
      return rep.pass() ? kExitPass : kExitFail;
    }
    if (*ver) {
      const auto cfg = make_config(loops, q);
      banana::VerifyOptions vo;
      vo.tol = tol;
      vo.t = verify_t;
      vo.samples = samples;
      vo.max_degree = bound_degree;
      vo.seed = seed;
      vo.eval = eval;
      const auto rep = banana::cmd_verify(suite, cfg, vo);
      emit(rep, out_path);
      return rep.pass() ? kExitPass : kExitFail;
    }
    if (*scan) {
      std::ifstream f(config_path);
      const auto j = nlohmann::json::parse(f);
      auto spec = banana::parse_scan_spec(j);
      if (deterministic) spec.options.deterministic = true;
      const auto rep = banana::run_scan(spec);
      banana::write_scan_outputs(rep, out_dir);
      std::cerr << "wrote " << out_dir << "/scan.csv and scan.json (" << rep.rows.size() << " rows)\n";
      return kExitPass;
    }
  } catch (const banana::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
