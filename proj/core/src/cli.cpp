#include "tgc/cli.hpp"

#include "tgc/bch.hpp"
#include "tgc/characters.hpp"
#include "tgc/rational.hpp"
#include "tgc/stages.hpp"
#include "tgc/subgroups.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace tgc {

namespace {

using nlohmann::json;

std::string effective_cache_dir(const RunConfig& config) {
  if (!config.cache_dir.empty()) return config.cache_dir;
  if (const char* env = std::getenv("TGC_CACHE_DIR")) return env;
  return {};
}

std::unique_ptr<PolyCache> open_cache(const RunConfig& config) {
  const std::string dir = effective_cache_dir(config);
  if (dir.empty()) return nullptr;
  return std::make_unique<PolyCache>(dir);
}

void emit_report(const RunConfig& config, const json& report) {
  if (config.report_path.empty()) return;
  std::ofstream out(config.report_path, std::ios::trunc);
  if (!out) {
    std::cerr << "warning: cannot write report to " << config.report_path << "\n";
    return;
  }
  out << report.dump(2) << '\n';
}

int config_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitConfigError;
}

std::optional<GroupContext> parse_context(const RunConfig& config, std::string* error) {
  if (config.q < 2 || !is_prime(config.q)) {
    *error = "--q must be prime (got " + std::to_string(config.q) + ")";
    return std::nullopt;
  }
  if (config.r < 2) {
    *error = "--r must be >= 2";
    return std::nullopt;
  }
  if (config.q < config.r) {
    *error = "p >= r is required (got q=" + std::to_string(config.q) +
             ", r=" + std::to_string(config.r) + ")";
    return std::nullopt;
  }
  if (config.n < 2) {
    *error = "--n must be >= 2";
    return std::nullopt;
  }
  return make_group_context(config.n, config.q, config.r, config.budget);
}

std::optional<CharacterSpec> parse_spec(const RunConfig& config, std::string* error) {
  auto ctx = parse_context(config, error);
  if (!ctx) return std::nullopt;
  if (static_cast<int>(config.A.size()) != config.r - 1) {
    *error = "need exactly " + std::to_string(config.r - 1) +
             " diagonal matrices --A1..--A" + std::to_string(config.r - 1);
    return std::nullopt;
  }
  std::vector<int> chi = config.chi;
  if (chi.empty()) chi.assign(static_cast<std::size_t>(config.n), 0);
  if (static_cast<int>(chi.size()) != config.n) {
    *error = "--chi needs " + std::to_string(config.n) + " exponents";
    return std::nullopt;
  }
  try {
    return make_character_spec(*ctx, chi, config.A);
  } catch (const std::invalid_argument& e) {
    *error = e.what();
    return std::nullopt;
  }
}

json spec_params(const RunConfig& config) {
  json params;
  params["q"] = config.q;
  params["r"] = config.r;
  params["n"] = config.n;
  params["A"] = config.A;
  params["chi"] = config.chi;
  params["budget"] = config.budget;
  return params;
}

json lemma_report_json(const LemmaReport& rep) {
  json entry;
  entry["lemma"] = rep.lemma;
  entry["r"] = rep.r;
  entry["i"] = rep.i;
  if (rep.j) entry["j"] = rep.j;
  entry["status"] = rep.pass ? "pass" : "fail";
  if (!rep.witness.empty()) entry["witness"] = rep.witness;
  if (!rep.detail.empty()) entry["detail"] = rep.detail;
  return entry;
}

}  // namespace

int cmd_verify_lemmas(const RunConfig& config) {
  if (config.max_r < 2 || config.max_r > 12)
    return config_error("--max-r must be in 2..12 (r >= 2 required)");
  if (config.max_j < 3 || config.max_j > 13)
    return config_error("--max-j must be in 3..13");
  const auto start = std::chrono::steady_clock::now();

  std::vector<LemmaReport> reports;
  auto grid_wants = [&](int i, int j) {
    return (config.i == 0 || config.i == i) && (config.j == 0 || j == 0 || config.j == j);
  };
  for (int r = 2; r <= config.max_r; ++r)
    for (int i = 1; i <= r - 1; ++i) {
      if (!grid_wants(i, 0)) continue;
      reports.push_back(verify_lemma_4_1(r, i));
      reports.push_back(verify_lemma_4_2(r, i));
      reports.push_back(verify_lemma_4_4_and_4_5(r, i));
      for (int j = 2 * i + 1; j <= r - 1; ++j)
        if (grid_wants(i, j)) reports.push_back(verify_lemma_4_3(r, i, j));
    }
  for (int i = 2; i <= config.max_j - 1; ++i)
    for (int j = i + 1; j < 2 * i && j <= config.max_j; ++j)
      if (grid_wants(i, j)) reports.push_back(verify_lemma_4_6(i, j));

  bool all_pass = true;
  json entries = json::array();
  for (const LemmaReport& rep : reports) {
    all_pass = all_pass && rep.pass;
    entries.push_back(lemma_report_json(rep));
    if (!rep.pass)
      std::cout << "FAIL lemma " << rep.lemma << " (r=" << rep.r << ", i=" << rep.i
                << ", j=" << rep.j << "): " << rep.witness << "\n";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json report;
  report["check"] = "verify_lemmas";
  report["params"] = {{"max_r", config.max_r}, {"max_j", config.max_j}};
  report["status"] = all_pass ? "pass" : "fail";
  report["reports"] = entries;
  report["counterexamples"] = json::array();
  report["timings"] = {{"total_seconds", seconds}};
  emit_report(config, report);

  std::cout << (all_pass ? "PASS" : "FAIL") << " verify-lemmas: " << reports.size()
            << " lemma instances, max r " << config.max_r << " ("
            << seconds << "s)\n";
  return all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_verify_theorem(const RunConfig& config) {
  std::string error;
  auto spec = parse_spec(config, &error);
  if (!spec) return config_error(error);
  if (!is_generic(*spec) && !config.allow_nongeneric)
    return config_error(
        "spec is not generic: A_{r-1} must have pairwise-distinct diagonal entries "
        "(use --allow-nongeneric to explore)");

  try {
    const MainTheoremReport result = verify_main_theorem(*spec, config.allow_nongeneric);
    json report;
    report["check"] = "verify_main_theorem";
    report["params"] = spec_params(config);
    report["status"] = result.pass ? "pass" : "fail";
    json cex = json::array();
    for (const TheoremMismatch& mm : result.mismatches)
      cex.push_back({{"element", json::parse(mm.element_json)},
                     {"ind_Br", json::parse(mm.from_borel.to_json())},
                     {"ind_Hprime", json::parse(mm.from_hprime.to_json())}});
    report["counterexamples"] = cex;
    report["timings"] = {{"total_seconds", result.seconds}};
    report["elements_checked"] = result.elements_checked;
    emit_report(config, report);
    std::cout << (result.pass ? "PASS" : "FAIL") << " verify-theorem: "
              << result.elements_checked << " elements compared (" << result.seconds
              << "s)\n";
    return result.pass ? kExitPass : kExitCheckFailed;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudgetExceeded;
  }
}

int cmd_verify_stages(const RunConfig& config) {
  std::string error;
  auto spec = parse_spec(config, &error);
  if (!spec) return config_error(error);

  try {
    const StageChainReport result = verify_stage_chain(*spec);
    json report;
    report["check"] = "verify_stage_chain";
    report["params"] = spec_params(config);
    report["status"] = result.pass ? "pass" : "fail";
    report["counterexamples"] = result.counterexamples;
    report["timings"] = {{"total_seconds", result.seconds}};
    report["elements_checked"] = result.elements_checked;
    emit_report(config, report);
    std::cout << (result.pass ? "PASS" : "FAIL") << " verify-stages: "
              << result.elements_checked << " elements, X_r anchor included ("
              << result.seconds << "s)\n";
    return result.pass ? kExitPass : kExitCheckFailed;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudgetExceeded;
  }
}

int cmd_exp_sum(const RunConfig& config) {
  if (!is_prime(config.p)) return config_error("--p must be prime");
  if (config.N < 1 || config.N > 4) return config_error("--N must be in 1..4");
  if (config.p > 13) return config_error("--p too large for the exhaustive scan");
  // p^{N+1} functions, each summed over p^N points.
  Int cost = 1;
  for (int k = 0; k < 2 * config.N + 1; ++k) cost *= config.p;
  if (cost > Int(config.budget) * 64) {
    std::cerr << "budget exceeded: the exhaustive scan needs " << cost.str()
              << " evaluations\n";
    return kExitBudgetExceeded;
  }

  const auto start = std::chrono::steady_clock::now();
  // Exhaustive over all affine functions a . x + c on F_p^N: the sum must
  // vanish exactly when the function is non-constant.
  std::vector<std::string> counterexamples;
  std::vector<int> coeffs(static_cast<std::size_t>(config.N), 0);
  const Cyclotomic zero = Cyclotomic::zero(config.p);
  while (true) {
    const bool constant = std::all_of(coeffs.begin(), coeffs.end(), [](int a) { return a == 0; });
    for (int c = 0; c < config.p; ++c) {
      const Cyclotomic sum = exp_sum_affine(config.p, config.N, coeffs, c);
      Rational pn = 1;
      for (int k = 0; k < config.N; ++k) pn *= config.p;
      const Cyclotomic expected =
          constant ? Cyclotomic::root_of_unity(config.p, c) * pn : zero;
      if (sum != expected && counterexamples.size() < 16) {
        std::ostringstream os;
        os << "coeffs=[";
        for (std::size_t t = 0; t < coeffs.size(); ++t)
          os << (t ? "," : "") << coeffs[t];
        os << "], c=" << c;
        counterexamples.push_back(os.str());
      }
    }
    int pos = config.N;
    bool done = false;
    while (pos > 0) {
      --pos;
      if (++coeffs[static_cast<std::size_t>(pos)] < config.p) break;
      coeffs[static_cast<std::size_t>(pos)] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = counterexamples.empty();

  json report;
  report["check"] = "exp_sum_affine";
  report["params"] = {{"p", config.p}, {"N", config.N}};
  report["status"] = pass ? "pass" : "fail";
  report["counterexamples"] = counterexamples;
  report["timings"] = {{"total_seconds", seconds}};
  emit_report(config, report);
  std::cout << (pass ? "PASS" : "FAIL") << " exp-sum: exhaustive over p=" << config.p
            << ", N=" << config.N << " (" << seconds << "s)\n";
  return pass ? kExitPass : kExitCheckFailed;
}

int cmd_cross_validate(const RunConfig& config) {
  std::string error;
  auto ctx = parse_context(config, &error);
  if (!ctx) return config_error(error);
  if (config.trials < 1) return config_error("--trials must be positive");

  const auto cache = open_cache(config);
  const CrossValidateReport result =
      cross_validate_u(*ctx, config.trials, config.seed, cache.get());

  json report;
  report["check"] = "cross_validate_u";
  report["params"] = {{"q", config.q}, {"r", config.r}, {"n", config.n},
                      {"trials", config.trials}, {"seed", config.seed}};
  report["status"] = result.pass ? "pass" : "fail";
  report["counterexamples"] = result.witness.empty()
                                  ? json::array()
                                  : json::array({result.witness});
  report["timings"] = {{"total_seconds", result.seconds}};
  emit_report(config, report);
  std::cout << (result.pass ? "PASS" : "FAIL") << " cross-validate: " << result.trials
            << " trials at q=" << config.q << ", r=" << config.r << " ("
            << result.seconds << "s)\n";
  return result.pass ? kExitPass : kExitCheckFailed;
}

int dispatch(const RunConfig& config) {
  try {
    if (config.command == "verify-lemmas") return cmd_verify_lemmas(config);
    if (config.command == "verify-theorem") return cmd_verify_theorem(config);
    if (config.command == "verify-stages") return cmd_verify_stages(config);
    if (config.command == "exp-sum") return cmd_exp_sum(config);
    if (config.command == "cross-validate") return cmd_cross_validate(config);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudgetExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return config_error("unknown command '" + config.command + "'");
}

}  // namespace tgc
