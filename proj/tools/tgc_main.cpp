// tgc: exhaustive exact-arithmetic verification of truncated-ring group
// identities. Subcommands drive the lemma verifiers, the induced-character
// comparison, the stage-trace chain, the affine exponential sums, and the
// symbolic-vs-matrix cross-validation.

#include "tgc/cli.hpp"

#include <CLI11.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<int> parse_int_csv(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

void add_spec_options(CLI::App* cmd, tgc::RunConfig& config,
                      std::vector<std::string>& a_raw, std::string& chi_raw) {
  cmd->add_option("--q", config.q, "field size (prime)")->required();
  cmd->add_option("--r", config.r, "truncation order")->required();
  cmd->add_option("--n", config.n, "matrix size");
  a_raw.assign(8, "");
  for (int j = 1; j <= 8; ++j)
    cmd->add_option("--A" + std::to_string(j), a_raw[static_cast<std::size_t>(j) - 1],
                    "diagonal of A_" + std::to_string(j) + ", comma-separated");
  cmd->add_option("--chi", chi_raw, "character exponents, comma-separated");
  cmd->add_option("--budget", config.budget, "enumeration budget");
  cmd->add_option("--report", config.report_path, "write a JSON report here");
}

bool finalize_spec(tgc::RunConfig& config, const std::vector<std::string>& a_raw,
                   const std::string& chi_raw) {
  try {
    for (const std::string& raw : a_raw) {
      if (raw.empty()) break;
      config.A.push_back(parse_int_csv(raw));
    }
    if (!chi_raw.empty()) config.chi = parse_int_csv(chi_raw);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for GL_n over truncated polynomial rings"};
  app.require_subcommand(1);

  tgc::RunConfig config;
  std::vector<std::string> a_raw;
  std::string chi_raw;

  CLI::App* lemmas = app.add_subcommand("verify-lemmas", "run the identity verifiers 4.1-4.6");
  lemmas->add_option("--max-r", config.max_r, "largest truncation order in the grid");
  lemmas->add_option("--max-j", config.max_j, "largest index for the partition-formula grid");
  lemmas->add_option("--i", config.i, "restrict the grid to this i");
  lemmas->add_option("--j", config.j, "restrict the grid to this j");
  lemmas->add_option("--report", config.report_path, "write a JSON report here");

  CLI::App* theorem =
      app.add_subcommand("verify-theorem", "compare the two induced characters exhaustively");
  add_spec_options(theorem, config, a_raw, chi_raw);
  theorem->add_flag("--allow-nongeneric", config.allow_nongeneric,
                    "explore non-generic specs (no equality is asserted)");

  CLI::App* stages =
      app.add_subcommand("verify-stages", "check the stage-trace chain and its anchor");
  std::vector<std::string> a_raw_stages;
  std::string chi_raw_stages;
  add_spec_options(stages, config, a_raw_stages, chi_raw_stages);

  CLI::App* expsum =
      app.add_subcommand("exp-sum", "exhaustive affine exponential-sum vanishing check");
  expsum->add_option("--p", config.p, "prime")->required();
  expsum->add_option("--N", config.N, "number of variables")->required();
  expsum->add_option("--report", config.report_path, "write a JSON report here");

  CLI::App* crossval = app.add_subcommand(
      "cross-validate", "randomized symbolic-vs-matrix structure-coordinate agreement");
  crossval->add_option("--q", config.q, "field size (prime)")->required();
  crossval->add_option("--r", config.r, "truncation order")->required();
  crossval->add_option("--n", config.n, "matrix size");
  crossval->add_option("--trials", config.trials, "number of random trials");
  crossval->add_option("--seed", config.seed, "random seed");
  crossval->add_option("--budget", config.budget, "enumeration budget");
  crossval->add_option("--cache-dir", config.cache_dir, "polynomial cache directory");
  crossval->add_option("--report", config.report_path, "write a JSON report here");

  CLI11_PARSE(app, argc, argv);

  if (lemmas->parsed()) config.command = "verify-lemmas";
  if (theorem->parsed()) config.command = "verify-theorem";
  if (stages->parsed()) {
    config.command = "verify-stages";
    a_raw = a_raw_stages;
    chi_raw = chi_raw_stages;
  }
  if (expsum->parsed()) config.command = "exp-sum";
  if (crossval->parsed()) config.command = "cross-validate";

  if (!finalize_spec(config, a_raw, chi_raw)) {
    std::fprintf(stderr, "error: malformed --A or --chi value\n");
    return tgc::kExitConfigError;
  }
  return tgc::dispatch(config);
}
