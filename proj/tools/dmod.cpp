/**
 * @file dmod.cpp
 * @brief Command-line front end: `construct` prints the module, `verify` runs identity suites.
 *
 * Exit codes: 0 all identities hold, 1 some identity failed, 2 usage or parameter error.
 */

#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "dmod/report.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

void add_common(CLI::App* cmd, dmod::RunConfig& cfg, std::string& rho) {
  cmd->add_option("--q", cfg.q, "field size (prime)")->capture_default_str();
  cmd->add_option("--rho", rho, "coefficients of rho, lowest degree first, comma separated")->capture_default_str();
  cmd->add_option("--prec", cfg.prec, "working precision in x^-1 (default from DMOD_PREC, else 64)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--report", cfg.report, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

void emit(const dmod::RunConfig& cfg, const dmod::json& j, const std::string& text) {
  if (cfg.report == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  dmod::RunConfig cfg;
  try {
    cfg.prec = dmod::default_precision();
  } catch (const std::invalid_argument& e) {
    std::cerr << "dmod: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Rank-one sign-normalised Drinfeld modules over the coordinate ring of P^1 minus a point"};
  app.require_subcommand(1);
  std::string rho = "1,1,1";

  auto* construct = app.add_subcommand("construct", "build the standard and Hayes modules and compare routes");
  add_common(construct, cfg, rho);

  auto* verify = app.add_subcommand("verify", "check module, Galois, exp/log, period and AGF identities");
  add_common(verify, cfg, rho);
  verify->add_option("--trunc", cfg.trunc, "number of product factors for periods and AGF")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--samples", cfg.samples, "AGF sample points, e.g. eta+x^1,0")->delimiter(',');
  verify->add_option("--suite", cfg.suites, "suites to run (repeatable or comma separated; default all)")
      ->delimiter(',')
      ->check(CLI::IsMember(dmod::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    cfg.rho = dmod::parse_rho(rho);
    if (construct->parsed()) {
      auto r = dmod::run_construct(cfg);
      emit(cfg, dmod::to_json(r), dmod::to_text(r));
      return r.pass() ? kPass : kFail;
    }
    auto r = dmod::run_verify(cfg);
    emit(cfg, dmod::to_json(r), dmod::to_text(r));
    return r.pass() ? kPass : kFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dmod: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "dmod: " << e.what() << "\n";
    return kUsage;
  }
}
