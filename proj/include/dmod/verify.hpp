#pragma once
/**
 * @file verify.hpp
 * @brief Verification suites over one (q, ρ) configuration, shared by the CLI and the
 * acceptance driver, plus the run configuration they are driven by.
 */

#include <memory>
#include <string>
#include <vector>

#include "dmod/agf.hpp"
#include "dmod/period.hpp"

namespace dmod {

/// Everything a run depends on. Round-trips through JSON (see report.hpp).
struct RunConfig {
  u32 q = 2;
  std::vector<u32> rho{1, 1, 1};
  i64 prec = 64;
  long trunc = 12;
  std::vector<std::string> samples;  // empty: default samples
  std::string report = "text";
  std::vector<std::string> suites;   // empty: all suites
  bool operator==(const RunConfig&) const = default;
};

/// Name of the environment variable that overrides the default precision.
inline constexpr const char* kPrecEnv = "DMOD_PREC";
/// DMOD_PREC if set to a positive integer, otherwise 64. Throws std::invalid_argument on garbage.
i64 default_precision();

/// "1,1,1" → {1,1,1}, low to high. Throws std::invalid_argument on malformed input.
std::vector<u32> parse_rho(const std::string& s);
/// axioms, annihilators, isogenies, explog, period, agf.
const std::vector<std::string>& suite_names();

/// The largest K ≤ trunc with q^K ≤ 4096; the exact ω_f checks and Cauchy rows need
/// working precision about q^K.
long agf_trunc(u32 q, long trunc);

/// One checked identity.
struct Check {
  std::string label;
  bool pass = false;
  std::string detail;  // parameter range or failure reason
};

/// One valuation certificate of the period suite.
struct PeriodRow {
  long K = 0;
  i64 prec = 0;
  std::string target;
  Rat valuation;
  Rat floor;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  std::vector<PeriodRow> periods;  // period suite only
  std::vector<AGFReport> agf;      // agf suite only
  bool pass() const;
};

struct VerifyReport {
  RunConfig config;
  std::vector<SuiteResult> suites;
  bool pass() const;
};

/// Runs one suite. Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const Context& C, const RunConfig& cfg);
/// Runs the selected suites (all when cfg.suites is empty).
VerifyReport run_verify(const RunConfig& cfg);

/// Output of `construct`: the standard module and the Hayes module, each by two routes.
struct ConstructReport {
  RunConfig config;
  std::shared_ptr<const Context> ctx;  // keeps the modules' context alive
  DrinfeldModule residue, factorization;
  HayesModule hayes, hayes_conjugation;  // ψ^u by factorization and as ℓΨℓ^{-1}
  bool routes_agree = false;
  bool has_closed_form = false;  // N = 2 or 3
  bool matches_closed_form = false;
  bool pass() const { return routes_agree && (!has_closed_form || matches_closed_form); }
};
ConstructReport run_construct(const RunConfig& cfg);

}  // namespace dmod
