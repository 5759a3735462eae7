#ifndef JETFORGE_REPORT_HPP
#define JETFORGE_REPORT_HPP

#include "jetforge/claims.hpp"

namespace jetforge {

inline constexpr const char* kToolName = "jetforge";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

struct RunConfig {
  std::string claimFilter = "*";
  uint64_t seed = 0;
  VerifyMode policy = VerifyMode::Auto;
  int trials = 16;
  long bound = 1000;
  std::string format = "human";  // human | json | markdown
  int jobs = 1;                  // claim-level parallelism width

  VerifyOptions verifyOptions() const;
};

struct ClaimReport {
  std::string id;
  std::string description;
  bool expectNonZero = false;
  bool passed = false;
  bool indeterminate = false;
  VerificationResult result;
  std::string error;    // exception text when the run aborted
  double seconds = 0.0; // wall time; excluded from json (determinism)
};

struct ReportDocument {
  RunConfig config;
  std::vector<ClaimReport> claims;  // sorted by id
  int passed = 0;
  int failed = 0;
  int indeterminateCount = 0;
  double totalSeconds = 0.0;

  // 0 all passed; 1 some claim failed; 2 indeterminate only
  int exitCode() const;
};

// Run every corpus claim matching cfg.claimFilter with a bounded-width
// scheduler; report assembly is single-threaded.
ReportDocument runClaims(const RunConfig& cfg);

// Emitters. The json form is byte-identical for identical (cfg, seed):
// wall times are excluded, keys and claims are emitted in fixed order.
std::string toJson(const ReportDocument& doc);
std::string toMarkdown(const ReportDocument& doc);
std::string toHuman(const ReportDocument& doc);

// TOML-like `key = value` config text mirroring the CLI flags
// (claims, seed, policy, trials, bound, format, jobs). '#' comments.
// Unknown keys are an error; flags given on the command line win.
void applyConfigFile(const std::string& path, RunConfig& cfg);

std::string policyName(VerifyMode m);
VerifyMode policyFromName(const std::string& s);

}  // namespace jetforge

#endif
