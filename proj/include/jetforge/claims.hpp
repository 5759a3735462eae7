#ifndef JETFORGE_CLAIMS_HPP
#define JETFORGE_CLAIMS_HPP

#include <functional>

#include "jetforge/model.hpp"

namespace jetforge {

// One checkable statement. `run` executes the verification with the
// supplied options; expectNonZero inverts the pass semantics (negative
// controls: perturbed Lax pairs, the KZ self-duality failure, ...).
struct Claim {
  std::string id;
  std::string description;
  bool expectNonZero = false;
  std::function<VerificationResult(const VerifyOptions&)> run;
};

// The full corpus, sorted by id; built once.
const std::vector<Claim>& claimCorpus();

// Pass semantics including inversion for negative claims.
bool claimPassed(const Claim& c, const VerificationResult& r);

// Glob matching for claim / model filters ('*' and '?').
bool matchGlob(const std::string& pattern, const std::string& text);

}  // namespace jetforge

#endif
