#include "jetforge/report.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "jetforge/verifiers.hpp"
#include "json.hpp"

namespace jetforge {

VerifyOptions RunConfig::verifyOptions() const {
  VerifyOptions o;
  o.mode = policy;
  o.trials = trials;
  o.bound = bound;
  o.seed = seed;
  // claim-level parallelism and kernel-level OpenMP don't stack
  o.parallel = jobs <= 1;
  return o;
}

int ReportDocument::exitCode() const {
  if (failed > 0) return 1;
  if (indeterminateCount > 0) return 2;
  return 0;
}

ReportDocument runClaims(const RunConfig& cfg) {
  ReportDocument doc;
  doc.config = cfg;
  std::vector<const Claim*> selected;
  for (const Claim& c : claimCorpus())
    if (matchGlob(cfg.claimFilter, c.id)) selected.push_back(&c);
  doc.claims.resize(selected.size());

  auto t0 = std::chrono::steady_clock::now();
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t k = next.fetch_add(1);
      if (k >= selected.size()) return;
      const Claim& c = *selected[k];
      ClaimReport& rep = doc.claims[k];
      rep.id = c.id;
      rep.description = c.description;
      rep.expectNonZero = c.expectNonZero;
      auto s0 = std::chrono::steady_clock::now();
      try {
        rep.result = c.run(cfg.verifyOptions());
        rep.passed = claimPassed(c, rep.result);
      } catch (const Indeterminate& e) {
        rep.indeterminate = true;
        rep.error = e.what();
      } catch (const std::exception& e) {
        rep.error = e.what();
      }
      rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
    }
  };
  int width = std::max(1, cfg.jobs);
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < width; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  doc.totalSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  for (const ClaimReport& r : doc.claims) {
    if (r.indeterminate)
      ++doc.indeterminateCount;
    else if (r.passed)
      ++doc.passed;
    else
      ++doc.failed;
  }
  return doc;
}

static nlohmann::ordered_json claimJson(const ClaimReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["description"] = r.description;
  j["expectNonZero"] = r.expectNonZero;
  j["passed"] = r.passed;
  j["indeterminate"] = r.indeterminate;
  if (!r.error.empty()) j["error"] = r.error;
  if (!r.indeterminate && r.error.empty()) {
    nlohmann::ordered_json v;
    v["verdict"] = verdictName(r.result.verdict);
    v["method"] = r.result.method;
    if (r.result.method == "probabilistic") {
      // Schwartz-Zippel log: evaluation count, coefficient bound,
      // numerator degree bound, and the deciding seeds
      v["trials"] = r.result.trials;
      v["bound"] = r.result.bound;
      v["degreeBound"] = r.result.degreeBound;
      v["seed"] = r.result.seed;
    }
    if (r.result.verdict == Verdict::NonZero || r.result.verdict == Verdict::ProvedNonZero) {
      v["witnessSeed"] = r.result.witnessSeed;
      if (!r.result.witness.empty()) v["witness"] = r.result.witness;
    }
    if (!r.result.note.empty()) v["note"] = r.result.note;
    j["result"] = std::move(v);
  }
  return j;
}

std::string toJson(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["schemaVersion"] = kReportSchemaVersion;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = {{"claims", doc.config.claimFilter},
                 {"seed", doc.config.seed},
                 {"policy", policyName(doc.config.policy)},
                 {"trials", doc.config.trials},
                 {"bound", doc.config.bound}};
  j["claims"] = nlohmann::ordered_json::array();
  for (const ClaimReport& r : doc.claims) j["claims"].push_back(claimJson(r));
  j["summary"] = {{"total", doc.claims.size()},
                  {"passed", doc.passed},
                  {"failed", doc.failed},
                  {"indeterminate", doc.indeterminateCount}};
  return j.dump(2) + "\n";
}

static std::string statusWord(const ClaimReport& r) {
  if (r.indeterminate) return "INDET";
  if (!r.error.empty()) return "ERROR";
  return r.passed ? "pass" : "FAIL";
}

std::string toMarkdown(const ReportDocument& doc) {
  std::ostringstream os;
  os << "# " << kToolName << " report\n\n";
  os << "filter `" << doc.config.claimFilter << "`, seed " << doc.config.seed << ", policy "
     << policyName(doc.config.policy) << "\n\n";
  os << "| claim | status | verdict | note |\n|---|---|---|---|\n";
  for (const ClaimReport& r : doc.claims) {
    std::string verdict = r.error.empty() && !r.indeterminate ? verdictName(r.result.verdict) : "-";
    std::string note = !r.error.empty() ? r.error : r.result.note;
    os << "| " << r.id << " | " << statusWord(r) << " | " << verdict << " | " << note << " |\n";
  }
  os << "\n" << doc.claims.size() << " claims: " << doc.passed << " passed, " << doc.failed
     << " failed, " << doc.indeterminateCount << " indeterminate\n";
  return os.str();
}

std::string toHuman(const ReportDocument& doc) {
  std::ostringstream os;
  for (const ClaimReport& r : doc.claims) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%8.2fs", r.seconds);
    os << (r.passed ? "PASS " : r.indeterminate ? "INDET" : "FAIL ") << "  ";
    os.width(42);
    os.setf(std::ios::left);
    os << r.id;
    os.unsetf(std::ios::left);
    std::string verdict = r.error.empty() && !r.indeterminate ? verdictName(r.result.verdict)
                                                              : ("error: " + r.error);
    os << " " << verdict << buf;
    if (r.error.empty() && !r.result.note.empty()) os << "  " << r.result.note;
    if (r.expectNonZero) os << "  [expected-nonzero]";
    os << "\n";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", doc.totalSeconds);
  os << doc.claims.size() << " claims: " << doc.passed << " passed, " << doc.failed << " failed, "
     << doc.indeterminateCount << " indeterminate (" << buf << ")\n";
  return os.str();
}

std::string policyName(VerifyMode m) {
  switch (m) {
    case VerifyMode::Symbolic: return "symbolic";
    case VerifyMode::Probabilistic: return "probabilistic";
    default: return "auto";
  }
}

VerifyMode policyFromName(const std::string& s) {
  if (s == "symbolic") return VerifyMode::Symbolic;
  if (s == "probabilistic") return VerifyMode::Probabilistic;
  if (s == "auto") return VerifyMode::Auto;
  throw std::runtime_error("unknown policy: " + s + " (symbolic|probabilistic|auto)");
}

static std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

void applyConfigFile(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line.substr(0, line.find('#')));
    if (s.empty()) continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
    if (key == "claims")
      cfg.claimFilter = val;
    else if (key == "seed")
      cfg.seed = std::stoull(val);
    else if (key == "policy")
      cfg.policy = policyFromName(val);
    else if (key == "trials")
      cfg.trials = std::stoi(val);
    else if (key == "bound")
      cfg.bound = std::stol(val);
    else if (key == "format")
      cfg.format = val;
    else if (key == "jobs")
      cfg.jobs = std::stoi(val);
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key: " + key);
  }
}

}  // namespace jetforge
