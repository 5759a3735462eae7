// Command-line front end: claim runner and report emitters.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jetforge/dsl.hpp"
#include "jetforge/geometry.hpp"
#include "jetforge/registry.hpp"
#include "jetforge/report.hpp"
#include "jetforge/verifiers.hpp"
#include "json.hpp"

using namespace jetforge;

namespace {

uint64_t envSeed() {
  const char* s = std::getenv("JETFORGE_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 0;
}

void emit(const std::string& text, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(outPath);
    if (!out) throw std::runtime_error("cannot write: " + outPath);
    out << text;
  }
}

std::string render(const ReportDocument& doc) {
  if (doc.config.format == "json") return toJson(doc);
  if (doc.config.format == "markdown") return toMarkdown(doc);
  return toHuman(doc);
}

int cmdList(const std::string& modelGlob, const std::string& claimGlob, bool modelsOnly,
            bool claimsOnly) {
  if (!claimsOnly) {
    std::cout << "models:\n";
    for (const std::string& id : builtinIds())
      if (matchGlob(modelGlob, id))
        std::cout << "  " << id << "  --  " << builtin(id).anchor << "\n";
  }
  if (!modelsOnly) {
    std::cout << "claims:\n";
    for (const Claim& c : claimCorpus())
      if (matchGlob(claimGlob, c.id))
        std::cout << "  " << c.id << (c.expectNonZero ? "  [expected-nonzero]" : "") << "  --  "
                  << c.description << "\n";
  }
  return 0;
}

int cmdVerify(const RunConfig& cfg, const std::string& outPath) {
  ReportDocument doc = runClaims(cfg);
  emit(render(doc), outPath);
  if (!outPath.empty() && cfg.format != "human") std::cerr << toHuman(doc);
  return doc.exitCode();
}

int cmdDescribe(const std::string& id) {
  std::cout << printModel(builtin(id));
  return 0;
}

int cmdExport(const std::string& format, const std::string& outPath) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["schemaVersion"] = kReportSchemaVersion;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["models"] = nlohmann::ordered_json::array();
    for (const std::string& id : builtinIds())
      j["models"].push_back({{"id", id}, {"anchor", builtin(id).anchor}});
    j["claims"] = nlohmann::ordered_json::array();
    for (const Claim& c : claimCorpus())
      j["claims"].push_back(
          {{"id", c.id}, {"description", c.description}, {"expectNonZero", c.expectNonZero}});
    emit(j.dump(2) + "\n", outPath);
  } else {
    std::ostringstream os;
    os << "# model inventory\n\n| id | anchor |\n|---|---|\n";
    for (const std::string& id : builtinIds()) os << "| " << id << " | " << builtin(id).anchor << " |\n";
    os << "\n# claim inventory\n\n| id | expected | description |\n|---|---|---|\n";
    for (const Claim& c : claimCorpus())
      os << "| " << c.id << " | " << (c.expectNonZero ? "nonzero" : "zero") << " | "
         << c.description << " |\n";
    emit(os.str(), outPath);
  }
  return 0;
}

int cmdCheck(const std::string& path, const RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open: " << path << "\n";
    return 3;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  EquationModel m;
  try {
    m = parseModel(buf.str());
  } catch (const SyntaxError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return 3;
  } catch (const SemanticError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return 3;
  }
  VerifyOptions opt = cfg.verifyOptions();
  opt.parallel = true;
  std::vector<std::pair<std::string, VerificationResult>> parts;
  bool indet = false;
  auto run = [&](const std::string& label, auto&& fn) {
    try {
      parts.emplace_back(label, fn());
    } catch (const Indeterminate& e) {
      indet = true;
      std::cout << label << ": indeterminate (" << e.what() << ")\n";
    }
  };
  for (auto& fam : m.families)
    run("family " + fam.blockId, [&] { return checkFamily(m, fam, opt); });
  for (auto& fp : m.finite)
    run("finite " + fp.name, [&] { return checkSymmetry(m, fp.gen, opt); });
  if (m.lax) run("lax frobenius", [&] { return checkLax(m, m.lax->V, m.lax->W, opt).frobenius; });
  if (!m.covering.empty()) run("covering", [&] { return checkCovering(m, m.covering, opt); });
  if (!m.recursion.empty())
    run("recursion", [&] { return checkRecursion(m, m.recursion, opt).result; });
  if (m.invariant) run("invariant", [&] { return checkInvariant(m, *m.invariant, opt); });
  if (!m.metricOverride.empty()) {
    SelfDualOptions so;
    so.trials = opt.trials;
    so.bound = opt.bound;
    so.seed = opt.seed;
    run("self-dual", [&] { return checkSelfDual(m, overrideMetric(m), so).result; });
  }
  if (parts.empty() && !indet) {
    std::cout << m.id << ": nothing to verify (no attachments)\n";
    return 0;
  }
  bool allZero = true;
  for (auto& [label, r] : parts) {
    std::cout << label << ": " << verdictName(r.verdict);
    if (!r.note.empty()) std::cout << "  (" << r.note << ")";
    std::cout << "\n";
    allZero = allZero && r.zero();
  }
  if (!allZero) return 1;
  return indet ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact jet-calculus verification suite for 4D integrable Monge-Ampere equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  RunConfig cfg;
  cfg.seed = envSeed();

  // list
  auto* list = app.add_subcommand("list", "model and claim inventory");
  std::string modelGlob = "*", claimGlob = "*";
  list->add_option("--models", modelGlob, "model id glob");
  list->add_option("--claims", claimGlob, "claim id glob");

  // shared verify/check options
  std::string configPath, outPath, policyStr, formatStr;
  auto addRunFlags = [&](CLI::App* cmd, bool withFormat) {
    cmd->add_option("--config", configPath, "key = value config file (flags win)");
    cmd->add_option("--seed", cfg.seed, "base seed (default: JETFORGE_SEED or 0)");
    cmd->add_option("--policy", policyStr, "symbolic | probabilistic | auto");
    cmd->add_option("--trials", cfg.trials, "probabilistic trial count");
    cmd->add_option("--bound", cfg.bound, "rational coefficient bound B");
    if (withFormat) {
      cmd->add_option("--format", formatStr, "human | json | markdown");
      cmd->add_option("--out", outPath, "write the report to a file");
      cmd->add_option("--jobs", cfg.jobs, "claim-level parallelism width");
    }
  };
  auto* verify = app.add_subcommand("verify", "run claims and emit a report");
  verify->add_option("--claims", cfg.claimFilter, "claim id glob");
  addRunFlags(verify, true);

  auto* check = app.add_subcommand("check", "verify a user model file (.jf)");
  std::string checkPath;
  check->add_option("file", checkPath, "model document")->required();
  addRunFlags(check, false);

  auto* describe = app.add_subcommand("describe", "print a builtin model as a document");
  std::string describeId;
  describe->add_option("id", describeId, "model id")->required();

  auto* exp = app.add_subcommand("export", "export the model / claim inventory");
  std::string expFormat = "json";
  exp->add_option("--format", expFormat, "json | markdown");
  exp->add_option("--out", outPath, "write to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      bool givenModels = list->count("--models") > 0, givenClaims = list->count("--claims") > 0;
      return cmdList(modelGlob, claimGlob, givenModels && !givenClaims,
                     givenClaims && !givenModels);
    }
    // config file first, explicit flags override
    if (!configPath.empty()) {
      RunConfig fromFile = cfg;
      applyConfigFile(configPath, fromFile);
      // flags win: re-apply any values the user actually passed
      if (verify->count("--claims")) fromFile.claimFilter = cfg.claimFilter;
      if ((verify->parsed() ? verify : check)->count("--seed")) fromFile.seed = cfg.seed;
      if ((verify->parsed() ? verify : check)->count("--trials")) fromFile.trials = cfg.trials;
      if ((verify->parsed() ? verify : check)->count("--bound")) fromFile.bound = cfg.bound;
      if (verify->parsed() && verify->count("--jobs")) fromFile.jobs = cfg.jobs;
      cfg = fromFile;
      if (!policyStr.empty()) cfg.policy = policyFromName(policyStr);
      if (!formatStr.empty()) cfg.format = formatStr;
    } else {
      if (!policyStr.empty()) cfg.policy = policyFromName(policyStr);
      if (!formatStr.empty()) cfg.format = formatStr;
    }
    if (verify->parsed()) return cmdVerify(cfg, outPath);
    if (check->parsed()) return cmdCheck(checkPath, cfg);
    if (describe->parsed()) return cmdDescribe(describeId);
    if (exp->parsed()) return cmdExport(expFormat, outPath);
  } catch (const UnknownModel& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
