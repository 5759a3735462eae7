// Compares the OpenMP-parallel verification kernels against the serial
// reference on representative heavy workloads and reports the speedup.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "jetforge/geometry.hpp"
#include "jetforge/registry.hpp"
#include "jetforge/verifiers.hpp"

using namespace jetforge;

namespace {

double runTimed(const std::function<std::string()>& fn, std::string& verdict) {
  auto t0 = std::chrono::steady_clock::now();
  verdict = fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Case {
  std::string name;
  std::function<std::string(const VerifyOptions&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 1;

  std::vector<Case> cases;
  cases.push_back({"lax.thm3plus-ii (minor battery)", [](const VerifyOptions& o) {
                     const EquationModel& m = builtin("thm3plus-ii");
                     return verdictName(checkLax(m, m.lax->V, m.lax->W, o).frobenius.verdict);
                   }});
  cases.push_back({"lax.dghe (minor battery)", [](const VerifyOptions& o) {
                     const EquationModel& m = builtin("dghe");
                     return verdictName(checkLax(m, m.lax->V, m.lax->W, o).frobenius.verdict);
                   }});
  cases.push_back({"sampling.dghe.recursion", [](const VerifyOptions& o) {
                     VerifyOptions oo = o;
                     oo.mode = VerifyMode::Probabilistic;
                     oo.trials = 64;
                     const EquationModel& m = builtin("dghe");
                     return verdictName(checkRecursion(m, m.recursion, oo).result.verdict);
                   }});
  cases.push_back({"sampling.genlp.zero-curvature", [](const VerifyOptions& o) {
                     VerifyOptions oo = o;
                     oo.mode = VerifyMode::Probabilistic;
                     oo.trials = 64;
                     const EquationModel& m = builtin("genlp");
                     return verdictName(checkZeroCurvature(m, m.lax->V, m.lax->W, oo).verdict);
                   }});

  std::printf("%-34s %10s %10s %8s\n", "case", "serial", "openmp", "speedup");
  for (auto& c : cases) {
    double ts = 0, tp = 0;
    std::string vs, vp;
    for (int r = 0; r < reps; ++r) {
      VerifyOptions serial;
      serial.parallel = false;
      serial.seed = static_cast<uint64_t>(r);
      VerifyOptions par;
      par.parallel = true;
      par.seed = static_cast<uint64_t>(r);
      ts += runTimed([&] { return c.run(serial); }, vs);
      tp += runTimed([&] { return c.run(par); }, vp);
      if (vs != vp) {
        std::printf("verdict mismatch in %s: serial=%s openmp=%s\n", c.name.c_str(), vs.c_str(),
                    vp.c_str());
        return 1;
      }
    }
    std::printf("%-34s %9.3fs %9.3fs %7.2fx  [%s]\n", c.name.c_str(), ts, tp,
                tp > 0 ? ts / tp : 0.0, vs.c_str());
  }
  return 0;
}
