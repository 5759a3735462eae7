#ifndef JETFORGE_VERIFIERS_HPP
#define JETFORGE_VERIFIERS_HPP

#include "jetforge/model.hpp"

namespace jetforge {

struct DegenerateDistribution : std::runtime_error {
  DegenerateDistribution() : std::runtime_error("Lax distribution has rank < 2") {}
};
struct Indeterminate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fold part results: first nonzero verdict wins, otherwise the weakest
// zero verdict (probabilistic < symbolic) with merged bookkeeping.
VerificationResult combineResults(const std::vector<std::pair<std::string, VerificationResult>>& parts);

// prolong(contact_field(f), 2) applied to every equation, reduced on-shell
VerificationResult checkSymmetry(const EquationModel& m, const Expr& f, const VerifyOptions& opt = {});
VerificationResult checkFamily(const EquationModel& m, const SymmetryFamily& fam, const VerifyOptions& opt = {});

// The block's generator map applied to the Poisson bracket {A, AB} of the
// paired symbols on the block's declared plane.
Expr familyAtPoisson(const EquationModel& m, const std::string& blockId);

// [fam_i(A), fam_j(B)] = fam_target({A,B}); empty target means the bracket
// must vanish (distinct branches or out-of-range grade). Off-shell identity.
VerificationResult checkAlgebraHom(const EquationModel& m, const std::string& blockI, const std::string& blockJ,
                                   const std::string& targetBlock, const VerifyOptions& opt = {});

// Every listed generator (families with symbolic A, finite part) kills I.
VerificationResult checkInvariant(const EquationModel& m, const Expr& I, const VerifyOptions& opt = {});

struct LaxReport {
  VerificationResult frobenius;       // all 3x3 minors of {V, W, [V,W]}
  VerificationResult zeroCurvature;   // coefficients of [V,W] themselves
  int minors = 0;
};
LaxReport checkLax(const EquationModel& m, const VectorField& V, const VectorField& W,
                   const VerifyOptions& opt = {});
VerificationResult checkZeroCurvature(const EquationModel& m, const VectorField& V, const VectorField& W,
                                      const VerifyOptions& opt = {});

// Cross-derivative compatibility of first-order fibre-variable rules.
VerificationResult checkCovering(const EquationModel& m, const std::vector<DerivRule>& cov,
                                 const VerifyOptions& opt = {});

struct RecursionReport {
  VerificationResult result;
  std::vector<std::string> consumed;  // rule sets the reduction actually needed
};
RecursionReport checkRecursion(const EquationModel& m, const std::vector<DerivRule>& rec,
                               const VerifyOptions& opt = {});

// u -> u + g(y,z) against h -> h + {f,g} on the Hussain deformation branch;
// flipSign swaps the bracket sign (perturbation, must fail).
VerificationResult checkGauge(const EquationModel& m, bool flipSign = false, const VerifyOptions& opt = {});

// Dimension of the symmetry subspace inside the 36 quadratics in
// (x^1..x^4, u_1..u_4); exact ranks sampled at random on-shell points,
// required stable across 3 independent runs.
int linearSymDimension(const EquationModel& m, uint64_t seed = 0);

// Rank of prolonged generator values at a random k-jet point, k in {0,1};
// full rank (5 resp. 9) certifies absence of order-k invariants there.
int rankSpotCheck(const EquationModel& m, int order, uint64_t seed = 0);

// Gateaux linearization of the model's single scalar equation.
Expr linearizeModel(const EquationModel& m, const std::string& pert);

}  // namespace jetforge

#endif
