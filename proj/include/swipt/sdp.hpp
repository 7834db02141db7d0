#pragma once

#include <map>
#include <vector>

#include "json.hpp"
#include "swipt/linalg.hpp"

namespace swipt::sdp {

enum class Sense { LessEqual, GreaterEqual, Equal };
enum class SolveStatus { Optimal, Infeasible, MaxIterations };

const char* to_string(SolveStatus status);

// One linear constraint: sum_b Re tr(A_{c,b} X_b) <sense> rhs. Blocks not in
// coeffs carry a zero coefficient.
struct Constraint {
  std::map<int, HermitianMatrix> coeffs;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

// Block-structured complex-Hermitian SDP:
//   maximize sum_b Re tr(C_b X_b)   subject to constraints,  X_b PSD.
// At least one LessEqual/Equal constraint with positive-definite coefficients
// on every block must be present so the feasible set is trace-bounded.
struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<HermitianMatrix> objective;  // one per block; zero matrices allowed
  std::vector<Constraint> constraints;

  void validate() const;  // throws InvalidInput
};

struct SolverOptions {
  double feas_tol = 1e-7;       // relative primal/dual feasibility
  double gap_tol = 1e-6;        // relative duality gap
  int max_iterations = 200;
  double step_fraction = 0.98;  // fraction-to-boundary
  bool record_history = false;
};

// Per-iteration trace in internally scaled units (objective normalized by the
// total coefficient norm, constraint rows by their norms).
struct IterateRecord {
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double primal_infeas = 0.0;
  double dual_infeas = 0.0;
  double mu = 0.0;
  double abs_y_dot_rp = 0.0;       // |y . (rhs - A(X))|
  double dual_resid_dot_x = 0.0;   // sum_b ||Rd_b||_F ||X_b||_F
};

// Multiplier sign convention: inequality multipliers are reported >= 0
// (Lagrangian convention); for a GreaterEqual constraint the stored value is
// the negative of the internal equality-form multiplier. dual_slack_b is the
// PSD dual iterate Z_b, which satisfies
//   Z_b = sum_c y_c^int A_{c,b} - C_b  within dual_infeas,
// where y^int = -dual for GreaterEqual constraints and +dual otherwise.
struct SdpSolution {
  std::vector<CMatrix> primal;      // per block, PSD
  std::vector<double> dual;         // per constraint
  std::vector<CMatrix> dual_slack;  // per block
  double objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;            // |p-d| / max(1,|p|,|d|) in scaled units
  double primal_infeas = 0.0;  // scaled, relative
  double dual_infeas = 0.0;    // scaled, relative
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<IterateRecord> history;
};

// Infeasible-start primal-dual path-following with an HKM search direction
// and Mehrotra predictor-corrector. Deterministic for fixed inputs/options.
SdpSolution solve_sdp(const SdpProblem& problem, const SolverOptions& opts = {});

struct RankOneExtraction {
  CVector w;
  double rank_defect = 0.0;
};

// w = sqrt(tr X) u with u the dominant eigenvector, so ||w||^2 keeps the
// block's power. budget > 0 sanity-bounds tr X against the power budget.
RankOneExtraction extract_rank_one(const HermitianMatrix& x, double budget = 0.0);

// Debug dump (blocks, objective, constraints, rhs) for offline cross-checks.
nlohmann::json problem_to_json(const SdpProblem& problem);

}  // namespace swipt::sdp
