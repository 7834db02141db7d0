#pragma once

#include <optional>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/metrics.hpp"
#include "swipt/sdp.hpp"

namespace swipt::beamforming {

// Per-user interference null spaces plus the channel compressions derived
// from them. S is the pathloss-weighted sum of EU channel outer products and
// doubles as the full-dimension energy matrix; S_EI[i] = N_I[i]^H S N_I[i],
// S_E = N_E^H S N_E.
struct NullSpaceWorkspace {
  std::vector<CMatrix> N_I;       // M x (M - K_I + 1), orthonormal columns
  CMatrix N_E;                    // M x (M - K_I); zero columns when M == K_I
  std::vector<CMatrix> eff_h_EI;  // per IU: (M-K_I+1) x K_E projected EU channels
  CMatrix eff_h_E;                // (M-K_I) x K_E
  std::vector<CVector> eff_h_II;  // per IU: own channel in its null space
  HermitianMatrix S;
  std::vector<HermitianMatrix> S_EI;
  HermitianMatrix S_E;
};

// Null space of the other users' channel matrix per IU (SVD based); errors
// with DegenerateChannel if a rank drop changes the expected dimensions.
NullSpaceWorkspace compute_null_spaces(const ChannelSet& channels);

// Full SDR: K_I+1 blocks of dim M (per-IU beams plus the single energy beam),
// per-IU rate constraints with cross-terms, one power budget row.
sdp::SdpProblem build_full_sdr_problem(const ChannelSet& channels, const SystemConfig& config);

// Null-space SDR: K_I decoupled blocks of dim M-K_I+1, shared power budget.
sdp::SdpProblem build_nullspace_problem(const NullSpaceWorkspace& ws, const ChannelSet& channels,
                                        const SystemConfig& config);

// Null-space SDR with the dedicated energy block retained (dim M-K_I); used
// only to audit that the dedicated beam vanishes. Requires M > K_I.
sdp::SdpProblem build_dedicated_beam_problem(const NullSpaceWorkspace& ws,
                                             const ChannelSet& channels,
                                             const SystemConfig& config);

enum class Method { FullSdr, NullspaceSdr, LowComplexity };
const char* to_string(Method method);

struct SolverStats {
  int iterations = 0;
  double gap = 0.0;
  double sdp_objective = 0.0;
  sdp::SolveStatus status = sdp::SolveStatus::Optimal;
};

struct BeamformingSolution {
  Method method = Method::FullSdr;
  std::vector<CVector> w;          // one beam per IU
  std::optional<CVector> v;        // energy beam (full SDR only)
  std::optional<int> chosen_index; // boosted IU (low-complexity only)
  std::vector<double> per_user_rate;
  std::vector<double> per_eu_power;
  double objective = 0.0;          // achieved total received power, watts
  double tx_power = 0.0;
  std::vector<double> rank_defects;
  SolverStats solver;
};

sdp::SolverOptions default_solver_options();

BeamformingSolution solve_full_sdr(const ChannelSet& channels, const SystemConfig& config,
                                   const sdp::SolverOptions& opts = default_solver_options());

BeamformingSolution solve_nullspace_sdr(const ChannelSet& channels, const SystemConfig& config,
                                        const sdp::SolverOptions& opts = default_solver_options());

// Closed-form per-IU allocation in the interference-free subspaces: beam
// along N_i N_i^H h_i, power chosen so the rate target holds with equality.
struct MrtAllocation {
  std::vector<CVector> w_mrt;   // sqrt(P_I[i]) times the unit MRT direction
  std::vector<double> P_I;      // watts
  std::vector<double> beta;     // effective channel gain ||N_i^H h_i||^2
};

MrtAllocation mrt_allocation(const NullSpaceWorkspace& ws, const ChannelSet& channels,
                             const SystemConfig& config);

// Single-block program that boosts IU i with the power left over by the MRT
// allocation of the other users.
struct BoostCandidate {
  HermitianMatrix B;       // optimal block
  double sdp_objective = 0.0;
  CVector w_boosted;       // reconstructed beam, ||w||^2 = residual budget
  double rank_defect = 0.0;
  SolverStats solver;
};

BoostCandidate solve_boost_candidate(int index, const NullSpaceWorkspace& ws,
                                     const ChannelSet& channels, const SystemConfig& config,
                                     const MrtAllocation& mrt,
                                     const sdp::SolverOptions& opts = default_solver_options());

// Low-complexity design: MRT everywhere, then one dual-function beam chosen
// by scanning the boost candidates (ties break to the lowest index).
BeamformingSolution solve_low_complexity(const ChannelSet& channels, const SystemConfig& config,
                                         const sdp::SolverOptions& opts = default_solver_options());

// Numeric evidence that the dedicated energy block vanishes at the optimum of
// the null-space program, together with the compression eigenvalue bound and
// the dual certificate (multipliers lambda_i, beta; slack S_E - beta I).
struct DedicatedBeamAudit {
  bool trivial = false;           // M == K_I: block is empty, nothing to audit
  double trace_D = 0.0;           // watts
  double trace_D_rel = 0.0;       // trace_D / P_max
  double xi_max_E = 0.0;          // top eigenvalue of S_E
  std::vector<double> xi_max_EI;  // top eigenvalue of each S_EI
  bool interlace_ok = true;       // xi_max_E <= xi_max_EI + 1e-9 for all i
  std::vector<double> dual_lambda;
  double dual_beta = 0.0;
  double slack_eig_max = 0.0;     // max eigenvalue of S_E - beta I (<= 0 at optimum)
  double slack_eig_min = 0.0;
  SolverStats solver;
};

sdp::SolverOptions audit_solver_options();

DedicatedBeamAudit audit_dedicated_beam(const ChannelSet& channels, const SystemConfig& config,
                                        const sdp::SolverOptions& opts = audit_solver_options());

metrics::MetricsReport evaluate(const BeamformingSolution& solution, const ChannelSet& channels,
                                const SystemConfig& config);

}  // namespace swipt::beamforming
