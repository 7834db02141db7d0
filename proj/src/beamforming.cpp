#include "swipt/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swipt::beamforming {

namespace {

// Pathloss-weighted sum of EU channel outer products; tr(S W) is then the
// received power in watts delivered by a beam covariance W.
HermitianMatrix energy_matrix(const ChannelSet& channels) {
  const int m = channels.M();
  CMatrix s = CMatrix::Zero(m, m);
  for (int j = 0; j < channels.K_E(); ++j)
    s += channels.rho_E[static_cast<std::size_t>(j)] *
         (channels.h_E[static_cast<std::size_t>(j)] * channels.h_E[static_cast<std::size_t>(j)].adjoint());
  return HermitianMatrix::trusted(std::move(s));
}

double rate_gamma(double target) { return std::exp2(target) - 1.0; }

// Rate targets unreachable even with the whole budget on one user alone.
std::vector<double> rate_shortfall(const ChannelSet& channels, const SystemConfig& config,
                                   const std::vector<double>& effective_gain) {
  std::vector<double> out(effective_gain.size());
  for (std::size_t i = 0; i < effective_gain.size(); ++i) {
    const double snr_cap = channels.rho_I[i] * config.P_max * effective_gain[i] / config.noise_power;
    out[i] = std::max(0.0, config.T_i[i] - std::log2(1.0 + snr_cap));
  }
  return out;
}

void require_solved(const sdp::SdpSolution& sol, const ChannelSet& channels,
                    const SystemConfig& config, const std::vector<double>& effective_gain,
                    const char* what) {
  if (sol.status == sdp::SolveStatus::Infeasible)
    throw InfeasibleProblem(std::string(what) + ": rate targets unreachable within the power budget",
                            rate_shortfall(channels, config, effective_gain));
  if (sol.status == sdp::SolveStatus::Optimal) return;
  // Out of iterations. An iterate that still meets the default contract is
  // fine. Boundary instances (Slater radius near zero) can stall with a loose
  // gap but a near-feasible primal; its beams are still usable because the
  // rate/power contracts are re-enforced on the reconstructed beams, so only
  // near-optimality degrades, and solver stats expose that.
  if (sol.primal_infeas <= 1e-7 && sol.dual_infeas <= 1e-7 && sol.gap <= 1e-6) return;
  if (sol.primal_infeas <= 1e-5 && sol.gap <= 1e-3) return;
  throw SolverFailure(std::string(what) + ": sdp stopped at gap " + std::to_string(sol.gap) +
                      ", pinf " + std::to_string(sol.primal_infeas) + ", dinf " +
                      std::to_string(sol.dual_infeas));
}

SolverStats stats_of(const sdp::SdpSolution& sol) {
  return {sol.iterations, sol.gap, sol.objective, sol.status};
}

std::vector<double> own_channel_gains(const ChannelSet& channels) {
  std::vector<double> g;
  g.reserve(channels.h_I.size());
  for (const CVector& h : channels.h_I) g.push_back(h.squaredNorm());
  return g;
}

std::vector<double> projected_gains(const NullSpaceWorkspace& ws) {
  std::vector<double> g;
  g.reserve(ws.eff_h_II.size());
  for (const CVector& p : ws.eff_h_II) g.push_back(p.squaredNorm());
  return g;
}

// Scale beams up until every rate target holds; the dominant direction is
// kept, only amplitudes change. Cross-interference makes this a fixed point
// iteration; with near-rank-one blocks it converges in one or two rounds.
// Any budget overshoot from the upscaling is taken back out of the energy
// beam first (shrinking it only helps the rates); a residual overshoot is
// removed by a uniform downscale, bounded so rates stay inside tolerance.
void repair_rates(std::vector<CVector>& w, std::optional<CVector>& v,
                  const ChannelSet& channels, const SystemConfig& config) {
  const int k_i = channels.K_I();
  bool converged = false;
  for (int round = 0; round < 100 && !converged; ++round) {
    converged = true;
    for (int i = 0; i < k_i; ++i) {
      const CVector& hi = channels.h_I[static_cast<std::size_t>(i)];
      double interf = 0.0;
      for (int l = 0; l < k_i; ++l)
        if (l != i) interf += std::norm(hi.dot(w[static_cast<std::size_t>(l)]));
      if (v) interf += std::norm(hi.dot(*v));
      const double needed =
          rate_gamma(config.T_i[static_cast<std::size_t>(i)]) *
          (interf + config.noise_power / channels.rho_I[static_cast<std::size_t>(i)]);
      const double signal = std::norm(hi.dot(w[static_cast<std::size_t>(i)]));
      if (signal >= needed * (1.0 - 1e-13)) continue;
      if (signal <= 0.0)
        throw SolverFailure("rank-one repair: extracted beam has no signal component");
      w[static_cast<std::size_t>(i)] *= std::sqrt(needed / signal) * (1.0 + 1e-13);
      converged = false;
    }
  }
  if (!converged) throw SolverFailure("rank-one repair did not converge");

  double tx = v ? v->squaredNorm() : 0.0;
  for (const CVector& wi : w) tx += wi.squaredNorm();
  if (tx <= config.P_max) return;

  (void)0;

  if (v) {
    const double v2 = v->squaredNorm();
    const double take = std::min(tx - config.P_max, v2);
    if (take > 0.0) {
      *v *= (take >= v2) ? 0.0 : std::sqrt((v2 - take) / v2);
      tx -= take;
    }
  }
  if (tx > config.P_max) {
    if (tx > config.P_max * (1.0 + 3e-7))
      throw SolverFailure("rank-one repair exceeded the power budget: " + std::to_string(tx) +
                          " W vs " + std::to_string(config.P_max) + " W");
    const double shrink = std::sqrt(config.P_max / tx);
    for (CVector& wi : w) wi *= shrink;
    if (v) *v *= shrink;
  }
}

void fill_metrics(BeamformingSolution& sol, const ChannelSet& channels, const SystemConfig& config) {
  const metrics::MetricsReport rep = metrics::evaluate(sol.w, sol.v, channels, config);
  sol.per_user_rate = rep.rate;
  sol.per_eu_power = rep.eu_power;
  sol.objective = rep.total_power;
  sol.tx_power = rep.tx_power_used;
}

}  // namespace

NullSpaceWorkspace compute_null_spaces(const ChannelSet& channels) {
  const int m = channels.M();
  const int k_i = channels.K_I();
  const int k_e = channels.K_E();
  if (k_i < 1) throw InvalidInput("compute_null_spaces: at least one information user required");
  if (m < k_i) throw InvalidInput("compute_null_spaces: M >= K_I required");

  CMatrix h_all(m, k_i);
  for (int i = 0; i < k_i; ++i) h_all.col(i) = channels.h_I[static_cast<std::size_t>(i)];
  CMatrix h_eu(m, k_e);
  for (int j = 0; j < k_e; ++j) h_eu.col(j) = channels.h_E[static_cast<std::size_t>(j)];

  NullSpaceWorkspace ws;
  ws.S = energy_matrix(channels);

  ws.N_I.reserve(static_cast<std::size_t>(k_i));
  for (int i = 0; i < k_i; ++i) {
    CMatrix h_wo(m, k_i - 1);
    int col = 0;
    for (int l = 0; l < k_i; ++l)
      if (l != i) h_wo.col(col++) = h_all.col(l);
    CMatrix n = null_space_of_columns(h_wo);
    if (n.cols() != m - k_i + 1)
      throw DegenerateChannel("compute_null_spaces: excluded-channel matrix for user " +
                                  std::to_string(i) + " is rank deficient",
                              static_cast<int>(m - n.cols()));
    if (k_i > 1 && (h_wo.adjoint() * n).cwiseAbs().maxCoeff() > 1e-10)
      throw DegenerateChannel("compute_null_spaces: null-space residual too large for user " +
                                  std::to_string(i),
                              static_cast<int>(m - n.cols()));
    ws.N_I.push_back(std::move(n));
  }

  ws.N_E = null_space_of_columns(h_all);
  if (ws.N_E.cols() != m - k_i)
    throw DegenerateChannel("compute_null_spaces: information channel matrix is rank deficient",
                            static_cast<int>(m - ws.N_E.cols()));
  if (ws.N_E.cols() > 0 && (h_all.adjoint() * ws.N_E).cwiseAbs().maxCoeff() > 1e-10)
    throw DegenerateChannel("compute_null_spaces: shared null-space residual too large",
                            static_cast<int>(m - ws.N_E.cols()));

  ws.eff_h_EI.reserve(static_cast<std::size_t>(k_i));
  ws.eff_h_II.reserve(static_cast<std::size_t>(k_i));
  ws.S_EI.reserve(static_cast<std::size_t>(k_i));
  for (int i = 0; i < k_i; ++i) {
    const CMatrix& n = ws.N_I[static_cast<std::size_t>(i)];
    ws.eff_h_EI.push_back(n.adjoint() * h_eu);
    ws.eff_h_II.push_back(n.adjoint() * channels.h_I[static_cast<std::size_t>(i)]);
    ws.S_EI.push_back(HermitianMatrix::trusted(n.adjoint() * ws.S.mat() * n));
  }
  ws.eff_h_E = ws.N_E.adjoint() * h_eu;
  ws.S_E = HermitianMatrix::trusted(ws.N_E.adjoint() * ws.S.mat() * ws.N_E);
  return ws;
}

sdp::SdpProblem build_full_sdr_problem(const ChannelSet& channels, const SystemConfig& config) {
  const int m = channels.M();
  const int k_i = channels.K_I();
  const HermitianMatrix s = energy_matrix(channels);

  sdp::SdpProblem p;
  p.block_dims.assign(static_cast<std::size_t>(k_i) + 1, m);
  p.objective.assign(static_cast<std::size_t>(k_i) + 1, s);

  for (int i = 0; i < k_i; ++i) {
    const HermitianMatrix hh = HermitianMatrix::outer(channels.h_I[static_cast<std::size_t>(i)]);
    sdp::Constraint c;
    c.sense = sdp::Sense::GreaterEqual;
    c.rhs = config.noise_power / channels.rho_I[static_cast<std::size_t>(i)];
    c.coeffs[i] = (1.0 / rate_gamma(config.T_i[static_cast<std::size_t>(i)])) * hh;
    for (int l = 0; l < k_i; ++l)
      if (l != i) c.coeffs[l] = -1.0 * hh;
    c.coeffs[k_i] = -1.0 * hh;
    p.constraints.push_back(std::move(c));
  }

  sdp::Constraint power;
  power.sense = sdp::Sense::LessEqual;
  power.rhs = config.P_max;
  for (int b = 0; b <= k_i; ++b) power.coeffs[b] = HermitianMatrix::identity(m);
  p.constraints.push_back(std::move(power));
  return p;
}

sdp::SdpProblem build_nullspace_problem(const NullSpaceWorkspace& ws, const ChannelSet& channels,
                                        const SystemConfig& config) {
  const int k_i = channels.K_I();
  const Eigen::Index n = ws.N_I.front().cols();

  sdp::SdpProblem p;
  p.block_dims.assign(static_cast<std::size_t>(k_i), static_cast<int>(n));
  p.objective = ws.S_EI;

  for (int i = 0; i < k_i; ++i) {
    sdp::Constraint c;
    c.sense = sdp::Sense::GreaterEqual;
    c.rhs = config.noise_power / channels.rho_I[static_cast<std::size_t>(i)];
    c.coeffs[i] = (1.0 / rate_gamma(config.T_i[static_cast<std::size_t>(i)])) *
                  HermitianMatrix::outer(ws.eff_h_II[static_cast<std::size_t>(i)]);
    p.constraints.push_back(std::move(c));
  }

  sdp::Constraint power;
  power.sense = sdp::Sense::LessEqual;
  power.rhs = config.P_max;
  for (int b = 0; b < k_i; ++b) power.coeffs[b] = HermitianMatrix::identity(n);
  p.constraints.push_back(std::move(power));
  return p;
}

sdp::SdpProblem build_dedicated_beam_problem(const NullSpaceWorkspace& ws,
                                             const ChannelSet& channels,
                                             const SystemConfig& config) {
  const int k_i = channels.K_I();
  if (ws.N_E.cols() == 0)
    throw InvalidInput("build_dedicated_beam_problem: dedicated block is empty when M == K_I");
  sdp::SdpProblem p = build_nullspace_problem(ws, channels, config);
  p.block_dims.push_back(static_cast<int>(ws.N_E.cols()));
  p.objective.push_back(ws.S_E);
  p.constraints.back().coeffs[k_i] = HermitianMatrix::identity(ws.N_E.cols());
  return p;
}

const char* to_string(Method method) {
  switch (method) {
    case Method::FullSdr: return "full_sdr";
    case Method::NullspaceSdr: return "nullspace_sdr";
    case Method::LowComplexity: return "lowcomplexity";
  }
  return "?";
}

sdp::SolverOptions default_solver_options() {
  sdp::SolverOptions opts;
  opts.feas_tol = 1e-10;
  opts.gap_tol = 1e-10;
  opts.max_iterations = 300;
  return opts;
}

sdp::SolverOptions audit_solver_options() {
  sdp::SolverOptions opts;
  opts.feas_tol = 1e-10;
  opts.gap_tol = 1e-11;
  opts.max_iterations = 300;
  return opts;
}

BeamformingSolution solve_full_sdr(const ChannelSet& channels, const SystemConfig& config,
                                   const sdp::SolverOptions& opts) {
  const int k_i = channels.K_I();
  const sdp::SdpProblem problem = build_full_sdr_problem(channels, config);
  const sdp::SdpSolution sol = sdp::solve_sdp(problem, opts);
  require_solved(sol, channels, config, own_channel_gains(channels), "full_sdr");

  BeamformingSolution out;
  out.method = Method::FullSdr;
  out.solver = stats_of(sol);
  out.rank_defects.reserve(static_cast<std::size_t>(k_i) + 1);
  for (int i = 0; i < k_i; ++i) {
    const auto ext = sdp::extract_rank_one(HermitianMatrix::trusted(sol.primal[static_cast<std::size_t>(i)]),
                                           config.P_max);
    out.w.push_back(ext.w);
    out.rank_defects.push_back(ext.rank_defect);
  }
  const auto ext_v = sdp::extract_rank_one(HermitianMatrix::trusted(sol.primal[static_cast<std::size_t>(k_i)]),
                                           config.P_max);
  out.v = ext_v.w;
  out.rank_defects.push_back(ext_v.rank_defect);

  repair_rates(out.w, out.v, channels, config);
  fill_metrics(out, channels, config);
  return out;
}

BeamformingSolution solve_nullspace_sdr(const ChannelSet& channels, const SystemConfig& config,
                                        const sdp::SolverOptions& opts) {
  const int k_i = channels.K_I();
  const NullSpaceWorkspace ws = compute_null_spaces(channels);
  const sdp::SdpProblem problem = build_nullspace_problem(ws, channels, config);
  const sdp::SdpSolution sol = sdp::solve_sdp(problem, opts);
  require_solved(sol, channels, config, projected_gains(ws), "nullspace_sdr");

  BeamformingSolution out;
  out.method = Method::NullspaceSdr;
  out.solver = stats_of(sol);
  for (int i = 0; i < k_i; ++i) {
    const auto ext = sdp::extract_rank_one(HermitianMatrix::trusted(sol.primal[static_cast<std::size_t>(i)]),
                                           config.P_max);
    out.w.push_back(ws.N_I[static_cast<std::size_t>(i)] * ext.w);
    out.rank_defects.push_back(ext.rank_defect);
  }
  repair_rates(out.w, out.v, channels, config);
  fill_metrics(out, channels, config);
  return out;
}

MrtAllocation mrt_allocation(const NullSpaceWorkspace& ws, const ChannelSet& channels,
                             const SystemConfig& config) {
  const int k_i = channels.K_I();
  MrtAllocation mrt;
  for (int i = 0; i < k_i; ++i) {
    const CVector& p = ws.eff_h_II[static_cast<std::size_t>(i)];
    const double beta = p.squaredNorm();
    const double own = channels.h_I[static_cast<std::size_t>(i)].squaredNorm();
    if (beta <= 1e-14 * std::max(1.0, own))
      throw DegenerateChannel("mrt_allocation: user " + std::to_string(i) +
                                  " has no energy left in its null space",
                              0);
    const double power = rate_gamma(config.T_i[static_cast<std::size_t>(i)]) * config.noise_power /
                         (channels.rho_I[static_cast<std::size_t>(i)] * beta);
    mrt.beta.push_back(beta);
    mrt.P_I.push_back(power);
    mrt.w_mrt.push_back(std::sqrt(power) / p.norm() *
                        (ws.N_I[static_cast<std::size_t>(i)] * p));
  }
  return mrt;
}

BoostCandidate solve_boost_candidate(int index, const NullSpaceWorkspace& ws,
                                     const ChannelSet& channels, const SystemConfig& config,
                                     const MrtAllocation& mrt, const sdp::SolverOptions& opts) {
  const int k_i = channels.K_I();
  if (index < 0 || index >= k_i) throw InvalidInput("solve_boost_candidate: bad user index");
  double budget = config.P_max;
  for (int l = 0; l < k_i; ++l)
    if (l != index) budget -= mrt.P_I[static_cast<std::size_t>(l)];
  if (!(budget > 0.0))
    throw InfeasibleProblem("solve_boost_candidate: residual power budget is non-positive",
                            rate_shortfall(channels, config, projected_gains(ws)));

  const Eigen::Index n = ws.N_I[static_cast<std::size_t>(index)].cols();
  sdp::SdpProblem p;
  p.block_dims = {static_cast<int>(n)};
  p.objective = {ws.S_EI[static_cast<std::size_t>(index)]};
  sdp::Constraint rate;
  rate.sense = sdp::Sense::GreaterEqual;
  rate.rhs = config.noise_power / channels.rho_I[static_cast<std::size_t>(index)];
  rate.coeffs[0] = (1.0 / rate_gamma(config.T_i[static_cast<std::size_t>(index)])) *
                   HermitianMatrix::outer(ws.eff_h_II[static_cast<std::size_t>(index)]);
  p.constraints.push_back(std::move(rate));
  sdp::Constraint trace;
  trace.sense = sdp::Sense::LessEqual;
  trace.rhs = budget;
  trace.coeffs[0] = HermitianMatrix::identity(n);
  p.constraints.push_back(std::move(trace));

  const sdp::SdpSolution sol = sdp::solve_sdp(p, opts);
  require_solved(sol, channels, config, projected_gains(ws), "boost_candidate");

  BoostCandidate cand;
  cand.B = HermitianMatrix::trusted(sol.primal[0]);
  cand.sdp_objective = sol.objective;
  cand.solver = stats_of(sol);
  const auto ext = sdp::extract_rank_one(cand.B, budget);
  const double norm = ext.w.norm();
  if (norm <= 0.0) throw SolverFailure("solve_boost_candidate: zero block");
  cand.w_boosted = std::sqrt(budget) / norm * (ws.N_I[static_cast<std::size_t>(index)] * ext.w);
  cand.rank_defect = ext.rank_defect;
  return cand;
}

BeamformingSolution solve_low_complexity(const ChannelSet& channels, const SystemConfig& config,
                                         const sdp::SolverOptions& opts) {
  const int k_i = channels.K_I();
  const NullSpaceWorkspace ws = compute_null_spaces(channels);
  const MrtAllocation mrt = mrt_allocation(ws, channels, config);

  double total_mrt = 0.0;
  for (double p : mrt.P_I) total_mrt += p;
  if (total_mrt > config.P_max)
    throw InfeasibleProblem("low_complexity: rate targets need " + std::to_string(total_mrt) +
                                " W of " + std::to_string(config.P_max) + " W",
                            rate_shortfall(channels, config, projected_gains(ws)));

  BeamformingSolution best;
  bool have_best = false;
  for (int i = 0; i < k_i; ++i) {
    const BoostCandidate cand = solve_boost_candidate(i, ws, channels, config, mrt, opts);
    BeamformingSolution trial;
    trial.method = Method::LowComplexity;
    trial.w = mrt.w_mrt;
    trial.w[static_cast<std::size_t>(i)] = cand.w_boosted;
    trial.chosen_index = i;
    trial.rank_defects.assign(static_cast<std::size_t>(k_i), 0.0);
    trial.rank_defects[static_cast<std::size_t>(i)] = cand.rank_defect;
    trial.solver = cand.solver;
    fill_metrics(trial, channels, config);
    if (trial.per_user_rate[static_cast<std::size_t>(i)] <
        config.T_i[static_cast<std::size_t>(i)] - 1e-6)
      continue;  // extraction lost the rate; candidate unusable
    if (!have_best || trial.objective > best.objective) {
      best = std::move(trial);
      have_best = true;
    }
  }
  if (!have_best) throw SolverFailure("low_complexity: no usable boost candidate");
  return best;
}

DedicatedBeamAudit audit_dedicated_beam(const ChannelSet& channels, const SystemConfig& config,
                                        const sdp::SolverOptions& opts) {
  const int k_i = channels.K_I();
  DedicatedBeamAudit audit;
  if (channels.M() == k_i) {
    audit.trivial = true;
    return audit;
  }

  const NullSpaceWorkspace ws = compute_null_spaces(channels);
  const sdp::SdpProblem problem = build_dedicated_beam_problem(ws, channels, config);
  sdp::SdpSolution sol = sdp::solve_sdp(problem, opts);
  if (sol.status == sdp::SolveStatus::MaxIterations && sol.gap <= 1e-9 &&
      sol.primal_infeas <= 1e-8 && sol.dual_infeas <= 1e-8) {
    // tight-tolerance push ran out of iterations after converging well past
    // the default tolerances; the iterate is usable evidence
    sol.status = sdp::SolveStatus::Optimal;
  }
  require_solved(sol, channels, config, projected_gains(ws), "dedicated_beam_audit");

  audit.solver = stats_of(sol);
  audit.trace_D = sol.primal.back().trace().real();
  audit.trace_D_rel = audit.trace_D / config.P_max;

  const EigResult eig_e = hermitian_eig(ws.S_E);
  audit.xi_max_E = eig_e.values.size() > 0 ? eig_e.values(eig_e.values.size() - 1) : 0.0;
  for (int i = 0; i < k_i; ++i) {
    const EigResult eig_i = hermitian_eig(ws.S_EI[static_cast<std::size_t>(i)]);
    audit.xi_max_EI.push_back(eig_i.values(eig_i.values.size() - 1));
    if (audit.xi_max_E > audit.xi_max_EI.back() + 1e-9) audit.interlace_ok = false;
  }

  audit.dual_lambda.assign(sol.dual.begin(), sol.dual.begin() + k_i);
  audit.dual_beta = sol.dual.back();
  const HermitianMatrix slack = ws.S_E + (-audit.dual_beta) * HermitianMatrix::identity(ws.S_E.dim());
  const EigResult eig_c = hermitian_eig(slack);
  audit.slack_eig_min = eig_c.values(0);
  audit.slack_eig_max = eig_c.values(eig_c.values.size() - 1);
  return audit;
}

metrics::MetricsReport evaluate(const BeamformingSolution& solution, const ChannelSet& channels,
                                const SystemConfig& config) {
  return metrics::evaluate(solution.w, solution.v, channels, config);
}

}  // namespace swipt::beamforming
