#include "swipt/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace swipt::sdp {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::MaxIterations: return "max_iter";
  }
  return "unknown";
}

void SdpProblem::validate() const {
  if (block_dims.empty()) throw InvalidInput("sdp: at least one block required");
  for (int d : block_dims)
    if (d < 1) throw InvalidInput("sdp: block dims must be >= 1");
  if (objective.size() != block_dims.size())
    throw InvalidInput("sdp: objective must have one matrix per block");
  for (std::size_t b = 0; b < block_dims.size(); ++b)
    if (objective[b].dim() != block_dims[b])
      throw InvalidInput("sdp: objective dim mismatch on block " + std::to_string(b));
  if (constraints.empty()) throw InvalidInput("sdp: at least one constraint required");

  bool trace_bounded = false;
  for (const Constraint& c : constraints) {
    if (!std::isfinite(c.rhs)) throw InvalidInput("sdp: non-finite rhs");
    for (const auto& [b, a] : c.coeffs) {
      if (b < 0 || b >= static_cast<int>(block_dims.size()))
        throw InvalidInput("sdp: constraint references unknown block");
      if (a.dim() != block_dims[static_cast<std::size_t>(b)])
        throw InvalidInput("sdp: constraint coefficient dim mismatch");
    }
    if (c.sense == Sense::GreaterEqual) continue;
    if (c.coeffs.size() != block_dims.size()) continue;
    bool all_pd = true;
    for (const auto& [b, a] : c.coeffs) {
      const EigResult eig = hermitian_eig(a);
      if (eig.values(0) <= 1e-12 * std::max(1.0, eig.values(eig.values.size() - 1))) {
        all_pd = false;
        break;
      }
    }
    if (all_pd) trace_bounded = true;
  }
  if (!trace_bounded)
    throw InvalidInput("sdp: no trace-bounding constraint (need a <= or = row with PD coefficients on every block)");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trace_re(const CMatrix& a, const CMatrix& b) { return (a * b).trace().real(); }

// Max step alpha with X + alpha D still PSD, via lambda_min(L^-1 D L^-H).
double max_step(const CMatrix& x, const CMatrix& d) {
  const Eigen::Index n = x.rows();
  if (n == 0) return kInf;
  CMatrix xs = x;
  Eigen::LLT<CMatrix> llt(xs);
  if (llt.info() != Eigen::Success) {
    xs += (1e-14 * std::max(1.0, x.trace().real()) / static_cast<double>(n)) *
          CMatrix::Identity(n, n);
    llt.compute(xs);
    if (llt.info() != Eigen::Success) return 0.0;
  }
  const CMatrix tmp = llt.matrixL().solve(d);
  const CMatrix w = llt.matrixL().solve(tmp.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(w, Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues()(0);
  if (lam_min >= -1e-300) return kInf;
  return -1.0 / lam_min;
}

struct Work {
  // augmented problem: user blocks followed by one 1x1 slack block per inequality
  int n_user_blocks = 0;
  std::vector<Eigen::Index> dims;
  std::vector<CMatrix> c;                                        // scaled objective
  std::vector<std::vector<std::pair<int, CMatrix>>> a;           // per constraint
  Eigen::VectorXd rhs;                                           // scaled
  std::vector<double> row_scale;
  double obj_scale = 1.0;
  double budget = 1.0;
  int total_dim = 0;
};

Work build_work(const SdpProblem& p) {
  Work w;
  w.n_user_blocks = static_cast<int>(p.block_dims.size());
  const int m = static_cast<int>(p.constraints.size());

  int n_slack = 0;
  for (const Constraint& c : p.constraints)
    if (c.sense != Sense::Equal) ++n_slack;

  w.dims.reserve(p.block_dims.size() + static_cast<std::size_t>(n_slack));
  for (int d : p.block_dims) w.dims.push_back(d);

  double c_norm = 0.0;
  for (const HermitianMatrix& cb : p.objective) c_norm += cb.frob_norm();
  w.obj_scale = c_norm > 0.0 ? c_norm : 1.0;
  for (const HermitianMatrix& cb : p.objective) w.c.push_back(cb.mat() / w.obj_scale);

  double rhs_max = 0.0;
  for (const Constraint& c : p.constraints)
    if (c.sense != Sense::GreaterEqual) rhs_max = std::max(rhs_max, std::abs(c.rhs));
  w.budget = std::max(1.0, rhs_max);

  w.a.resize(static_cast<std::size_t>(m));
  w.rhs.resize(m);
  w.row_scale.resize(static_cast<std::size_t>(m));
  int slack_block = w.n_user_blocks;
  for (int ci = 0; ci < m; ++ci) {
    const Constraint& c = p.constraints[static_cast<std::size_t>(ci)];
    double s = 0.0;
    for (const auto& [b, acb] : c.coeffs) s = std::max(s, acb.frob_norm());
    // keep the scaled rhs on the order of the primal trace scale, so rows
    // whose coefficients vanish (huge rate divisors) stay balanced
    s = std::max(s, std::abs(c.rhs) / w.budget);
    if (s <= 0.0) s = 1.0;
    w.row_scale[static_cast<std::size_t>(ci)] = s;
    for (const auto& [b, acb] : c.coeffs)
      w.a[static_cast<std::size_t>(ci)].emplace_back(b, acb.mat() / s);
    w.rhs(ci) = c.rhs / s;
    if (c.sense != Sense::Equal) {
      const double sign = (c.sense == Sense::LessEqual) ? 1.0 : -1.0;
      w.a[static_cast<std::size_t>(ci)].emplace_back(slack_block, sign * CMatrix::Identity(1, 1));
      w.dims.push_back(1);
      ++slack_block;
    }
  }
  w.total_dim = 0;
  for (Eigen::Index d : w.dims) w.total_dim += static_cast<int>(d);

  // drop user blocks from the objective padding for slack blocks (implicit zero)
  return w;
}

struct State {
  std::vector<CMatrix> x, z;
  Eigen::VectorXd y;
};

double block_obj(const Work& w, const std::vector<CMatrix>& x) {
  double s = 0.0;
  for (std::size_t b = 0; b < w.c.size(); ++b) s += trace_re(w.c[b], x[b]);
  return s;
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& problem, const SolverOptions& opts) {
  problem.validate();
  const Work w = build_work(problem);
  const int m = static_cast<int>(problem.constraints.size());
  const int nb = static_cast<int>(w.dims.size());
  const double n_total = static_cast<double>(w.total_dim);

  // membership lists: block -> [(constraint, coefficient)]
  std::vector<std::vector<std::pair<int, const CMatrix*>>> on_block(static_cast<std::size_t>(nb));
  for (int ci = 0; ci < m; ++ci)
    for (const auto& [b, acb] : w.a[static_cast<std::size_t>(ci)])
      on_block[static_cast<std::size_t>(b)].emplace_back(ci, &acb);

  State st;
  st.x.reserve(static_cast<std::size_t>(nb));
  st.z.reserve(static_cast<std::size_t>(nb));
  const double init_scale = w.budget / n_total;
  for (int b = 0; b < nb; ++b) {
    st.x.push_back(init_scale * CMatrix::Identity(w.dims[static_cast<std::size_t>(b)],
                                                  w.dims[static_cast<std::size_t>(b)]));
    st.z.push_back(CMatrix::Identity(w.dims[static_cast<std::size_t>(b)],
                                     w.dims[static_cast<std::size_t>(b)]));
  }
  st.y = Eigen::VectorXd::Ones(m);

  const double rhs_inf = w.rhs.size() > 0 ? w.rhs.cwiseAbs().maxCoeff() : 0.0;
  double c_norm_max = 0.0;
  for (const CMatrix& cb : w.c) c_norm_max = std::max(c_norm_max, cb.norm());

  SdpSolution sol;
  SolveStatus status = SolveStatus::MaxIterations;
  double best_score = kInf;
  State best = st;
  IterateRecord best_rec;
  int iters_done = 0;

  std::vector<CMatrix> zinv(static_cast<std::size_t>(nb));
  std::vector<CMatrix> rd(static_cast<std::size_t>(nb));
  Eigen::VectorXd rp(m);
  double mu_initial = 0.0;

  for (int iter = 0; iter <= opts.max_iterations; ++iter) {
    iters_done = iter;

    // residuals
    for (int ci = 0; ci < m; ++ci) {
      double ax = 0.0;
      for (const auto& [b, acb] : w.a[static_cast<std::size_t>(ci)])
        ax += trace_re(acb, st.x[static_cast<std::size_t>(b)]);
      rp(ci) = w.rhs(ci) - ax;
    }
    double mu = 0.0;
    for (int b = 0; b < nb; ++b)
      mu += trace_re(st.x[static_cast<std::size_t>(b)], st.z[static_cast<std::size_t>(b)]);
    mu /= n_total;
    if (iter == 0) mu_initial = mu;
    if (mu > 1e8 * std::max(mu_initial, 1e-300)) break;  // diverged; best iterate stands

    double dinf = 0.0;
    for (int b = 0; b < nb; ++b) {
      CMatrix r = st.z[static_cast<std::size_t>(b)];
      if (b < w.n_user_blocks) r += w.c[static_cast<std::size_t>(b)];
      for (const auto& [ci, acb] : on_block[static_cast<std::size_t>(b)]) r -= st.y(ci) * (*acb);
      rd[static_cast<std::size_t>(b)] = r;
      dinf = std::max(dinf, r.norm());
    }
    dinf /= (1.0 + c_norm_max);
    const double pinf = (m > 0 ? rp.cwiseAbs().maxCoeff() : 0.0) / (1.0 + rhs_inf);

    const double pobj = block_obj(w, st.x);
    const double dobj = w.rhs.dot(st.y);
    const double gap = std::abs(pobj - dobj) / std::max({1.0, std::abs(pobj), std::abs(dobj)});

    IterateRecord rec;
    rec.primal_obj = pobj;
    rec.dual_obj = dobj;
    rec.primal_infeas = pinf;
    rec.dual_infeas = dinf;
    rec.mu = mu;
    rec.abs_y_dot_rp = std::abs(st.y.dot(rp));
    double rdx = 0.0;
    for (int b = 0; b < nb; ++b)
      rdx += rd[static_cast<std::size_t>(b)].norm() * st.x[static_cast<std::size_t>(b)].norm();
    rec.dual_resid_dot_x = rdx;
    if (opts.record_history) sol.history.push_back(rec);

    const double score = std::max({pinf / opts.feas_tol, dinf / opts.feas_tol, gap / opts.gap_tol});
    if (score < best_score) {
      best_score = score;
      best = st;
      best_rec = rec;
    }

    if (pinf <= opts.feas_tol && dinf <= opts.feas_tol && gap <= opts.gap_tol) {
      status = SolveStatus::Optimal;
      best = st;
      best_rec = rec;
      break;
    }

    // dual objective diverging to -inf with a near-feasible dual iterate
    // certifies primal infeasibility
    if (iter >= 10 && pinf > opts.feas_tol && dinf <= 1e-6 &&
        dobj < -1e9 * (1.0 + rhs_inf)) {
      status = SolveStatus::Infeasible;
      best = st;
      best_rec = rec;
      break;
    }

    // primal infeasibility certificate: unit dual direction u with
    // A^T(u) >= 0 across all blocks (slacks included) and rhs.u < 0
    if (iter >= 10 && pinf > opts.feas_tol) {
      const double yn = st.y.norm();
      if (yn > 1e-12) {
        const Eigen::VectorXd u = st.y / yn;
        const double bu = w.rhs.dot(u);
        if (bu < -1e-7 * (1.0 + rhs_inf)) {
          double lam_min_all = kInf;
          for (int b = 0; b < nb && lam_min_all >= -1e-9; ++b) {
            const Eigen::Index d = w.dims[static_cast<std::size_t>(b)];
            CMatrix au = CMatrix::Zero(d, d);
            for (const auto& [ci, acb] : on_block[static_cast<std::size_t>(b)]) au += u(ci) * (*acb);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(au, Eigen::EigenvaluesOnly);
            lam_min_all = std::min(lam_min_all, es.eigenvalues()(0));
          }
          if (lam_min_all >= -1e-9) {
            status = SolveStatus::Infeasible;
            best = st;
            best_rec = rec;
            break;
          }
        }
      }
    }

    if (iter == opts.max_iterations) break;

    // Z^-1 per block
    bool z_ok = true;
    for (int b = 0; b < nb; ++b) {
      const Eigen::Index d = w.dims[static_cast<std::size_t>(b)];
      Eigen::LLT<CMatrix> llt(st.z[static_cast<std::size_t>(b)]);
      if (llt.info() != Eigen::Success) {
        z_ok = false;
        break;
      }
      zinv[static_cast<std::size_t>(b)] = llt.solve(CMatrix::Identity(d, d));
    }
    if (!z_ok) break;

    // Schur complement M_cd = sum_b Re tr(A_cb Zinv_b A_db X_b)
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd a_zinv = Eigen::VectorXd::Zero(m);
    for (int d = 0; d < m; ++d) {
      for (const auto& [b, adb] : w.a[static_cast<std::size_t>(d)]) {
        const CMatrix t = zinv[static_cast<std::size_t>(b)] * adb * st.x[static_cast<std::size_t>(b)];
        for (const auto& [ci, acb] : on_block[static_cast<std::size_t>(b)])
          schur(ci, d) += trace_re(*acb, t);
      }
    }
    schur = 0.5 * (schur + schur.transpose()).eval();
    for (int ci = 0; ci < m; ++ci)
      for (const auto& [b, acb] : w.a[static_cast<std::size_t>(ci)])
        a_zinv(ci) += trace_re(acb, zinv[static_cast<std::size_t>(b)]);

    // factor with an escalating ridge until the solve is trustworthy; the
    // Schur complement turns near-singular on degenerate instances
    Eigen::LDLT<Eigen::MatrixXd> schur_fact;
    {
      const double base = std::max(1.0, schur.trace()) / std::max(1, m);
      double ridge = 0.0;
      for (int attempt = 0; attempt < 6; ++attempt) {
        schur_fact.compute(schur + ridge * Eigen::MatrixXd::Identity(m, m));
        if (schur_fact.info() == Eigen::Success && schur_fact.solve(a_zinv).allFinite()) break;
        ridge = ridge == 0.0 ? 1e-14 * base : ridge * 100.0;
      }
      if (schur_fact.info() != Eigen::Success) break;
    }

    const auto schur_solve = [&](const Eigen::VectorXd& rhs_s) {
      Eigen::VectorXd dy = schur_fact.solve(rhs_s);
      // one refinement pass keeps the direction usable near the boundary
      dy += schur_fact.solve(rhs_s - schur * dy);
      return dy;
    };

    const auto solve_direction = [&](double sigma_mu, const std::vector<CMatrix>* r_extra,
                                     Eigen::VectorXd& dy, std::vector<CMatrix>& dz,
                                     std::vector<CMatrix>& dx) {
      Eigen::VectorXd rhs_s = -w.rhs;
      for (int ci = 0; ci < m; ++ci) rhs_s(ci) += sigma_mu * a_zinv(ci);
      std::vector<CMatrix> zu(static_cast<std::size_t>(nb));
      for (int b = 0; b < nb; ++b) {
        CMatrix u = rd[static_cast<std::size_t>(b)] * st.x[static_cast<std::size_t>(b)];
        if (r_extra) u -= (*r_extra)[static_cast<std::size_t>(b)];
        zu[static_cast<std::size_t>(b)] = zinv[static_cast<std::size_t>(b)] * u;
      }
      for (int ci = 0; ci < m; ++ci)
        for (const auto& [b, acb] : w.a[static_cast<std::size_t>(ci)])
          rhs_s(ci) += trace_re(acb, zu[static_cast<std::size_t>(b)]);
      dy = schur_solve(rhs_s);

      dz.assign(static_cast<std::size_t>(nb), CMatrix());
      dx.assign(static_cast<std::size_t>(nb), CMatrix());
      for (int b = 0; b < nb; ++b) {
        CMatrix dzb = -rd[static_cast<std::size_t>(b)];
        for (const auto& [ci, acb] : on_block[static_cast<std::size_t>(b)]) dzb += dy(ci) * (*acb);
        dz[static_cast<std::size_t>(b)] = dzb;
        CMatrix dxb = sigma_mu * zinv[static_cast<std::size_t>(b)] - st.x[static_cast<std::size_t>(b)] -
                      zinv[static_cast<std::size_t>(b)] * (dzb * st.x[static_cast<std::size_t>(b)]);
        if (r_extra)
          dxb -= zinv[static_cast<std::size_t>(b)] * (*r_extra)[static_cast<std::size_t>(b)];
        dx[static_cast<std::size_t>(b)] = 0.5 * (dxb + dxb.adjoint()).eval();
      }
    };

    // predictor
    Eigen::VectorXd dy_a;
    std::vector<CMatrix> dz_a, dx_a;
    solve_direction(0.0, nullptr, dy_a, dz_a, dx_a);
    double ap_a = 1.0, ad_a = 1.0;
    for (int b = 0; b < nb; ++b) {
      ap_a = std::min(ap_a, max_step(st.x[static_cast<std::size_t>(b)], dx_a[static_cast<std::size_t>(b)]));
      ad_a = std::min(ad_a, max_step(st.z[static_cast<std::size_t>(b)], dz_a[static_cast<std::size_t>(b)]));
    }
    double mu_aff = 0.0;
    for (int b = 0; b < nb; ++b)
      mu_aff += ((st.x[static_cast<std::size_t>(b)] + ap_a * dx_a[static_cast<std::size_t>(b)]) *
                 (st.z[static_cast<std::size_t>(b)] + ad_a * dz_a[static_cast<std::size_t>(b)]))
                    .trace()
                    .real();
    mu_aff = std::max(mu_aff / n_total, 0.0);
    const double sigma = std::clamp(std::pow(mu_aff / std::max(mu, 1e-300), 3.0), 1e-12, 1.0);

    // corrector
    std::vector<CMatrix> r_extra(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b)
      r_extra[static_cast<std::size_t>(b)] =
          dz_a[static_cast<std::size_t>(b)] * dx_a[static_cast<std::size_t>(b)];
    Eigen::VectorXd dy;
    std::vector<CMatrix> dz, dx;
    solve_direction(sigma * mu, &r_extra, dy, dz, dx);

    bool finite = dy.allFinite();
    for (int b = 0; b < nb && finite; ++b)
      finite = dx[static_cast<std::size_t>(b)].allFinite() && dz[static_cast<std::size_t>(b)].allFinite();
    if (!finite) break;

    double ap = kInf, ad = kInf;
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(st.x[static_cast<std::size_t>(b)], dx[static_cast<std::size_t>(b)]));
      ad = std::min(ad, max_step(st.z[static_cast<std::size_t>(b)], dz[static_cast<std::size_t>(b)]));
    }
    ap = std::min(1.0, opts.step_fraction * ap);
    ad = std::min(1.0, opts.step_fraction * ad);

    // backtrack if the step would blow up complementarity; near-degenerate
    // instances can otherwise take a catastrophic step late in the solve
    double xz = 0.0, xdz = 0.0, dxz = 0.0, dxdz = 0.0;
    for (int b = 0; b < nb; ++b) {
      const std::size_t ib = static_cast<std::size_t>(b);
      xz += trace_re(st.x[ib], st.z[ib]);
      xdz += trace_re(st.x[ib], dz[ib]);
      dxz += trace_re(dx[ib], st.z[ib]);
      dxdz += trace_re(dx[ib], dz[ib]);
    }
    const auto mu_at = [&](double a_p, double a_d) {
      return (xz + a_d * xdz + a_p * dxz + a_p * a_d * dxdz) / n_total;
    };
    for (int guard = 0; guard < 40 && mu_at(ap, ad) > 2.0 * mu + 1e-300; ++guard) {
      ap *= 0.5;
      ad *= 0.5;
    }
    if (ap < 1e-10 && ad < 1e-10) break;

    for (int b = 0; b < nb; ++b) {
      st.x[static_cast<std::size_t>(b)] += ap * dx[static_cast<std::size_t>(b)];
      st.z[static_cast<std::size_t>(b)] += ad * dz[static_cast<std::size_t>(b)];
    }
    st.y += ad * dy;
  }

  // report the best iterate seen (the converged one when Optimal)
  sol.status = status;
  sol.iterations = iters_done;
  sol.primal.assign(best.x.begin(), best.x.begin() + w.n_user_blocks);
  sol.dual_slack.resize(static_cast<std::size_t>(w.n_user_blocks));
  for (int b = 0; b < w.n_user_blocks; ++b)
    sol.dual_slack[static_cast<std::size_t>(b)] = w.obj_scale * best.z[static_cast<std::size_t>(b)];
  sol.dual.resize(static_cast<std::size_t>(m));
  for (int ci = 0; ci < m; ++ci) {
    const double y_orig = best.y(ci) * w.obj_scale / w.row_scale[static_cast<std::size_t>(ci)];
    const bool flip = problem.constraints[static_cast<std::size_t>(ci)].sense == Sense::GreaterEqual;
    sol.dual[static_cast<std::size_t>(ci)] = flip ? -y_orig : y_orig;
  }
  double pobj_orig = 0.0;
  for (std::size_t b = 0; b < problem.objective.size(); ++b)
    pobj_orig += trace_re(problem.objective[b].mat(), sol.primal[b]);
  sol.objective = pobj_orig;
  double dobj_orig = 0.0;
  for (int ci = 0; ci < m; ++ci)
    dobj_orig += problem.constraints[static_cast<std::size_t>(ci)].rhs * best.y(ci) * w.obj_scale /
                 w.row_scale[static_cast<std::size_t>(ci)];
  sol.dual_objective = dobj_orig;
  sol.gap = std::abs(best_rec.primal_obj - best_rec.dual_obj) /
            std::max({1.0, std::abs(best_rec.primal_obj), std::abs(best_rec.dual_obj)});
  sol.primal_infeas = best_rec.primal_infeas;
  sol.dual_infeas = best_rec.dual_infeas;
  return sol;
}

RankOneExtraction extract_rank_one(const HermitianMatrix& x, double budget) {
  const double tr = x.trace_real();
  if (budget > 0.0 && tr > budget * (1.0 + 1e-6))
    throw InvalidInput("extract_rank_one: trace exceeds budget");
  const DominantEig dom = dominant_rank_one(x);
  RankOneExtraction out;
  out.w = std::sqrt(std::max(tr, 0.0)) * dom.u;
  out.rank_defect = dom.rank_defect;
  return out;
}

namespace {
nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rre = nlohmann::json::array();
    nlohmann::json rim = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rre.push_back(m(i, j).real());
      rim.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rre));
    im.push_back(std::move(rim));
  }
  return nlohmann::json{{"re", std::move(re)}, {"im", std::move(im)}};
}

const char* sense_str(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "==";
  }
  return "?";
}
}  // namespace

nlohmann::json problem_to_json(const SdpProblem& problem) {
  nlohmann::json j;
  j["block_dims"] = problem.block_dims;
  j["objective"] = nlohmann::json::array();
  for (const HermitianMatrix& c : problem.objective) j["objective"].push_back(matrix_to_json(c.mat()));
  j["constraints"] = nlohmann::json::array();
  for (const Constraint& c : problem.constraints) {
    nlohmann::json jc;
    jc["sense"] = sense_str(c.sense);
    jc["rhs"] = c.rhs;
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [b, a] : c.coeffs) coeffs[std::to_string(b)] = matrix_to_json(a.mat());
    jc["coeffs"] = std::move(coeffs);
    j["constraints"].push_back(std::move(jc));
  }
  return j;
}

}  // namespace swipt::sdp
