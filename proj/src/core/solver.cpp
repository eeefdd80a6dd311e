// SPDX-License-Identifier: Apache-2.0
#include "core/solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>

#include "core/spectral.hpp"

namespace birkhoff {

DecisionVector initial_guess(const OcpProblem&, const Grid& grid) {
  DecisionVector chi(grid.size());
  chi.X().setOnes();
  chi.Lambda().setOnes();
  chi.x_a() = 1.0;
  chi.x_b() = 1.0;
  chi.lambda_b() = 1.0;
  chi.lambda_a() = 1.0;
  return chi;
}

Eigen::VectorXd krylov_linear_solve(const KktMatrix& k,
                                    const Eigen::VectorXd& rhs, double tol,
                                    int restart, bool fast) {
  const int n = k.dim();
  require(rhs.size() == n, ErrorCode::DimensionMismatch,
          "right-hand side has wrong length");
  require(restart >= 1, ErrorCode::InvalidArgument, "restart must be >= 1");

  const double bnorm = rhs.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (bnorm == 0.0) return x;
  const double target = tol * bnorm;

  const int m = std::min(restart, n);
  const int max_total = std::max(8 * n, 400);
  int total = 0;
  double res = bnorm;

  Eigen::MatrixXd basis(n, m + 1);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + 1, m);
  Eigen::VectorXd cs(m), sn(m), g(m + 1);

  while (total < max_total) {
    Eigen::VectorXd r = rhs - matvec(k, x, fast);
    double beta = r.norm();
    if (beta <= target) return x;
    basis.col(0) = r / beta;
    g.setZero();
    g(0) = beta;

    int j = 0;
    for (; j < m && total < max_total; ++j, ++total) {
      Eigen::VectorXd wv = matvec(k, basis.col(j), fast);
      for (int i = 0; i <= j; ++i) {  // modified Gram-Schmidt
        hess(i, j) = basis.col(i).dot(wv);
        wv -= hess(i, j) * basis.col(i);
      }
      hess(j + 1, j) = wv.norm();
      const bool breakdown = hess(j + 1, j) < 1e-14 * beta;
      if (!breakdown) basis.col(j + 1) = wv / hess(j + 1, j);

      for (int i = 0; i < j; ++i) {  // apply stored Givens rotations
        const double t = cs(i) * hess(i, j) + sn(i) * hess(i + 1, j);
        hess(i + 1, j) = -sn(i) * hess(i, j) + cs(i) * hess(i + 1, j);
        hess(i, j) = t;
      }
      const double denom = std::hypot(hess(j, j), hess(j + 1, j));
      cs(j) = hess(j, j) / denom;
      sn(j) = hess(j + 1, j) / denom;
      hess(j, j) = denom;
      hess(j + 1, j) = 0.0;
      g(j + 1) = -sn(j) * g(j);
      g(j) = cs(j) * g(j);
      res = std::abs(g(j + 1));
      if (res <= target || breakdown) {
        ++j;
        break;
      }
    }

    // least-squares solution for this cycle
    const Eigen::VectorXd y = hess.topLeftCorner(j, j)
                                  .triangularView<Eigen::Upper>()
                                  .solve(g.head(j));
    x += basis.leftCols(j) * y;
    const double actual = (rhs - matvec(k, x, fast)).norm();
    if (actual <= target) return x;
    res = actual;
  }

  std::ostringstream msg;
  msg << "GMRES did not reach tolerance " << tol << "; achieved relative "
      << res / bnorm << " after " << max_total << " iterations";
  throw_error(ErrorCode::NoConvergence, msg.str());
}

Eigen::VectorXd lu_linear_solve(const KktMatrix& k, const Eigen::VectorXd& rhs,
                                int dense_cap) {
  require(rhs.size() == k.dim(), ErrorCode::DimensionMismatch,
          "right-hand side has wrong length");
  const Eigen::MatrixXd a = to_dense(k, dense_cap);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::VectorXd xi = lu.solve(rhs);
  const double check = (a * xi - rhs).norm();
  if (!xi.allFinite() || check > 1e-6 * std::max(1.0, rhs.norm())) {
    throw_error(ErrorCode::SingularSystem,
                "linear system is singular or severely ill-conditioned");
  }
  return xi;
}

namespace {

Eigen::VectorXd solve_direction(const KktMatrix& k, const Eigen::VectorXd& f,
                                const SolverOptions& opts, int iter) {
  if (opts.linear_path == LinearPath::StructuredKrylov) {
    return krylov_linear_solve(k, -f, opts.krylov_tol, opts.krylov_restart,
                               opts.use_fast_transform);
  }
  try {
    return lu_linear_solve(k, -f, opts.dense_cap);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " at Newton iterate " +
                              std::to_string(iter));
  }
}

}  // namespace

SolveReport newton_solve(const OcpProblem& problem,
                         const BirkhoffOperators& ops,
                         const DecisionVector& chi0,
                         const SolverOptions& opts) {
  opts.validate();
  require(chi0.num_nodes() == ops.size(), ErrorCode::DimensionMismatch,
          "initial guess does not match the grid");

  SolveReport rep;
  DecisionVector chi = chi0;
  Eigen::VectorXd f = residual(chi, problem, ops);
  double fnorm = f.lpNorm<Eigen::Infinity>();
  rep.residual_history.push_back(fnorm);

  bool stalled = false;
  for (int iter = 0; iter < opts.max_iter && fnorm > opts.tol; ++iter) {
    const KktMatrix k = assemble(chi, problem, ops);
    const Eigen::VectorXd d = solve_direction(k, f, opts, iter);

    // Armijo on phi = 0.5 ||F||^2; for the exact Newton direction the
    // directional derivative is -||F||^2.
    const double phi0 = 0.5 * f.squaredNorm();
    const double slope = -2.0 * phi0;
    double alpha = 1.0;
    DecisionVector trial = chi;
    Eigen::VectorXd f_trial;
    while (true) {
      trial.flat() = chi.flat() + alpha * d;
      f_trial = residual(trial, problem, ops);
      const double phi = 0.5 * f_trial.squaredNorm();
      if (std::isfinite(phi) && phi <= phi0 + opts.armijo_c * alpha * slope)
        break;
      alpha *= opts.armijo_shrink;
      ++rep.rejected_steps;
      if (alpha < opts.min_step) {
        stalled = true;  // line search stalled: report, do not throw
        break;
      }
    }
    if (stalled) break;

    chi = trial;
    f = std::move(f_trial);
    fnorm = f.lpNorm<Eigen::Infinity>();
    rep.residual_history.push_back(fnorm);
    rep.iterations = iter + 1;
  }
  rep.converged = !stalled && fnorm <= opts.tol;

  rep.chi = chi;
  rep.nodes = ops.grid().nodes;
  rep.x = chi.X();
  rep.u = chi.U();
  rep.lambda = chi.Lambda();
  rep.v = chi.V();
  rep.omega = chi.Omega();
  rep.x_a = chi.x_a();
  rep.x_b = chi.x_b();
  rep.lambda_a = chi.lambda_a();
  rep.lambda_b = chi.lambda_b();
  rep.nu = chi.nu();
  return rep;
}

SolveReport newton_solve(const OcpProblem& problem,
                         const BirkhoffOperators& ops,
                         const SolverOptions& opts) {
  return newton_solve(problem, ops, initial_guess(problem, ops.grid()), opts);
}

SolutionErrors verify_solution(const SolveReport& report,
                               const OcpProblem& problem) {
  SolutionErrors err;

  double hmin = 0.0, hmax = 0.0;
  for (Eigen::Index i = 0; i < report.nodes.size(); ++i) {
    const double h =
        hamiltonian_eval(problem, report.lambda(i), report.x(i), report.u(i)).H;
    if (i == 0) {
      hmin = hmax = h;
    } else {
      hmin = std::min(hmin, h);
      hmax = std::max(hmax, h);
    }
  }
  err.hamiltonian_variation = hmax - hmin;

  if (!problem.analytic.has_value()) return err;
  const AnalyticSolution& s = *problem.analytic;

  double se = 0.0, ce = 0.0, ue = 0.0;
  for (Eigen::Index i = 0; i < report.nodes.size(); ++i) {
    const double t = report.nodes(i);
    se = std::max(se, std::abs(report.x(i) - s.x(t)));
    ce = std::max(ce, std::abs(report.lambda(i) - s.lambda(t)));
    ue = std::max(ue, std::abs(report.u(i) - s.u(t)));
  }
  err.state_err = se;
  err.costate_err = ce;
  err.control_err = ue;
  err.x_a_err = std::abs(report.x_a - s.x_a);
  err.x_b_err = std::abs(report.x_b - s.x_b);
  err.lambda_a_err = std::abs(report.lambda_a - s.lambda_a);
  err.lambda_b_err = std::abs(report.lambda_b - s.lambda_b);
  err.nu_err = std::abs(report.nu - s.nu);
  return err;
}

std::vector<SweepRow> spectral_radius_sweep(const OcpProblem& problem,
                                            GridFamily family,
                                            const std::vector<int>& degrees) {
  std::vector<SweepRow> rows;
  rows.reserve(degrees.size());
  for (int n : degrees) {
    const BirkhoffOperators ops(make_grid({family, n}));
    SolverOptions opts;
    if (5 * (n + 1) + 5 > kDefaultDenseCap) {
      opts.linear_path = LinearPath::StructuredKrylov;
    }
    const SolveReport rep = newton_solve(problem, ops, opts);
    if (!rep.converged) {
      throw_error(ErrorCode::NoConvergence,
                  "sweep solve did not converge at N = " + std::to_string(n));
    }
    const KktMatrix k = assemble(rep.chi, problem, ops);
    SweepRow row;
    row.degree = n;
    if (k.dim() <= kDefaultSpectrumCap) {
      const SpectrumReport sr = verify_theorem1(k);
      row.spectral_radius = sr.spectral_radius;
      row.g_bound = sr.g_bound;
    } else {
      // beyond the dense-spectrum cap only the Gershgorin cap is reported
      row.has_radius = false;
      row.spectral_radius = std::numeric_limits<double>::quiet_NaN();
      row.g_bound = gershgorin_row_bound(k);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace birkhoff
