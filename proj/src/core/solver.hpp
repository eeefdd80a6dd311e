// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "core/kkt.hpp"

namespace birkhoff {

enum class LinearPath { DenseLU, StructuredKrylov };

struct SolverOptions {
  int max_iter = 50;
  double tol = 1e-10;  // infinity norm on F
  LinearPath linear_path = LinearPath::DenseLU;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double min_step = 1e-12;
  double krylov_tol = 1e-12;
  int krylov_restart = 50;
  bool use_fast_transform = false;  // Chebyshev grids only
  int dense_cap = kDefaultDenseCap;

  void validate() const {
    require(max_iter >= 1, ErrorCode::InvalidArgument, "max_iter must be >= 1");
    require(armijo_c > 0.0 && armijo_c < 1.0, ErrorCode::InvalidArgument,
            "armijo_c must lie in (0, 1)");
    require(armijo_shrink > 0.0 && armijo_shrink < 1.0,
            ErrorCode::InvalidArgument, "armijo_shrink must lie in (0, 1)");
  }
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  int rejected_steps = 0;  // total line-search backtracks
  std::vector<double> residual_history;  // ||F||_inf per accepted iterate
  DecisionVector chi{2 + 1};

  // node trajectories at the final iterate
  Eigen::VectorXd nodes, x, u, lambda, v, omega;
  double x_a = 0.0, x_b = 0.0, lambda_a = 0.0, lambda_b = 0.0, nu = 0.0;
};

/// Documented deterministic start: X = Lambda = 1, V = Omega = U = 0,
/// x_a = x_b = lambda_b = lambda_a = 1, nu = 0.
DecisionVector initial_guess(const OcpProblem& problem, const Grid& grid);

/// Damped Newton on F(chi) = 0: direction from A d = -F, Armijo
/// backtracking on 0.5 ||F||_2^2.  A stalled line search yields a
/// non-converged report; a singular linear solve throws SingularSystem.
SolveReport newton_solve(const OcpProblem& problem,
                         const BirkhoffOperators& ops,
                         const DecisionVector& chi0,
                         const SolverOptions& opts = {});

/// Convenience overload starting from the documented guess.
SolveReport newton_solve(const OcpProblem& problem,
                         const BirkhoffOperators& ops,
                         const SolverOptions& opts = {});

/// Unpreconditioned restarted GMRES on the structured matvec; returns xi
/// with ||A xi - rhs||_2 <= tol ||rhs||_2 or throws NoConvergence carrying
/// the achieved residual in the message.
Eigen::VectorXd krylov_linear_solve(const KktMatrix& k,
                                    const Eigen::VectorXd& rhs, double tol,
                                    int restart, bool fast = false);

/// Direct solve A xi = rhs through a dense LU factorization (cap applies);
/// throws SingularSystem when the factorization is unusable.
Eigen::VectorXd lu_linear_solve(const KktMatrix& k, const Eigen::VectorXd& rhs,
                                int dense_cap = kDefaultDenseCap);

/// Node-wise errors of a solve against the problem's analytic solution
/// (when present) plus the Hamiltonian-constancy diagnostic.
struct SolutionErrors {
  std::optional<double> state_err, costate_err, control_err;
  std::optional<double> x_a_err, x_b_err, lambda_a_err, lambda_b_err, nu_err;
  double hamiltonian_variation = 0.0;
};

SolutionErrors verify_solution(const SolveReport& report,
                               const OcpProblem& problem);

}  // namespace birkhoff
