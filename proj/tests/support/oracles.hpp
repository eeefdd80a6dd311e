// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, independent of the construction paths they check.
#pragma once

#include <Eigen/Core>
#include <functional>

#include "core/kkt.hpp"
#include "core/model.hpp"

namespace birkhoff::testing {

/// Quadrature weights for fixed nodes by solving the moment/exactness
/// linear system sum_i w_i t_i^k = int_{-1}^{1} t^k dt, k = 0..N.
Eigen::VectorXd exactness_weights(const Eigen::VectorXd& nodes);

/// Central-difference Jacobian of the residual map at chi.
Eigen::MatrixXd fd_jacobian(const DecisionVector& chi,
                            const OcpProblem& problem,
                            const BirkhoffOperators& ops);

/// Max mismatch between two Jacobians: relative where the reference entry
/// is at least `floor` in magnitude, absolute below.
double jacobian_mismatch(const Eigen::MatrixXd& ref, const Eigen::MatrixXd& got,
                         double floor = 1e-8);

/// Decision vector with uniform random entries in [lo, hi] (deterministic
/// for a given seed).
DecisionVector random_point(int num_nodes, unsigned seed, double lo = -0.75,
                            double hi = 1.25);

/// Decision vector sampled from a problem's analytic solution:
/// v = xdot(tau_i), omega = lambdadot(tau_i), computed from the closed
/// forms through f and the adjoint equation.
DecisionVector analytic_point(const OcpProblem& problem,
                              const BirkhoffOperators& ops);

/// Median wall-clock seconds of `fn` over `reps` runs, with enough inner
/// repetitions to exceed ~2 ms per sample.  `sink` accumulates a checksum
/// so the work cannot be optimized away.
double median_seconds(const std::function<double()>& fn, int reps,
                      double* sink);

}  // namespace birkhoff::testing
