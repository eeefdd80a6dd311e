// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "core/errors.hpp"

namespace birkhoff {

using Fn2 = std::function<double(double, double)>;
using Fn1 = std::function<double(double)>;

/// Closed-form extremal of a problem, used as a test oracle.
struct AnalyticSolution {
  Fn1 x;       // state trajectory
  Fn1 u;       // control trajectory
  Fn1 lambda;  // costate trajectory
  double x_a = 0.0, x_b = 0.0;
  double lambda_a = 0.0, lambda_b = 0.0;
  double nu = 0.0;
};

/// Scalar optimal control problem on [-1, 1]:
///   minimize E(x(-1), x(+1))  s.t.  xdot = f(x, u),  e(x(-1), x(+1)) = 0.
/// All first and second partials are authored analytically; assembly never
/// falls back to finite differences.  check_derivatives() validates authored
/// code against central differences.
struct OcpProblem {
  std::string name;

  Fn2 f, f_x, f_u, f_xx, f_xu, f_uu;           // dynamics, args (x, u)
  Fn2 E, E_a, E_b, E_aa, E_ab, E_bb;           // Mayer cost, args (x_a, x_b)
  Fn2 e, e_a, e_b, e_aa, e_ab, e_bb;           // endpoint constraint

  std::optional<AnalyticSolution> analytic;
};

/// Pontryagin Hamiltonian H = lambda * f(x, u) and its first and second
/// partials at one node.  Second derivatives in (x, u) carry the lambda
/// factor; the mixed lambda-derivatives are the plain Jacobian entries.
struct HamiltonianEval {
  double H;
  double H_x, H_u, H_lambda;
  double H_xx, H_xu, H_uu;
  double H_lambda_x, H_lambda_u;
};

/// Endpoint Lagrangian Ebar = E + nu * e and its partials.
struct EndpointEval {
  double E;
  double E_a, E_b, E_nu;
  double E_aa, E_ab, E_bb;
  double E_anu, E_bnu;
};

HamiltonianEval hamiltonian_eval(const OcpProblem& p, double lambda, double x,
                                 double u);

EndpointEval endpoint_eval(const OcpProblem& p, double nu, double x_a,
                           double x_b);

/// Rectangular sample region for the derivative consistency check; the same
/// range is used for (x, u) and for (x_a, x_b).
struct SampleBox {
  double lo = -2.0;
  double hi = 2.0;
  int points_per_axis = 11;
};

/// Max relative central-difference error per authored derivative over the
/// sample box.  Keys: f_x, f_u, f_xx, f_xu, f_uu, E_a, E_b, E_aa, E_ab,
/// E_bb, e_a, e_b, e_aa, e_ab, e_bb.
std::map<std::string, double> check_derivatives(const OcpProblem& p,
                                                const SampleBox& box = {});

/// Built-in problems "tp1", "tp2", "tp3"; throws UnknownName otherwise.
OcpProblem builtin_problem(const std::string& name);

}  // namespace birkhoff
