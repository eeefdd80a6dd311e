// SPDX-License-Identifier: Apache-2.0
#include "core/model.hpp"

#include <cmath>
#include <limits>

namespace birkhoff {

HamiltonianEval hamiltonian_eval(const OcpProblem& p, double lambda, double x,
                                 double u) {
  HamiltonianEval h;
  const double fx = p.f_x(x, u);
  const double fu = p.f_u(x, u);
  h.H = lambda * p.f(x, u);
  h.H_x = lambda * fx;
  h.H_u = lambda * fu;
  h.H_lambda = p.f(x, u);
  h.H_xx = lambda * p.f_xx(x, u);
  h.H_xu = lambda * p.f_xu(x, u);
  h.H_uu = lambda * p.f_uu(x, u);
  h.H_lambda_x = fx;
  h.H_lambda_u = fu;
  return h;
}

EndpointEval endpoint_eval(const OcpProblem& p, double nu, double x_a,
                           double x_b) {
  EndpointEval v;
  v.E = p.E(x_a, x_b) + nu * p.e(x_a, x_b);
  v.E_a = p.E_a(x_a, x_b) + nu * p.e_a(x_a, x_b);
  v.E_b = p.E_b(x_a, x_b) + nu * p.e_b(x_a, x_b);
  v.E_nu = p.e(x_a, x_b);
  v.E_aa = p.E_aa(x_a, x_b) + nu * p.e_aa(x_a, x_b);
  v.E_ab = p.E_ab(x_a, x_b) + nu * p.e_ab(x_a, x_b);
  v.E_bb = p.E_bb(x_a, x_b) + nu * p.e_bb(x_a, x_b);
  v.E_anu = p.e_a(x_a, x_b);
  v.E_bnu = p.e_b(x_a, x_b);
  return v;
}

namespace {

double fd_step(double at) {
  const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * std::max(1.0, std::abs(at));
}

// relative error of `got` against a central difference of `fn` in the
// first (axis 0) or second (axis 1) argument
double fd_error(const Fn2& fn, const Fn2& got, double a, double b, int axis) {
  const double h = fd_step(axis == 0 ? a : b);
  const double plus = axis == 0 ? fn(a + h, b) : fn(a, b + h);
  const double minus = axis == 0 ? fn(a - h, b) : fn(a, b - h);
  const double fd = (plus - minus) / (2.0 * h);
  const double exact = got(a, b);
  return std::abs(fd - exact) / std::max(1.0, std::abs(exact));
}

}  // namespace

std::map<std::string, double> check_derivatives(const OcpProblem& p,
                                                const SampleBox& box) {
  require(box.points_per_axis >= 4 &&
              box.points_per_axis * box.points_per_axis >= 10,
          ErrorCode::InvalidArgument, "sample box must contain >= 10 points");
  require(box.hi > box.lo, ErrorCode::InvalidArgument,
          "sample box range is empty");

  std::map<std::string, double> report;
  auto record = [&](const std::string& key, double err) {
    auto [it, inserted] = report.emplace(key, err);
    if (!inserted) it->second = std::max(it->second, err);
  };

  const int m = box.points_per_axis;
  const double step = (box.hi - box.lo) / (m - 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double a = box.lo + i * step;
      const double b = box.lo + j * step;
      // first derivatives against f, E, e; second against the first
      record("f_x", fd_error(p.f, p.f_x, a, b, 0));
      record("f_u", fd_error(p.f, p.f_u, a, b, 1));
      record("f_xx", fd_error(p.f_x, p.f_xx, a, b, 0));
      record("f_xu", fd_error(p.f_x, p.f_xu, a, b, 1));
      record("f_uu", fd_error(p.f_u, p.f_uu, a, b, 1));
      record("E_a", fd_error(p.E, p.E_a, a, b, 0));
      record("E_b", fd_error(p.E, p.E_b, a, b, 1));
      record("E_aa", fd_error(p.E_a, p.E_aa, a, b, 0));
      record("E_ab", fd_error(p.E_a, p.E_ab, a, b, 1));
      record("E_bb", fd_error(p.E_b, p.E_bb, a, b, 1));
      record("e_a", fd_error(p.e, p.e_a, a, b, 0));
      record("e_b", fd_error(p.e, p.e_b, a, b, 1));
      record("e_aa", fd_error(p.e_a, p.e_aa, a, b, 0));
      record("e_ab", fd_error(p.e_a, p.e_ab, a, b, 1));
      record("e_bb", fd_error(p.e_b, p.e_bb, a, b, 1));
    }
  }
  return report;
}

namespace {

Fn2 constant(double c) {
  return [c](double, double) { return c; };
}

// Shared endpoint data for all built-ins: E depends on x_b only,
// e = x_a - 1 pins the initial state.
void set_endpoint_linear(OcpProblem& p, double cost_sign) {
  p.E = [cost_sign](double, double xb) { return cost_sign * xb; };
  p.E_a = constant(0.0);
  p.E_b = constant(cost_sign);
  p.E_aa = constant(0.0);
  p.E_ab = constant(0.0);
  p.E_bb = constant(0.0);
  p.e = [](double xa, double) { return xa - 1.0; };
  p.e_a = constant(1.0);
  p.e_b = constant(0.0);
  p.e_aa = constant(0.0);
  p.e_ab = constant(0.0);
  p.e_bb = constant(0.0);
}

// tp1: f = -x + u^2, E = x_b, e = x_a - 1.
// Extremal: u = 0, x = exp(-(tau+1)), lambda = exp(tau-1).
OcpProblem make_tp1() {
  OcpProblem p;
  p.name = "tp1";
  p.f = [](double x, double u) { return -x + u * u; };
  p.f_x = constant(-1.0);
  p.f_u = [](double, double u) { return 2.0 * u; };
  p.f_xx = constant(0.0);
  p.f_xu = constant(0.0);
  p.f_uu = constant(2.0);
  set_endpoint_linear(p, 1.0);

  AnalyticSolution s;
  s.x = [](double t) { return std::exp(-(t + 1.0)); };
  s.u = [](double) { return 0.0; };
  s.lambda = [](double t) { return std::exp(t - 1.0); };
  s.x_a = 1.0;
  s.x_b = std::exp(-2.0);
  s.lambda_a = std::exp(-2.0);
  s.lambda_b = 1.0;
  s.nu = -std::exp(-2.0);
  p.analytic = s;
  return p;
}

// tp2: f = -x^3 + u^2, E = x_b, e = x_a - 1.
// Extremal: u = 0, x = (3 + 2 tau)^{-1/2}, lambda = ((3 + 2 tau)/5)^{3/2}.
OcpProblem make_tp2() {
  OcpProblem p;
  p.name = "tp2";
  p.f = [](double x, double u) { return -x * x * x + u * u; };
  p.f_x = [](double x, double) { return -3.0 * x * x; };
  p.f_u = [](double, double u) { return 2.0 * u; };
  p.f_xx = [](double x, double) { return -6.0 * x; };
  p.f_xu = constant(0.0);
  p.f_uu = constant(2.0);
  set_endpoint_linear(p, 1.0);

  AnalyticSolution s;
  s.x = [](double t) { return 1.0 / std::sqrt(3.0 + 2.0 * t); };
  s.u = [](double) { return 0.0; };
  s.lambda = [](double t) { return std::pow((3.0 + 2.0 * t) / 5.0, 1.5); };
  s.x_a = 1.0;
  s.x_b = 1.0 / std::sqrt(5.0);
  s.lambda_a = std::pow(5.0, -1.5);
  s.lambda_b = 1.0;
  s.nu = -std::pow(5.0, -1.5);
  p.analytic = s;
  return p;
}

// tp3: f = -x + u + x u + u^2/2, E = x_b, e = x_a - 1.  State-control
// coupling (f_xu = 1) with no registered closed form; the solve is checked
// by self-convergence in N.
OcpProblem make_tp3() {
  OcpProblem p;
  p.name = "tp3";
  p.f = [](double x, double u) { return -x + u + x * u + 0.5 * u * u; };
  p.f_x = [](double, double u) { return -1.0 + u; };
  p.f_u = [](double x, double u) { return 1.0 + x + u; };
  p.f_xx = constant(0.0);
  p.f_xu = constant(1.0);
  p.f_uu = constant(1.0);
  set_endpoint_linear(p, 1.0);
  return p;
}

}  // namespace

OcpProblem builtin_problem(const std::string& name) {
  if (name == "tp1") return make_tp1();
  if (name == "tp2") return make_tp2();
  if (name == "tp3") return make_tp3();
  throw_error(ErrorCode::UnknownName, "unknown built-in problem '" + name +
                                          "' (expected tp1, tp2 or tp3)");
}

}  // namespace birkhoff
