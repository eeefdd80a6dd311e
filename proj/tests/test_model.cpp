// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/model.hpp"

using namespace birkhoff;

TEST_CASE("hamiltonian evaluation on tp1") {
  const OcpProblem p = builtin_problem("tp1");
  const HamiltonianEval h = hamiltonian_eval(p, 2.0, 1.0, 3.0);
  CHECK(h.H == doctest::Approx(16.0));
  CHECK(h.H_x == doctest::Approx(-2.0));
  CHECK(h.H_u == doctest::Approx(12.0));
  CHECK(h.H_uu == doctest::Approx(4.0));
  CHECK(h.H_lambda_x == doctest::Approx(-1.0));
  CHECK(h.H_lambda_u == doctest::Approx(6.0));
  CHECK(h.H_lambda == doctest::Approx(8.0));
}

TEST_CASE("hamiltonian evaluation on tp2") {
  const OcpProblem p = builtin_problem("tp2");
  const HamiltonianEval h = hamiltonian_eval(p, 1.0, 1.0, 0.0);
  CHECK(h.H == doctest::Approx(-1.0));
  CHECK(h.H_x == doctest::Approx(-3.0));
  CHECK(h.H_xx == doctest::Approx(-6.0));
  CHECK(h.H_uu == doctest::Approx(2.0));
}

TEST_CASE("hamiltonian is linear in lambda") {
  const OcpProblem p = builtin_problem("tp3");
  const HamiltonianEval zero = hamiltonian_eval(p, 0.0, 0.7, -0.4);
  CHECK(zero.H == 0.0);
  CHECK(zero.H_x == 0.0);
  CHECK(zero.H_u == 0.0);
  CHECK(zero.H_xx == 0.0);
  CHECK(zero.H_xu == 0.0);
  CHECK(zero.H_uu == 0.0);
  CHECK(zero.H_lambda_x == p.f_x(0.7, -0.4));
  CHECK(zero.H_lambda_u == p.f_u(0.7, -0.4));

  for (double c : {-3.0, 0.5, 2.0}) {
    const HamiltonianEval a = hamiltonian_eval(p, c * 1.3, 0.7, -0.4);
    const HamiltonianEval b = hamiltonian_eval(p, 1.3, 0.7, -0.4);
    CHECK(a.H == doctest::Approx(c * b.H));
    CHECK(a.H_uu == doctest::Approx(c * b.H_uu));
  }
}

TEST_CASE("endpoint lagrangian on tp1") {
  const OcpProblem p = builtin_problem("tp1");
  const EndpointEval v = endpoint_eval(p, 0.5, 1.0, 2.0);
  CHECK(v.E == doctest::Approx(2.0));  // x_b + nu (x_a - 1) = 2 + 0
  CHECK(v.E_a == doctest::Approx(0.5));
  CHECK(v.E_b == doctest::Approx(1.0));
  CHECK(v.E_anu == doctest::Approx(1.0));
  CHECK(v.E_bnu == doctest::Approx(0.0));
  CHECK(v.E_aa == 0.0);
  CHECK(v.E_ab == 0.0);
  CHECK(v.E_bb == 0.0);
}

TEST_CASE("endpoint lagrangian reduces to E at nu = 0 and is affine in nu") {
  const OcpProblem p = builtin_problem("tp2");
  const EndpointEval base = endpoint_eval(p, 0.0, 0.3, -1.2);
  CHECK(base.E == doctest::Approx(p.E(0.3, -1.2)));
  CHECK(base.E_nu == doctest::Approx(p.e(0.3, -1.2)));
  for (double nu : {-2.0, 0.25, 4.0}) {
    const EndpointEval v = endpoint_eval(p, nu, 0.3, -1.2);
    CHECK(v.E - base.E == doctest::Approx(nu * p.e(0.3, -1.2)));
  }
}

TEST_CASE("quadratic mayer cost second derivative") {
  OcpProblem p = builtin_problem("tp1");
  p.E = [](double, double xb) { return xb * xb; };
  p.E_b = [](double, double xb) { return 2.0 * xb; };
  p.E_bb = [](double, double) { return 2.0; };
  const EndpointEval v = endpoint_eval(p, 0.0, 0.0, 3.0);
  CHECK(v.E_b == doctest::Approx(6.0));
  CHECK(v.E_bb == doctest::Approx(2.0));
}

TEST_CASE("derivative check accepts the built-ins") {
  for (const char* name : {"tp1", "tp2", "tp3"}) {
    CAPTURE(name);
    const auto report = check_derivatives(builtin_problem(name));
    for (const auto& [key, err] : report) {
      CAPTURE(key);
      CHECK(err <= 1e-6);
    }
    // linear endpoint constraint: second partials are exactly zero
    CHECK(report.at("e_aa") == 0.0);
    CHECK(report.at("e_ab") == 0.0);
    CHECK(report.at("e_bb") == 0.0);
  }
}

TEST_CASE("derivative check flags an injected defect") {
  OcpProblem p = builtin_problem("tp1");
  p.f_x = [](double, double) { return -1.1; };  // 10% off
  const auto report = check_derivatives(p);
  CHECK(report.at("f_x") == doctest::Approx(0.1).epsilon(0.01));
  CHECK(report.at("f_u") <= 1e-6);
}

TEST_CASE("derivative check validates its box") {
  const OcpProblem p = builtin_problem("tp1");
  CHECK_THROWS_AS((void)check_derivatives(p, SampleBox{-2.0, 2.0, 2}), Error);
  CHECK_THROWS_AS((void)check_derivatives(p, SampleBox{2.0, -2.0, 11}), Error);
}

TEST_CASE("built-in analytic solutions satisfy the optimality system") {
  // xdot = f, lambdadot = -H_x, H_u = 0, transversality, at 100 sample times
  for (const char* name : {"tp1", "tp2"}) {
    CAPTURE(name);
    const OcpProblem p = builtin_problem(name);
    REQUIRE(p.analytic.has_value());
    const AnalyticSolution& s = *p.analytic;

    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
      const double t = -1.0 + 2.0 * (i + 0.5) / 100.0;
      const double x = s.x(t), u = s.u(t), l = s.lambda(t);
      const double xdot = (s.x(t + h) - s.x(t - h)) / (2.0 * h);
      const double ldot = (s.lambda(t + h) - s.lambda(t - h)) / (2.0 * h);
      const HamiltonianEval he = hamiltonian_eval(p, l, x, u);
      CHECK(std::abs(xdot - p.f(x, u)) < 1e-8);
      CHECK(std::abs(ldot + he.H_x) < 1e-8);
      CHECK(std::abs(he.H_u) < 1e-12);
      CHECK(he.H_uu > 0.0);  // Legendre-Clebsch along the solution
    }
    // endpoint identities
    CHECK(s.x(-1.0) == doctest::Approx(s.x_a).epsilon(1e-12));
    CHECK(s.x(1.0) == doctest::Approx(s.x_b).epsilon(1e-12));
    CHECK(s.lambda(-1.0) == doctest::Approx(s.lambda_a).epsilon(1e-12));
    CHECK(s.lambda(1.0) == doctest::Approx(s.lambda_b).epsilon(1e-12));
    // transversality: lambda_b = Ebar_b, lambda_a = -Ebar_a
    const EndpointEval ebar = endpoint_eval(p, s.nu, s.x_a, s.x_b);
    CHECK(std::abs(s.lambda_b - ebar.E_b) < 1e-12);
    CHECK(std::abs(s.lambda_a + ebar.E_a) < 1e-12);
    // constraint satisfied
    CHECK(std::abs(p.e(s.x_a, s.x_b)) < 1e-12);
  }
}

TEST_CASE("closed-form endpoint values") {
  const OcpProblem tp1 = builtin_problem("tp1");
  CHECK(tp1.analytic->x_b == doctest::Approx(0.1353352832366127).epsilon(1e-14));
  const OcpProblem tp2 = builtin_problem("tp2");
  CHECK(tp2.analytic->lambda_a ==
        doctest::Approx(0.0894427190999916).epsilon(1e-14));
}

TEST_CASE("unknown problem names are rejected") {
  CHECK_THROWS_AS((void)builtin_problem("tp9"), Error);
  try {
    (void)builtin_problem("nope");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownName);
  }
}

TEST_CASE("tp3 has genuine state-control coupling") {
  const OcpProblem p = builtin_problem("tp3");
  CHECK(p.f_xu(0.4, -0.9) == doctest::Approx(1.0));
  CHECK_FALSE(p.analytic.has_value());
}
