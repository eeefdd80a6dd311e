// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "core/solver.hpp"
#include "support/oracles.hpp"

using namespace birkhoff;

namespace {

BirkhoffOperators ops_for(GridFamily fam, int n) {
  return BirkhoffOperators(make_grid({fam, n}));
}

const double kExpM2 = std::exp(-2.0);

}  // namespace

TEST_CASE("initial guess layout and determinism") {
  const OcpProblem p = builtin_problem("tp1");
  const Grid g = make_grid({GridFamily::ChebyshevLobatto, 8});
  const DecisionVector a = initial_guess(p, g);
  const DecisionVector b = initial_guess(p, g);
  CHECK(a.size() == 5 * 9 + 5);  // N = 8 has N_n = 9 nodes
  CHECK(a.X().minCoeff() == 1.0);
  CHECK(a.X().maxCoeff() == 1.0);
  CHECK(a.Lambda().minCoeff() == 1.0);
  CHECK(a.V().cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.Omega().cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.U().cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.x_a() == 1.0);
  CHECK(a.x_b() == 1.0);
  CHECK(a.lambda_b() == 1.0);
  CHECK(a.lambda_a() == 1.0);
  CHECK(a.nu() == 0.0);
  CHECK(a.flat() == b.flat());

  const BirkhoffOperators ops(g);
  const Eigen::VectorXd f = residual(a, p, ops);
  CHECK(f.allFinite());
  CHECK(f.lpNorm<Eigen::Infinity>() > 0.0);
}

TEST_CASE("tp1 solves to the closed form from the default guess") {
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 16);
  const SolveReport rep = newton_solve(builtin_problem("tp1"), ops);
  REQUIRE(rep.converged);
  CHECK(rep.iterations <= 15);
  CHECK(std::abs(rep.x_b - kExpM2) <= 1e-8);
  CHECK(std::abs(rep.lambda_a - kExpM2) <= 1e-8);
  CHECK(std::abs(rep.nu + kExpM2) <= 1e-8);
  CHECK(rep.residual_history.back() <= 1e-10);

  const SolutionErrors err = verify_solution(rep, builtin_problem("tp1"));
  CHECK(err.state_err.value() <= 1e-8);
  CHECK(err.costate_err.value() <= 1e-8);
  // H = -lambda x = -exp(-2) along the extremal, constant
  CHECK(err.hamiltonian_variation <= 1e-7);
}

TEST_CASE("tp2 solves on a legendre grid") {
  const BirkhoffOperators ops = ops_for(GridFamily::LegendreLobatto, 24);
  const SolveReport rep = newton_solve(builtin_problem("tp2"), ops);
  REQUIRE(rep.converged);
  CHECK(std::abs(rep.x_b - 1.0 / std::sqrt(5.0)) <= 1e-8);
  const SolutionErrors err = verify_solution(rep, builtin_problem("tp2"));
  CHECK(err.costate_err.value() <= 1e-7);
}

TEST_CASE("warm start from the analytic sample converges immediately") {
  const OcpProblem p = builtin_problem("tp1");
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 16);
  const DecisionVector chi0 = testing::analytic_point(p, ops);
  const SolveReport rep = newton_solve(p, ops, chi0, {});
  CHECK(rep.converged);
  CHECK(rep.iterations <= 2);
  CHECK(rep.rejected_steps == 0);
}

TEST_CASE("quadratic convergence tail") {
  for (const char* name : {"tp1", "tp2"}) {
    CAPTURE(name);
    const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 16);
    const SolveReport rep = newton_solve(builtin_problem(name), ops);
    REQUIRE(rep.converged);
    const auto& hist = rep.residual_history;
    for (size_t k = 0; k + 1 < hist.size(); ++k) {
      if (hist[k] <= 1e-3) {
        CHECK(hist[k + 1] <= 10.0 * hist[k] * hist[k] + 1e-15);
      }
    }
  }
}

TEST_CASE("discretization error decays spectrally in N") {
  const OcpProblem p = builtin_problem("tp1");
  auto err_at = [&](int n) {
    const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, n);
    const SolveReport rep = newton_solve(p, ops);
    REQUIRE(rep.converged);
    return std::abs(rep.x_b - kExpM2);
  };
  const double e8 = err_at(8);
  const double e16 = err_at(16);
  CHECK(e8 >= 10.0 * e16);
}

TEST_CASE("dense-lu and krylov paths agree") {
  for (const char* name : {"tp1", "tp2", "tp3"}) {
    CAPTURE(name);
    const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 16);
    const OcpProblem p = builtin_problem(name);
    const SolveReport lu = newton_solve(p, ops);
    SolverOptions kopts;
    kopts.linear_path = LinearPath::StructuredKrylov;
    const SolveReport ky = newton_solve(p, ops, kopts);
    REQUIRE(lu.converged);
    REQUIRE(ky.converged);
    CHECK((lu.chi.flat() - ky.chi.flat()).lpNorm<Eigen::Infinity>() <= 1e-6);
  }
}

TEST_CASE("krylov path with the fast transform enabled") {
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 16);
  const OcpProblem p = builtin_problem("tp1");
  SolverOptions kopts;
  kopts.linear_path = LinearPath::StructuredKrylov;
  kopts.use_fast_transform = true;
  const SolveReport rep = newton_solve(p, ops, kopts);
  REQUIRE(rep.converged);
  CHECK(std::abs(rep.x_b - kExpM2) <= 1e-8);
}

TEST_CASE("gmres recovers constructed solutions") {
  const OcpProblem p = builtin_problem("tp1");
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 16);
  const int n = 5 * ops.size() + 5;
  const KktMatrix k =
      assemble(initial_guess(p, ops.grid()), p, ops);

  SUBCASE("rhs = A 1 recovers the ones vector") {
    const Eigen::VectorXd rhs = matvec(k, Eigen::VectorXd::Ones(n));
    const Eigen::VectorXd xi = krylov_linear_solve(k, rhs, 1e-12, 50);
    CHECK((xi - Eigen::VectorXd::Ones(n)).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
  SUBCASE("matches dense LU on a random rhs") {
    std::mt19937 rng(3u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = dist(rng);
    const Eigen::VectorXd xi = krylov_linear_solve(k, rhs, 1e-12, 50);
    const Eigen::MatrixXd a = to_dense(k);
    const Eigen::VectorXd ref = a.partialPivLu().solve(rhs);
    CHECK((xi - ref).lpNorm<Eigen::Infinity>() /
              ref.lpNorm<Eigen::Infinity>() <=
          1e-8);
  }
  SUBCASE("zero rhs gives zero") {
    const Eigen::VectorXd xi =
        krylov_linear_solve(k, Eigen::VectorXd::Zero(n), 1e-12, 50);
    CHECK(xi.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("residual contract on a consistent singular system") {
    OcpProblem zp;
    auto z = [](double, double) { return 0.0; };
    zp.f = zp.f_x = zp.f_u = zp.f_xx = zp.f_xu = zp.f_uu = z;
    zp.E = zp.E_a = zp.E_b = zp.E_aa = zp.E_ab = zp.E_bb = z;
    zp.e = zp.e_a = zp.e_b = zp.e_aa = zp.e_ab = zp.e_bb = z;
    const KktMatrix kz = assemble(DecisionVector(ops.size()), zp, ops);
    const Eigen::VectorXd rhs = matvec(kz, Eigen::VectorXd::Ones(n));
    const Eigen::VectorXd xi = krylov_linear_solve(kz, rhs, 1e-10, 50);
    CHECK((matvec(kz, xi) - rhs).norm() <= 1e-10 * rhs.norm());
  }
}

TEST_CASE("identical runs produce identical reports") {
  const BirkhoffOperators ops = ops_for(GridFamily::LegendreLobatto, 12);
  const OcpProblem p = builtin_problem("tp2");
  const SolveReport a = newton_solve(p, ops);
  const SolveReport b = newton_solve(p, ops);
  CHECK(a.converged == b.converged);
  CHECK(a.iterations == b.iterations);
  CHECK(a.chi.flat() == b.chi.flat());
  CHECK(a.residual_history == b.residual_history);
}

TEST_CASE("tp3 self-convergence") {
  auto xb_at = [&](int n) {
    const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, n);
    const SolveReport rep = newton_solve(builtin_problem("tp3"), ops);
    REQUIRE(rep.converged);
    return rep.x_b;
  };
  CHECK(std::abs(xb_at(24) - xb_at(48)) <= 1e-9);
}

TEST_CASE("verify_solution without a closed form reports only the diagnostic") {
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 16);
  const OcpProblem p = builtin_problem("tp3");
  const SolveReport rep = newton_solve(p, ops);
  REQUIRE(rep.converged);
  const SolutionErrors err = verify_solution(rep, p);
  CHECK_FALSE(err.state_err.has_value());
  CHECK_FALSE(err.costate_err.has_value());
  CHECK(std::isfinite(err.hamiltonian_variation));

  // Legendre-Clebsch along the computed solution
  for (Eigen::Index i = 0; i < rep.nodes.size(); ++i) {
    CHECK(hamiltonian_eval(p, rep.lambda(i), rep.x(i), rep.u(i)).H_uu > 0.0);
  }
}

TEST_CASE("singular systems raise a solver error") {
  // e == 1 has an identically zero constraint row but a nonzero residual,
  // so the Newton system is singular and inconsistent
  OcpProblem zp;
  auto z = [](double, double) { return 0.0; };
  zp.f = zp.f_x = zp.f_u = zp.f_xx = zp.f_xu = zp.f_uu = z;
  zp.E = zp.E_a = zp.E_b = zp.E_aa = zp.E_ab = zp.E_bb = z;
  zp.e = [](double, double) { return 1.0; };
  zp.e_a = zp.e_b = zp.e_aa = zp.e_ab = zp.e_bb = z;
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 4);
  try {
    (void)newton_solve(zp, ops, DecisionVector(ops.size()), {});
    FAIL("expected a singular-system error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularSystem);
  }
}

TEST_CASE("a stalled line search reports instead of throwing") {
  SolverOptions opts;
  opts.armijo_c = 0.99;   // demand nearly the full theoretical decrease
  opts.min_step = 0.3;    // so one or two backtracks exhaust the budget
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 8);
  const SolveReport rep = newton_solve(builtin_problem("tp2"), ops, opts);
  CHECK_FALSE(rep.converged);
  CHECK(rep.rejected_steps > 0);
}

TEST_CASE("option validation") {
  SolverOptions bad;
  bad.armijo_c = 1.5;
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 4);
  CHECK_THROWS_AS((void)newton_solve(builtin_problem("tp1"), ops, bad), Error);
}
