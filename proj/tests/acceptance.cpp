// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one line per criterion, exit code = number of failed
// criteria.  Tolerances are pinned in code; nothing is calibrated at run
// time.
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/solver.hpp"
#include "core/spectral.hpp"
#include "support/oracles.hpp"

using namespace birkhoff;
using json = nlohmann::json;

namespace {

int g_failures = 0;

struct Criterion {
  std::ostringstream detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

void run_criterion(int index, const std::string& title,
                   const std::function<void(Criterion&)>& body) {
  Criterion c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail << "exception: " << e.what();
  }
  if (c.ok) {
    std::cout << "[PASS] criterion " << index << ": " << title << "\n";
  } else {
    ++g_failures;
    std::cout << "[FAIL] criterion " << index << ": " << title << " ("
              << c.detail.str() << ")\n";
  }
  std::cout.flush();
}

BirkhoffOperators ops_for(GridFamily fam, int n) {
  return BirkhoffOperators(make_grid({fam, n}));
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

std::string run_cli_json(const std::string& args, json& doc) {
  const std::string cmd =
      std::string(BIRKHOFF_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  char buf[4096];
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return "popen failed";
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    return "exit code " + std::to_string(WEXITSTATUS(status));
  doc = json::parse(out, nullptr, false);
  if (doc.is_discarded()) return "bad JSON";
  return "";
}

/* 1. Operator identities over both families and N in 2..64. */
void criterion1(Criterion& c) {
  for (GridFamily fam :
       {GridFamily::ChebyshevLobatto, GridFamily::LegendreLobatto}) {
    for (int n = 2; n <= 64; ++n) {
      const BirkhoffOperators ops = ops_for(fam, n);
      const Eigen::VectorXd& w = ops.grid().weights;
      const std::string tag = family_name(fam) + " N=" + std::to_string(n);

      c.expect(ops.Ba().row(0).cwiseAbs().maxCoeff() == 0.0,
               tag + ": row 0 of Ba not zero");
      c.expect(
          (ops.Ba().row(n) - w.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
          tag + ": row N of Ba differs from w");
      const Eigen::MatrixXd identity_gap =
          ops.Bb() -
          (ops.Ba() - Eigen::VectorXd::Ones(n + 1) * w.transpose());
      c.expect(identity_gap.cwiseAbs().maxCoeff() <= 1e-13,
               tag + ": Bb != Ba - 1 w^T");
      c.expect(ops.Ba().cwiseAbs().rowwise().sum().maxCoeff() <= 2.0 + 1e-10,
               tag + ": Ba row abs-sum exceeds 2");
      c.expect(ops.Bb().cwiseAbs().rowwise().sum().maxCoeff() <= 2.0 + 1e-10,
               tag + ": Bb row abs-sum exceeds 2");
      if (!c.ok) return;  // avoid flooding the detail string
    }
  }
}

/* 2. Lemma 1 residual values. */
void criterion2(Criterion& c) {
  const double lgl16 = ops_for(GridFamily::LegendreLobatto, 16).lemma1_residual();
  c.expect(lgl16 <= 1e-8,
           "lemma1(LGL,16) = " + fmt(lgl16) + " > 1e-8 (see decisions ledger:"
           " the identity is asymptotic; measured decay is algebraic)");
  for (GridFamily fam :
       {GridFamily::ChebyshevLobatto, GridFamily::LegendreLobatto}) {
    const double r8 = ops_for(fam, 8).lemma1_residual();
    const double r32 = ops_for(fam, 32).lemma1_residual();
    c.expect(r32 < r8, family_name(fam) + ": residual(32) !< residual(8)");
  }
  const double cgl2 = ops_for(GridFamily::ChebyshevLobatto, 2).lemma1_residual();
  c.expect(std::abs(cgl2 - 1.0 / 9.0) <= 1e-12,
           "lemma1(CGL,2) = " + fmt(cgl2) + " != 1/9");
}

/* 3. Jacobian consistency against central differences. */
void criterion3(Criterion& c) {
  for (const char* name : {"tp1", "tp2", "tp3"}) {
    const OcpProblem p = builtin_problem(name);
    for (GridFamily fam :
         {GridFamily::ChebyshevLobatto, GridFamily::LegendreLobatto}) {
      for (int n : {4, 8, 16}) {
        const BirkhoffOperators ops = ops_for(fam, n);
        for (unsigned seed = 0; seed < 5; ++seed) {
          const DecisionVector chi =
              testing::random_point(ops.size(), 1000u + seed);
          const Eigen::MatrixXd dense = to_dense(assemble(chi, p, ops));
          const Eigen::MatrixXd fd = testing::fd_jacobian(chi, p, ops);
          const double gap = testing::jacobian_mismatch(fd, dense);
          c.expect(gap <= 1e-6, std::string(name) + " " + family_name(fam) +
                                    " N=" + std::to_string(n) +
                                    " seed=" + std::to_string(seed) +
                                    ": mismatch " + fmt(gap));
          if (!c.ok) return;
        }
      }
    }
  }
}

/* 4. Analytic-solution recovery from the documented default guess. */
void criterion4(Criterion& c) {
  const double exp_m2 = std::exp(-2.0);
  {
    const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 16);
    const SolveReport rep = newton_solve(builtin_problem("tp1"), ops);
    c.expect(rep.converged, "tp1 cgl N=16 did not converge");
    c.expect(rep.iterations <= 15,
             "tp1 took " + std::to_string(rep.iterations) + " > 15 iterations");
    c.expect(std::abs(rep.x_b - exp_m2) <= 1e-8,
             "tp1 |x_b - e^-2| = " + fmt(std::abs(rep.x_b - exp_m2)));
    c.expect(std::abs(rep.lambda_a - exp_m2) <= 1e-8,
             "tp1 |lambda_a - e^-2| = " + fmt(std::abs(rep.lambda_a - exp_m2)));
    c.expect(std::abs(rep.nu + exp_m2) <= 1e-8,
             "tp1 |nu + e^-2| = " + fmt(std::abs(rep.nu + exp_m2)));
  }
  {
    const OcpProblem p = builtin_problem("tp2");
    const BirkhoffOperators ops = ops_for(GridFamily::LegendreLobatto, 24);
    const SolveReport rep = newton_solve(p, ops);
    c.expect(rep.converged, "tp2 lgl N=24 did not converge");
    const double xb_gap = std::abs(rep.x_b - 1.0 / std::sqrt(5.0));
    c.expect(xb_gap <= 1e-8, "tp2 |x_b - 5^-1/2| = " + fmt(xb_gap));
    const SolutionErrors err = verify_solution(rep, p);
    c.expect(err.costate_err.value() <= 1e-7,
             "tp2 costate error = " + fmt(err.costate_err.value()));
  }
}

/* 5. Eigenvalue theorem suite at the solutions, plus mesh independence. */
void criterion5(Criterion& c) {
  for (const char* name : {"tp1", "tp2"}) {
    const OcpProblem p = builtin_problem(name);
    for (int n : {8, 16, 32}) {
      const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, n);
      const SolveReport rep = newton_solve(p, ops);
      c.expect(rep.converged,
               std::string(name) + " N=" + std::to_string(n) + " no converge");
      if (!rep.converged) return;
      const SpectrumReport sr = verify_theorem1(assemble(rep.chi, p, ops));
      const std::string tag = std::string(name) + " N=" + std::to_string(n);
      c.expect(sr.containment_row, tag + ": row-disc containment failed");
      c.expect(sr.containment_col, tag + ": column-disc containment failed");
      c.expect(sr.count_in_minus2_4 >= 4 * (n + 1) + 2,
               tag + ": count " + std::to_string(sr.count_in_minus2_4) +
                   " < " + std::to_string(4 * (n + 1) + 2));
      c.expect(sr.spectral_radius <= sr.g_bound + 1e-9,
               tag + ": rho exceeds the Gershgorin bound");
    }

    const std::vector<SweepRow> sweep = spectral_radius_sweep(
        p, GridFamily::ChebyshevLobatto, {8, 16, 32, 64});
    double rho_min = sweep[0].spectral_radius, rho_max = rho_min;
    double g_min = sweep[0].g_bound, g_max = g_min;
    for (const SweepRow& r : sweep) {
      rho_min = std::min(rho_min, r.spectral_radius);
      rho_max = std::max(rho_max, r.spectral_radius);
      g_min = std::min(g_min, r.g_bound);
      g_max = std::max(g_max, r.g_bound);
    }
    c.expect(rho_max / rho_min <= 1.5,
             std::string(name) + ": rho ratio " + fmt(rho_max / rho_min));
    c.expect((g_max - g_min) / g_max <= 0.10,
             std::string(name) + ": G bound varies " +
                 fmt(100.0 * (g_max - g_min) / g_max) + "%");
  }
}

/* 6. Problem-independent rows split out bit-exactly; 5 N_n storage. */
void criterion6(Criterion& c) {
  const int n = 12;
  const BirkhoffOperators ops = ops_for(GridFamily::LegendreLobatto, n);
  const int nn = n + 1;
  const DecisionVector chi = testing::random_point(nn, 4242u);
  const KktMatrix k1 = assemble(chi, builtin_problem("tp1"), ops);
  const KktMatrix k2 = assemble(chi, builtin_problem("tp2"), ops);
  const SplitKkt s1 = permute_split(k1);
  const SplitKkt s2 = permute_split(k2);

  c.expect(s1.a0.rows() == 2 * nn + 2,
           "A0 rows " + std::to_string(s1.a0.rows()));
  c.expect(s1.a_data.rows() == 3 * nn + 3,
           "Adata rows " + std::to_string(s1.a_data.rows()));
  c.expect(std::memcmp(s1.a0.data(), s2.a0.data(),
                       sizeof(double) * static_cast<size_t>(s1.a0.size())) == 0,
           "A0 differs between tp1 and tp2");
  c.expect(nnz_report(k1, 1, 1).hamiltonian_values == 5 * nn,
           "scalar Hamiltonian storage != 5 N_n");
}

/* 7. Alternative Hessian symmetry; A itself is not symmetric. */
void criterion7(Criterion& c) {
  const OcpProblem p = builtin_problem("tp1");
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 8);
  const SolveReport rep = newton_solve(p, ops);
  c.expect(rep.converged, "tp1 N=8 did not converge");
  const Eigen::MatrixXd alt = assemble_alt(rep.chi, p, ops);
  const Eigen::MatrixXd a = to_dense(assemble(rep.chi, p, ops));

  const double sym_gap = (alt - alt.transpose()).cwiseAbs().maxCoeff();
  c.expect(sym_gap <= 1e-12, "||Alt - Alt^T|| = " + fmt(sym_gap));
  c.expect(alt.rows() == a.rows() - 1,
           "dim(Alt) = " + std::to_string(alt.rows()) +
               " != dim(A) - 1 = " + std::to_string(a.rows() - 1));
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  c.expect(asym > 0.5, "||A - A^T|| = " + fmt(asym) + " <= 0.5");
}

/* 8. Complexity numbers through the CLI. */
void criterion8(Criterion& c) {
  json mem;
  std::string err = run_cli_json("memory --Nx 6 --Nu 3 --Nn 1000000", mem);
  c.expect(err.empty(), "memory subcommand: " + err);
  if (err.empty()) {
    c.expect(mem["bytes"] == 936000000,
             "bytes = " + mem["bytes"].dump() + " != 936000000");
    c.expect(std::abs(mem["gigabytes"].get<double>() - 0.936) < 1e-12,
             "gigabytes != 0.936");
  }

  json table;
  err = run_cli_json("table1 --format json", table);
  c.expect(err.empty(), "table1 subcommand: " + err);
  if (!err.empty()) return;

  const double expected[4][7] = {
      {1e3, 0.000008, 0.008, 1e-9, 7e-9, 0.000001, 0.001},
      {1e4, 0.00008, 0.8, 1e-8, 9e-8, 0.0001, 1},
      {1e5, 0.0008, 80, 1e-7, 11e-7, 0.01, 1000},
      {1e6, 0.008, 8000, 1e-6, 14e-6, 1, 1000000},
  };
  const char* keys[7] = {"n",       "mem_n_GB", "mem_n2_GB", "t_n",
                         "t_nlogn", "t_n2",     "t_n3"};
  auto round_1sf = [](double v) {
    const double mag = std::pow(10.0, std::floor(std::log10(std::abs(v))));
    return std::round(v / mag) * mag;
  };
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 7; ++j) {
      const double got = table["rows"][i][keys[j]].get<double>();
      const double want = expected[i][j];
      c.expect(std::abs(round_1sf(got) - round_1sf(want)) <=
                   1e-9 * std::abs(round_1sf(want)),
               std::string("table1 ") + keys[j] + " at n=" + fmt(want) +
                   ": got " + fmt(got));
    }
  }
}

/* 9. Fast transform accuracy and scaling; Krylov/LU agreement. */
void criterion9(Criterion& c) {
  std::mt19937 rng(99u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  double t512 = 0.0, t4096 = 0.0;
  double sink = 0.0;
  for (int n : {64, 256, 1024, 4096}) {
    const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, n);
    Eigen::VectorXd v(n + 1);
    for (int i = 0; i <= n; ++i) v(i) = dist(rng);
    const Eigen::VectorXd ref = ops.Ba() * v;
    const Eigen::VectorXd got = ops.apply_fast(Anchor::A, v);
    const double rel = (got - ref).lpNorm<Eigen::Infinity>() /
                       ref.lpNorm<Eigen::Infinity>();
    c.expect(rel <= 1e-10,
             "N=" + std::to_string(n) + ": fast-dense gap " + fmt(rel));
    if (n == 4096) {
      t4096 = testing::median_seconds(
          [&] { return ops.apply_fast(Anchor::A, v).sum(); }, 9, &sink);
    }
  }
  {
    const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 512);
    Eigen::VectorXd v(513);
    for (int i = 0; i <= 512; ++i) v(i) = dist(rng);
    t512 = testing::median_seconds(
        [&] { return ops.apply_fast(Anchor::A, v).sum(); }, 9, &sink);
  }
  const double ratio = t4096 / t512;
  c.expect(ratio < 0.5 * 64.0,
           "time(4096)/time(512) = " + fmt(ratio) + " >= 32");

  const OcpProblem p = builtin_problem("tp1");
  const BirkhoffOperators ops = ops_for(GridFamily::ChebyshevLobatto, 16);
  const SolveReport lu = newton_solve(p, ops);
  SolverOptions kopts;
  kopts.linear_path = LinearPath::StructuredKrylov;
  const SolveReport ky = newton_solve(p, ops, kopts);
  c.expect(lu.converged && ky.converged, "tp1 N=16 solve failed");
  const double gap =
      (lu.chi.flat() - ky.chi.flat()).lpNorm<Eigen::Infinity>();
  c.expect(gap <= 1e-6, "krylov/LU final-iterate gap " + fmt(gap));
}

/* 10. Weak-form amplification extremes. */
void criterion10(Criterion& c) {
  const double delta = 1e-8;
  for (GridFamily fam :
       {GridFamily::ChebyshevLobatto, GridFamily::LegendreLobatto}) {
    for (int n = 3; n <= 64; ++n) {
      const Grid g = make_grid({fam, n});
      const AmplificationResult r = weak_form_amplification(g.weights, delta);
      c.expect(r.argmax == std::vector<int>({0, n}),
               family_name(fam) + " N=" + std::to_string(n) +
                   ": argmax not {0, N}");
      if (!c.ok) return;
    }
  }
  const Grid lgl = make_grid({GridFamily::LegendreLobatto, 10});
  const AmplificationResult r = weak_form_amplification(lgl.weights, delta);
  const double expected = delta * 10.0 * 11.0 / 2.0;
  c.expect(std::abs(r.values(0) - expected) <= 1e-12 * expected,
           "LGL endpoint value " + fmt(r.values(0)) + " != " + fmt(expected));
}

}  // namespace

int main() {
  std::cout << "acceptance suite\n";
  const auto t0 = std::chrono::steady_clock::now();

  run_criterion(1, "Birkhoff operator identities (both families, N=2..64)",
                criterion1);
  run_criterion(2, "Lemma 1 residual values", criterion2);
  run_criterion(3, "Jacobian matches central differences (3 problems x 2 "
                   "families x 3 sizes x 5 points)",
                criterion3);
  run_criterion(4, "analytic-solution recovery from the default guess",
                criterion4);
  run_criterion(5, "eigenvalue theorem suite and mesh independence",
                criterion5);
  run_criterion(6, "problem-independent row split and 5 N_n storage",
                criterion6);
  run_criterion(7, "alternative Hessian symmetry, A asymmetry", criterion7);
  run_criterion(8, "complexity numbers via the CLI", criterion8);
  run_criterion(9, "fast transform accuracy/scaling and Krylov-LU agreement",
                criterion9);
  run_criterion(10, "weak-form amplification extremes", criterion10);

  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  std::cout << (g_failures == 0 ? "all criteria passed"
                                : std::to_string(g_failures) +
                                      " criterion(s) failed")
            << " in " << fmt(secs) << " s\n";
  return g_failures;
}
