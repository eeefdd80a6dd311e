// SPDX-License-Identifier: Apache-2.0
#include "birkhoff/birkhoff.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "core/grid.hpp"
#include "core/kkt.hpp"
#include "core/model.hpp"
#include "core/operators.hpp"
#include "core/solver.hpp"
#include "core/spectral.hpp"

namespace {

thread_local std::string g_last_error;

bh_status code_to_status(birkhoff::ErrorCode code) {
  using birkhoff::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return BH_ERR_INVALID_ARGUMENT;
    case ErrorCode::UnknownName: return BH_ERR_UNKNOWN_NAME;
    case ErrorCode::UnsupportedGrid: return BH_ERR_UNSUPPORTED_GRID;
    case ErrorCode::CapExceeded: return BH_ERR_CAP_EXCEEDED;
    case ErrorCode::SingularSystem: return BH_ERR_SINGULAR_SYSTEM;
    case ErrorCode::NoConvergence: return BH_ERR_NO_CONVERGENCE;
    case ErrorCode::DimensionMismatch: return BH_ERR_DIMENSION_MISMATCH;
    case ErrorCode::Io: return BH_ERR_IO;
    case ErrorCode::Internal: return BH_ERR_INTERNAL;
  }
  return BH_ERR_INTERNAL;
}

bh_status fail(bh_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
bh_status guarded(Fn&& fn) {
  try {
    fn();
    return BH_OK;
  } catch (const birkhoff::Error& e) {
    g_last_error = e.what();
    return code_to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BH_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return BH_ERR_INTERNAL;
  }
}

bh_status copy_vector(const Eigen::VectorXd& v, double* out, int len) {
  if (out == nullptr) return fail(BH_ERR_INVALID_ARGUMENT, "out is NULL");
  if (len != v.size())
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  std::memcpy(out, v.data(), sizeof(double) * static_cast<size_t>(len));
  return BH_OK;
}

}  // namespace

struct bh_grid {
  birkhoff::Grid grid;
};
struct bh_operators {
  birkhoff::BirkhoffOperators ops;
};
struct bh_problem {
  birkhoff::OcpProblem problem;
};
struct bh_kkt {
  birkhoff::KktMatrix kkt;  // borrows the bh_operators' core object
};
struct bh_solve_report {
  birkhoff::SolveReport report;
};
struct bh_spectrum_report {
  birkhoff::SpectrumReport report;
};

extern "C" {

const char* bh_version(void) { return "1.0.0"; }

const char* bh_status_name(bh_status status) {
  switch (status) {
    case BH_OK: return "ok";
    case BH_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case BH_ERR_UNKNOWN_NAME: return "unknown-name";
    case BH_ERR_UNSUPPORTED_GRID: return "unsupported-grid";
    case BH_ERR_CAP_EXCEEDED: return "cap-exceeded";
    case BH_ERR_SINGULAR_SYSTEM: return "singular-system";
    case BH_ERR_NO_CONVERGENCE: return "no-convergence";
    case BH_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case BH_ERR_IO: return "io-error";
    case BH_ERR_INTERNAL: return "internal-error";
  }
  return "unknown-status";
}

const char* bh_last_error(void) { return g_last_error.c_str(); }

/* ---- grid ------------------------------------------------------------ */

bh_status bh_grid_create(bh_grid_family family, int degree, bh_grid** out) {
  if (out == nullptr) return fail(BH_ERR_INVALID_ARGUMENT, "out is NULL");
  *out = nullptr;
  return guarded([&] {
    birkhoff::GridSpec spec;
    spec.family = family == BH_GRID_LEGENDRE_LOBATTO
                      ? birkhoff::GridFamily::LegendreLobatto
                      : birkhoff::GridFamily::ChebyshevLobatto;
    spec.degree = degree;
    *out = new bh_grid{birkhoff::make_grid(spec)};
  });
}

void bh_grid_destroy(bh_grid* grid) { delete grid; }

int bh_grid_num_nodes(const bh_grid* grid) {
  return grid == nullptr ? 0 : grid->grid.size();
}

bh_status bh_grid_nodes(const bh_grid* grid, double* out, int len) {
  if (grid == nullptr) return fail(BH_ERR_INVALID_ARGUMENT, "grid is NULL");
  return copy_vector(grid->grid.nodes, out, len);
}

bh_status bh_grid_weights(const bh_grid* grid, double* out, int len) {
  if (grid == nullptr) return fail(BH_ERR_INVALID_ARGUMENT, "grid is NULL");
  return copy_vector(grid->grid.weights, out, len);
}

bh_status bh_grid_exactness(const bh_grid* grid, int d_max, double* out,
                            int len) {
  if (grid == nullptr) return fail(BH_ERR_INVALID_ARGUMENT, "grid is NULL");
  Eigen::VectorXd err;
  const bh_status status = guarded(
      [&] { err = birkhoff::quadrature_exactness_degree(grid->grid, d_max); });
  if (status != BH_OK) return status;
  return copy_vector(err, out, len);
}

/* ---- operators -------------------------------------------------------- */

bh_status bh_operators_create(const bh_grid* grid, bh_operators** out) {
  if (grid == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "grid/out is NULL");
  *out = nullptr;
  return guarded(
      [&] { *out = new bh_operators{birkhoff::BirkhoffOperators(grid->grid)}; });
}

void bh_operators_destroy(bh_operators* ops) { delete ops; }

int bh_operators_num_nodes(const bh_operators* ops) {
  return ops == nullptr ? 0 : ops->ops.size();
}

bh_status bh_operators_matrix(const bh_operators* ops, bh_matrix_kind kind,
                              double* out, size_t len) {
  if (ops == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "ops/out is NULL");
  const Eigen::MatrixXd& m =
      kind == BH_MATRIX_BA ? ops->ops.Ba() : ops->ops.Bb();
  if (len != static_cast<size_t>(m.size()))
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out[static_cast<size_t>(i * m.cols() + j)] = m(i, j);
  return BH_OK;
}

bh_status bh_operators_apply(const bh_operators* ops, bh_matrix_kind kind,
                             int fast, const double* v, double* out, int len) {
  if (ops == nullptr || v == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "ops/v/out is NULL");
  if (len != ops->ops.size())
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  return guarded([&] {
    const Eigen::Map<const Eigen::VectorXd> vin(v, len);
    const birkhoff::Anchor anchor =
        kind == BH_MATRIX_BA ? birkhoff::Anchor::A : birkhoff::Anchor::B;
    Eigen::VectorXd y;
    if (fast != 0) {
      y = ops->ops.apply_fast(anchor, vin);
    } else {
      y = (kind == BH_MATRIX_BA ? ops->ops.Ba() : ops->ops.Bb()) * vin;
    }
    std::memcpy(out, y.data(), sizeof(double) * static_cast<size_t>(len));
  });
}

bh_status bh_operators_lemma1_residual(const bh_operators* ops, double* out) {
  if (ops == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "ops/out is NULL");
  return guarded([&] { *out = ops->ops.lemma1_residual(); });
}

/* ---- problems ---------------------------------------------------------- */

bh_status bh_problem_builtin(const char* name, bh_problem** out) {
  if (name == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "name/out is NULL");
  *out = nullptr;
  return guarded(
      [&] { *out = new bh_problem{birkhoff::builtin_problem(name)}; });
}

bh_status bh_problem_create(const char* name, const bh_problem_functions* fns,
                            void* user, bh_problem** out) {
  if (name == nullptr || fns == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "name/fns/out is NULL");
  const bh_fn2 fields[] = {fns->f,    fns->f_x,  fns->f_u,  fns->f_xx,
                           fns->f_xu, fns->f_uu, fns->E,    fns->E_a,
                           fns->E_b,  fns->E_aa, fns->E_ab, fns->E_bb,
                           fns->e,    fns->e_a,  fns->e_b,  fns->e_aa,
                           fns->e_ab, fns->e_bb};
  for (bh_fn2 fn : fields) {
    if (fn == nullptr)
      return fail(BH_ERR_INVALID_ARGUMENT, "every derivative must be supplied");
  }
  *out = nullptr;
  auto wrap = [user](bh_fn2 fn) {
    return [fn, user](double a, double b) { return fn(a, b, user); };
  };
  birkhoff::OcpProblem p;
  p.name = name;
  p.f = wrap(fns->f);
  p.f_x = wrap(fns->f_x);
  p.f_u = wrap(fns->f_u);
  p.f_xx = wrap(fns->f_xx);
  p.f_xu = wrap(fns->f_xu);
  p.f_uu = wrap(fns->f_uu);
  p.E = wrap(fns->E);
  p.E_a = wrap(fns->E_a);
  p.E_b = wrap(fns->E_b);
  p.E_aa = wrap(fns->E_aa);
  p.E_ab = wrap(fns->E_ab);
  p.E_bb = wrap(fns->E_bb);
  p.e = wrap(fns->e);
  p.e_a = wrap(fns->e_a);
  p.e_b = wrap(fns->e_b);
  p.e_aa = wrap(fns->e_aa);
  p.e_ab = wrap(fns->e_ab);
  p.e_bb = wrap(fns->e_bb);
  *out = new bh_problem{std::move(p)};
  return BH_OK;
}

void bh_problem_destroy(bh_problem* problem) { delete problem; }

int bh_problem_has_analytic_solution(const bh_problem* problem) {
  return problem != nullptr && problem->problem.analytic.has_value() ? 1 : 0;
}

bh_status bh_problem_hamiltonian(const bh_problem* problem, double lambda,
                                 double x, double u, double out[9]) {
  if (problem == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "problem/out is NULL");
  return guarded([&] {
    const birkhoff::HamiltonianEval h =
        birkhoff::hamiltonian_eval(problem->problem, lambda, x, u);
    const double vals[9] = {h.H,    h.H_x,  h.H_u,        h.H_lambda, h.H_xx,
                            h.H_xu, h.H_uu, h.H_lambda_x, h.H_lambda_u};
    std::memcpy(out, vals, sizeof(vals));
  });
}

bh_status bh_problem_endpoint(const bh_problem* problem, double nu, double x_a,
                              double x_b, double out[9]) {
  if (problem == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "problem/out is NULL");
  return guarded([&] {
    const birkhoff::EndpointEval v =
        birkhoff::endpoint_eval(problem->problem, nu, x_a, x_b);
    const double vals[9] = {v.E,    v.E_a,  v.E_b,   v.E_nu, v.E_aa,
                            v.E_ab, v.E_bb, v.E_anu, v.E_bnu};
    std::memcpy(out, vals, sizeof(vals));
  });
}

bh_status bh_problem_check_derivatives(const bh_problem* problem, double lo,
                                       double hi, int points, double* out) {
  if (problem == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "problem/out is NULL");
  return guarded([&] {
    const auto report = birkhoff::check_derivatives(
        problem->problem, birkhoff::SampleBox{lo, hi, points});
    double worst = 0.0;
    for (const auto& [key, err] : report) worst = std::max(worst, err);
    *out = worst;
  });
}

/* ---- KKT system --------------------------------------------------------- */

int bh_kkt_dim_for(const bh_operators* ops) {
  return ops == nullptr ? 0 : 5 * ops->ops.size() + 5;
}

bh_status bh_initial_guess(const bh_operators* ops, double* chi, int len) {
  if (ops == nullptr || chi == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "ops/chi is NULL");
  if (len != bh_kkt_dim_for(ops))
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  return guarded([&] {
    birkhoff::OcpProblem unused;
    const birkhoff::DecisionVector guess =
        birkhoff::initial_guess(unused, ops->ops.grid());
    std::memcpy(chi, guess.flat().data(),
                sizeof(double) * static_cast<size_t>(len));
  });
}

static birkhoff::DecisionVector chi_from(const bh_operators* ops,
                                         const double* chi, int len) {
  birkhoff::require(len == 5 * ops->ops.size() + 5,
                    birkhoff::ErrorCode::DimensionMismatch,
                    "decision vector has wrong length");
  return birkhoff::DecisionVector(
      ops->ops.size(), Eigen::Map<const Eigen::VectorXd>(chi, len));
}

bh_status bh_residual(const bh_problem* problem, const bh_operators* ops,
                      const double* chi, int len, double* out) {
  if (problem == nullptr || ops == nullptr || chi == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const Eigen::VectorXd f = birkhoff::residual(chi_from(ops, chi, len),
                                                 problem->problem, ops->ops);
    std::memcpy(out, f.data(), sizeof(double) * static_cast<size_t>(len));
  });
}

bh_status bh_kkt_assemble(const bh_problem* problem, const bh_operators* ops,
                          const double* chi, int len, bh_kkt** out) {
  if (problem == nullptr || ops == nullptr || chi == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    *out = new bh_kkt{birkhoff::assemble(chi_from(ops, chi, len),
                                         problem->problem, ops->ops)};
  });
}

void bh_kkt_destroy(bh_kkt* kkt) { delete kkt; }

int bh_kkt_dim(const bh_kkt* kkt) { return kkt == nullptr ? 0 : kkt->kkt.dim(); }

bh_status bh_kkt_matvec(const bh_kkt* kkt, const double* v, double* out,
                        int len, int fast) {
  if (kkt == nullptr || v == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  if (len != kkt->kkt.dim())
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  return guarded([&] {
    const Eigen::Map<const Eigen::VectorXd> vin(v, len);
    const Eigen::VectorXd y = birkhoff::matvec(kkt->kkt, vin, fast != 0);
    std::memcpy(out, y.data(), sizeof(double) * static_cast<size_t>(len));
  });
}

bh_status bh_kkt_dense(const bh_kkt* kkt, double* out, size_t len) {
  if (kkt == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const Eigen::MatrixXd a = birkhoff::to_dense(kkt->kkt);
    birkhoff::require(len == static_cast<size_t>(a.size()),
                      birkhoff::ErrorCode::DimensionMismatch,
                      "buffer length mismatch");
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out[static_cast<size_t>(i * a.cols() + j)] = a(i, j);
  });
}

bh_status bh_kkt_write_matrix_market(const bh_kkt* kkt, const char* path,
                                     int pattern_only) {
  if (kkt == nullptr || path == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const Eigen::MatrixXd a = birkhoff::to_dense(kkt->kkt);
    const std::string tmp = std::string(path) + ".tmp";
    {
      std::ofstream out(tmp);
      birkhoff::require(out.good(), birkhoff::ErrorCode::Io,
                        "cannot open '" + tmp + "' for writing");
      birkhoff::write_matrix_market(a, out, pattern_only != 0);
      birkhoff::require(out.good(), birkhoff::ErrorCode::Io,
                        "write to '" + tmp + "' failed");
    }
    birkhoff::require(std::rename(tmp.c_str(), path) == 0,
                      birkhoff::ErrorCode::Io,
                      "atomic rename to '" + std::string(path) + "' failed");
  });
}

bh_status bh_kkt_alt_dense(const bh_problem* problem, const bh_operators* ops,
                           const double* chi, int len, double* out,
                           size_t out_len) {
  if (problem == nullptr || ops == nullptr || chi == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const Eigen::MatrixXd alt = birkhoff::assemble_alt(
        chi_from(ops, chi, len), problem->problem, ops->ops);
    birkhoff::require(out_len == static_cast<size_t>(alt.size()),
                      birkhoff::ErrorCode::DimensionMismatch,
                      "buffer length mismatch");
    for (Eigen::Index i = 0; i < alt.rows(); ++i)
      for (Eigen::Index j = 0; j < alt.cols(); ++j)
        out[static_cast<size_t>(i * alt.cols() + j)] = alt(i, j);
  });
}

bh_status bh_kkt_nnz_report(const bh_kkt* kkt, int n_x, int n_u,
                            int64_t out[3]) {
  if (kkt == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const birkhoff::NnzReport r = birkhoff::nnz_report(kkt->kkt, n_x, n_u);
    out[0] = r.hamiltonian_values;
    out[1] = r.total_pattern;
    out[2] = r.bytes;
  });
}

bh_status bh_kkt_linear_solve(const bh_kkt* kkt, const double* rhs,
                              double* out, int len, bh_linear_path path,
                              double krylov_tol, int krylov_restart,
                              int fast) {
  if (kkt == nullptr || rhs == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  if (len != kkt->kkt.dim())
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  return guarded([&] {
    const Eigen::Map<const Eigen::VectorXd> b(rhs, len);
    Eigen::VectorXd xi;
    if (path == BH_LINEAR_STRUCTURED_KRYLOV) {
      xi = birkhoff::krylov_linear_solve(kkt->kkt, b, krylov_tol,
                                         krylov_restart, fast != 0);
    } else {
      xi = birkhoff::lu_linear_solve(kkt->kkt, b);
    }
    std::memcpy(out, xi.data(), sizeof(double) * static_cast<size_t>(len));
  });
}

/* ---- solver -------------------------------------------------------------- */

void bh_solve_options_init(bh_solve_options* opts) {
  if (opts == nullptr) return;
  const birkhoff::SolverOptions d;
  opts->max_iter = d.max_iter;
  opts->tol = d.tol;
  opts->linear_path = BH_LINEAR_DENSE_LU;
  opts->armijo_c = d.armijo_c;
  opts->armijo_shrink = d.armijo_shrink;
  opts->min_step = d.min_step;
  opts->krylov_tol = d.krylov_tol;
  opts->krylov_restart = d.krylov_restart;
  opts->use_fast_transform = 0;
}

bh_status bh_solve(const bh_problem* problem, const bh_operators* ops,
                   const double* chi0, int chi0_len,
                   const bh_solve_options* opts, bh_solve_report** out) {
  if (problem == nullptr || ops == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    birkhoff::SolverOptions o;
    if (opts != nullptr) {
      o.max_iter = opts->max_iter;
      o.tol = opts->tol;
      o.linear_path = opts->linear_path == BH_LINEAR_STRUCTURED_KRYLOV
                          ? birkhoff::LinearPath::StructuredKrylov
                          : birkhoff::LinearPath::DenseLU;
      o.armijo_c = opts->armijo_c;
      o.armijo_shrink = opts->armijo_shrink;
      o.min_step = opts->min_step;
      o.krylov_tol = opts->krylov_tol;
      o.krylov_restart = opts->krylov_restart;
      o.use_fast_transform = opts->use_fast_transform != 0;
    }
    birkhoff::SolveReport rep;
    if (chi0 != nullptr) {
      rep = birkhoff::newton_solve(problem->problem, ops->ops,
                                   chi_from(ops, chi0, chi0_len), o);
    } else {
      rep = birkhoff::newton_solve(problem->problem, ops->ops, o);
    }
    *out = new bh_solve_report{std::move(rep)};
  });
}

void bh_solve_report_destroy(bh_solve_report* report) { delete report; }

int bh_solve_report_converged(const bh_solve_report* report) {
  return report != nullptr && report->report.converged ? 1 : 0;
}

int bh_solve_report_iterations(const bh_solve_report* report) {
  return report == nullptr ? 0 : report->report.iterations;
}

int bh_solve_report_history_len(const bh_solve_report* report) {
  return report == nullptr
             ? 0
             : static_cast<int>(report->report.residual_history.size());
}

bh_status bh_solve_report_history(const bh_solve_report* report, double* out,
                                  int len) {
  if (report == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  if (len != bh_solve_report_history_len(report))
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  std::memcpy(out, report->report.residual_history.data(),
              sizeof(double) * static_cast<size_t>(len));
  return BH_OK;
}

bh_status bh_solve_report_chi(const bh_solve_report* report, double* out,
                              int len) {
  if (report == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  return copy_vector(report->report.chi.flat(), out, len);
}

bh_status bh_solve_report_endpoints(const bh_solve_report* report,
                                    double out[5]) {
  if (report == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  out[0] = report->report.x_a;
  out[1] = report->report.x_b;
  out[2] = report->report.lambda_a;
  out[3] = report->report.lambda_b;
  out[4] = report->report.nu;
  return BH_OK;
}

bh_status bh_solve_report_errors(const bh_solve_report* report,
                                 const bh_problem* problem, double out[7]) {
  if (report == nullptr || problem == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const birkhoff::SolutionErrors e =
        birkhoff::verify_solution(report->report, problem->problem);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out[0] = e.state_err.value_or(nan);
    out[1] = e.costate_err.value_or(nan);
    out[2] = e.control_err.value_or(nan);
    out[3] = e.x_b_err.value_or(nan);
    out[4] = e.lambda_a_err.value_or(nan);
    out[5] = e.nu_err.value_or(nan);
    out[6] = e.hamiltonian_variation;
  });
}

/* ---- spectrum -------------------------------------------------------------- */

bh_status bh_spectrum_compute(const bh_kkt* kkt, bh_spectrum_report** out) {
  if (kkt == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    *out = new bh_spectrum_report{birkhoff::verify_theorem1(kkt->kkt)};
  });
}

void bh_spectrum_report_destroy(bh_spectrum_report* report) { delete report; }

int bh_spectrum_dim(const bh_spectrum_report* report) {
  return report == nullptr ? 0 : report->report.dim;
}

bh_status bh_spectrum_eigenvalues(const bh_spectrum_report* report, double* re,
                                  double* im, int len) {
  if (report == nullptr || re == nullptr || im == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  const auto& eig = report->report.eigenvalues;
  if (len != static_cast<int>(eig.size()))
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  for (int i = 0; i < len; ++i) {
    re[i] = eig[static_cast<size_t>(i)].real();
    im[i] = eig[static_cast<size_t>(i)].imag();
  }
  return BH_OK;
}

bh_status bh_spectrum_summary(const bh_spectrum_report* report, double out[6]) {
  if (report == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  const auto& r = report->report;
  out[0] = r.spectral_radius;
  out[1] = r.g_bound;
  out[2] = static_cast<double>(r.count_in_minus2_4);
  out[3] = r.containment_row ? 1.0 : 0.0;
  out[4] = r.containment_col ? 1.0 : 0.0;
  out[5] = r.radius_within_bound ? 1.0 : 0.0;
  return BH_OK;
}

int bh_spectrum_num_families(const bh_spectrum_report* report) {
  return report == nullptr ? 0
                           : static_cast<int>(report->report.families.size());
}

bh_status bh_spectrum_family_info(const bh_spectrum_report* report, int index,
                                  char* buf, int cap, int* orientation,
                                  int* size) {
  if (report == nullptr || buf == nullptr || orientation == nullptr ||
      size == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  if (index < 0 || index >= bh_spectrum_num_families(report))
    return fail(BH_ERR_INVALID_ARGUMENT, "family index out of range");
  const auto& fam = report->report.families[static_cast<size_t>(index)];
  if (cap <= static_cast<int>(fam.label.size()))
    return fail(BH_ERR_DIMENSION_MISMATCH, "label buffer too small");
  std::memcpy(buf, fam.label.c_str(), fam.label.size() + 1);
  *orientation = fam.orientation == birkhoff::DiscOrientation::Row ? 0 : 1;
  *size = static_cast<int>(fam.centers.size());
  return BH_OK;
}

bh_status bh_spectrum_family_discs(const bh_spectrum_report* report, int index,
                                   double* centers, double* radii, int len) {
  if (report == nullptr || centers == nullptr || radii == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  if (index < 0 || index >= bh_spectrum_num_families(report))
    return fail(BH_ERR_INVALID_ARGUMENT, "family index out of range");
  const auto& fam = report->report.families[static_cast<size_t>(index)];
  if (len != fam.centers.size())
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  std::memcpy(centers, fam.centers.data(),
              sizeof(double) * static_cast<size_t>(len));
  std::memcpy(radii, fam.radii.data(),
              sizeof(double) * static_cast<size_t>(len));
  return BH_OK;
}

bh_status bh_spectrum_column_sums(const bh_spectrum_report* report,
                                  double out[2]) {
  if (report == nullptr || out == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  out[0] = report->report.max_col_abs_sum_ba;
  out[1] = report->report.max_col_abs_sum_bb;
  return BH_OK;
}

bh_status bh_weak_form_amplification(const bh_grid* grid, double delta,
                                     double* out, int len, int* argmax_out,
                                     int* argmax_len) {
  if (grid == nullptr || out == nullptr || argmax_out == nullptr ||
      argmax_len == nullptr)
    return fail(BH_ERR_INVALID_ARGUMENT, "NULL argument");
  if (len != grid->grid.size())
    return fail(BH_ERR_DIMENSION_MISMATCH, "buffer length mismatch");
  return guarded([&] {
    const birkhoff::AmplificationResult r =
        birkhoff::weak_form_amplification(grid->grid.weights, delta);
    std::memcpy(out, r.values.data(),
                sizeof(double) * static_cast<size_t>(len));
    *argmax_len = static_cast<int>(r.argmax.size());
    for (size_t i = 0; i < r.argmax.size(); ++i) argmax_out[i] = r.argmax[i];
  });
}

}  // extern "C"
