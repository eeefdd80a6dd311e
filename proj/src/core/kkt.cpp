// SPDX-License-Identifier: Apache-2.0
#include "core/kkt.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace birkhoff {

namespace {

void check_dims(const DecisionVector& chi, const BirkhoffOperators& ops) {
  require(chi.num_nodes() == ops.size(), ErrorCode::DimensionMismatch,
          "decision vector and operators disagree on grid size");
}

// node-wise evaluations shared by residual() and assemble()
struct NodeData {
  Eigen::VectorXd f, f_x, f_u;
};

NodeData eval_nodes(const DecisionVector& chi, const OcpProblem& p) {
  const int nn = chi.num_nodes();
  NodeData d{Eigen::VectorXd(nn), Eigen::VectorXd(nn), Eigen::VectorXd(nn)};
  for (int i = 0; i < nn; ++i) {
    const double x = chi.X()(i);
    const double u = chi.U()(i);
    d.f(i) = p.f(x, u);
    d.f_x(i) = p.f_x(x, u);
    d.f_u(i) = p.f_u(x, u);
  }
  return d;
}

}  // namespace

Eigen::VectorXd residual(const DecisionVector& chi, const OcpProblem& problem,
                         const BirkhoffOperators& ops) {
  check_dims(chi, ops);
  const int nn = chi.num_nodes();
  const Eigen::VectorXd& w = ops.grid().weights;
  const NodeData d = eval_nodes(chi, problem);
  const EndpointEval ebar =
      endpoint_eval(problem, chi.nu(), chi.x_a(), chi.x_b());

  Eigen::VectorXd F(5 * nn + 5);
  const auto ones = Eigen::VectorXd::Ones(nn);
  F.segment(0, nn) = chi.X() - chi.x_a() * ones - ops.Ba() * chi.V();
  F.segment(nn, nn) = chi.Lambda() - chi.lambda_b() * ones - ops.Bb() * chi.Omega();
  F.segment(2 * nn, nn) = chi.V() - d.f;
  F.segment(3 * nn, nn) = chi.Omega() + chi.Lambda().cwiseProduct(d.f_x);
  F.segment(4 * nn, nn) = chi.Lambda().cwiseProduct(d.f_u);
  F(5 * nn) = chi.x_a() - chi.x_b() + w.dot(chi.V());
  F(5 * nn + 1) = -chi.lambda_a() + chi.lambda_b() - w.dot(chi.Omega());
  F(5 * nn + 2) = -chi.lambda_b() + ebar.E_b;
  F(5 * nn + 3) = ebar.E_nu;
  F(5 * nn + 4) = chi.lambda_a() + ebar.E_a;
  return F;
}

KktMatrix assemble(const DecisionVector& chi, const OcpProblem& problem,
                   const BirkhoffOperators& ops) {
  check_dims(chi, ops);
  const int nn = chi.num_nodes();

  KktMatrix k;
  k.ops = &ops;
  k.h_lambda_x.resize(nn);
  k.h_lambda_u.resize(nn);
  k.h_xx.resize(nn);
  k.h_xu.resize(nn);
  k.h_uu.resize(nn);
  for (int i = 0; i < nn; ++i) {
    const HamiltonianEval h =
        hamiltonian_eval(problem, chi.Lambda()(i), chi.X()(i), chi.U()(i));
    k.h_lambda_x(i) = h.H_lambda_x;
    k.h_lambda_u(i) = h.H_lambda_u;
    k.h_xx(i) = h.H_xx;
    k.h_xu(i) = h.H_xu;
    k.h_uu(i) = h.H_uu;
  }

  const EndpointEval ebar =
      endpoint_eval(problem, chi.nu(), chi.x_a(), chi.x_b());
  // rows F6..F10 over columns (x_a, lambda_b, x_b, nu, lambda_a)
  k.endpoint << 1.0, 0.0, -1.0, 0.0, 0.0,                    // F6
      0.0, 1.0, 0.0, 0.0, -1.0,                              // F7
      ebar.E_ab, -1.0, ebar.E_bb, ebar.E_bnu, 0.0,           // F8
      ebar.E_anu, 0.0, ebar.E_bnu, 0.0, 0.0,                 // F9
      ebar.E_aa, 0.0, ebar.E_ab, ebar.E_anu, 1.0;            // F10
  return k;
}

Eigen::MatrixXd to_dense(const KktMatrix& k, int dense_cap) {
  const int nn = k.num_nodes();
  const int n = k.dim();
  require(n <= dense_cap, ErrorCode::CapExceeded,
          "dense materialization of n = " + std::to_string(n) +
              " exceeds the cap " + std::to_string(dense_cap));

  const Eigen::VectorXd& w = k.ops->grid().weights;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  const int sx = 0, sl = nn, sv = 2 * nn, so = 3 * nn, su = 4 * nn;
  const int sc = 5 * nn;  // first scalar column/row

  // block rows 1..5
  a.block(sx, sx, nn, nn).setIdentity();
  a.block(sx, sv, nn, nn) = -k.ops->Ba();
  a.block(sx, sc, nn, 1).setConstant(-1.0);  // -b in the x_a column
  a.block(sl, sl, nn, nn).setIdentity();
  a.block(sl, so, nn, nn) = -k.ops->Bb();
  a.block(sl, sc + 1, nn, 1).setConstant(-1.0);  // -b in the lambda_b column
  a.block(sv, sx, nn, nn).diagonal() = -k.h_lambda_x;
  a.block(sv, sv, nn, nn).setIdentity();
  a.block(sv, su, nn, nn).diagonal() = -k.h_lambda_u;
  a.block(so, sx, nn, nn).diagonal() = k.h_xx;
  a.block(so, sl, nn, nn).diagonal() = k.h_lambda_x;  // H_{X,Lambda} = diag f_x
  a.block(so, so, nn, nn).setIdentity();
  a.block(so, su, nn, nn).diagonal() = k.h_xu;
  a.block(su, sx, nn, nn).diagonal() = k.h_xu;        // H_{U,X} = H_{X,U}
  a.block(su, sl, nn, nn).diagonal() = k.h_lambda_u;  // H_{U,Lambda} = diag f_u
  a.block(su, su, nn, nn).diagonal() = k.h_uu;

  // scalar rows 6..10
  a.block(sc, sv, 1, nn) = w.transpose();
  a.block(sc + 1, so, 1, nn) = -w.transpose();
  a.block(sc, sc, 5, 5) = k.endpoint;
  return a;
}

Eigen::VectorXd matvec(const KktMatrix& k, const Eigen::VectorXd& v,
                       bool fast) {
  const int nn = k.num_nodes();
  const int n = k.dim();
  require(v.size() == n, ErrorCode::DimensionMismatch,
          "matvec operand has wrong length");

  const Eigen::VectorXd& w = k.ops->grid().weights;
  const auto x = v.segment(0, nn);
  const auto l = v.segment(nn, nn);
  const auto vv = v.segment(2 * nn, nn);
  const auto o = v.segment(3 * nn, nn);
  const auto u = v.segment(4 * nn, nn);
  const double v_xa = v(5 * nn), v_lb = v(5 * nn + 1), v_xb = v(5 * nn + 2);
  const double v_nu = v(5 * nn + 3), v_la = v(5 * nn + 4);

  Eigen::VectorXd ba_v, bb_o;
  if (fast) {
    ba_v = k.ops->apply_fast(Anchor::A, vv);
    bb_o = k.ops->apply_fast(Anchor::B, o);
  } else {
    ba_v = k.ops->Ba() * vv;
    bb_o = k.ops->Bb() * o;
  }

  Eigen::VectorXd y(n);
  y.segment(0, nn) = x - ba_v;
  y.segment(0, nn).array() -= v_xa;
  y.segment(nn, nn) = l - bb_o;
  y.segment(nn, nn).array() -= v_lb;
  y.segment(2 * nn, nn) =
      vv - k.h_lambda_x.cwiseProduct(x) - k.h_lambda_u.cwiseProduct(u);
  y.segment(3 * nn, nn) = o + k.h_xx.cwiseProduct(x) +
                          k.h_lambda_x.cwiseProduct(l) +
                          k.h_xu.cwiseProduct(u);
  y.segment(4 * nn, nn) = k.h_xu.cwiseProduct(x) +
                          k.h_lambda_u.cwiseProduct(l) +
                          k.h_uu.cwiseProduct(u);

  Eigen::Matrix<double, 5, 1> tail;
  tail << v_xa, v_lb, v_xb, v_nu, v_la;
  Eigen::Matrix<double, 5, 1> scalar = k.endpoint * tail;
  scalar(0) += w.dot(vv);
  scalar(1) -= w.dot(o);
  y.segment(5 * nn, 5) = scalar;
  return y;
}

Eigen::MatrixXd SplitKkt::unpermute() const {
  const auto n = a0.cols();
  Eigen::MatrixXd full(a0.rows() + a_data.rows(), n);
  for (Eigen::Index r = 0; r < a0.rows(); ++r)
    full.row(row_order[static_cast<size_t>(r)]) = a0.row(r);
  for (Eigen::Index r = 0; r < a_data.rows(); ++r)
    full.row(row_order[static_cast<size_t>(a0.rows() + r)]) = a_data.row(r);
  return full;
}

SplitKkt permute_split(const KktMatrix& k, int dense_cap) {
  const Eigen::MatrixXd dense = to_dense(k, dense_cap);
  const int nn = k.num_nodes();
  const int n = k.dim();

  SplitKkt s;
  s.a0.resize(2 * nn + 2, n);
  s.a_data.resize(3 * nn + 3, n);
  s.row_order.reserve(static_cast<size_t>(n));

  int at = 0;
  auto take = [&](Eigen::MatrixXd& dst, int row) {
    dst.row(at++) = dense.row(row);
    s.row_order.push_back(row);
  };
  for (int i = 0; i < 2 * nn; ++i) take(s.a0, i);            // blocks 1, 2
  take(s.a0, 5 * nn);                                        // row 6
  take(s.a0, 5 * nn + 1);                                    // row 7
  at = 0;
  for (int i = 2 * nn; i < 5 * nn; ++i) take(s.a_data, i);   // blocks 3..5
  take(s.a_data, 5 * nn + 2);                                // row 8
  take(s.a_data, 5 * nn + 3);                                // row 9
  take(s.a_data, 5 * nn + 4);                                // row 10
  return s;
}

Eigen::MatrixXd assemble_alt(const DecisionVector& chi,
                             const OcpProblem& problem,
                             const BirkhoffOperators& ops) {
  check_dims(chi, ops);
  const int nn = chi.num_nodes();
  const Eigen::VectorXd& w = ops.grid().weights;
  require((w.array() > 0.0).all(), ErrorCode::InvalidArgument,
          "alternative Hessian needs strictly positive weights");

  const KktMatrix k = assemble(chi, problem, ops);
  const Eigen::VectorXd winv = w.cwiseInverse();

  // ordering: X~ | V~ | U~ | x_a | x_b | Lambda | Omega | nu | lambda_b
  const int sx = 0, sv = nn, su = 2 * nn;
  const int sa = 3 * nn, sb = 3 * nn + 1;
  const int sl = 3 * nn + 2, so = 4 * nn + 2;
  const int snu = 5 * nn + 2, slb = 5 * nn + 3;
  const int dim = 5 * nn + 4;

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
  const auto ones = Eigen::VectorXd::Ones(nn);

  // row X~
  t.block(sx, sx, nn, nn).diagonal() = winv.cwiseProduct(k.h_xx);
  t.block(sx, su, nn, nn).diagonal() = winv.cwiseProduct(k.h_xu);
  t.block(sx, sl, nn, nn).diagonal() = k.h_lambda_x;
  t.block(sx, so, nn, nn).setIdentity();
  // row V~
  t.block(sv, sl, nn, nn) = -Eigen::MatrixXd::Identity(nn, nn);
  t.block(sv, so, nn, nn) = ops.Bb();
  t.block(sv, slb, nn, 1) = ones;
  // row U~
  t.block(su, sx, nn, nn).diagonal() = winv.cwiseProduct(k.h_xu);
  t.block(su, su, nn, nn).diagonal() = winv.cwiseProduct(k.h_uu);
  t.block(su, sl, nn, nn).diagonal() = k.h_lambda_u;
  // endpoint Lagrangian partials at the same iterate
  const EndpointEval ebar =
      endpoint_eval(problem, chi.nu(), chi.x_a(), chi.x_b());
  // row x_a
  t(sa, sa) = ebar.E_aa;
  t(sa, sb) = ebar.E_ab;
  t.block(sa, so, 1, nn) = -w.transpose();
  t(sa, snu) = ebar.E_anu;
  t(sa, slb) = 1.0;
  // row x_b
  t(sb, sa) = ebar.E_ab;
  t(sb, sb) = ebar.E_bb;
  t(sb, snu) = ebar.E_bnu;
  t(sb, slb) = -1.0;
  // row Lambda
  t.block(sl, sx, nn, nn).diagonal() = k.h_lambda_x;
  t.block(sl, sv, nn, nn) = -Eigen::MatrixXd::Identity(nn, nn);
  t.block(sl, su, nn, nn).diagonal() = k.h_lambda_u;
  // row Omega
  t.block(so, sx, nn, nn).setIdentity();
  t.block(so, sv, nn, nn) = ops.Bb().transpose();
  t.block(so, sa, nn, 1) = -w;
  // row nu
  t(snu, sa) = ebar.E_anu;
  t(snu, sb) = ebar.E_bnu;
  // row lambda_b
  t.block(slb, sv, 1, nn) = ones.transpose();
  t(slb, sa) = 1.0;
  t(slb, sb) = -1.0;
  return t;
}

std::int64_t hamiltonian_storage(int n_x, int n_u, std::int64_t num_nodes) {
  require(n_x >= 1 && n_u >= 0 && num_nodes >= 1, ErrorCode::InvalidArgument,
          "need n_x >= 1, n_u >= 0, num_nodes >= 1");
  const std::int64_t nx = n_x, nu = n_u;
  return (2 * nx * nx + 2 * nx * nu + nu * nu) * num_nodes;
}

NnzReport nnz_report(const KktMatrix& k, int n_x, int n_u) {
  const std::int64_t nn = k.num_nodes();
  NnzReport r;
  r.hamiltonian_values = hamiltonian_storage(n_x, n_u, nn);
  r.bytes = r.hamiltonian_values * 8;
  // scalar-build structural pattern: four identity blocks, the two dense
  // Birkhoff blocks (one structurally zero row each), eight Hamiltonian
  // diagonal placements (five distinct vectors), two b columns, two w rows,
  // endpoint block (6 constants + 8 data entries)
  r.total_pattern = 4 * nn + 2 * nn * (nn - 1) + 8 * nn + 2 * nn + 2 * nn + 14;
  return r;
}

void write_matrix_market(const Eigen::MatrixXd& m, std::ostream& out,
                         bool pattern_only) {
  std::int64_t nnz = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0.0) ++nnz;

  out << "%%MatrixMarket matrix coordinate "
      << (pattern_only ? "pattern" : "real") << " general\n";
  out << m.rows() << " " << m.cols() << " " << nnz << "\n";
  std::ostringstream line;
  line.precision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) == 0.0) continue;
      line.str("");
      line << (i + 1) << " " << (j + 1);
      if (!pattern_only) line << " " << m(i, j);
      line << "\n";
      out << line.str();
    }
  }
}

Eigen::MatrixXd read_matrix_market(std::istream& in) {
  std::string header;
  std::getline(in, header);
  require(header.rfind("%%MatrixMarket matrix coordinate", 0) == 0,
          ErrorCode::Io, "not a Matrix Market coordinate file");
  const bool pattern = header.find(" pattern ") != std::string::npos;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  Eigen::Index rows = 0, cols = 0;
  std::int64_t nnz = 0;
  dims >> rows >> cols >> nnz;
  require(rows > 0 && cols > 0, ErrorCode::Io, "bad Matrix Market size line");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (std::int64_t t = 0; t < nnz; ++t) {
    Eigen::Index i = 0, j = 0;
    double v = 1.0;
    in >> i >> j;
    if (!pattern) in >> v;
    require(static_cast<bool>(in), ErrorCode::Io,
            "truncated Matrix Market file");
    m(i - 1, j - 1) = v;
  }
  return m;
}

}  // namespace birkhoff
